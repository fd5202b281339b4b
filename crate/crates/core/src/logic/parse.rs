use std::collections::HashMap;

use super::{fresh_name, BoundKind, Formula, LogicError, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Succ,
    Exp,
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    Neq,
    In,
    NotIn,
    Subseteq,
    Lt,
    Plus,
    Star,
    Tilde,
    And,
    Or,
    Arrow,
    Iff,
    False,
    Forall,
    Exists,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("variable {s:?}"),
        Tok::End => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, LogicError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &str| text[i..].starts_with(s);
        let tok = if two("<->") {
            i += 3;
            Tok::Iff
        } else if two("->") {
            i += 2;
            Tok::Arrow
        } else if two("/\\") {
            i += 2;
            Tok::And
        } else if two("\\/") {
            i += 2;
            Tok::Or
        } else if two("!=") {
            i += 2;
            Tok::Neq
        } else if c.is_ascii_lowercase() {
            let mut j = i + 1;
            while j < b.len() && (b[j].is_ascii_alphanumeric() || b[j] == b'_') {
                j += 1;
            }
            let word = &text[i..j];
            i = j;
            match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "in" => Tok::In,
                "notin" => Tok::NotIn,
                "subseteq" => Tok::Subseteq,
                "false" => Tok::False,
                "exp" => Tok::Exp,
                _ => Tok::Ident(word.to_string()),
            }
        } else {
            i += 1;
            match c {
                b'0' => Tok::Zero,
                b'S' => Tok::Succ,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b'.' => Tok::Dot,
                b'=' => Tok::Eq,
                b'<' => Tok::Lt,
                b'+' => Tok::Plus,
                b'*' => Tok::Star,
                b'~' => Tok::Tilde,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(LogicError::Syntax {
                        pos: start,
                        msg: format!("unexpected character {ch:?}"),
                    });
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

type TermResult = Result<(Term, usize), LogicError>;

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'s Signature,
    term_memo: HashMap<usize, TermResult>,
}

/// Parses formula text over `sig`. Sugar (`!=`, `notin`, `subseteq`, `<->`) is expanded.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, LogicError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
        term_memo: HashMap::new(),
    };
    let f = p.formula()?;
    p.expect(Tok::End)?;
    Ok(f)
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, LogicError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
        term_memo: HashMap::new(),
    };
    let t = p.term()?;
    p.expect(Tok::End)?;
    Ok(t)
}

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LogicError> {
        Err(LogicError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), LogicError> {
        if self.eat(&t) {
            Ok(())
        } else {
            let found = describe(self.peek());
            self.err(format!("expected {}, found {found}", describe(&t)))
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else if self.eat(&Tok::Iff) {
            let rhs = self.formula()?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula, LogicError> {
        let mut f = self.conj()?;
        while self.eat(&Tok::Or) {
            let r = self.conj()?;
            f = Formula::or(f, r);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, LogicError> {
        let mut f = self.neg()?;
        while self.eat(&Tok::And) {
            let r = self.neg()?;
            f = Formula::and(f, r);
        }
        Ok(f)
    }

    fn neg(&mut self) -> Result<Formula, LogicError> {
        if self.eat(&Tok::Tilde) {
            Ok(Formula::not(self.neg()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Formula, LogicError> {
        match self.peek().clone() {
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Forall | Tok::Exists => self.quant(),
            Tok::LParen => {
                let save = self.pos;
                match self.relation() {
                    Ok(f) => Ok(f),
                    Err(e1) => {
                        self.pos = save;
                        self.bump();
                        let inner = self.formula().and_then(|f| {
                            self.expect(Tok::RParen)?;
                            Ok(f)
                        });
                        match inner {
                            Ok(f) => Ok(f),
                            Err(e2) => Err(further(e1, e2)),
                        }
                    }
                }
            }
            _ => self.relation(),
        }
    }

    fn quant(&mut self) -> Result<Formula, LogicError> {
        let universal = self.bump() == Tok::Forall;
        let var = match self.bump() {
            Tok::Ident(v) => v,
            other => {
                self.pos -= 1;
                return self.err(format!("expected variable, found {}", describe(&other)));
            }
        };
        let bound = match self.peek() {
            Tok::Lt | Tok::In => {
                let kind = if self.bump() == Tok::Lt {
                    BoundKind::Lt
                } else {
                    BoundKind::In
                };
                if kind != self.sig.bound {
                    return Err(LogicError::WrongBound(kind.token(), self.sig.name.clone()));
                }
                let t = self.term()?;
                if t.mentions(&var) {
                    return Err(LogicError::BoundMentionsVariable { var });
                }
                Some((kind, t))
            }
            _ => None,
        };
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(match (universal, bound) {
            (true, None) => Formula::forall(var, body),
            (false, None) => Formula::exists(var, body),
            (true, Some((k, t))) => Formula::bforall(var, k, t, body),
            (false, Some((k, t))) => Formula::bexists(var, k, t, body),
        })
    }

    fn relation(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.term()?;
        let op = self.peek().clone();
        match op {
            Tok::Eq | Tok::Neq => {
                self.bump();
                let rhs = self.term()?;
                let f = Formula::eq(lhs, rhs);
                Ok(if op == Tok::Neq { Formula::not(f) } else { f })
            }
            Tok::In | Tok::NotIn | Tok::Subseteq => {
                if self.sig.predicate_arity("in") != Some(2) {
                    return Err(LogicError::UnknownSymbol {
                        sym: "in".into(),
                        sig: self.sig.name.clone(),
                    });
                }
                self.bump();
                let rhs = self.term()?;
                Ok(match op {
                    Tok::In => Formula::member(lhs, rhs),
                    Tok::NotIn => Formula::not(Formula::member(lhs, rhs)),
                    _ => {
                        let mut avoid = lhs.vars();
                        rhs.vars_into(&mut avoid);
                        let z = fresh_name("z", &avoid);
                        Formula::all_in(z.clone(), lhs, Formula::member(Term::var(z), rhs))
                    }
                })
            }
            other => self.err(format!(
                "expected one of =, !=, in, notin, subseteq, found {}",
                describe(&other)
            )),
        }
    }

    fn term(&mut self) -> Result<Term, LogicError> {
        let start = self.pos;
        if let Some(r) = self.term_memo.get(&start) {
            return match r.clone() {
                Ok((t, end)) => {
                    self.pos = end;
                    Ok(t)
                }
                Err(e) => Err(e),
            };
        }
        let r = self.sum();
        let memo = match &r {
            Ok(t) => Ok((t.clone(), self.pos)),
            Err(e) => Err(e.clone()),
        };
        self.term_memo.insert(start, memo);
        r
    }

    fn sum(&mut self) -> Result<Term, LogicError> {
        let mut t = self.prod()?;
        while *self.peek() == Tok::Plus {
            self.symbol("+")?;
            self.bump();
            let r = self.prod()?;
            t = Term::add(t, r);
        }
        Ok(t)
    }

    fn prod(&mut self) -> Result<Term, LogicError> {
        let mut t = self.primary()?;
        while *self.peek() == Tok::Star {
            self.symbol("*")?;
            self.bump();
            let r = self.primary()?;
            t = Term::mul(t, r);
        }
        Ok(t)
    }

    fn symbol(&self, s: &str) -> Result<(), LogicError> {
        if self.sig.function_arity(s).is_some() {
            Ok(())
        } else {
            Err(LogicError::UnknownSymbol {
                sym: s.into(),
                sig: self.sig.name.clone(),
            })
        }
    }

    fn primary(&mut self) -> Result<Term, LogicError> {
        match self.peek().clone() {
            Tok::Ident(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Zero => {
                self.symbol("0")?;
                self.bump();
                Ok(Term::zero())
            }
            Tok::Succ => {
                self.symbol("S")?;
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::succ(t))
            }
            Tok::Exp => {
                self.symbol("exp")?;
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::exp(a, b))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => self.err(format!("expected a term, found {}", describe(&other))),
        }
    }
}

fn further(a: LogicError, b: LogicError) -> LogicError {
    match (&a, &b) {
        (LogicError::Syntax { pos: pa, .. }, LogicError::Syntax { pos: pb, .. }) => {
            if pa > pb {
                a
            } else {
                b
            }
        }
        (LogicError::Syntax { .. }, _) => b,
        _ => a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let set = Signature::set();
        let f = parse("forall x. x = x", &set).unwrap();
        assert_eq!(
            f,
            Formula::forall("x", Formula::eq(Term::var("x"), Term::var("x")))
        );
        let f = parse(
            "exists r < exp(S(S(0)), a). r = r",
            &Signature::arith_plus(),
        )
        .unwrap();
        assert!(matches!(f, Formula::BExists(..)));
        let f = parse("forall y in x. exists z in y. z in x", &set).unwrap();
        assert!(f.is_delta0());
    }

    #[test]
    fn sugar_expands() {
        let set = Signature::set();
        assert_eq!(
            parse("x != y", &set).unwrap(),
            Formula::not(Formula::eq(Term::var("x"), Term::var("y")))
        );
        assert_eq!(
            parse("x notin y", &set).unwrap(),
            Formula::not(Formula::member(Term::var("x"), Term::var("y")))
        );
        let f = parse("x subseteq z", &set).unwrap();
        match &f {
            Formula::BForall(v, b, body) => {
                assert_ne!(v, "z");
                assert_eq!(b.term, Term::var("x"));
                assert_eq!(**body, Formula::member(Term::var(v.clone()), Term::var("z")));
            }
            _ => panic!("{f:?}"),
        }
        let f = parse("x = y <-> y = x", &set).unwrap();
        assert!(matches!(f, Formula::And(..)));
    }

    #[test]
    fn precedence() {
        let a = Signature::arith();
        let f = parse("x = y -> y = z -> false", &a).unwrap();
        match f {
            Formula::Implies(_, r) => assert!(matches!(*r, Formula::Implies(..))),
            _ => panic!(),
        }
        let f = parse("x = 0 \\/ x = 0 /\\ false", &a).unwrap();
        assert!(matches!(f, Formula::Or(..)));
        let t = parse_term("x + y * z + 0", &a).unwrap();
        assert_eq!(
            t,
            Term::add(
                Term::add(Term::var("x"), Term::mul(Term::var("y"), Term::var("z"))),
                Term::zero()
            )
        );
        let f = parse("(x + y) * z = w", &a).unwrap();
        assert!(matches!(f, Formula::Eq(Term::App(ref s, _), _) if s == "*"));
        let f = parse("((x = y))", &a).unwrap();
        assert!(matches!(f, Formula::Eq(..)));
    }

    #[test]
    fn errors() {
        let set = Signature::set();
        let a = Signature::arith();
        assert!(matches!(
            parse("x + y = z", &set),
            Err(LogicError::UnknownSymbol { .. })
        ));
        assert!(matches!(
            parse("x in y", &a),
            Err(LogicError::UnknownSymbol { .. })
        ));
        assert!(matches!(
            parse("exp(x, y) = z", &a),
            Err(LogicError::UnknownSymbol { .. })
        ));
        assert!(matches!(
            parse("forall x < y. x = x", &set),
            Err(LogicError::WrongBound(..))
        ));
        assert!(matches!(
            parse("forall x in x. x = x", &set),
            Err(LogicError::BoundMentionsVariable { .. })
        ));
        match parse("x = ", &a) {
            Err(LogicError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("x = y )", &a),
            Err(LogicError::Syntax { pos: 6, .. })
        ));
        assert!(parse("x # y", &a).is_err());
    }

    #[test]
    fn deep_parens_are_linear() {
        let a = Signature::arith();
        let n = 200;
        let text = format!("{}x = y{}", "(".repeat(n), ")".repeat(n));
        assert!(parse(&text, &a).is_ok());
        let text = format!("{}x{} = y", "(".repeat(n), ")".repeat(n));
        assert!(parse(&text, &a).is_ok());
    }
}
