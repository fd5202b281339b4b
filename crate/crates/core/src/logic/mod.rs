//! First-order terms and formulas over arithmetic and set-theoretic signatures.

mod parse;
mod print;
mod signature;
mod subst;

pub use parse::{parse, parse_term};
pub use print::{print, print_term};
pub use signature::Signature;
pub use subst::{alpha_eq, fresh_name, rename_free, substitute, substitute_all, term_subst};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol {sym:?} in signature {sig}")]
    UnknownSymbol { sym: String, sig: String },
    #[error("symbol {sym:?} expects {expected} arguments, got {got}")]
    Arity {
        sym: String,
        expected: usize,
        got: usize,
    },
    #[error("bound of {var} mentions {var}")]
    BoundMentionsVariable { var: String },
    #[error("{0} bounds are not available in signature {1}")]
    WrongBound(&'static str, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundKind {
    /// `x < t`, arithmetic.
    Lt,
    /// `x ∈ t`, set theory.
    In,
}

impl BoundKind {
    pub fn token(self) -> &'static str {
        match self {
            BoundKind::Lt => "<",
            BoundKind::In => "in",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bound {
    pub kind: BoundKind,
    pub term: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    False,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    BForall(String, Bound, Box<Formula>),
    BExists(String, Bound, Box<Formula>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn zero() -> Self {
        Term::App("0".into(), vec![])
    }

    pub fn succ(t: Term) -> Self {
        Term::App("S".into(), vec![t])
    }

    pub fn add(a: Term, b: Term) -> Self {
        Term::App("+".into(), vec![a, b])
    }

    pub fn mul(a: Term, b: Term) -> Self {
        Term::App("*".into(), vec![a, b])
    }

    pub fn exp(a: Term, b: Term) -> Self {
        Term::App("exp".into(), vec![a, b])
    }

    /// `S(S(...0))` with `n` successors.
    pub fn numeral(n: u64) -> Self {
        (0..n).fold(Term::zero(), |t, _| Term::succ(t))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.vars_into(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut s = BTreeSet::new();
        self.vars_into(&mut s);
        s
    }

    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::App(_, args) => args.iter().any(|a| a.mentions(var)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `φ → ⊥`.
    pub fn not(a: Formula) -> Self {
        Formula::implies(a, Formula::False)
    }

    /// `⊥ → ⊥`.
    pub fn truth() -> Self {
        Formula::not(Formula::False)
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    pub fn member(a: Term, b: Term) -> Self {
        Formula::Atom("in".into(), vec![a, b])
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn bforall(v: impl Into<String>, kind: BoundKind, t: Term, body: Formula) -> Self {
        Formula::BForall(v.into(), Bound { kind, term: t }, Box::new(body))
    }

    pub fn bexists(v: impl Into<String>, kind: BoundKind, t: Term, body: Formula) -> Self {
        Formula::BExists(v.into(), Bound { kind, term: t }, Box::new(body))
    }

    /// `∀v∈t. body` over sets.
    pub fn all_in(v: impl Into<String>, t: Term, body: Formula) -> Self {
        Formula::bforall(v, BoundKind::In, t, body)
    }

    /// `∃v∈t. body` over sets.
    pub fn some_in(v: impl Into<String>, t: Term, body: Formula) -> Self {
        Formula::bexists(v, BoundKind::In, t, body)
    }

    /// Left-nested conjunction; the empty conjunction is `⊥ → ⊥`.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::truth)
    }

    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// Existential closure over `vars`, outermost first.
    pub fn exists_many(vars: &[String], body: Formula) -> Self {
        vars.iter()
            .rev()
            .fold(body, |b, v| Formula::exists(v.clone(), b))
    }

    pub fn forall_many(vars: &[String], body: Formula) -> Self {
        vars.iter()
            .rev()
            .fold(body, |b, v| Formula::forall(v.clone(), b))
    }

    /// `Some(φ)` if this is `φ → ⊥`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::False => Some(a),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            let mut vs = BTreeSet::new();
            t.vars_into(&mut vs);
            for v in vs {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Atom(_, ts) => ts.iter().for_each(|t| add_term(t, bound, out)),
            Formula::Eq(a, b) => {
                add_term(a, bound, out);
                add_term(b, bound, out);
            }
            Formula::False => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.free_vars_into(bound, out);
                bound.pop();
            }
            Formula::BForall(v, bd, body) | Formula::BExists(v, bd, body) => {
                add_term(&bd.term, bound, out);
                bound.push(v.clone());
                body.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, var: &str) -> bool {
        match self {
            Formula::Atom(_, ts) => ts.iter().any(|t| t.mentions(var)),
            Formula::Eq(a, b) => a.mentions(var) || b.mentions(var),
            Formula::False => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_free(var) || b.is_free(var)
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => v != var && body.is_free(var),
            Formula::BForall(v, bd, body) | Formula::BExists(v, bd, body) => {
                bd.term.mentions(var) || (v != var && body.is_free(var))
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, ts) => ts.iter().for_each(|t| t.vars_into(&mut out)),
            Formula::Eq(a, b) => {
                a.vars_into(&mut out);
                b.vars_into(&mut out);
            }
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(v.clone());
            }
            Formula::BForall(v, bd, _) | Formula::BExists(v, bd, _) => {
                out.insert(v.clone());
                bd.term.vars_into(&mut out);
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Forall(_, body)
            | Formula::Exists(_, body)
            | Formula::BForall(_, _, body)
            | Formula::BExists(_, _, body) => body.visit(f),
            _ => {}
        }
    }

    /// True iff every quantifier is bounded.
    pub fn is_delta0(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::Forall(..) | Formula::Exists(..)) {
                ok = false;
            }
        });
        ok
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::False => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Forall(_, body)
            | Formula::Exists(_, body)
            | Formula::BForall(_, _, body)
            | Formula::BExists(_, _, body) => 1 + body.depth(),
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Checks symbols, arities and bound kinds against `sig`, and that no bound mentions
    /// its own variable.
    pub fn check(&self, sig: &Signature) -> Result<(), LogicError> {
        let mut err = None;
        self.visit(&mut |f| {
            if err.is_some() {
                return;
            }
            let r = match f {
                Formula::Atom(p, ts) => match sig.predicate_arity(p) {
                    None => Err(LogicError::UnknownSymbol {
                        sym: p.clone(),
                        sig: sig.name.clone(),
                    }),
                    Some(a) if a != ts.len() => Err(LogicError::Arity {
                        sym: p.clone(),
                        expected: a,
                        got: ts.len(),
                    }),
                    Some(_) => ts.iter().try_for_each(|t| check_term(t, sig)),
                },
                Formula::Eq(a, b) => check_term(a, sig).and_then(|_| check_term(b, sig)),
                Formula::BForall(v, bd, _) | Formula::BExists(v, bd, _) => {
                    if bd.kind != sig.bound {
                        Err(LogicError::WrongBound(bd.kind.token(), sig.name.clone()))
                    } else if bd.term.mentions(v) {
                        Err(LogicError::BoundMentionsVariable { var: v.clone() })
                    } else {
                        check_term(&bd.term, sig)
                    }
                }
                _ => Ok(()),
            };
            if let Err(e) = r {
                err = Some(e);
            }
        });
        err.map_or(Ok(()), Err)
    }
}

pub fn check_term(t: &Term, sig: &Signature) -> Result<(), LogicError> {
    match t {
        Term::Var(_) => Ok(()),
        Term::App(f, args) => match sig.function_arity(f) {
            None => Err(LogicError::UnknownSymbol {
                sym: f.clone(),
                sig: sig.name.clone(),
            }),
            Some(a) if a != args.len() => Err(LogicError::Arity {
                sym: f.clone(),
                expected: a,
                got: args.len(),
            }),
            Some(_) => args.iter().try_for_each(|a| check_term(a, sig)),
        },
    }
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_examples() {
        let sig = Signature::set();
        let f = parse("forall x. x = y", &sig).unwrap();
        assert_eq!(f.free_vars(), ["y".to_string()].into_iter().collect());
        let f = parse("x in y /\\ y in z", &sig).unwrap();
        assert_eq!(f.free_vars().len(), 3);
        let f = parse("forall x. exists y. x in y", &sig).unwrap();
        assert!(f.free_vars().is_empty());
    }

    #[test]
    fn delta0_examples() {
        let sig = Signature::set();
        assert!(parse("x in y", &sig).unwrap().is_delta0());
        assert!(parse("forall y in x. y = y", &sig).unwrap().is_delta0());
        assert!(!parse("exists y. y = x", &sig).unwrap().is_delta0());
        assert!(parse("forall y in x. exists z in y. z in x", &sig)
            .unwrap()
            .is_delta0());
    }

    #[test]
    fn bound_is_outside_scope() {
        let f = Formula::all_in("x", Term::var("x"), Formula::False);
        assert!(f.free_vars().contains("x"));
        assert!(matches!(
            f.check(&Signature::set()),
            Err(LogicError::BoundMentionsVariable { .. })
        ));
    }
}
