use super::{Formula, Term};

const P_IMPL: u8 = 1;
const P_OR: u8 = 2;
const P_AND: u8 = 3;
const P_ATOM: u8 = 4;

/// Canonical text. Sugar is never produced except `~` for `φ → false`.
pub fn print(f: &Formula) -> String {
    let mut s = String::new();
    fmt_formula(f, 0, true, &mut s);
    s
}

pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    fmt_term(t, 0, &mut s);
    s
}

/// `prec` is the loosest construct allowed here without parentheses; `tail` says nothing
/// follows on the right, which is what lets a quantifier body run to the end.
fn fmt_formula(f: &Formula, prec: u8, tail: bool, out: &mut String) {
    match f {
        Formula::Atom(p, ts) if p == "in" && ts.len() == 2 => {
            fmt_term(&ts[0], 0, out);
            out.push_str(" in ");
            fmt_term(&ts[1], 0, out);
        }
        Formula::Atom(p, ts) => {
            out.push_str(p);
            out.push('(');
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                fmt_term(t, 0, out);
            }
            out.push(')');
        }
        Formula::Eq(a, b) => {
            fmt_term(a, 0, out);
            out.push_str(" = ");
            fmt_term(b, 0, out);
        }
        Formula::False => out.push_str("false"),
        Formula::Implies(a, b) if **b == Formula::False => {
            out.push('~');
            fmt_formula(a, P_ATOM, tail, out);
        }
        Formula::Implies(a, b) => wrap(prec > P_IMPL, tail, out, |tail, out| {
            fmt_formula(a, P_OR, false, out);
            out.push_str(" -> ");
            fmt_formula(b, P_IMPL, tail, out);
        }),
        Formula::Or(a, b) => wrap(prec > P_OR, tail, out, |tail, out| {
            fmt_formula(a, P_OR, false, out);
            out.push_str(" \\/ ");
            fmt_formula(b, P_AND, tail, out);
        }),
        Formula::And(a, b) => wrap(prec > P_AND, tail, out, |tail, out| {
            fmt_formula(a, P_AND, false, out);
            out.push_str(" /\\ ");
            fmt_formula(b, P_ATOM, tail, out);
        }),
        Formula::Forall(v, body)
        | Formula::Exists(v, body)
        | Formula::BForall(v, _, body)
        | Formula::BExists(v, _, body) => wrap(!tail, tail, out, |_, out| {
            let kw = if matches!(f, Formula::Forall(..) | Formula::BForall(..)) {
                "forall"
            } else {
                "exists"
            };
            out.push_str(kw);
            out.push(' ');
            out.push_str(v);
            if let Formula::BForall(_, bd, _) | Formula::BExists(_, bd, _) = f {
                out.push(' ');
                out.push_str(bd.kind.token());
                out.push(' ');
                fmt_term(&bd.term, 0, out);
            }
            out.push_str(". ");
            fmt_formula(body, 0, true, out);
        }),
    }
}

fn wrap(paren: bool, tail: bool, out: &mut String, body: impl FnOnce(bool, &mut String)) {
    if paren {
        out.push('(');
        body(true, out);
        out.push(')');
    } else {
        body(tail, out);
    }
}

fn fmt_term(t: &Term, prec: u8, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(v),
        Term::App(s, args) => match (s.as_str(), args.as_slice()) {
            ("0", []) => out.push('0'),
            ("S", [a]) => {
                out.push_str("S(");
                fmt_term(a, 0, out);
                out.push(')');
            }
            ("exp", [a, b]) => {
                out.push_str("exp(");
                fmt_term(a, 0, out);
                out.push_str(", ");
                fmt_term(b, 0, out);
                out.push(')');
            }
            ("+", [a, b]) | ("*", [a, b]) => {
                let my = if s == "+" { 1 } else { 2 };
                if prec > my {
                    out.push('(');
                }
                fmt_term(a, my, out);
                out.push_str(if s == "+" { " + " } else { " * " });
                fmt_term(b, my + 1, out);
                if prec > my {
                    out.push(')');
                }
            }
            _ => {
                out.push_str(s);
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    fmt_term(a, 0, out);
                }
                out.push(')');
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse, Signature};

    fn rt(s: &str, sig: &Signature) -> String {
        print(&parse(s, sig).unwrap())
    }

    #[test]
    fn examples() {
        let set = Signature::set();
        let f = Formula::forall("x", Formula::eq(Term::var("x"), Term::var("x")));
        assert_eq!(print(&f), "forall x. x = x");
        assert_eq!(rt("(a = b -> (b = c -> c = a))", &set), "a = b -> b = c -> c = a");
        assert_eq!(rt("(a = b -> b = c) -> c = a", &set), "(a = b -> b = c) -> c = a");
        assert_eq!(
            rt("forall y in x . exists z in y . z in x", &set),
            "forall y in x. exists z in y. z in x"
        );
        assert_eq!(
            rt("(forall x. x = x) /\\ y = y", &set),
            "(forall x. x = x) /\\ y = y"
        );
        assert_eq!(rt("y = y /\\ (forall x. x = x)", &set), "y = y /\\ forall x. x = x");
        assert_eq!(rt("~(x = y)", &set), "~x = y");
        assert_eq!(rt("~(x = y /\\ y = x)", &set), "~(x = y /\\ y = x)");
        let a = Signature::arith_plus();
        assert_eq!(rt("(x + y) * S(z + 0) = exp(x, y + 0)", &a), "(x + y) * S(z + 0) = exp(x, y + 0)");
        assert_eq!(rt("x + (y + z) = (x + y) + z", &a), "x + (y + z) = x + y + z");
    }
}
