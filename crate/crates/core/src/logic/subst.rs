use std::collections::{BTreeMap, BTreeSet};

use super::{Bound, Formula, Term};

/// `base` itself if unused, else the first of `base_1`, `base_2`, ... not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = match base.rfind('_') {
        Some(i) if base[i + 1..].chars().all(|c| c.is_ascii_digit()) && i + 1 < base.len() => {
            &base[..i]
        }
        _ => base,
    };
    (1..)
        .map(|n| format!("{stem}_{n}"))
        .find(|c| !avoid.contains(c))
        .expect("unbounded supply")
}

pub fn term_subst(t: &Term, map: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::App(s, args) => Term::App(s.clone(), args.iter().map(|a| term_subst(a, map)).collect()),
    }
}

/// Capture-avoiding `f[x := t]`.
pub fn substitute(f: &Formula, var: &str, t: &Term) -> Formula {
    let mut m = BTreeMap::new();
    m.insert(var.to_string(), t.clone());
    substitute_all(f, &m)
}

pub fn rename_free(f: &Formula, old: &str, new: &str) -> Formula {
    substitute(f, old, &Term::var(new))
}

/// Simultaneous capture-avoiding substitution. Bound variables that would capture a
/// variable of an inserted term are renamed with [`fresh_name`].
pub fn substitute_all(f: &Formula, map: &BTreeMap<String, Term>) -> Formula {
    if map.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Atom(p, ts) => Formula::Atom(p.clone(), ts.iter().map(|t| term_subst(t, map)).collect()),
        Formula::Eq(a, b) => Formula::Eq(term_subst(a, map), term_subst(b, map)),
        Formula::False => Formula::False,
        Formula::And(a, b) => Formula::and(substitute_all(a, map), substitute_all(b, map)),
        Formula::Or(a, b) => Formula::or(substitute_all(a, map), substitute_all(b, map)),
        Formula::Implies(a, b) => Formula::implies(substitute_all(a, map), substitute_all(b, map)),
        Formula::Forall(v, body) => {
            let (v, body) = under_binder(v, body, map);
            Formula::Forall(v, Box::new(body))
        }
        Formula::Exists(v, body) => {
            let (v, body) = under_binder(v, body, map);
            Formula::Exists(v, Box::new(body))
        }
        Formula::BForall(v, bd, body) => {
            let bd = Bound {
                kind: bd.kind,
                term: term_subst(&bd.term, map),
            };
            let (v, body) = under_binder(v, body, map);
            Formula::BForall(v, bd, Box::new(body))
        }
        Formula::BExists(v, bd, body) => {
            let bd = Bound {
                kind: bd.kind,
                term: term_subst(&bd.term, map),
            };
            let (v, body) = under_binder(v, body, map);
            Formula::BExists(v, bd, Box::new(body))
        }
    }
}

fn under_binder(v: &str, body: &Formula, map: &BTreeMap<String, Term>) -> (String, Formula) {
    let mut inner: BTreeMap<String, Term> = map
        .iter()
        .filter(|(k, _)| k.as_str() != v && body.is_free(k))
        .map(|(k, t)| (k.clone(), t.clone()))
        .collect();
    if inner.is_empty() {
        return (v.to_string(), body.clone());
    }
    let captures = inner.values().any(|t| t.mentions(v));
    if !captures {
        return (v.to_string(), substitute_all(body, &inner));
    }
    let mut avoid = body.all_vars();
    for (k, t) in &inner {
        avoid.insert(k.clone());
        t.vars_into(&mut avoid);
    }
    avoid.insert(v.to_string());
    let nv = fresh_name(v, &avoid);
    inner.insert(v.to_string(), Term::var(nv.clone()));
    (nv, substitute_all(body, &inner))
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    alpha(f, g, &mut Vec::new())
}

fn term_alpha(s: &Term, t: &Term, env: &[(String, String)]) -> bool {
    match (s, t) {
        (Term::Var(a), Term::Var(b)) => {
            for (x, y) in env.iter().rev() {
                if x == a || y == b {
                    return x == a && y == b;
                }
            }
            a == b
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_alpha(x, y, env))
        }
        _ => false,
    }
}

fn alpha(f: &Formula, g: &Formula, env: &mut Vec<(String, String)>) -> bool {
    match (f, g) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_alpha(x, y, env))
        }
        (Formula::Eq(a, b), Formula::Eq(c, d)) => term_alpha(a, c, env) && term_alpha(b, d, env),
        (Formula::False, Formula::False) => true,
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Implies(a, b), Formula::Implies(c, d)) => alpha(a, c, env) && alpha(b, d, env),
        (Formula::Forall(v, a), Formula::Forall(w, b)) | (Formula::Exists(v, a), Formula::Exists(w, b)) => {
            env.push((v.clone(), w.clone()));
            let r = alpha(a, b, env);
            env.pop();
            r
        }
        (Formula::BForall(v, bv, a), Formula::BForall(w, bw, b))
        | (Formula::BExists(v, bv, a), Formula::BExists(w, bw, b)) => {
            if bv.kind != bw.kind || !term_alpha(&bv.term, &bw.term, env) {
                return false;
            }
            env.push((v.clone(), w.clone()));
            let r = alpha(a, b, env);
            env.pop();
            r
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse, print, Signature};

    #[test]
    fn examples() {
        let a = Signature::arith();
        let f = parse("x = y", &a).unwrap();
        assert_eq!(print(&substitute(&f, "x", &Term::succ(Term::zero()))), "S(0) = y");
        let f = parse("exists y. x = y", &a).unwrap();
        let g = substitute(&f, "x", &Term::var("y"));
        assert_eq!(print(&g), "exists y_1. y = y_1");
        let f = parse("forall x. x = x", &a).unwrap();
        assert_eq!(substitute(&f, "x", &Term::zero()), f);
        assert_eq!(substitute(&f, "z", &Term::zero()), f);
    }

    #[test]
    fn bound_term_is_substituted() {
        let s = Signature::set();
        let f = parse("forall z in x. z in x", &s).unwrap();
        let g = substitute(&f, "x", &Term::var("z"));
        assert_eq!(print(&g), "forall z_1 in z. z_1 in z");
    }

    #[test]
    fn simultaneous() {
        let a = Signature::arith();
        let f = parse("x = y", &a).unwrap();
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), Term::var("y"));
        m.insert("y".to_string(), Term::var("x"));
        assert_eq!(print(&substitute_all(&f, &m)), "y = x");
    }

    #[test]
    fn alpha_equivalence() {
        let s = Signature::set();
        let f = parse("forall a. exists b in a. b in c", &s).unwrap();
        let g = parse("forall u. exists v in u. v in c", &s).unwrap();
        let h = parse("forall u. exists v in u. v in d", &s).unwrap();
        let k = parse("forall u. exists c in u. c in c", &s).unwrap();
        assert!(alpha_eq(&f, &g));
        assert!(!alpha_eq(&f, &h));
        assert!(!alpha_eq(&f, &k));
    }

    #[test]
    fn fresh_names() {
        let avoid: BTreeSet<String> = ["x", "x_1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(fresh_name("x", &avoid), "x_2");
        assert_eq!(fresh_name("x_1", &avoid), "x_2");
        assert_eq!(fresh_name("y", &avoid), "y");
    }
}
