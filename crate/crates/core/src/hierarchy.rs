//! The E_n / U_n complexity hierarchy.
//!
//! `E_0 = U_0` are the bounded formulas; `E_n` closes `U_{n-1}` under `∧, ∨`, bounded
//! quantifiers and `∃`; `U_n` closes `E_{n-1}` under `∧, ∨, ∀`, bounded quantifiers and
//! `ψ → φ` with `ψ ∈ E_{n-1}`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::logic::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexityLevel {
    pub e: u32,
    pub u: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    E,
    U,
}

impl fmt::Display for ComplexityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E={} U={}", self.e, self.u)
    }
}

const INF: u32 = u32::MAX / 4;

/// Least syntactic levels. At each node the level reachable by the node's own
/// constructor is combined with the cross inclusion `U_{n-1} ⊆ E_n`, `E_{n-1} ⊆ U_n`.
pub fn classify(f: &Formula) -> ComplexityLevel {
    if f.is_delta0() {
        return ComplexityLevel { e: 0, u: 0 };
    }
    let (se, su) = match f {
        Formula::Atom(..) | Formula::Eq(..) | Formula::False => unreachable!("bounded"),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a, b) = (classify(a), classify(b));
            (a.e.max(b.e), a.u.max(b.u))
        }
        Formula::BForall(_, _, body) | Formula::BExists(_, _, body) => {
            let c = classify(body);
            (c.e, c.u)
        }
        Formula::Exists(_, body) => (classify(body).e.max(1), INF),
        Formula::Forall(_, body) => (INF, classify(body).u.max(1)),
        Formula::Implies(a, b) => {
            let (a, b) = (classify(a), classify(b));
            (INF, 1.max(a.e + 1).max(b.u))
        }
    };
    ComplexityLevel {
        e: se.min(su + 1),
        u: su.min(se + 1),
    }
}

pub fn member_of(f: &Formula, cls: Class, n: u32) -> bool {
    let c = classify(f);
    match cls {
        Class::E => c.e <= n,
        Class::U => c.u <= n,
    }
}

/// Membership read directly off the inductive definition, recursing on the level and on
/// the formula. Exponential in the worst case; intended for small formulas.
pub fn in_level(f: &Formula, cls: Class, n: u32) -> bool {
    if n == 0 {
        return f.is_delta0();
    }
    match cls {
        Class::E => {
            in_level(f, Class::U, n - 1)
                || match f {
                    Formula::And(a, b) | Formula::Or(a, b) => {
                        in_level(a, Class::E, n) && in_level(b, Class::E, n)
                    }
                    Formula::BForall(_, _, body)
                    | Formula::BExists(_, _, body)
                    | Formula::Exists(_, body) => in_level(body, Class::E, n),
                    _ => false,
                }
        }
        Class::U => {
            in_level(f, Class::E, n - 1)
                || match f {
                    Formula::And(a, b) | Formula::Or(a, b) => {
                        in_level(a, Class::U, n) && in_level(b, Class::U, n)
                    }
                    Formula::BForall(_, _, body)
                    | Formula::BExists(_, _, body)
                    | Formula::Forall(_, body) => in_level(body, Class::U, n),
                    Formula::Implies(a, b) => {
                        in_level(a, Class::E, n - 1) && in_level(b, Class::U, n)
                    }
                    _ => false,
                }
        }
    }
}

/// The classes `E_0..=E_top` and `U_0..=U_top` built as explicit sets over a finite,
/// subformula-closed universe, by iterating each closure rule to a fixpoint.
pub struct ClosureSets {
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
    e: Vec<Vec<bool>>,
    u: Vec<Vec<bool>>,
}

enum Shape {
    Leaf,
    Conn(usize, usize, bool),
    Bounded(usize),
    Ex(usize),
    All(usize),
}

impl ClosureSets {
    pub fn build(seeds: impl IntoIterator<Item = Formula>, top: u32) -> Self {
        let mut formulas = Vec::new();
        let mut index = HashMap::new();
        for f in seeds {
            insert_closed(&f, &mut formulas, &mut index);
        }
        let shapes: Vec<Shape> = formulas
            .iter()
            .map(|f| {
                let id = |g: &Formula| index[g];
                match f {
                    Formula::And(a, b) | Formula::Or(a, b) => Shape::Conn(id(a), id(b), false),
                    Formula::Implies(a, b) => Shape::Conn(id(a), id(b), true),
                    Formula::BForall(_, _, b) | Formula::BExists(_, _, b) => Shape::Bounded(id(b)),
                    Formula::Exists(_, b) => Shape::Ex(id(b)),
                    Formula::Forall(_, b) => Shape::All(id(b)),
                    _ => Shape::Leaf,
                }
            })
            .collect();
        let level0: Vec<bool> = formulas.iter().map(Formula::is_delta0).collect();
        let mut e = vec![level0.clone()];
        let mut u = vec![level0];
        for n in 1..=top as usize {
            let mut en = u[n - 1].clone();
            saturate(&mut en, |set, i| match shapes[i] {
                Shape::Conn(a, b, false) => set[a] && set[b],
                Shape::Bounded(b) | Shape::Ex(b) => set[b],
                _ => false,
            });
            let prev_e = e[n - 1].clone();
            let mut un = prev_e.clone();
            saturate(&mut un, |set, i| match shapes[i] {
                Shape::Conn(a, b, false) => set[a] && set[b],
                Shape::Conn(a, b, true) => prev_e[a] && set[b],
                Shape::Bounded(b) | Shape::All(b) => set[b],
                _ => false,
            });
            e.push(en);
            u.push(un);
        }
        Self {
            formulas,
            index,
            e,
            u,
        }
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn top(&self) -> u32 {
        (self.e.len() - 1) as u32
    }

    pub fn contains(&self, f: &Formula, cls: Class, n: u32) -> Option<bool> {
        let i = *self.index.get(f)?;
        let table = match cls {
            Class::E => &self.e,
            Class::U => &self.u,
        };
        table.get(n as usize).map(|s| s[i])
    }
}

fn saturate(set: &mut [bool], rule: impl Fn(&[bool], usize) -> bool) {
    loop {
        let mut changed = false;
        for i in 0..set.len() {
            if !set[i] && rule(set, i) {
                set[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

fn insert_closed(f: &Formula, out: &mut Vec<Formula>, index: &mut HashMap<Formula, usize>) {
    if index.contains_key(f) {
        return;
    }
    match f {
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            insert_closed(a, out, index);
            insert_closed(b, out, index);
        }
        Formula::Forall(_, b)
        | Formula::Exists(_, b)
        | Formula::BForall(_, _, b)
        | Formula::BExists(_, _, b) => insert_closed(b, out, index),
        _ => {}
    }
    index.insert(f.clone(), out.len());
    out.push(f.clone());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse, Signature};

    fn cl(s: &str, sig: &Signature) -> ComplexityLevel {
        classify(&parse(s, sig).unwrap())
    }

    #[test]
    fn examples() {
        let a = Signature::arith();
        assert_eq!(cl("x = y", &a), ComplexityLevel { e: 0, u: 0 });
        assert_eq!(cl("exists y. x = y", &a), ComplexityLevel { e: 1, u: 2 });
        assert_eq!(cl("forall x. exists y. x = y", &a), ComplexityLevel { e: 3, u: 2 });
        let f = parse("exists y. x = y", &a).unwrap();
        assert!(!member_of(&f, Class::U, 1));
        assert!(member_of(&f, Class::E, 1));
        assert!(member_of(&f, Class::E, 4));
        let s = Signature::set();
        assert_eq!(cl("(exists z. z in x) -> x = x", &s), ComplexityLevel { e: 3, u: 2 });
        assert_eq!(cl("x = x -> exists z. z in x", &s), ComplexityLevel { e: 3, u: 2 });
        assert_eq!(cl("forall y in x. exists z. z in y", &s), ComplexityLevel { e: 1, u: 2 });
    }

    #[test]
    fn agrees_with_definition() {
        let s = Signature::set();
        for text in [
            "forall x. exists y. forall z. z in y",
            "(forall x. x in y) -> exists z. z = z",
            "exists x. (forall y. y in x) \\/ x = x",
            "forall x in y. (exists z. z in x -> forall w. w in z)",
        ] {
            let f = parse(text, &s).unwrap();
            let c = classify(&f);
            for n in 0..6 {
                assert_eq!(in_level(&f, Class::E, n), c.e <= n, "{text} E{n}");
                assert_eq!(in_level(&f, Class::U, n), c.u <= n, "{text} U{n}");
            }
        }
    }
}
