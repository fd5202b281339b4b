//! Computational stand-ins for the graph formulas, and the matcher that spots their
//! instances inside larger formulas.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::hf::OrdOp;
use crate::interp::{
    graph_formula_on, interp_a, omega_formula_on, p_graph_formula_on, succ_formula, translate,
    zero_formula, Template,
};
use crate::logic::{Formula, Term};

use super::value::Value;

/// Sets with more members than this are not enumerated as candidates.
pub(crate) const MEMBER_LIMIT: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Omega,
    Zero,
    Succ,
    Graph(OrdOp),
    P,
    Eps,
}

pub(crate) struct Entry {
    pub kind: OracleKind,
    pub template: Template,
    pub size: usize,
}

/// Set-side templates and their images under `a`. `a` is the identity on codes, so both
/// families share one oracle per kind.
pub(crate) fn registry() -> &'static [Entry] {
    static R: OnceLock<Vec<Entry>> = OnceLock::new();
    R.get_or_init(|| {
        let mut set = vec![
            (OracleKind::Omega, Template::new(["x"], omega_formula_on("x"))),
            (OracleKind::Zero, Template::new(["y"], zero_formula("y"))),
            (OracleKind::Succ, Template::new(["x0", "y"], succ_formula("x0", "y"))),
            (OracleKind::P, Template::new(["x", "y"], p_graph_formula_on("x", "y"))),
        ];
        for op in [OrdOp::Add, OrdOp::Mul, OrdOp::Exp] {
            set.push((
                OracleKind::Graph(op),
                Template::new(["x0", "x1", "y"], graph_formula_on(op, "x0", "x1", "y")),
            ));
        }
        let a = interp_a();
        let mut all: Vec<(OracleKind, Template)> = set
            .iter()
            .map(|(k, t)| {
                let body = translate(&a, &t.body).expect("set template");
                (*k, Template::new(t.params.clone(), body))
            })
            .collect();
        all.extend(set);
        all.push((OracleKind::Eps, a.predicates["in"].clone()));
        all.into_iter()
            .map(|(kind, template)| Entry {
                kind,
                size: template.body.size(),
                template,
            })
            .collect()
    })
}

/// Binds the template's parameters so that the instance is alpha-equivalent to `target`.
pub(crate) fn match_template(t: &Template, target: &Formula) -> Option<Vec<Term>> {
    let mut m = Matcher {
        params: &t.params,
        binds: vec![None; t.params.len()],
        env: Vec::new(),
    };
    if m.formula(&t.body, target) {
        m.binds.into_iter().collect()
    } else {
        None
    }
}

struct Matcher<'a> {
    params: &'a [String],
    binds: Vec<Option<Term>>,
    env: Vec<(String, String)>,
}

impl Matcher<'_> {
    fn term(&mut self, p: &Term, t: &Term) -> bool {
        match (p, t) {
            (Term::Var(a), _) => {
                for (x, y) in self.env.iter().rev() {
                    if x == a {
                        return matches!(t, Term::Var(b) if b == y) && self.innermost(t) == Some(a);
                    }
                }
                let Some(i) = self.params.iter().position(|q| q == a) else {
                    return t == p && self.innermost(t).is_none();
                };
                if self.env.iter().any(|(_, y)| t.mentions(y)) {
                    return false;
                }
                match &self.binds[i] {
                    Some(b) => b == t,
                    None => {
                        self.binds[i] = Some(t.clone());
                        true
                    }
                }
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.term(x, y))
            }
            _ => false,
        }
    }

    /// The pattern variable a bound target variable corresponds to.
    fn innermost(&self, t: &Term) -> Option<&String> {
        let Term::Var(b) = t else { return None };
        self.env.iter().rev().find(|(_, y)| y == b).map(|(x, _)| x)
    }

    fn binder(&mut self, v: &str, w: &str, a: &Formula, b: &Formula) -> bool {
        self.env.push((v.to_string(), w.to_string()));
        let r = self.formula(a, b);
        self.env.pop();
        r
    }

    fn formula(&mut self, p: &Formula, t: &Formula) -> bool {
        match (p, t) {
            (Formula::Atom(q, xs), Formula::Atom(r, ys)) => {
                q == r && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.term(x, y))
            }
            (Formula::Eq(a, b), Formula::Eq(c, d)) => self.term(a, c) && self.term(b, d),
            (Formula::False, Formula::False) => true,
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Implies(a, b), Formula::Implies(c, d)) => {
                self.formula(a, c) && self.formula(b, d)
            }
            (Formula::Forall(v, a), Formula::Forall(w, b))
            | (Formula::Exists(v, a), Formula::Exists(w, b)) => self.binder(v, w, a, b),
            (Formula::BForall(v, bv, a), Formula::BForall(w, bw, b))
            | (Formula::BExists(v, bv, a), Formula::BExists(w, bw, b)) => {
                bv.kind == bw.kind && self.term(&bv.term, &bw.term) && self.binder(v, w, a, b)
            }
            _ => false,
        }
    }
}

fn ord(v: &Value) -> Option<u128> {
    v.ordinal_index()
}

/// `x ∪ {x}` iterated `k` times; `None` once the code passes the cap.
fn add_value(x: &Value, k: u128) -> Option<Value> {
    if let Some(m) = ord(x) {
        return m.checked_add(k).map(Value::numeral);
    }
    let mut w = x.clone();
    for _ in 0..k {
        w = w.succ()?;
    }
    Some(w)
}

/// Decides an instance. `None` when the answer depends on values that cannot be held.
pub(crate) fn check(kind: OracleKind, a: &[Value]) -> Option<bool> {
    Some(match kind {
        OracleKind::Omega => ord(&a[0]).is_some(),
        OracleKind::Zero => a[0].is_empty_set(),
        OracleKind::Succ => a[0].succ().as_ref() == Some(&a[1]),
        OracleKind::Eps => a[1].contains(&a[0]),
        OracleKind::P => match (&a[0], ord(&a[1])) {
            (Value::Code(c), Some(n)) => c.to_u128() == Some(n),
            _ => false,
        },
        OracleKind::Graph(op) => {
            let Some(k) = ord(&a[1]) else { return Some(false) };
            match graph_value(op, &a[0], k)? {
                Some(z) => z == a[2],
                None => false,
            }
        }
    })
}

/// `Some(Some(z))` the result, `Some(None)` a result too large to hold, `None` undecided.
fn graph_value(op: OrdOp, x: &Value, k: u128) -> Option<Option<Value>> {
    match op {
        OrdOp::Add => Some(add_value(x, k)),
        OrdOp::Mul if k == 0 => Some(Some(Value::zero())),
        OrdOp::Exp if k == 0 => Some(Some(Value::num(1))),
        OrdOp::Mul | OrdOp::Exp => {
            let Some(m) = ord(x) else { return Some(None) };
            let r = if op == OrdOp::Mul {
                m.checked_mul(k)?
            } else {
                m.checked_pow(u32::try_from(k).ok()?)?
            };
            Some(Some(Value::numeral(r)))
        }
    }
}

/// All values of argument `i` making the instance true, given the others. `None` when
/// the set is infinite or cannot be listed.
pub(crate) fn solve(kind: OracleKind, a: &[Option<Value>], i: usize) -> Option<Vec<Value>> {
    let known = |j: usize| a[j].as_ref().expect("known argument");
    match (kind, i) {
        (OracleKind::Zero, 0) => Some(vec![Value::zero()]),
        (OracleKind::Succ, 1) => known(0).succ().map(|s| vec![s]),
        (OracleKind::Succ, 0) => Some(known(1).pred().into_iter().collect()),
        (OracleKind::Eps, 0) => {
            let b = known(1);
            (b.cardinality() <= MEMBER_LIMIT).then(|| b.members())
        }
        (OracleKind::P, 1) => match known(0) {
            Value::Code(c) => c.to_u128().map(|n| vec![Value::numeral(n)]),
            Value::Vn(_) => None,
        },
        (OracleKind::P, 0) => Some(match ord(known(1)) {
            Some(n) => vec![Value::Code(BigUint::from(n))],
            None => vec![],
        }),
        (OracleKind::Graph(op), 2) => {
            let Some(k) = ord(known(1)) else { return Some(vec![]) };
            graph_value(op, known(0), k)?.map(|z| vec![z])
        }
        (OracleKind::Graph(op), 0) => solve_left(op, known(1), known(2)),
        (OracleKind::Graph(op), 1) => solve_right(op, known(0), known(2)),
        _ => None,
    }
}

fn solve_left(op: OrdOp, y: &Value, z: &Value) -> Option<Vec<Value>> {
    let Some(k) = ord(y) else { return Some(vec![]) };
    match op {
        OrdOp::Add => {
            if let Some(n) = ord(z) {
                return Some(if k <= n { vec![Value::numeral(n - k)] } else { vec![] });
            }
            let mut w = z.clone();
            for _ in 0..k {
                match w.pred() {
                    Some(p) => w = p,
                    None => return Some(vec![]),
                }
            }
            Some(vec![w])
        }
        OrdOp::Mul | OrdOp::Exp if k == 0 => {
            let unit = if op == OrdOp::Mul { Value::zero() } else { Value::num(1) };
            if *z == unit {
                None
            } else {
                Some(vec![])
            }
        }
        OrdOp::Mul => Some(match ord(z) {
            Some(n) if n % k == 0 => vec![Value::numeral(n / k)],
            _ => vec![],
        }),
        OrdOp::Exp => {
            let Some(n) = ord(z) else { return Some(vec![]) };
            let e = u32::try_from(k).ok()?;
            Some(match int_root(n, e) {
                Some(m) => vec![Value::numeral(m)],
                None => vec![],
            })
        }
    }
}

fn solve_right(op: OrdOp, x: &Value, z: &Value) -> Option<Vec<Value>> {
    match op {
        OrdOp::Add => {
            if let (Some(m), Some(n)) = (ord(x), ord(z)) {
                return Some(if m <= n { vec![Value::numeral(n - m)] } else { vec![] });
            }
            if ord(z).is_some() {
                return Some(vec![]);
            }
            let mut w = z.clone();
            let mut k = 0u128;
            while w != *x {
                match w.pred() {
                    Some(p) => w = p,
                    None => return Some(vec![]),
                }
                k += 1;
            }
            Some(vec![Value::numeral(k)])
        }
        OrdOp::Mul => {
            let m = ord(x);
            if z.is_empty_set() {
                return if m == Some(0) { None } else { Some(vec![Value::zero()]) };
            }
            Some(match (m, ord(z)) {
                (Some(m), Some(n)) if m > 0 && n % m == 0 => vec![Value::numeral(n / m)],
                _ => vec![],
            })
        }
        OrdOp::Exp => None,
    }
}

fn int_root(n: u128, e: u32) -> Option<u128> {
    if e == 1 {
        return Some(n);
    }
    let (mut lo, mut hi) = (0u128, 1u128 << (128 / e).min(127));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(e) {
            Some(p) if p < n => lo = mid + 1,
            _ => hi = mid,
        }
    }
    (lo.checked_pow(e) == Some(n)).then_some(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse, Signature};

    fn n(k: u128) -> Value {
        Value::numeral(k)
    }

    #[test]
    fn graph_oracles() {
        let g = |op, x: &Value, y: &Value, z: &Value| check(OracleKind::Graph(op), &[x.clone(), y.clone(), z.clone()]);
        assert_eq!(g(OrdOp::Add, &n(1), &n(1), &n(2)), Some(true));
        assert_eq!(g(OrdOp::Add, &n(1), &n(1), &n(3)), Some(false));
        assert_eq!(g(OrdOp::Add, &Value::num(2), &n(0), &Value::num(2)), Some(true));
        assert_eq!(g(OrdOp::Add, &n(0), &Value::num(2), &n(0)), Some(false));
        assert_eq!(g(OrdOp::Mul, &Value::num(2), &n(0), &n(0)), Some(true));
        assert_eq!(g(OrdOp::Exp, &n(2), &n(70), &n(1 << 70)), Some(true));
        assert_eq!(solve(OracleKind::Graph(OrdOp::Add), &[None, Some(n(3)), Some(n(9))], 0), Some(vec![n(6)]));
        assert_eq!(solve(OracleKind::Graph(OrdOp::Add), &[Some(Value::num(2)), None, Some(Value::num(70))], 1), Some(vec![n(2)]));
        assert_eq!(solve(OracleKind::Graph(OrdOp::Exp), &[None, Some(n(3)), Some(n(27))], 0), Some(vec![n(3)]));
        assert_eq!(solve(OracleKind::Graph(OrdOp::Mul), &[None, Some(n(0)), Some(n(0))], 0), None);
    }

    #[test]
    fn p_oracle() {
        assert_eq!(check(OracleKind::P, &[Value::num(2), n(2)]), Some(true));
        assert_eq!(check(OracleKind::P, &[Value::num(2), Value::num(2)]), Some(false));
        assert_eq!(solve(OracleKind::P, &[None, Some(Value::Vn(40))], 0), Some(vec![Value::num(40)]));
        assert_eq!(solve(OracleKind::P, &[None, Some(Value::num(2))], 0), Some(vec![]));
    }

    #[test]
    fn matches_renamed_instances() {
        let s = Signature::set();
        let t = Template::new(["x0", "y"], succ_formula("x0", "y"));
        let inst = t.on_vars(&["z", "q"]);
        assert_eq!(match_template(&t, &inst), Some(vec![Term::var("z"), Term::var("q")]));
        let other = parse("forall z in q. z in q", &s).unwrap();
        assert_eq!(match_template(&t, &other), None);
        let eps = &interp_a().predicates["in"];
        let f = eps.instantiate(&[Term::var("r"), Term::succ(Term::var("m"))]);
        assert_eq!(match_template(eps, &f), Some(vec![Term::var("r"), Term::succ(Term::var("m"))]));
    }

    #[test]
    fn capture_is_rejected() {
        let s = Signature::set();
        let t = Template::new(["x"], parse("exists u. u in x", &s).unwrap());
        let f = parse("exists u. u in u", &s).unwrap();
        assert_eq!(match_template(&t, &f), None);
        let t = Template::new(["x"], parse("exists u in x. u = u", &s).unwrap());
        let f = parse("exists w in u. w = w", &s).unwrap();
        assert_eq!(match_template(&t, &f), Some(vec![Term::var("u")]));
    }

    #[test]
    fn roots() {
        assert_eq!(int_root(27, 3), Some(3));
        assert_eq!(int_root(28, 3), None);
        assert_eq!(int_root(1 << 100, 2), Some(1 << 50));
        assert_eq!(int_root(0, 5), Some(0));
    }
}
