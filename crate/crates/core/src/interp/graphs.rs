//! Set-theoretic graph formulas in the pure `{∈, =}` language.
//!
//! Functions are sets of Kuratowski pairs `⟨a,b⟩ = {{a},{a,b}}`. Every constructor here is
//! bounded except for the leading witness quantifiers of [`graph_formula`] and
//! [`p_graph_formula`].

use std::collections::BTreeSet;

use crate::hf::OrdOp;
use crate::logic::{fresh_name, Formula, Term};

/// Never hands out the same name twice, and never one of the reserved names.
pub(crate) struct Names(BTreeSet<String>);

impl Names {
    pub(crate) fn new<'a>(reserved: impl IntoIterator<Item = &'a str>) -> Self {
        Names(reserved.into_iter().map(str::to_string).collect())
    }

    pub(crate) fn fresh(&mut self, base: &str) -> String {
        let n = fresh_name(base, &self.0);
        self.0.insert(n.clone());
        n
    }
}

fn v(s: &str) -> Term {
    Term::var(s)
}

fn mem(a: &str, b: &str) -> Formula {
    Formula::member(v(a), v(b))
}

fn eq(a: &str, b: &str) -> Formula {
    Formula::eq(v(a), v(b))
}

fn all_in(x: &str, t: &str, body: Formula) -> Formula {
    Formula::all_in(x, v(t), body)
}

fn some_in(x: &str, t: &str, body: Formula) -> Formula {
    Formula::some_in(x, v(t), body)
}

/// `e = ∅`.
pub(crate) fn empty(ns: &mut Names, e: &str) -> Formula {
    let z = ns.fresh("z");
    all_in(&z, e, Formula::not(eq(&z, &z)))
}

/// `p = {a, b}`.
pub(crate) fn upair(ns: &mut Names, p: &str, a: &str, b: &str) -> Formula {
    let q = ns.fresh("q");
    Formula::and_all([
        mem(a, p),
        mem(b, p),
        all_in(&q, p, Formula::or(eq(&q, a), eq(&q, b))),
    ])
}

/// `p = ⟨a, b⟩`.
pub(crate) fn opair(ns: &mut Names, p: &str, a: &str, b: &str) -> Formula {
    let (s, t, q) = (ns.fresh("s"), ns.fresh("t"), ns.fresh("q"));
    Formula::and_all([
        some_in(&s, p, upair(ns, &s, a, a)),
        some_in(&t, p, upair(ns, &t, a, b)),
        all_in(&q, p, Formula::or(upair(ns, &q, a, a), upair(ns, &q, a, b))),
    ])
}

/// `⟨a, b⟩ ∈ f`.
pub(crate) fn app(ns: &mut Names, f: &str, a: &str, b: &str) -> Formula {
    let p = ns.fresh("p");
    some_in(&p, f, opair(ns, &p, a, b))
}

/// `∃b. ⟨a, b⟩ ∈ f`, with `b` bounded through the pair.
pub(crate) fn defined_at(ns: &mut Names, f: &str, a: &str) -> Formula {
    let (p, t, b) = (ns.fresh("p"), ns.fresh("t"), ns.fresh("b"));
    some_in(&p, f, some_in(&t, &p, some_in(&b, &t, opair(ns, &p, a, &b))))
}

/// `∀⟨a, b⟩ ∈ f. body(a, b)`. The names handed to `body` are fresh.
pub(crate) fn for_pairs(
    ns: &mut Names,
    f: &str,
    body: impl FnOnce(&mut Names, &str, &str) -> Formula,
) -> Formula {
    let (p, s, a, t, b) = (
        ns.fresh("p"),
        ns.fresh("s"),
        ns.fresh("a"),
        ns.fresh("t"),
        ns.fresh("b"),
    );
    let guard = opair(ns, &p, &a, &b);
    let inner = body(ns, &a, &b);
    all_in(
        &p,
        f,
        all_in(
            &s,
            &p,
            all_in(&a, &s, all_in(&t, &p, all_in(&b, &t, Formula::implies(guard, inner)))),
        ),
    )
}

/// `∃⟨a, b⟩ ∈ f. body(a, b)`.
pub(crate) fn some_pair(
    ns: &mut Names,
    f: &str,
    body: impl FnOnce(&mut Names, &str, &str) -> Formula,
) -> Formula {
    let (p, s, a, t, b) = (
        ns.fresh("p"),
        ns.fresh("s"),
        ns.fresh("a"),
        ns.fresh("t"),
        ns.fresh("b"),
    );
    let guard = opair(ns, &p, &a, &b);
    let inner = body(ns, &a, &b);
    some_in(
        &p,
        f,
        some_in(
            &s,
            &p,
            some_in(&a, &s, some_in(&t, &p, some_in(&b, &t, Formula::and(guard, inner)))),
        ),
    )
}

/// `f` is a set of ordered pairs, single-valued.
pub(crate) fn is_fun(ns: &mut Names, f: &str) -> Formula {
    let (p, s, a, t, b) = (
        ns.fresh("p"),
        ns.fresh("s"),
        ns.fresh("a"),
        ns.fresh("t"),
        ns.fresh("b"),
    );
    let pairs = all_in(
        &p,
        f,
        some_in(
            &s,
            &p,
            some_in(&a, &s, some_in(&t, &p, some_in(&b, &t, opair(ns, &p, &a, &b)))),
        ),
    );
    let single = for_pairs(ns, f, |ns, a, b| {
        let (a, b) = (a.to_string(), b.to_string());
        for_pairs(ns, f, |_, a2, b2| Formula::implies(eq(&a, a2), eq(&b, b2)))
    });
    Formula::and(pairs, single)
}

/// `dom f = y ∪ {y}`.
pub(crate) fn dom_succ(ns: &mut Names, f: &str, y: &str) -> Formula {
    let k = ns.fresh("k");
    let below = all_in(&k, y, defined_at(ns, f, &k));
    let top = defined_at(ns, f, y);
    let within = for_pairs(ns, f, |_, a, _| Formula::or(mem(a, y), eq(a, y)));
    Formula::and_all([below, top, within])
}

/// `y = x ∪ {x}`.
pub fn succ_formula(x: &str, y: &str) -> Formula {
    let mut ns = Names::new([x, y]);
    succ(&mut ns, x, y)
}

pub(crate) fn succ(ns: &mut Names, x: &str, y: &str) -> Formula {
    let (z, w) = (ns.fresh("z"), ns.fresh("z"));
    Formula::and_all([
        all_in(&z, y, Formula::or(mem(&z, x), eq(&z, x))),
        all_in(&w, x, mem(&w, y)),
        mem(x, y),
    ])
}

/// `y = ∅`.
pub fn zero_formula(y: &str) -> Formula {
    let mut ns = Names::new([y]);
    empty(&mut ns, y)
}

fn one(ns: &mut Names, y: &str) -> Formula {
    let (z, w) = (ns.fresh("z"), ns.fresh("z"));
    let zero = empty(ns, &w);
    Formula::and(
        some_in(&w, y, zero),
        all_in(&z, y, Formula::not(some_in(&ns.fresh("u"), &z, Formula::truth()))),
    )
}

/// The shared shape of the recursion graphs: `f` is a function on `y⁺` with `f(0)` given
/// by `base`, `f(k⁺)` related to `f(k)` by `step`, and `f(y) = z`.
fn recursion_core(
    ns: &mut Names,
    y: &str,
    z: &str,
    f: &str,
    base: impl FnOnce(&mut Names, &str) -> Formula,
    step: impl FnOnce(&mut Names, &str, &str) -> Formula,
) -> Formula {
    let funct = is_fun(ns, f);
    let dom = dom_succ(ns, f, y);
    let start = some_pair(ns, f, |ns, a, b| {
        let b = b.to_string();
        Formula::and(empty(ns, a), base(ns, &b))
    });
    let k = ns.fresh("k");
    let steps = all_in(
        &k,
        y,
        some_pair(ns, f, |ns, a, b| {
            let (a, b) = (a.to_string(), b.to_string());
            let kk = k.clone();
            some_pair(ns, f, |ns, a2, b2| {
                Formula::and_all([eq(&a, &kk), succ(ns, &a, a2), step(ns, &b, b2)])
            })
        }),
    );
    let fin = app(ns, f, y, z);
    Formula::and_all([funct, dom, start, steps, fin])
}

fn add_core(ns: &mut Names, x: &str, y: &str, z: &str, f: &str) -> Formula {
    let x0 = x.to_string();
    recursion_core(ns, y, z, f, |_, b| eq(b, &x0), succ)
}

fn mul_core(ns: &mut Names, x: &str, y: &str, z: &str, f: &str, w: &str) -> Formula {
    let (x0, w0) = (x.to_string(), w.to_string());
    recursion_core(ns, y, z, f, empty, move |ns, b, b2| {
        let g = ns.fresh("g");
        let inner = add_core(ns, b, &x0, b2, &g);
        some_in(&g, &w0, inner)
    })
}

fn exp_core(ns: &mut Names, x: &str, y: &str, z: &str, f: &str, w: &str, vv: &str) -> Formula {
    let (x0, w0, v0) = (x.to_string(), w.to_string(), vv.to_string());
    recursion_core(ns, y, z, f, one, move |ns, b, b2| {
        let (h, u) = (ns.fresh("h"), ns.fresh("U"));
        let inner = mul_core(ns, b, &x0, b2, &h, &u);
        some_in(&h, &w0, some_in(&u, &v0, inner))
    })
}

/// `G(x, y, z)`: `x ∘ y = z` for von Neumann numerals, as a witness-function recursion on
/// `y`. Multiplication and exponentiation carry sets of witness functions for the inner
/// recursions so that every quantifier below the leading `∃` block is bounded.
pub fn graph_formula(op: OrdOp) -> Formula {
    graph_formula_on(op, "x", "y", "z")
}

pub fn graph_formula_on(op: OrdOp, x: &str, y: &str, z: &str) -> Formula {
    let mut ns = Names::new([x, y, z]);
    let f = ns.fresh("f");
    match op {
        OrdOp::Add => Formula::exists(f.clone(), add_core(&mut ns, x, y, z, &f)),
        OrdOp::Mul => {
            let w = ns.fresh("W");
            let core = mul_core(&mut ns, x, y, z, &f, &w);
            Formula::exists(f, Formula::exists(w, core))
        }
        OrdOp::Exp => {
            let (w, vv) = (ns.fresh("W"), ns.fresh("V"));
            let core = exp_core(&mut ns, x, y, z, &f, &w, &vv);
            Formula::exists_many(&[f, w, vv], core)
        }
    }
}

/// `S ∪ {j}` minus everything below `j`, for the least `j ∉ S`: binary increment on a set
/// of numerals read as bit positions.
fn inc(ns: &mut Names, s: &str, t: &str) -> Formula {
    let (j, k) = (ns.fresh("j"), ns.fresh("k"));
    let (i1, i2, i3, i4) = (ns.fresh("i"), ns.fresh("i"), ns.fresh("i"), ns.fresh("i"));
    let j_empty = empty(ns, &j);
    let j_succ = succ(ns, &k, &j);
    some_in(
        &j,
        t,
        Formula::and_all([
            Formula::not(mem(&j, s)),
            Formula::or(j_empty, some_in(&k, &j, j_succ)),
            all_in(&i1, &j, mem(&i1, s)),
            all_in(&i2, &j, Formula::not(mem(&i2, t))),
            all_in(&i3, s, Formula::implies(mem(&j, &i3), mem(&i3, t))),
            all_in(&i4, t, Formula::or(eq(&i4, &j), Formula::and(mem(&i4, s), mem(&j, &i4)))),
        ]),
    )
}

/// `B` maps each numeral `n` of a transitive domain to the set of numerals at which `n`
/// has a one bit.
fn bits_core(ns: &mut Names, big_b: &str) -> Formula {
    let funct = is_fun(ns, big_b);
    let shape = for_pairs(ns, big_b, |ns, a, _| {
        let a = a.to_string();
        let zero = empty(ns, &a);
        let k = ns.fresh("k");
        let back = defined_at(ns, big_b, &k);
        let sc = succ(ns, &k, &a);
        Formula::or(zero, some_in(&k, &a, Formula::and(back, sc)))
    });
    let base = for_pairs(ns, big_b, |ns, a, b| {
        let b = b.to_string();
        let za = empty(ns, a);
        let zb = empty(ns, &b);
        Formula::implies(za, zb)
    });
    let step = for_pairs(ns, big_b, |ns, a, b| {
        let (a, b) = (a.to_string(), b.to_string());
        for_pairs(ns, big_b, |ns, a2, b2| {
            let sc = succ(ns, &a, a2);
            let ic = inc(ns, &b, b2);
            Formula::implies(sc, ic)
        })
    });
    Formula::and_all([funct, shape, base, step])
}

/// Every element of `dom g` has its members in `dom g`.
fn trans_dom(ns: &mut Names, g: &str) -> Formula {
    for_pairs(ns, g, |ns, a, _| {
        let a = a.to_string();
        let w = ns.fresh("w");
        let d = defined_at(ns, g, &w);
        all_in(&w, &a, d)
    })
}

/// For each `⟨u, n⟩ ∈ g`, `B(n)` is the image of `u` under `g`.
fn link(ns: &mut Names, g: &str, big_b: &str) -> Formula {
    for_pairs(ns, g, |ns, u, n| {
        let (u, n) = (u.to_string(), n.to_string());
        some_pair(ns, big_b, |ns, n2, s| {
            let s = s.to_string();
            let (w1, e1, w2, e2) = (ns.fresh("w"), ns.fresh("e"), ns.fresh("w"), ns.fresh("e"));
            let hit = app(ns, g, &w1, &e1);
            let back = app(ns, g, &w2, &e2);
            Formula::and_all([
                eq(n2, &n),
                all_in(&e1, &s, some_in(&w1, &u, hit)),
                all_in(&w2, &u, some_in(&e2, &s, back)),
            ])
        })
    })
}

/// `P(x, y)`: `y` is the numeral `Σ{2^{P(w)} | w ∈ x}`, via a function `g` on a transitive
/// domain containing `x` and a bit table `B` for the numerals it reaches.
pub fn p_graph_formula() -> Formula {
    p_graph_formula_on("x", "y")
}

pub fn p_graph_formula_on(x: &str, y: &str) -> Formula {
    let mut ns = Names::new([x, y]);
    let (g, big_b) = (ns.fresh("g"), ns.fresh("B"));
    let funct = is_fun(&mut ns, &g);
    let td = trans_dom(&mut ns, &g);
    let at = app(&mut ns, &g, x, y);
    let bc = bits_core(&mut ns, &big_b);
    let ln = link(&mut ns, &g, &big_b);
    Formula::exists(
        g,
        Formula::and_all([funct, td, at, Formula::exists(big_b, Formula::and(bc, ln))]),
    )
}

/// Transitive set of transitive sets.
fn ordinal(ns: &mut Names, x: &str) -> Formula {
    let (b, c, d, e) = (ns.fresh("b"), ns.fresh("c"), ns.fresh("c"), ns.fresh("c"));
    Formula::and(
        all_in(&b, x, all_in(&c, &b, mem(&c, x))),
        all_in(&d, x, all_in(&e, &d, all_in(&c, &e, mem(&c, &d)))),
    )
}

/// `b = 0 ∨ ∃c∈b (Ord(c) ∧ b = c⁺)`.
fn zero_or_succ(ns: &mut Names, b: &str) -> Formula {
    let c = ns.fresh("c");
    let z = empty(ns, b);
    let o = ordinal(ns, &c);
    let s = succ(ns, &c, b);
    Formula::or(z, some_in(&c, b, Formula::and(o, s)))
}

/// `x ∈ ω`: an ordinal every element of whose successor is zero or a successor ordinal.
/// The successor `x⁺` is inlined, so the formula is bounded.
pub fn omega_formula() -> Formula {
    omega_formula_on("x")
}

pub fn omega_formula_on(x: &str) -> Formula {
    let mut ns = Names::new([x]);
    let b = ns.fresh("b");
    let o = ordinal(&mut ns, x);
    let inner = zero_or_succ(&mut ns, &b);
    let top = zero_or_succ(&mut ns, x);
    Formula::and_all([o, all_in(&b, x, inner), top])
}
