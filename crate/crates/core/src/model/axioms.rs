use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hf::{self, AckCode, HfSet};
use crate::logic::{parse, Signature};

use super::stage::{stage, Stage};
use super::{CheckReport, Compiled, ModelError, TruthValue, Value};

/// Random pairs drawn when a quadratic check runs over `D_5`.
pub const SAMPLE_PAIRS: usize = 1_000_000;
/// Random inhabited subsets of `D_5` drawn for set induction.
pub const SAMPLE_SUBSETS: usize = 2_000;
/// Elements of `D_5` drawn for the collection and replacement templates.
pub const SAMPLE_ELEMENTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Extensionality,
    Pairing,
    Union,
    BinaryIntersection,
    SetInduction,
    VEqFin,
    StrongCollectionTemplate,
    ReplacementTemplate,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Extensionality,
        Axiom::Pairing,
        Axiom::Union,
        Axiom::BinaryIntersection,
        Axiom::SetInduction,
        Axiom::VEqFin,
        Axiom::StrongCollectionTemplate,
        Axiom::ReplacementTemplate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Extensionality => "extensionality",
            Axiom::Pairing => "pairing",
            Axiom::Union => "union",
            Axiom::BinaryIntersection => "binary_intersection",
            Axiom::SetInduction => "set_induction",
            Axiom::VEqFin => "v_eq_fin",
            Axiom::StrongCollectionTemplate => "strong_collection_template",
            Axiom::ReplacementTemplate => "replacement_template",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s || a.name().replace('_', "-") == s)
    }
}

/// Δ0 class formulas `φ(x, y)` used for the collection schemes. The flag marks those
/// that define a function of `x`.
pub const CLASS_TEMPLATES: &[(&str, &str, bool)] = &[
    ("identity", "y = x", true),
    (
        "successor",
        "(forall z in y. z in x \\/ z = x) /\\ (forall z in x. z in y) /\\ x in y",
        true,
    ),
    ("singleton", "x in y /\\ (forall z in y. z = x)", true),
    (
        "union",
        "(forall z in y. exists w in x. z in w) /\\ (forall w in x. forall z in w. z in y)",
        true,
    ),
    (
        "with_empty",
        "(forall z in y. z = x \\/ (forall u in z. ~u = u)) /\\ x in y /\\ (exists e in y. forall u in e. ~u = u)",
        true,
    ),
    ("member", "y in x", false),
    ("container", "x in y", false),
    ("subset", "forall z in y. z in x", false),
];

fn compile(text: &str, free: &[&str]) -> Compiled {
    let f = parse(text, &Signature::set()).expect("bundled formula parses");
    Compiled::new(&f, free, false).expect("bundled formula compiles")
}

fn code_value(c: &AckCode) -> Value {
    Value::Code(c.value().clone())
}

fn in_stage(s: &Stage, c: &BigUint) -> bool {
    s.contains(c)
}

/// All pairs over the stage, or a seeded sample for `D_5`.
fn pairs(s: &Stage, seed: u64) -> (Vec<(u64, u64)>, bool) {
    if s.n < 5 {
        let e: Vec<u64> = s.elements().collect();
        let all = e.iter().flat_map(|&a| e.iter().map(move |&b| (a, b))).collect();
        return (all, false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(u64, u64)> = (0..SAMPLE_PAIRS)
        .map(|_| (rng.gen_range(0..s.bound), rng.gen_range(0..s.bound)))
        .collect();
    for a in s.elements() {
        out.push((a, a));
        for i in 0..16 {
            out.push((a, a ^ (1 << i)));
        }
    }
    (out, true)
}

fn elements(s: &Stage, seed: u64) -> (Vec<u64>, bool) {
    if s.n < 5 {
        return (s.elements().collect(), false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = vec![0, s.bound - 1];
    out.extend((0..SAMPLE_ELEMENTS - 2).map(|_| rng.gen_range(0..s.bound)));
    (out, true)
}

pub fn check_axiom(axiom: Axiom, n: u32, bump: u32, seed: u64) -> Result<CheckReport, ModelError> {
    let start = Instant::now();
    if n + bump > 5 {
        return Err(ModelError::StageRange(n + bump));
    }
    let base = stage(n)?;
    let top = stage(n + bump)?;
    let report = CheckReport::new(axiom.name(), n, bump);
    Ok(match axiom {
        Axiom::Extensionality => extensionality(report, &base, seed, start),
        Axiom::Pairing | Axiom::BinaryIntersection => {
            witnessed_pairs(axiom, report, &base, &top, seed, start)
        }
        Axiom::Union => union(report, &base, &top, start),
        Axiom::SetInduction => set_induction(report, &base, seed, start),
        Axiom::VEqFin => v_eq_fin(report, &base, start),
        Axiom::StrongCollectionTemplate => collection(report, &base, &top, false, seed, start),
        Axiom::ReplacementTemplate => collection(report, &base, &top, true, seed, start),
    })
}

fn sampled(mut r: CheckReport, seed: u64, what: &str) -> CheckReport {
    r.seed = Some(seed);
    r.note = Some(what.to_string());
    r
}

fn tally(r: &mut CheckReport, undecided: &mut u64, t: TruthValue) -> bool {
    r.cases += 1;
    match t {
        TruthValue::True => true,
        TruthValue::Unknown => {
            *undecided += 1;
            true
        }
        TruthValue::False => false,
    }
}

fn extensionality(mut r: CheckReport, s: &Stage, seed: u64, start: Instant) -> CheckReport {
    let phi = compile(
        "(forall z in a. z in b) /\\ (forall z in b. z in a) -> a = b",
        &["a", "b"],
    );
    let (ps, is_sampled) = pairs(s, seed);
    if is_sampled {
        r = sampled(r, seed, "random pairs, the diagonal and all one-bit neighbours");
    }
    let mut undecided = 0;
    for (a, b) in ps {
        if !tally(&mut r, &mut undecided, phi.eval(&[Value::num(a), Value::num(b)], 0)) {
            return r.fail(start, [("a", a.to_string()), ("b", b.to_string())]);
        }
    }
    r.settle(start, undecided)
}

fn witnessed_pairs(
    axiom: Axiom,
    mut r: CheckReport,
    s: &Stage,
    top: &Stage,
    seed: u64,
    start: Instant,
) -> CheckReport {
    let phi = match axiom {
        Axiom::Pairing => compile("a in w /\\ b in w /\\ (forall z in w. z = a \\/ z = b)", &["a", "b", "w"]),
        _ => compile(
            "(forall z in w. z in a /\\ z in b) /\\ (forall z in a. z in b -> z in w)",
            &["a", "b", "w"],
        ),
    };
    let (ps, is_sampled) = pairs(s, seed);
    if is_sampled {
        r = sampled(r, seed, "random pairs, the diagonal and all one-bit neighbours");
    }
    let mut undecided = 0;
    for (a, b) in ps {
        let (ca, cb) = (AckCode::from(a), AckCode::from(b));
        let w = match axiom {
            Axiom::Pairing => match hf::pair(&ca, &cb) {
                Ok(w) => w,
                Err(e) => return r.fail(start, [("a", a.to_string()), ("b", b.to_string()), ("error", e.to_string())]),
            },
            _ => hf::bininter(&ca, &cb),
        };
        let ok = in_stage(top, w.value())
            && tally(&mut r, &mut undecided, phi.eval(&[Value::num(a), Value::num(b), code_value(&w)], 0));
        if !ok {
            return r.fail(start, [("a", a.to_string()), ("b", b.to_string()), ("w", w.to_string())]);
        }
    }
    r.settle(start, undecided)
}

fn union(mut r: CheckReport, s: &Stage, top: &Stage, start: Instant) -> CheckReport {
    let phi = compile(
        "(forall z in w. exists y in a. z in y) /\\ (forall y in a. forall z in y. z in w)",
        &["a", "w"],
    );
    let mut undecided = 0;
    for a in s.elements() {
        let w = hf::setunion(&AckCode::from(a));
        let ok = in_stage(top, w.value())
            && tally(&mut r, &mut undecided, phi.eval(&[Value::num(a), code_value(&w)], 0));
        if !ok {
            return r.fail(start, [("a", a.to_string()), ("w", w.to_string())]);
        }
    }
    r.settle(start, undecided)
}

/// Every inhabited subset of the stage has an ∈-minimal element.
fn set_induction(mut r: CheckReport, s: &Stage, seed: u64, start: Instant) -> CheckReport {
    let phi = compile("exists x in s. forall y in x. ~y in s", &["s"]);
    let subsets: Vec<BigUint> = if s.n < 5 {
        (1..1u64 << s.bound).map(BigUint::from).collect()
    } else {
        r = sampled(r, seed, "random inhabited subsets, half of them avoiding codes below 16");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLE_SUBSETS)
            .map(|i| {
                let words: Vec<u64> = (0..s.bound / 64)
                    .map(|_| {
                        let density = rng.gen_range(0..4);
                        (0..density).fold(u64::MAX, |w, _| w & rng.gen::<u64>())
                    })
                    .collect();
                let mut x = BigUint::from_slice(
                    &words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect::<Vec<_>>(),
                );
                if i % 2 == 1 {
                    x >>= 16;
                    x <<= 16;
                }
                if x == BigUint::default() {
                    x.set_bit(s.bound - 1, true);
                }
                x
            })
            .collect()
    };
    let mut undecided = 0;
    for x in subsets {
        let t = phi.eval(&[Value::Code(x.clone())], 0);
        if !tally(&mut r, &mut undecided, t) {
            return r.fail(start, [("subset", Value::Code(x).to_string())]);
        }
    }
    r.settle(start, undecided)
}

/// Splits a Kuratowski pair `{{a}, {a, b}}`.
fn unpair(p: &HfSet) -> Option<(HfSet, HfSet)> {
    match p.children() {
        [s] => match s.children() {
            [a] => Some((a.clone(), a.clone())),
            _ => None,
        },
        [s, t] => {
            let (single, double) = if s.len() == 1 { (s, t) } else { (t, s) };
            let [a] = single.children() else { return None };
            if double.len() != 2 || !double.contains(a) {
                return None;
            }
            let b = double.children().iter().find(|c| *c != a)?;
            Some((a.clone(), b.clone()))
        }
        _ => None,
    }
}

/// `f = f' ∪ {⟨c, v(σ(a'))⟩}` for `a = {c} ∪ a'` with `c` the largest member of `a`.
pub fn fin_bijection(a: &AckCode) -> HfSet {
    let members = hf::decode(a);
    let mut pairs = Vec::new();
    for (k, c) in members.children().iter().enumerate() {
        pairs.push(HfSet::ordered_pair(c.clone(), hf::von_neumann(k as u64)));
    }
    HfSet::from_children(pairs)
}

/// Whether `f` is a bijection from `dom` onto `ran`.
fn is_bijection(f: &HfSet, dom: &HfSet, ran: &HfSet) -> bool {
    let mut forward = BTreeMap::new();
    let mut back = BTreeMap::new();
    for p in f.children() {
        let Some((a, b)) = unpair(p) else { return false };
        if !dom.contains(&a) || !ran.contains(&b) {
            return false;
        }
        if forward.insert(a.clone(), b.clone()).is_some() || back.insert(b, a).is_some() {
            return false;
        }
    }
    forward.len() == dom.len() && back.len() == ran.len()
}

fn v_eq_fin(mut r: CheckReport, s: &Stage, start: Instant) -> CheckReport {
    let mut coded = 0u64;
    let mut staged = 0u64;
    for a in s.elements() {
        let code = AckCode::from(a);
        let f = fin_bijection(&code);
        let n = hf::von_neumann(hf::sigma(&code));
        r.cases += 1;
        if !is_bijection(&f, &hf::decode(&code), &n) {
            return r.fail(start, [("x", a.to_string())]);
        }
        if let Some(c) = f.code() {
            coded += 1;
            if c.value() < &BigUint::from(65536u32) {
                staged += 1;
            }
        }
    }
    r.note = Some(format!(
        "{coded} of {} bijections have a code under the bit cap, {staged} lie in D_5",
        r.cases
    ));
    r.settle(start, 0)
}

fn collection(
    mut r: CheckReport,
    s: &Stage,
    top: &Stage,
    replacement: bool,
    seed: u64,
    start: Instant,
) -> CheckReport {
    let (domain, is_sampled) = elements(s, seed);
    if is_sampled {
        r = sampled(r, seed, "sampled elements of D_5");
    }
    let mut undecided = 0;
    for &(name, phi, functional) in CLASS_TEMPLATES {
        if replacement && !functional {
            continue;
        }
        let body = compile(phi, &["x", "y"]);
        let concl = compile(
            &format!("(forall x in a. exists y in b. {phi}) /\\ (forall y in b. exists x in a. {phi})"),
            &["a", "b"],
        );
        // Per element: the least image in the bumped stage, and whether it is the only one.
        let mut images: BTreeMap<u64, Option<(u64, bool)>> = BTreeMap::new();
        let mut image = |x: u64| -> Option<(u64, bool)> {
            *images.entry(x).or_insert_with(|| {
                let mut found = None;
                for y in top.elements() {
                    if body.eval(&[Value::num(x), Value::num(y)], 0) == TruthValue::True {
                        match found {
                            None if !replacement => return Some((y, false)),
                            None => found = Some((y, true)),
                            Some(_) => return found.map(|(y0, _)| (y0, false)),
                        }
                    }
                }
                found
            })
        };
        for &a in &domain {
            r.cases += 1;
            let xs = hf::decode(&AckCode::from(a));
            let mut b = BigUint::default();
            let mut vacuous = false;
            for x in xs.children() {
                let x = x.code().and_then(AckCode::to_u64).expect("stage element");
                match image(x) {
                    Some((y, unique)) if unique || !replacement => b.set_bit(y, true),
                    _ => vacuous = true,
                }
            }
            if vacuous {
                continue;
            }
            let ok = in_stage(top, &b)
                && tally(&mut r, &mut undecided, concl.eval(&[Value::num(a), Value::Code(b.clone())], 0));
            if !ok {
                return r.fail(start, [
                    ("template", name.to_string()),
                    ("a", a.to_string()),
                    ("b", Value::Code(b).to_string()),
                ]);
            }
        }
    }
    r.settle(start, undecided)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Outcome;

    #[test]
    fn unpair_roundtrip() {
        let a = hf::decode(&AckCode::from(3u64));
        let b = hf::decode(&AckCode::from(1u64));
        assert_eq!(unpair(&HfSet::ordered_pair(a.clone(), b.clone())), Some((a.clone(), b)));
        assert_eq!(unpair(&HfSet::ordered_pair(a.clone(), a.clone())), Some((a.clone(), a)));
    }

    #[test]
    fn bijection_for_small_sets() {
        let f = fin_bijection(&AckCode::from(5u64));
        assert_eq!(f.len(), 2);
        assert!(is_bijection(&f, &hf::decode(&AckCode::from(5u64)), &hf::von_neumann(2)));
        assert!(!is_bijection(&f, &hf::decode(&AckCode::from(5u64)), &hf::von_neumann(3)));
    }

    #[test]
    fn pairing_needs_the_bump() {
        assert_eq!(check_axiom(Axiom::Pairing, 3, 1, 0).unwrap().result, Outcome::Pass);
        let r = check_axiom(Axiom::Pairing, 3, 0, 0).unwrap();
        assert_eq!(r.result, Outcome::Fail);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn small_stage_axioms() {
        for ax in Axiom::ALL {
            for n in 0..=3 {
                let r = check_axiom(ax, n, 1, 0).unwrap();
                assert_eq!(r.result, Outcome::Pass, "{ax:?} at {n}: {r:?}");
            }
        }
    }
}
