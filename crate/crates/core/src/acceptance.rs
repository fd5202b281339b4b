//! The acceptance suite: twelve end-to-end checks, each with a pinned time limit.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{random_formula, template_corpus, Language, Shape};
use crate::hf::{self, oracle as rec, AckCode, HfSet, OrdOp};
use crate::hierarchy::{classify, Class, ClosureSets};
use crate::interp::{self, interp_a, interp_b, translate, translate_graded};
use crate::logic::{BoundKind, Formula, Term};
use crate::model::{
    check_axiom, check_stage_props, lfp_inductive, roundtrip_check, Axiom, Compiled, Inductive,
    Roundtrip, TruthValue, Value, STAGE_BOUNDS,
};

/// Budget for the blind witness search of criterion 8.
pub const BLIND_BUDGET: u64 = 1 << 17;
/// Random Δ0 formulas per language for criterion 12.
pub const TOTALITY_FORMULAS: usize = 5_000;
/// Random depth 3 and 4 formulas checked against the closure sets.
pub const CLASSIFIER_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
    pub limit_ms: Option<u64>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let limit = self.limit_ms.map(|l| format!(" / limit {l} ms")).unwrap_or_default();
        format!(
            "criterion {:>2} {} {}: {} ({} ms{limit})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed_ms
        )
    }
}

pub const TITLES: [&str; 12] = [
    "codec bijection",
    "membership agreement",
    "boolean algebra agreement",
    "von Neumann ladder",
    "ordinal arithmetic",
    "classifier calibration",
    "round-trip identities",
    "graph formula micro-validation",
    "stage suite",
    "inductive definitions",
    "complexity preservation",
    "bounded totality",
];

const LIMITS_MS: [Option<u64>; 12] = [
    Some(10_000),
    Some(5_000),
    Some(30_000),
    None,
    None,
    Some(60_000),
    Some(120_000),
    Some(60_000),
    Some(300_000),
    Some(10_000),
    None,
    None,
];

pub fn run(id: u32) -> CriterionResult {
    assert!((1..=12).contains(&id), "criteria are numbered 1 to 12");
    let start = Instant::now();
    let (ok, detail) = match id {
        1 => codec(),
        2 => membership(),
        3 => boolean_algebra(),
        4 => ladder(),
        5 => ordinal_arithmetic(),
        6 => classifier(),
        7 => roundtrips(),
        8 => micro_validation(),
        9 => stage_suite(),
        10 => inductive(),
        11 => complexity(),
        _ => totality(),
    };
    let elapsed = start.elapsed();
    let limit = LIMITS_MS[id as usize - 1];
    let in_time = limit.is_none_or(|l| elapsed <= Duration::from_millis(l));
    let detail = if ok && !in_time { format!("{detail}; over the time limit") } else { detail };
    CriterionResult {
        id,
        title: TITLES[id as usize - 1],
        passed: ok && in_time,
        detail,
        elapsed_ms: elapsed.as_millis() as u64,
        limit_ms: limit,
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=12).map(run).collect()
}

/// Runs `f` over `0..n` split across threads; returns the first failure.
fn par_find<F>(n: u64, f: F) -> Option<String>
where
    F: Fn(u64) -> Option<String> + Sync,
{
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get()) as u64;
    let chunk = n.div_ceil(threads.max(1)).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let f = &f;
                s.spawn(move || (t * chunk..((t + 1) * chunk).min(n)).find_map(f))
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().expect("worker")).next()
    })
}

fn codec() -> (bool, String) {
    let n = 1u64 << 16;
    let bad = par_find(n, |c| {
        let code = AckCode::from(c);
        let s = hf::decode(&code);
        let back = hf::encode(&s).ok()?;
        if back != code {
            return Some(format!("encode(decode({c})) = {back}"));
        }
        (hf::decode(&back) != s).then(|| format!("decode(encode(x)) differs at {c}"))
    });
    match bad {
        Some(b) => (false, b),
        None => (true, format!("{n} codes round-trip both ways")),
    }
}

fn membership() -> (bool, String) {
    for a in 0..12u64 {
        for b in 0..4096u64 {
            let (ca, cb) = (AckCode::from(a), AckCode::from(b));
            let bit = b >> a & 1 == 1;
            let e = hf::eps(&ca, &cb).unwrap();
            let o = hf::eps_oracle(&ca, &cb).unwrap();
            if e != bit || o != bit {
                return (false, format!("a={a} b={b}: eps={e} oracle={o} bit={bit}"));
            }
        }
    }
    (true, "eps, eps_oracle and the bit test agree on 12 x 4096 pairs".into())
}

fn boolean_algebra() -> (bool, String) {
    let n = 1u64 << 12;
    let sets: Vec<HfSet> = (0..n).map(|c| hf::decode(&AckCode::from(c))).collect();
    let code = |s: &HfSet| s.code().and_then(AckCode::to_u64);
    for a in 0..n {
        let u = hf::setunion(&AckCode::from(a)).to_u64();
        if u != Some(rec::union(a)) || u != code(&sets[a as usize].big_union()) {
            return (false, format!("union disagrees at {a}"));
        }
    }
    let bad = par_find(n, |a| {
        let (ca, sa) = (AckCode::from(a), &sets[a as usize]);
        for b in 0..n {
            let cb = AckCode::from(b);
            let sb = &sets[b as usize];
            let u = hf::binunion(&ca, &cb).to_u64();
            if u != Some(rec::binunion(a, b)) || u != code(&sa.union(sb)) {
                return Some(format!("binunion disagrees at ({a}, {b})"));
            }
            let i = hf::bininter(&ca, &cb).to_u64();
            if i != Some(rec::bininter(a, b)) || i != code(&sa.intersection(sb)) {
                return Some(format!("bininter disagrees at ({a}, {b})"));
            }
        }
        None
    });
    match bad {
        Some(b) => (false, b),
        None => (true, format!("three implementations agree on {n} x {n} pairs")),
    }
}

/// `v(n+1) = v(n) + 2^v(n)`, straight from the definition, as a reference.
fn v_reference(n: u64) -> BigUint {
    let mut v = BigUint::default();
    for _ in 0..n {
        let bit = u64::try_from(&v).expect("small numeral");
        v.set_bit(bit, true);
    }
    v
}

fn ladder() -> (bool, String) {
    for n in 0..=4u64 {
        let v = hf::v(n).unwrap();
        if v.to_u64() != Some(hf::V_TABLE[n as usize]) || v.value() != &v_reference(n) {
            return (false, format!("v({n}) = {v}"));
        }
        if hf::rank(&v) != n || hf::tc(&v).as_ref() != Ok(&v) {
            return (false, format!("rank or tc of v({n})"));
        }
    }
    for n in 0..=5u64 {
        if hf::is_von_neumann(&hf::v(n).unwrap()) != Some(n) {
            return (false, format!("is_von_neumann(v({n}))"));
        }
    }
    let v5 = hf::v(5).unwrap();
    if v5.bits() != 2060 || hf::v(6).is_ok() {
        return (false, "v(5) width or v(6) guard".into());
    }
    (true, "v = [0, 1, 3, 11, 2059], inverse through v(5), rank and tc fixed".into())
}

fn ordinal_arithmetic() -> (bool, String) {
    let mut cases = 0;
    for (op, coded_limit) in [(OrdOp::Add, 5), (OrdOp::Mul, 5), (OrdOp::Exp, 4)] {
        for x in 0..=8u64 {
            for y in 0..=8u64 {
                let Some(r) = op.apply(x, y) else { continue };
                if r > 16 {
                    continue;
                }
                let got = hf::ord_arith(op, &hf::von_neumann(x), &hf::von_neumann(y)).unwrap();
                cases += 1;
                if got.ordinal_index() != Some(r) {
                    return (false, format!("{x} {} {y} structurally", op.symbol()));
                }
                if r <= coded_limit && hf::encode(&got).ok() != hf::v(r).ok() {
                    return (false, format!("{x} {} {y} through encode", op.symbol()));
                }
            }
        }
    }
    (true, format!("{cases} operations match, coded ones through v"))
}

fn prenex(k: u32, exists_first: bool, lang: Language) -> Formula {
    let names: Vec<String> = (0..k).map(|i| format!("q{i}")).collect();
    let matrix = match lang {
        Language::Set => Formula::and_all(names.windows(2).map(|w| {
            Formula::or(Formula::member(Term::var(&w[0]), Term::var(&w[1])), Formula::eq(Term::var(&w[1]), Term::var("x")))
        }).chain([Formula::member(Term::var(&names[0]), Term::var("x"))])),
        Language::Arith => Formula::and_all(
            names.iter().map(|n| Formula::eq(Term::add(Term::var(n), Term::var("x")), Term::succ(Term::var(n)))),
        ),
    };
    names.iter().enumerate().rev().fold(matrix, |body, (i, n)| {
        if (i % 2 == 0) == exists_first {
            Formula::exists(n.clone(), body)
        } else {
            Formula::forall(n.clone(), body)
        }
    })
}

/// Formulas over `x`, `y` with atoms `x ∈ y`, `x = y`, `⊥`, the connectives, the four
/// unbounded quantifiers and `∀x∈y`, `∃x∈y`.
fn fragment(depth: u32) -> Vec<Formula> {
    let x = || Term::var("x");
    let y = || Term::var("y");
    let mut levels: Vec<Vec<Formula>> = vec![vec![Formula::member(x(), y()), Formula::eq(x(), y()), Formula::False]];
    for _ in 0..depth {
        let below: Vec<Formula> = levels.iter().flatten().cloned().collect();
        let top = levels.last().unwrap().clone();
        let mut next = Vec::new();
        for f in &top {
            for v in ["x", "y"] {
                next.push(Formula::exists(v, f.clone()));
                next.push(Formula::forall(v, f.clone()));
            }
            next.push(Formula::bforall("x", BoundKind::In, y(), f.clone()));
            next.push(Formula::bexists("x", BoundKind::In, y(), f.clone()));
        }
        for a in &below {
            for b in &below {
                if top.contains(a) || top.contains(b) {
                    next.push(Formula::and(a.clone(), b.clone()));
                    next.push(Formula::or(a.clone(), b.clone()));
                    next.push(Formula::implies(a.clone(), b.clone()));
                }
            }
        }
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

fn random_fragment(rng: &mut impl Rng, depth: u32) -> Formula {
    let x = || Term::var("x");
    let y = || Term::var("y");
    if depth == 0 || rng.gen_bool(0.15) {
        return match rng.gen_range(0..3) {
            0 => Formula::member(x(), y()),
            1 => Formula::eq(x(), y()),
            _ => Formula::False,
        };
    }
    let sub = |rng: &mut _| random_fragment(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => Formula::and(sub(rng), sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::implies(sub(rng), sub(rng)),
        3 => Formula::exists(if rng.gen() { "x" } else { "y" }, sub(rng)),
        4 => Formula::forall(if rng.gen() { "x" } else { "y" }, sub(rng)),
        5 => Formula::bforall("x", BoundKind::In, y(), sub(rng)),
        6 => Formula::bexists("x", BoundKind::In, y(), sub(rng)),
        7 => Formula::implies(Formula::exists("y", sub(rng)), sub(rng)),
        _ => Formula::forall("x", Formula::exists("y", sub(rng))),
    }
}

fn classifier() -> (bool, String) {
    for lang in [Language::Set, Language::Arith] {
        for k in 1..=3u32 {
            for exists_first in [true, false] {
                let f = prenex(k, exists_first, lang);
                let c = classify(&f);
                let level = if exists_first { c.e } else { c.u };
                if level != k {
                    return (false, format!("{lang:?} prenex k={k} classified {c}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut universe = fragment(2);
    let exhaustive = universe.len();
    universe.extend((0..CLASSIFIER_SAMPLES).map(|i| random_fragment(&mut rng, 3 + (i % 2) as u32)));
    let sets = ClosureSets::build(universe.iter().cloned(), 3);
    for f in sets.formulas() {
        let c = classify(f);
        for n in 0..=3 {
            for (cls, lvl) in [(Class::E, c.e), (Class::U, c.u)] {
                if sets.contains(f, cls, n) != Some(lvl <= n) {
                    return (false, format!("{} at {cls:?}{n}: classify {c}", crate::logic::print(f)));
                }
            }
        }
    }
    let omega = classify(&interp::omega_formula());
    if omega.e > 1 {
        return (false, format!("omega formula classified {omega}"));
    }
    (
        true,
        format!(
            "prenex k <= 3 exact; {} formulas ({exhaustive} exhaustive to depth 2) match the closure sets; omega at E{}",
            sets.formulas().len(),
            omega.e
        ),
    )
}

fn roundtrips() -> (bool, String) {
    let mut parts = Vec::new();
    for (k, range) in [
        (Roundtrip::BaMembership, 64),
        (Roundtrip::AbSuccessor, 64),
        (Roundtrip::AbAdd, 5),
        (Roundtrip::AbMul, 5),
        (Roundtrip::PIsV, 16),
    ] {
        match roundtrip_check(k, range) {
            Ok(r) if r.passed() => parts.push(format!("{} {}", k.name(), r.cases)),
            Ok(r) => return (false, format!("{}: {:?} {:?}", k.name(), r.result, r.counterexample)),
            Err(e) => return (false, format!("{}: {e}", k.name())),
        }
    }
    (true, parts.join(", "))
}

/// The successor chain witnessing `x + y`, as the Kuratowski-pair function `k ↦ x⁺ᵏ`.
fn add_witness(x: &HfSet, y: u64) -> Option<BigUint> {
    let mut pairs = Vec::new();
    let mut cur = x.clone();
    for k in 0..=y {
        pairs.push(HfSet::ordered_pair(hf::von_neumann(k), cur.clone()));
        cur = cur.successor();
    }
    HfSet::from_children(pairs).code().map(|c| c.value().clone())
}

fn micro_validation() -> (bool, String) {
    let val = |c: u64| Value::num(c);
    let p = Compiled::new(&interp::p_graph_formula(), &["x", "y"], false).unwrap();
    let add = Compiled::new(&interp::graph_formula(OrdOp::Add), &["x", "y", "z"], false).unwrap();
    let (mut confirmed, mut out_of_budget, mut open) = (0, 0, 0);
    let mut check = |truth: bool, got: TruthValue, witness_in_budget: bool, label: String| -> Option<String> {
        match (truth, got) {
            (true, TruthValue::True) => confirmed += 1,
            (false, TruthValue::False) => confirmed += 1,
            (_, TruthValue::Unknown) if truth && witness_in_budget => {
                return Some(format!("{label}: witness below the budget not found"))
            }
            (true, TruthValue::Unknown) => out_of_budget += 1,
            (false, TruthValue::Unknown) => open += 1,
            _ => return Some(format!("{label}: blind search says {got}")),
        }
        None
    };
    for x in 0..=2u64 {
        for y in 0..=2u64 {
            let truth = Value::numeral(x as u128) == val(y);
            let got = p.eval(&[val(x), val(y)], BLIND_BUDGET);
            if let Some(e) = check(truth, got, true, format!("P({x}, {y})")) {
                return (false, e);
            }
            for z in 0..=2u64 {
                let (sx, sy) = (hf::decode(&AckCode::from(x)), hf::decode(&AckCode::from(y)));
                let truth = match sy.ordinal_index() {
                    Some(k) => {
                        let mut s = sx.clone();
                        (0..k).for_each(|_| s = s.successor());
                        s.code().and_then(AckCode::to_u64) == Some(z)
                    }
                    None => false,
                };
                let in_budget = sy
                    .ordinal_index()
                    .and_then(|k| add_witness(&sx, k))
                    .is_some_and(|w| w < BigUint::from(BLIND_BUDGET));
                let got = add.eval(&[val(x), val(y), val(z)], BLIND_BUDGET);
                if let Some(e) = check(truth, got, in_budget, format!("add({x}, {y}, {z})")) {
                    return (false, e);
                }
            }
        }
    }
    (
        true,
        format!(
            "{confirmed} instances confirmed, {out_of_budget} true with witness past 2^17, {open} false left open, none contradicted"
        ),
    )
}

fn stage_suite() -> (bool, String) {
    let bounds: Vec<u64> = (0..=5).map(|n| crate::model::stage(n).unwrap().bound).collect();
    if bounds != STAGE_BOUNDS || bounds != [0, 1, 2, 4, 16, 65536] {
        return (false, format!("bounds {bounds:?}"));
    }
    for n in 0..=5 {
        let r = check_stage_props(n).unwrap();
        if !r.passed() {
            return (false, format!("stage props {n}: {:?}", r.counterexample));
        }
    }
    let mut cases = 0;
    for ax in Axiom::ALL {
        for n in 0..=4 {
            let r = check_axiom(ax, n, 1, 0).unwrap();
            cases += r.cases;
            if !r.passed() {
                return (false, format!("{} at {n}: {:?} {:?}", ax.name(), r.result, r.counterexample));
            }
        }
        let r = check_axiom(ax, 5, 0, 0).unwrap();
        cases += r.cases;
        if matches!(ax, Axiom::Extensionality | Axiom::SetInduction | Axiom::BinaryIntersection | Axiom::VEqFin) && !r.passed() {
            return (false, format!("{} at 5: {:?} {:?}", ax.name(), r.result, r.counterexample));
        }
    }
    (true, format!("stages 0..=5, eight axioms at n <= 4 with bump 1, D_5 sampled with seed 0; {cases} cases"))
}

fn inductive() -> (bool, String) {
    let want: Vec<u64> = (0..1024).collect();
    for d in Inductive::ALL {
        let got = lfp_inductive(d, 1024).unwrap();
        if got != want {
            return (false, format!("{} reaches {} codes", d.name(), got.len()));
        }
    }
    (true, "fin, fe and adj all saturate to [0, 1024)".into())
}

fn complexity() -> (bool, String) {
    let (a, b) = (interp_a(), interp_b());
    let corpus = template_corpus();
    let mut literal_over = 0;
    for e in &corpus {
        let spec = match e.language {
            Language::Set => &a,
            Language::Arith => &b,
        };
        let limit = classify(&e.formula).e.max(1);
        if classify(&translate(spec, &e.formula).unwrap()).e > limit {
            literal_over += 1;
        }
        let graded = translate_graded(spec, &e.formula).unwrap();
        let got = classify(&graded).e;
        if got > limit {
            return (false, format!("{:?} {:?}: level {got} > {limit}", e.language, e.text));
        }
    }
    (
        true,
        format!(
            "{} templates preserved by the graded translation; the literal one exceeds on {literal_over}",
            corpus.len()
        ),
    )
}

fn totality() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut evals = 0;
    for lang in [Language::Set, Language::Arith] {
        let shape = Shape::new(4, &["x", "y"], true);
        let top = if lang == Language::Set { 256 } else { 5 };
        for _ in 0..TOTALITY_FORMULAS {
            let f = random_formula(&mut rng, lang, &shape);
            let c = match Compiled::new(&f, &["x", "y"], false) {
                Ok(c) => c,
                Err(e) => return (false, format!("{}: {e}", crate::logic::print(&f))),
            };
            for _ in 0..3 {
                let args = [Value::num(rng.gen_range(0..top)), Value::num(rng.gen_range(0..top))];
                evals += 1;
                if c.eval(&args, 0) == TruthValue::Unknown {
                    let env: BTreeMap<_, _> = [("x", &args[0]), ("y", &args[1])].into_iter().collect();
                    return (false, format!("{} at {env:?} is unknown", crate::logic::print(&f)));
                }
            }
        }
    }
    (true, format!("{} formulas, {evals} evaluations, all decided", 2 * TOTALITY_FORMULAS))
}
