//! Formula corpora: a bundled list of templates spread over the complexity levels, and a
//! seeded random generator.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::logic::{parse, BoundKind, Formula, Signature, Term};

const SET_TEMPLATES: &[&str] = &[
    "x in y",
    "x = y",
    "~x in y",
    "x in y -> y in x",
    "forall z in x. z in y",
    "exists z in x. z in y",
    "forall z in x. exists w in z. w in y",
    "exists z in y. ~z in x /\\ x in z",
    "(forall z in x. z in y) /\\ (forall z in y. z in x)",
    "forall z in x. (z in y -> exists w in z. w = y)",
    "exists z. x in z",
    "exists z. z in x /\\ z in y",
    "exists z. forall w in z. w in x",
    "exists z. x in z /\\ y in z /\\ (forall w in z. w = x \\/ w = y)",
    "exists z. exists w. z in w /\\ w in x",
    "forall z in x. exists w. z in w /\\ w in y",
    "exists z in x. exists w. w in z",
    "forall z. z in x -> z in y",
    "forall z. ~z in x",
    "forall z. exists w. z in w",
    "forall z. z in x \\/ ~z in x",
    "forall z in y. forall w. w in z -> w in x",
    "exists z. z in x -> forall w. w in z",
    "(exists z. z in x) -> exists w. w in y",
    "(forall z. z in x) -> x = y",
    "forall z. (exists w. w in z) -> z in x",
    "exists z. forall w. w in z -> w in x",
    "exists z. forall w. exists u. w in u /\\ u in z",
    "forall z. exists w. forall u. u in w -> u in z",
    "exists z. (forall w. w in z -> w = x) /\\ x in z",
    "forall z in x. exists w. forall u in w. u in z",
    "exists z. (exists w. w in z) /\\ (forall w. w in z -> exists u. u in w)",
];

const ARITH_TEMPLATES: &[&str] = &[
    "S(x) = y",
    "x + y = S(0)",
    "x * y = x + y",
    "~x = S(y)",
    "x = 0 \\/ exists z < x. x = S(z)",
    "forall z < x. exists w < S(x + y). w = z + y",
    "exists z < S(x * y). z * S(0) = x",
    "forall z < x + y. exists w < S(z). w = z",
    "exists z < x. forall w < z. ~w * w = x",
    "forall z < S(S(x)). ~z = y -> exists w < S(z). w = z",
    "exists z. x + z = y",
    "exists z. z * z = x",
    "exists z. exists w. z * w = x /\\ ~z = S(0)",
    "exists z. S(x) * z = y + S(0)",
    "forall z < x. exists w. z + w = x",
    "exists z < x + y. exists w. w * z = y",
    "forall z. x + z = z + x",
    "forall z. ~S(z) = 0",
    "forall z. (exists u < x. u = z) -> exists u < y. u = z",
    "forall z. exists w. exists u < w. u = z",
    "forall z. exists w. w = S(z) + x",
    "exists z. forall w. ~w + z = x",
    "exists z. forall w < S(y). w * z = w",
    "(exists z. x = z + z) -> exists w. y = w + w",
    "forall z. (exists w. z = w * x) -> z = y \\/ ~z = y",
    "exists z. forall w. exists u. w + u = z * x",
    "forall z. exists w. forall u. u * w = u * S(z)",
    "exists z < S(x). forall w. exists u < S(w). u + z = w",
];

/// Which source language a corpus entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Language {
    Set,
    Arith,
}

impl Language {
    pub fn signature(self) -> Signature {
        match self {
            Language::Set => Signature::set(),
            Language::Arith => Signature::arith(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub language: Language,
    pub text: &'static str,
    pub formula: Formula,
}

/// The bundled templates, set formulas first.
pub fn template_corpus() -> Vec<Entry> {
    let set = SET_TEMPLATES.iter().map(|t| (Language::Set, *t));
    let arith = ARITH_TEMPLATES.iter().map(|t| (Language::Arith, *t));
    set.chain(arith)
        .map(|(language, text)| Entry {
            language,
            text,
            formula: parse(text, &language.signature()).expect("bundled template parses"),
        })
        .collect()
}

/// Shape parameters for [`random_formula`].
#[derive(Debug, Clone)]
pub struct Shape {
    pub depth: u32,
    pub free: Vec<String>,
    /// Only bounded quantifiers.
    pub delta0: bool,
    /// Compound arithmetic bounds are at most this deep.
    pub bound_depth: u32,
}

impl Shape {
    pub fn new(depth: u32, free: &[&str], delta0: bool) -> Self {
        Shape {
            depth,
            free: free.iter().map(|s| s.to_string()).collect(),
            delta0,
            bound_depth: 1,
        }
    }
}

fn random_term(rng: &mut impl Rng, lang: Language, vars: &[String], depth: u32) -> Term {
    let var = Term::var(vars.choose(rng).expect("some variable in scope").clone());
    if lang == Language::Set || depth == 0 || rng.gen_bool(0.5) {
        return if lang == Language::Arith && rng.gen_bool(0.1) {
            Term::zero()
        } else {
            var
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::succ(random_term(rng, lang, vars, depth - 1)),
        1 => Term::add(
            random_term(rng, lang, vars, depth - 1),
            random_term(rng, lang, vars, depth - 1),
        ),
        _ => Term::mul(
            random_term(rng, lang, vars, depth - 1),
            random_term(rng, lang, vars, depth - 1),
        ),
    }
}

fn random_atom(rng: &mut impl Rng, lang: Language, vars: &[String]) -> Formula {
    match (lang, rng.gen_range(0..5)) {
        (_, 0) => Formula::False,
        (Language::Set, 1 | 2) => Formula::member(
            random_term(rng, lang, vars, 0),
            random_term(rng, lang, vars, 0),
        ),
        (Language::Arith, 1) => Formula::implies(
            Formula::eq(random_term(rng, lang, vars, 1), random_term(rng, lang, vars, 1)),
            Formula::False,
        ),
        _ => Formula::eq(random_term(rng, lang, vars, 1), random_term(rng, lang, vars, 1)),
    }
}

fn random_rec(
    rng: &mut impl Rng,
    lang: Language,
    vars: &mut Vec<String>,
    depth: u32,
    shape: &Shape,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return random_atom(rng, lang, vars);
    }
    let pick = rng.gen_range(0..if shape.delta0 { 5 } else { 7 });
    match pick {
        0..=2 => {
            let a = random_rec(rng, lang, vars, depth - 1, shape);
            let b = random_rec(rng, lang, vars, depth - 1, shape);
            match pick {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                _ => Formula::implies(a, b),
            }
        }
        _ => {
            let x = format!("v{}", vars.len());
            // Compound arithmetic bounds read only the free variables, which keeps nested
            // bounded searches small.
            let bound = match lang {
                Language::Arith if rng.gen_bool(0.5) => {
                    random_term(rng, lang, &shape.free, shape.bound_depth)
                }
                _ => random_term(rng, lang, vars, 0),
            };
            vars.push(x.clone());
            let body = random_rec(rng, lang, vars, depth - 1, shape);
            vars.pop();
            let kind = match lang {
                Language::Set => BoundKind::In,
                Language::Arith => BoundKind::Lt,
            };
            match pick {
                3 => Formula::bforall(x, kind, bound, body),
                4 => Formula::bexists(x, kind, bound, body),
                5 => Formula::forall(x, body),
                _ => Formula::exists(x, body),
            }
        }
    }
}

/// A random well-formed formula over the language whose free variables are among
/// `shape.free`.
pub fn random_formula(rng: &mut impl Rng, lang: Language, shape: &Shape) -> Formula {
    let mut vars = shape.free.clone();
    assert!(!vars.is_empty(), "at least one free variable");
    random_rec(rng, lang, &mut vars, shape.depth, shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::classify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn corpus_spans_levels() {
        let c = template_corpus();
        assert!(c.len() >= 50);
        for lang in [Language::Set, Language::Arith] {
            let levels: std::collections::BTreeSet<u32> = c
                .iter()
                .filter(|e| e.language == lang)
                .map(|e| classify(&e.formula).e)
                .collect();
            assert!(levels.is_superset(&[0, 1, 2, 3].into()), "{lang:?}: {levels:?}");
        }
    }

    #[test]
    fn random_formulas_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for lang in [Language::Set, Language::Arith] {
            for delta0 in [true, false] {
                for _ in 0..500 {
                    let f = random_formula(&mut rng, lang, &Shape::new(4, &["x", "y"], delta0));
                    f.check(&lang.signature()).unwrap();
                    assert!(f.free_vars().iter().all(|v| v == "x" || v == "y"));
                    if delta0 {
                        assert!(f.is_delta0());
                    }
                }
            }
        }
    }
}
