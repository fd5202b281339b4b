use hfkit::corpus::{random_formula, Language, Shape};
use hfkit::hf::{self, AckCode};
use hfkit::interp::{interp_a, interp_b, translate, translate_graded};
use hfkit::logic::{parse, print};
use hfkit::model::{Compiled, TruthValue, Value};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lang() -> impl Strategy<Value = Language> {
    prop_oneof![Just(Language::Set), Just(Language::Arith)]
}

fn formula(lang: Language, seed: u64, delta0: bool) -> hfkit::logic::Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula(&mut rng, lang, &Shape::new(4, &["x", "y"], delta0))
}

fn eval(f: &hfkit::logic::Formula, x: u64, y: u64, budget: u64, oracle: bool) -> TruthValue {
    Compiled::new(f, &["x", "y"], oracle)
        .unwrap()
        .eval(&[Value::num(x), Value::num(y)], budget)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse(lang in lang(), seed: u64, delta0: bool) {
        let f = formula(lang, seed, delta0);
        let text = print(&f);
        prop_assert_eq!(parse(&text, &lang.signature()).unwrap(), f, "{}", text);
    }

    #[test]
    fn codes_round_trip(c in 0u64..1 << 40) {
        let code = AckCode::from(c);
        prop_assert_eq!(hf::encode(&hf::decode(&code)).unwrap(), code);
    }

    #[test]
    fn union_and_intersection_match_bits(a: u64, b: u64) {
        let (ca, cb) = (AckCode::from(a), AckCode::from(b));
        prop_assert_eq!(hf::binunion(&ca, &cb).to_u64(), Some(a | b));
        prop_assert_eq!(hf::bininter(&ca, &cb).to_u64(), Some(a & b));
    }

    #[test]
    fn larger_budget_never_flips(lang in lang(), seed: u64, x in 0u64..6, y in 0u64..6) {
        let f = formula(lang, seed, false);
        let small = eval(&f, x, y, 8, false);
        let large = eval(&f, x, y, 64, false);
        if small.is_known() {
            prop_assert_eq!(small, large, "{}", print(&f));
        }
    }

    #[test]
    fn translation_keeps_free_variables(lang in lang(), seed: u64, delta0: bool) {
        let f = formula(lang, seed, delta0);
        let spec = match lang { Language::Set => interp_a(), Language::Arith => interp_b() };
        prop_assert_eq!(translate(&spec, &f).unwrap().free_vars(), f.free_vars());
        prop_assert_eq!(translate_graded(&spec, &f).unwrap().free_vars(), f.free_vars());
    }

    #[test]
    fn codes_interpretation_is_sound(seed: u64, x in 0u64..256, y in 0u64..256) {
        let f = formula(Language::Set, seed, true);
        let source = eval(&f, x, y, 0, false);
        prop_assert!(source.is_known());
        let spec = interp_a();
        for t in [translate(&spec, &f).unwrap(), translate_graded(&spec, &f).unwrap()] {
            let got = eval(&t, x, y, 4096, true);
            prop_assert!(got == source || got == TruthValue::Unknown, "{} at ({}, {})", print(&f), x, y);
        }
    }

    #[test]
    fn graded_agrees_with_literal(lang in lang(), seed: u64, x in 0u64..4, y in 0u64..4) {
        let f = formula(lang, seed, true);
        let spec = match lang { Language::Set => interp_a(), Language::Arith => interp_b() };
        let literal = eval(&translate(&spec, &f).unwrap(), x, y, 4096, true);
        let graded = eval(&translate_graded(&spec, &f).unwrap(), x, y, 4096, true);
        prop_assert!(literal.is_known(), "{}", print(&f));
        prop_assert_eq!(literal, graded, "{}", print(&f));
    }
}
