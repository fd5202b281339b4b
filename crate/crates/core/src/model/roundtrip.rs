use std::time::Instant;

use serde::Serialize;

use crate::interp::{interp_a, interp_b, p_graph_formula, translate};
use crate::logic::{parse, Formula, Signature};

use super::{CheckReport, Compiled, ModelError, TruthValue, Value};

/// Candidate codes tried against each `x` by the `p_is_v` check, besides the numerals.
pub const P_CANDIDATES: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Roundtrip {
    BaMembership,
    AbSuccessor,
    AbAdd,
    AbMul,
    PIsV,
}

impl Roundtrip {
    pub const ALL: [Roundtrip; 5] = [
        Roundtrip::BaMembership,
        Roundtrip::AbSuccessor,
        Roundtrip::AbAdd,
        Roundtrip::AbMul,
        Roundtrip::PIsV,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Roundtrip::BaMembership => "ba_membership",
            Roundtrip::AbSuccessor => "ab_successor",
            Roundtrip::AbAdd => "ab_add",
            Roundtrip::AbMul => "ab_mul",
            Roundtrip::PIsV => "p_is_v",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s || k.name().replace('_', "-") == s)
    }

    /// Largest accepted range.
    pub fn max_range(self) -> u64 {
        match self {
            Roundtrip::BaMembership | Roundtrip::AbSuccessor => 1024,
            Roundtrip::AbAdd | Roundtrip::AbMul => 32,
            Roundtrip::PIsV => 64,
        }
    }
}

fn both_ways(
    src: &str,
    sig: &Signature,
    first: fn() -> crate::interp::InterpretationSpec,
    second: fn() -> crate::interp::InterpretationSpec,
    free: &[&str],
) -> Result<(Compiled, Compiled), ModelError> {
    let f = parse(src, sig).expect("bundled formula parses");
    let there = translate(&first(), &f)?;
    let back = translate(&second(), &there)?;
    Ok((Compiled::new(&f, free, false)?, Compiled::new(&back, free, true)?))
}

/// Compares each side of a round trip through both interpretations over all assignments
/// in range, graph subformulas decided by the oracles.
pub fn roundtrip_check(kind: Roundtrip, range: u64) -> Result<CheckReport, ModelError> {
    let start = Instant::now();
    if range > kind.max_range() {
        return Err(ModelError::SizeGuard {
            what: kind.name(),
            size: range as usize,
            limit: kind.max_range() as usize,
        });
    }
    let mut r = CheckReport::new(kind.name(), range as u32, 0);
    let mut undecided = 0;
    let mut compare = |r: &mut CheckReport, want: TruthValue, got: TruthValue| -> bool {
        r.cases += 1;
        match got {
            TruthValue::Unknown => {
                undecided += 1;
                true
            }
            g => g == want,
        }
    };
    let name = |v: &[(&str, &Value)]| -> Vec<(String, String)> {
        v.iter().map(|(k, x)| (k.to_string(), x.to_string())).collect()
    };
    match kind {
        Roundtrip::BaMembership => {
            let (lhs, rhs) = both_ways("x in y", &Signature::set(), interp_a, interp_b, &["x", "y"])?;
            for x in 0..range {
                for y in 0..range {
                    let args = [Value::num(x), Value::num(y)];
                    if !compare(&mut r, lhs.eval(&args, 0), rhs.eval(&args, 0)) {
                        let ce = name(&[("x", &args[0]), ("y", &args[1])]);
                        return Ok(r.fail(start, ce));
                    }
                }
            }
        }
        Roundtrip::AbSuccessor => {
            let (lhs, rhs) = both_ways("S(x) = y", &Signature::arith(), interp_b, interp_a, &["x", "y"])?;
            for x in 0..range {
                for y in 0..range {
                    let args = [Value::num(x), Value::num(y)];
                    if !compare(&mut r, lhs.eval(&args, 0), rhs.eval(&args, 0)) {
                        let ce = name(&[("x", &args[0]), ("y", &args[1])]);
                        return Ok(r.fail(start, ce));
                    }
                }
            }
        }
        Roundtrip::AbAdd | Roundtrip::AbMul => {
            let src = if kind == Roundtrip::AbAdd { "x + y = z" } else { "x * y = z" };
            let (lhs, rhs) = both_ways(src, &Signature::arith(), interp_b, interp_a, &["x", "y", "z"])?;
            for x in 0..=range {
                for y in 0..=range {
                    let value = if kind == Roundtrip::AbAdd { x + y } else { x * y };
                    if value > range {
                        continue;
                    }
                    for z in 0..=range {
                        let args = [Value::num(x), Value::num(y), Value::num(z)];
                        if !compare(&mut r, lhs.eval(&args, 0), rhs.eval(&args, 0)) {
                            let ce = name(&[("x", &args[0]), ("y", &args[1]), ("z", &args[2])]);
                            return Ok(r.fail(start, ce));
                        }
                    }
                }
            }
        }
        Roundtrip::PIsV => {
            let f: Formula = translate(&interp_a(), &p_graph_formula())?;
            let rhs = Compiled::new(&f, &["x", "y"], true)?;
            for x in 0..range {
                let v = Value::numeral(x as u128);
                let numerals = (0..range as u128 + 2).map(Value::numeral);
                for y in (0..P_CANDIDATES).map(Value::num).chain(numerals) {
                    let want = TruthValue::from(y == v);
                    let args = [Value::num(x), y];
                    if !compare(&mut r, want, rhs.eval(&args, 0)) {
                        let ce = name(&[("x", &args[0]), ("y", &args[1])]);
                        return Ok(r.fail(start, ce));
                    }
                }
            }
        }
    }
    Ok(r.settle(start, undecided))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Outcome;

    #[test]
    fn small_ranges_pass() {
        for (k, n) in [
            (Roundtrip::BaMembership, 12),
            (Roundtrip::AbSuccessor, 12),
            (Roundtrip::AbAdd, 4),
            (Roundtrip::AbMul, 4),
            (Roundtrip::PIsV, 4),
        ] {
            let r = roundtrip_check(k, n).unwrap();
            assert_eq!(r.result, Outcome::Pass, "{r:?}");
        }
    }

    #[test]
    fn guard() {
        assert!(roundtrip_check(Roundtrip::AbAdd, 33).is_err());
    }
}
