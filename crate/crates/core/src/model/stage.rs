use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{CheckReport, ModelError, Outcome};

/// Codes of `D_n` for `n = 0..=5`.
pub const STAGE_BOUNDS: [u64; 6] = [0, 1, 2, 4, 16, 65536];

/// Largest input accepted by [`dec`].
pub const DEC_LIMIT: usize = 16;

/// The stage `D_n`, whose elements are exactly the codes below `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub n: u32,
    pub bound: u64,
}

impl Stage {
    pub fn contains(&self, code: &BigUint) -> bool {
        code < &BigUint::from(self.bound)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.bound
    }

    /// The stage itself as a set: all codes below the bound.
    pub fn as_code(&self) -> BigUint {
        (BigUint::one() << self.bound) - 1u32
    }
}

pub fn stage(n: u32) -> Result<Stage, ModelError> {
    let bound = *STAGE_BOUNDS.get(n as usize).ok_or(ModelError::StageRange(n))?;
    Ok(Stage { n, bound })
}

/// Codes of all subsets of the given sets, ascending.
pub fn dec(codes: &[u64]) -> Result<Vec<BigUint>, ModelError> {
    if codes.len() > DEC_LIMIT {
        return Err(ModelError::SizeGuard {
            what: "dec",
            size: codes.len(),
            limit: DEC_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(1 << codes.len());
    for mask in 0u32..(1 << codes.len()) {
        let mut b = BigUint::default();
        for (i, c) in codes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b.set_bit(*c, true);
            }
        }
        out.push(b);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Transitivity, strict growth, and `Dec(D_n) = D_{n+1}` (the last only where `dec` can
/// enumerate, i.e. `n ≤ 4`).
pub fn check_stage_props(n: u32) -> Result<CheckReport, ModelError> {
    let start = Instant::now();
    let s = stage(n)?;
    let mut report = CheckReport::new("stage_props", n, 0);
    let t_next = BigUint::one() << s.bound;
    for a in s.elements() {
        report.cases += 1;
        let mut m = a;
        while m != 0 {
            let c = m.trailing_zeros() as u64;
            if c >= s.bound {
                return Ok(report.fail(start, [("element", a.to_string()), ("member", c.to_string())]));
            }
            m &= m - 1;
        }
    }
    if BigUint::from(s.bound) >= t_next {
        return Ok(report.fail(start, [("growth", format!("t_{n} >= t_{}", n + 1))]));
    }
    if n < 5 {
        let elems: Vec<u64> = s.elements().collect();
        let subsets = dec(&elems)?;
        report.cases += subsets.len() as u64;
        let expect_len = 1u64 << s.bound;
        if subsets.len() as u64 != expect_len {
            return Ok(report.fail(start, [("dec_size", subsets.len().to_string())]));
        }
        for (i, b) in subsets.iter().enumerate() {
            if b != &BigUint::from(i as u64) {
                return Ok(report.fail(start, [("dec_code", b.to_string())]));
            }
        }
    } else {
        report.note = Some("Dec(D_5) not enumerated; transitivity checked per element".into());
    }
    report.result = Outcome::Pass;
    Ok(report.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_follow_powers() {
        for n in 0..5u32 {
            let t = stage(n).unwrap().bound;
            assert_eq!(stage(n + 1).unwrap().bound, 1u64 << t);
        }
        assert!(stage(6).is_err());
    }

    #[test]
    fn dec_examples() {
        let small = |v: &[u64]| dec(v).unwrap().iter().map(|b| b.to_string()).collect::<Vec<_>>();
        assert_eq!(small(&[]), ["0"]);
        assert_eq!(small(&[0]), ["0", "1"]);
        assert_eq!(small(&[0, 1]), ["0", "1", "2", "3"]);
        assert_eq!(small(&[2]), ["0", "4"]);
        assert!(dec(&(0..17).collect::<Vec<_>>()).is_err());
    }

    #[test]
    fn stage_props_small() {
        for n in 0..=4 {
            assert_eq!(check_stage_props(n).unwrap().result, Outcome::Pass);
        }
    }
}
