use std::convert::Infallible;

use num_bigint::BigUint;
use num_traits::Zero;

use super::code::check_bits;
use super::{recurse_membership, recurse_omega, AckCode, HfError, HfSet};

/// Codes of the von Neumann numerals 0..=4.
pub const V_TABLE: [u64; 5] = [0, 1, 3, 11, 2059];

/// Membership: bit `a` of `b`.
pub fn eps(a: &AckCode, b: &AckCode) -> Result<bool, HfError> {
    let i = a.as_index()?;
    Ok(b.has_member(i))
}

/// Membership decided by searching for `m, r` with `b = (2m+1)·2^a + r` and `r < 2^a`.
/// Uses only arithmetic on the numbers, never bit access. The search runs over whichever
/// of `r` or `m` has the shorter range, solving for the other.
pub fn eps_oracle(a: &AckCode, b: &AckCode) -> Result<bool, HfError> {
    let ai = a.as_index()?;
    check_bits(ai + 1, "eps_oracle")?;
    let p = BigUint::from(1u8) << ai;
    let bv = b.value();
    let two = BigUint::from(2u8);
    let m_range = bv / (&p * &two) + 1u8;
    if p <= m_range {
        let mut r = BigUint::zero();
        while r < p && &r <= bv {
            let rest = bv - &r;
            if (&rest % &p).is_zero() {
                let q = &rest / &p;
                if (&q % &two) == BigUint::from(1u8) && (&q - 1u8) / &two <= *bv {
                    return Ok(true);
                }
            }
            r += 1u8;
        }
    } else {
        let mut m = BigUint::zero();
        while m <= *bv {
            let base = (&two * &m + 1u8) * &p;
            if &base > bv {
                break;
            }
            if (bv - &base) < p {
                return Ok(true);
            }
            m += 1u8;
        }
    }
    Ok(false)
}

/// `{a, b}`: `2^a` when equal, else `2^a + 2^b`.
pub fn pair(a: &AckCode, b: &AckCode) -> Result<AckCode, HfError> {
    let ia = a.as_index()?;
    let ib = b.as_index()?;
    let mut v = BigUint::zero();
    v.set_bit(ia, true);
    v.set_bit(ib, true);
    AckCode::new(v)
}

/// `pair(pair(a,a), pair(a,b))`.
pub fn ordered_pair(a: &AckCode, b: &AckCode) -> Result<AckCode, HfError> {
    let aa = pair(a, a)?;
    let ab = pair(a, b)?;
    pair(&aa, &ab).map_err(|_| HfError::CapExceeded {
        op: "ordered_pair",
        cap: super::bit_cap(),
    })
}

pub fn binunion(a: &AckCode, b: &AckCode) -> AckCode {
    AckCode::new(a.value() | b.value()).expect("union never lengthens codes")
}

pub fn bininter(a: &AckCode, b: &AckCode) -> AckCode {
    AckCode::new(a.value() & b.value()).expect("intersection never lengthens codes")
}

/// `⋃a`: OR of all member codes.
pub fn setunion(a: &AckCode) -> AckCode {
    // Members are bit indices below the cap, so each fits a machine word.
    let acc = a.member_indices().into_iter().fold(0u64, |acc, c| acc | c);
    AckCode::from(acc)
}

/// Cardinality of the coded set.
pub fn sigma(a: &AckCode) -> u64 {
    a.popcount()
}

/// Code of the `n`-th von Neumann numeral, by `v(n+1) = v(n) ∪ {v(n)}`.
pub fn v(n: u64) -> Result<AckCode, HfError> {
    if n >= 6 {
        return Err(HfError::Range {
            op: "v",
            arg: n.to_string(),
        });
    }
    recurse_omega(AckCode::zero(), |_, prev| adjoin(&prev, &prev), n)
}

pub fn is_von_neumann(a: &AckCode) -> Option<u64> {
    if a.bits() > 2060 {
        return None;
    }
    (0..=5u64).find(|&n| matches!(v(n), Ok(ref c) if c == a))
}

/// The Ackermann code of a structural set.
pub fn encode(x: &HfSet) -> Result<AckCode, HfError> {
    x.code().cloned().ok_or(HfError::CapExceeded {
        op: "encode",
        cap: super::bit_cap(),
    })
}

pub fn decode(a: &AckCode) -> HfSet {
    let r: Result<HfSet, Infallible> = recurse_membership(a, |_, tbl: &[(AckCode, HfSet)]| {
        Ok(HfSet::from_sorted_unique(
            tbl.iter().map(|(_, s)| s.clone()).collect(),
        ))
    });
    match r {
        Ok(s) => s,
        Err(e) => match e {},
    }
}

/// `a ∪ {b}`.
pub fn adjoin(a: &AckCode, b: &AckCode) -> Result<AckCode, HfError> {
    let i = b.as_index()?;
    check_bits(i + 1, "adjoin")?;
    let mut v = a.value().clone();
    v.set_bit(i, true);
    AckCode::new(v)
}

/// Transitive closure via `H(0) = a`, `H(n+1) = a ∪ ⋃H(n)`, iterated `rank(a)` times.
pub fn tc(a: &AckCode) -> Result<AckCode, HfError> {
    let r = rank(a);
    recurse_omega(
        a.clone(),
        |_, h| Ok::<_, HfError>(binunion(a, &setunion(&h))),
        r,
    )
}

pub fn rank(a: &AckCode) -> u64 {
    let r: Result<u64, Infallible> = recurse_membership(a, |_, tbl: &[(AckCode, u64)]| {
        Ok(tbl.iter().map(|(_, r)| r + 1).max().unwrap_or(0))
    });
    match r {
        Ok(n) => n,
        Err(e) => match e {},
    }
}

/// Sum of member codes by the recursion `S(0) = 0`, `S(c+1) = S(c) + [c+1 ∈ a]·(c+1)`,
/// run up to the largest member.
pub fn sum_members(a: &AckCode) -> u64 {
    let top = match a.member_indices().last() {
        Some(&t) => t,
        None => return 0,
    };
    let r: Result<u64, Infallible> = recurse_omega(
        0u64,
        |c, acc| {
            let next = c + 1;
            Ok(if a.has_member(next) { acc + next } else { acc })
        },
        top,
    );
    match r {
        Ok(n) => n,
        Err(e) => match e {},
    }
}

/// Direct sum over the set bits; used to cross-check [`sum_members`].
pub fn sum_members_direct(a: &AckCode) -> u64 {
    a.member_indices().into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u64) -> AckCode {
        AckCode::from(n)
    }

    #[test]
    fn eps_examples() {
        assert!(eps(&c(0), &c(5)).unwrap());
        assert!(!eps(&c(1), &c(5)).unwrap());
        assert!(!eps(&c(7), &c(0)).unwrap());
        assert!(eps_oracle(&c(2), &c(5)).unwrap());
        assert!(eps_oracle(&c(2), &c(4)).unwrap());
        assert!(!eps_oracle(&c(3), &c(5)).unwrap());
    }

    #[test]
    fn eps_oracle_big_path() {
        let b = AckCode::new((BigUint::from(1u8) << 70u32) + 3u8).unwrap();
        assert!(eps_oracle(&c(70), &b).unwrap());
        assert!(eps_oracle(&c(0), &b).unwrap());
        assert!(!eps_oracle(&c(2), &b).unwrap());
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(&c(3), &c(3)).unwrap(), c(8));
        assert_eq!(pair(&c(1), &c(2)).unwrap(), c(6));
        assert_eq!(pair(&c(0), &c(0)).unwrap(), c(1));
        assert_eq!(ordered_pair(&c(0), &c(1)).unwrap(), c(10));
        assert_eq!(ordered_pair(&c(0), &c(0)).unwrap(), c(2));
        assert_eq!(ordered_pair(&c(1), &c(1)).unwrap(), c(4));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(binunion(&c(5), &c(3)), c(7));
        assert_eq!(binunion(&c(9), &c(0)), c(9));
        assert_eq!(binunion(&c(6), &c(6)), c(6));
        assert_eq!(bininter(&c(5), &c(3)), c(1));
        assert_eq!(bininter(&c(9), &c(0)), c(0));
        assert_eq!(bininter(&c(7), &c(7)), c(7));
        assert_eq!(setunion(&c(6)), c(3));
        assert_eq!(setunion(&c(0)), c(0));
        for k in 0..16 {
            assert_eq!(setunion(&c(1 << k)), c(k));
        }
    }

    #[test]
    fn sigma_and_v() {
        assert_eq!(sigma(&c(0)), 0);
        assert_eq!(sigma(&c(6)), 2);
        assert_eq!(sigma(&c(1 << 9)), 1);
        for (n, &code) in V_TABLE.iter().enumerate() {
            assert_eq!(v(n as u64).unwrap(), c(code));
        }
        assert_eq!(v(5).unwrap().bits(), 2060);
        assert!(matches!(v(6), Err(HfError::Range { .. })));
        assert_eq!(is_von_neumann(&c(11)), Some(3));
        assert_eq!(is_von_neumann(&c(2)), None);
        assert_eq!(is_von_neumann(&c(0)), Some(0));
        assert_eq!(is_von_neumann(&v(5).unwrap()), Some(5));
    }

    #[test]
    fn codec_examples() {
        let e = HfSet::empty();
        let one = HfSet::from_children(vec![e.clone()]);
        assert_eq!(encode(&e).unwrap(), c(0));
        assert_eq!(
            encode(&HfSet::from_children(vec![e.clone(), one.clone()])).unwrap(),
            c(3)
        );
        assert_eq!(encode(&HfSet::from_children(vec![one.clone()])).unwrap(), c(2));
        assert_eq!(decode(&c(0)), e);
        assert_eq!(decode(&c(3)), HfSet::from_children(vec![one.clone(), e.clone()]));
        let two = HfSet::from_children(vec![one]);
        assert_eq!(decode(&c(4)), HfSet::from_children(vec![two]));
    }

    #[test]
    fn adjoin_tc_rank_sum() {
        assert_eq!(adjoin(&c(0), &c(0)).unwrap(), c(1));
        assert_eq!(adjoin(&c(1), &c(1)).unwrap(), c(3));
        assert_eq!(adjoin(&c(3), &c(0)).unwrap(), c(3));
        assert_eq!(tc(&c(0)).unwrap(), c(0));
        assert_eq!(tc(&c(4)).unwrap(), c(7));
        assert_eq!(rank(&c(0)), 0);
        assert_eq!(rank(&c(7)), 3);
        for n in 0..=4 {
            let vn = v(n).unwrap();
            assert_eq!(tc(&vn).unwrap(), vn);
            assert_eq!(rank(&vn), n);
        }
        assert_eq!(sum_members(&c(0)), 0);
        assert_eq!(sum_members(&c(6)), 3);
        for k in 0..16 {
            assert_eq!(sum_members(&c(1 << k)), k);
        }
    }

    #[test]
    fn ordered_pair_injective_small() {
        let mut seen = std::collections::HashMap::new();
        for a in 0..5u64 {
            for b in 0..5u64 {
                let p = ordered_pair(&c(a), &c(b)).unwrap();
                if let Some(prev) = seen.insert(p, (a, b)) {
                    panic!("collision {prev:?} vs {:?}", (a, b));
                }
            }
        }
    }
}
