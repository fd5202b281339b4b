use std::collections::HashMap;

use super::AckCode;

/// Primitive recursion along ω: `H(0) = base`, `H(k+1) = step(k, H(k))`, returned at `n`.
pub fn recurse_omega<T, E>(
    base: T,
    mut step: impl FnMut(u64, T) -> Result<T, E>,
    n: u64,
) -> Result<T, E> {
    let mut h = base;
    for k in 0..n {
        h = step(k, h)?;
    }
    Ok(h)
}

/// Well-founded recursion on membership: `F(y) = g(y, [(z, F(z)) | z ∈ y])`.
///
/// The table passed to `g` is in ascending member order. Values are memoised per code,
/// so shared hereditary members are computed once.
pub fn recurse_membership<T: Clone, E>(
    a: &AckCode,
    mut g: impl FnMut(&AckCode, &[(AckCode, T)]) -> Result<T, E>,
) -> Result<T, E> {
    let mut memo: HashMap<u64, T> = HashMap::new();
    go(a, &mut g, &mut memo)
}

fn go<T: Clone, E>(
    a: &AckCode,
    g: &mut impl FnMut(&AckCode, &[(AckCode, T)]) -> Result<T, E>,
    memo: &mut HashMap<u64, T>,
) -> Result<T, E> {
    let key = a.to_u64();
    if let Some(k) = key {
        if let Some(v) = memo.get(&k) {
            return Ok(v.clone());
        }
    }
    let mut tbl = Vec::with_capacity(a.popcount() as usize);
    for m in a.member_indices() {
        let val = match memo.get(&m) {
            Some(v) => v.clone(),
            None => go(&AckCode::from(m), g, memo)?,
        };
        tbl.push((AckCode::from(m), val));
    }
    let out = g(a, &tbl)?;
    if let Some(k) = key {
        memo.insert(k, out.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hf::{tc, v};
    use std::convert::Infallible;

    #[test]
    fn omega_examples() {
        let r: Result<u64, Infallible> = recurse_omega(0, |_, h| Ok(h + 1), 5);
        assert_eq!(r.unwrap(), 5);
        let r = recurse_omega(AckCode::zero(), |_, h| crate::hf::adjoin(&h, &h), 3);
        assert_eq!(r.unwrap(), AckCode::from(11u64));
        // Iterating H past its fixpoint keeps tc(x).
        let x = AckCode::from(4u64);
        let r = recurse_omega(
            x.clone(),
            |_, h| Ok::<_, Infallible>(crate::hf::binunion(&x, &crate::hf::setunion(&h))),
            10,
        );
        assert_eq!(r.unwrap(), tc(&x).unwrap());
    }

    #[test]
    fn membership_examples() {
        let rank: Result<u64, Infallible> = recurse_membership(&AckCode::from(7u64), |_, t| {
            Ok(t.iter().map(|(_, r)| r + 1).max().unwrap_or(0))
        });
        assert_eq!(rank.unwrap(), 3);
        let c: Result<u64, Infallible> = recurse_membership(&v(4).unwrap(), |_, _| Ok(42));
        assert_eq!(c.unwrap(), 42);
        let s: Result<u64, Infallible> =
            recurse_membership(&AckCode::zero(), |_, t| Ok(1 + t.iter().map(|p| p.1).sum::<u64>()));
        assert_eq!(s.unwrap(), 1);
    }
}
