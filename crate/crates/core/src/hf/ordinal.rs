use serde::{Deserialize, Serialize};

use super::{HfError, HfSet};

/// Largest ordinal `ord_arith` will build.
pub const ORD_RESULT_LIMIT: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrdOp {
    Add,
    Mul,
    Exp,
}

impl OrdOp {
    pub fn apply(self, x: u64, y: u64) -> Option<u64> {
        match self {
            OrdOp::Add => x.checked_add(y),
            OrdOp::Mul => x.checked_mul(y),
            OrdOp::Exp => u32::try_from(y).ok().and_then(|y| x.checked_pow(y)),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            OrdOp::Add => "+",
            OrdOp::Mul => "*",
            OrdOp::Exp => "exp",
        }
    }
}

impl std::str::FromStr for OrdOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "add" | "+" => Ok(OrdOp::Add),
            "mul" | "*" => Ok(OrdOp::Mul),
            "exp" => Ok(OrdOp::Exp),
            _ => Err(format!("unknown ordinal operation {s:?}")),
        }
    }
}

/// The von Neumann numeral `n` as a structural set, sharing all subtrees.
pub fn von_neumann(n: u64) -> HfSet {
    let mut cur = HfSet::empty();
    for _ in 0..n {
        cur = cur.successor();
    }
    cur
}

pub fn ordinal_index(x: &HfSet) -> Option<u64> {
    x.ordinal_index()
}

/// Ordinal arithmetic on structural numerals, by recursion on `y`:
/// `x+0 = x`, `x+Sβ = S(x+β)`; `x·0 = 0`, `x·Sβ = x·β + x`; `x^0 = 1`, `x^Sβ = x^β·x`.
pub fn ord_arith(kind: OrdOp, x: &HfSet, y: &HfSet) -> Result<HfSet, HfError> {
    let nx = ordinal_index(x).ok_or(HfError::NotOrdinal)?;
    let ny = ordinal_index(y).ok_or(HfError::NotOrdinal)?;
    match kind.apply(nx, ny) {
        Some(r) if r <= ORD_RESULT_LIMIT => {}
        Some(r) => return Err(HfError::ResultTooLarge(r.to_string())),
        None => {
            return Err(HfError::ResultTooLarge(format!(
                "{nx} {} {ny}",
                kind.symbol()
            )))
        }
    }
    Ok(rec(kind, x, y))
}

// The predecessor of a nonzero numeral is its largest member.
fn pred(y: &HfSet) -> Option<&HfSet> {
    y.children().last()
}

fn rec(kind: OrdOp, x: &HfSet, y: &HfSet) -> HfSet {
    match (kind, pred(y)) {
        (OrdOp::Add, None) => x.clone(),
        (OrdOp::Add, Some(b)) => rec(OrdOp::Add, x, b).successor(),
        (OrdOp::Mul, None) => HfSet::empty(),
        (OrdOp::Mul, Some(b)) => rec(OrdOp::Add, &rec(OrdOp::Mul, x, b), x),
        (OrdOp::Exp, None) => HfSet::empty().successor(),
        (OrdOp::Exp, Some(b)) => rec(OrdOp::Mul, &rec(OrdOp::Exp, x, b), x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hf::{encode, v, AckCode};

    #[test]
    fn examples() {
        let r = ord_arith(OrdOp::Add, &von_neumann(1), &von_neumann(2)).unwrap();
        assert_eq!(r, von_neumann(3));
        assert_eq!(encode(&r).unwrap(), AckCode::from(11u64));
        for k in 0..6 {
            let r = ord_arith(OrdOp::Mul, &von_neumann(k), &von_neumann(0)).unwrap();
            assert!(r.is_empty());
        }
        let r = ord_arith(OrdOp::Exp, &von_neumann(2), &von_neumann(3)).unwrap();
        assert_eq!(r.ordinal_index(), Some(8));
        assert_eq!(r, von_neumann(8));
        assert_eq!(encode(&von_neumann(5)).unwrap(), v(5).unwrap());
    }

    #[test]
    fn errors() {
        let two = crate::hf::decode(&AckCode::from(2u64));
        assert_eq!(
            ord_arith(OrdOp::Add, &two, &von_neumann(1)),
            Err(HfError::NotOrdinal)
        );
        assert!(matches!(
            ord_arith(OrdOp::Exp, &von_neumann(2), &von_neumann(11)),
            Err(HfError::ResultTooLarge(_))
        ));
    }
}
