use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::hf::{bit_cap, v, AckCode};

/// Numerals past this index are kept symbolic.
const FEASIBLE: u128 = 5;

/// An element of the standard model. Numbers and sets share one carrier through the
/// Ackermann coding; `Vn(n)` stands for the code of the `n`-th von Neumann numeral when
/// that code is too large to hold (`n > 5`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Code(BigUint),
    Vn(u128),
}

fn small_numerals() -> &'static [BigUint] {
    static T: OnceLock<Vec<BigUint>> = OnceLock::new();
    T.get_or_init(|| (0..=FEASIBLE as u64).map(|n| v(n).expect("feasible").into_value()).collect())
}

impl Value {
    pub fn num(n: u64) -> Self {
        Value::Code(BigUint::from(n))
    }

    pub fn zero() -> Self {
        Value::Code(BigUint::zero())
    }

    /// The `n`-th von Neumann numeral.
    pub fn numeral(n: u128) -> Self {
        if n <= FEASIBLE {
            Value::Code(small_numerals()[n as usize].clone())
        } else {
            Value::Vn(n)
        }
    }

    pub fn as_code(&self) -> Option<&BigUint> {
        match self {
            Value::Code(c) => Some(c),
            Value::Vn(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.as_code().and_then(|c| c.to_u64())
    }

    pub fn ordinal_index(&self) -> Option<u128> {
        match self {
            Value::Vn(n) => Some(*n),
            Value::Code(c) => small_numerals().iter().position(|t| t == c).map(|i| i as u128),
        }
    }

    pub fn is_empty_set(&self) -> bool {
        matches!(self, Value::Code(c) if c.is_zero())
    }

    /// A code usable as a bit index, if the element's code is below the bit cap.
    fn index(&self) -> Option<u64> {
        self.to_u64().filter(|&i| i < bit_cap())
    }

    pub fn contains(&self, a: &Value) -> bool {
        match (a, self) {
            (_, Value::Vn(n)) => a.ordinal_index().is_some_and(|k| k < *n),
            (Value::Vn(_), Value::Code(_)) => false,
            (Value::Code(_), Value::Code(b)) => match a.index() {
                Some(i) => b.bit(i),
                None => false,
            },
        }
    }

    /// Number of members, when it fits.
    pub fn cardinality(&self) -> u128 {
        match self {
            Value::Vn(n) => *n,
            Value::Code(c) => c.count_ones() as u128,
        }
    }

    /// Members in increasing code order.
    pub fn members(&self) -> Vec<Value> {
        match self {
            Value::Vn(n) => (0..*n).map(Value::numeral).collect(),
            Value::Code(c) => {
                let mut out = Vec::with_capacity(c.count_ones() as usize);
                for (w, digit) in c.iter_u64_digits().enumerate() {
                    let mut d = digit;
                    while d != 0 {
                        let t = d.trailing_zeros() as u64;
                        out.push(Value::num(w as u64 * 64 + t));
                        d &= d - 1;
                    }
                }
                out
            }
        }
    }

    /// Largest member.
    pub fn top(&self) -> Option<Value> {
        match self {
            Value::Vn(n) => Some(Value::numeral(n - 1)),
            Value::Code(c) if c.is_zero() => None,
            Value::Code(c) => Some(Value::num(c.bits() - 1)),
        }
    }

    /// `x ∪ {x}`, or `None` when its code would pass the bit cap.
    pub fn succ(&self) -> Option<Value> {
        if let Some(k) = self.ordinal_index() {
            return Some(Value::numeral(k + 1));
        }
        let i = self.index()?;
        let Value::Code(c) = self else { unreachable!() };
        Some(Value::Code(c | (BigUint::one() << i)))
    }

    /// The `p` with `p ∪ {p} = self`, if any.
    pub fn pred(&self) -> Option<Value> {
        if let Value::Vn(n) = self {
            return Some(Value::numeral(n - 1));
        }
        let p = self.top()?;
        (p.succ().as_ref() == Some(self)).then_some(p)
    }

    pub fn code(&self) -> Option<AckCode> {
        self.as_code().and_then(|c| AckCode::new(c.clone()).ok())
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::num(n)
    }
}

impl From<BigUint> for Value {
    fn from(n: BigUint) -> Self {
        Value::Code(n)
    }
}

impl From<&AckCode> for Value {
    fn from(a: &AckCode) -> Self {
        Value::Code(a.value().clone())
    }
}

impl From<AckCode> for Value {
    fn from(a: AckCode) -> Self {
        Value::Code(a.into_value())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Code(c) if c.bits() <= 128 => write!(f, "{c}"),
            Value::Code(c) => write!(f, "<{} bits>", c.bits()),
            Value::Vn(n) => write!(f, "v({n})"),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Checked arithmetic on codes read as numbers. `None` for symbolic numerals and for
/// results past the bit cap.
pub(crate) fn arith(op: &str, a: &Value, b: &Value) -> Option<Value> {
    let (a, b) = (a.as_code()?, b.as_code()?);
    let cap = bit_cap();
    let r = match op {
        "+" => a + b,
        "*" => {
            if a.bits() + b.bits() > cap + 1 {
                return None;
            }
            a * b
        }
        "exp" => {
            if b.is_zero() {
                BigUint::one()
            } else if a.is_zero() || a.is_one() {
                a.clone()
            } else {
                let e = b.to_u64()?;
                if e > u32::MAX as u64 || (a.bits() - 1).checked_mul(e)? > cap {
                    return None;
                }
                a.pow(e as u32)
            }
        }
        _ => unreachable!("unknown operation {op}"),
    };
    (r.bits() <= cap).then_some(Value::Code(r))
}

pub(crate) fn succ_num(a: &Value) -> Option<Value> {
    let a = a.as_code()?;
    let r = a + 1u32;
    (r.bits() <= bit_cap()).then_some(Value::Code(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals_normalize() {
        assert_eq!(Value::numeral(3), Value::num(11));
        assert_eq!(Value::numeral(5).to_u64(), None);
        assert_eq!(Value::numeral(5).ordinal_index(), Some(5));
        assert_eq!(Value::numeral(5).succ(), Some(Value::Vn(6)));
        assert_eq!(Value::Vn(6).pred(), Some(Value::numeral(5)));
        assert_eq!(Value::num(3).pred(), Some(Value::num(1)));
        assert_eq!(Value::num(2).pred(), None);
        assert_eq!(Value::num(2).succ(), Some(Value::num(6)));
    }

    #[test]
    fn membership() {
        assert!(Value::num(3).contains(&Value::num(1)));
        assert!(!Value::num(3).contains(&Value::num(2)));
        assert!(Value::Vn(9).contains(&Value::numeral(5)));
        assert!(Value::Vn(9).contains(&Value::Vn(8)));
        assert!(!Value::Vn(9).contains(&Value::Vn(9)));
        assert!(!Value::Vn(9).contains(&Value::num(2)));
        assert!(!Value::num(u64::MAX).contains(&Value::Vn(7)));
        assert_eq!(Value::num(11).members(), vec![Value::num(0), Value::num(1), Value::num(3)]);
    }

    #[test]
    fn arithmetic_guards() {
        assert_eq!(arith("exp", &Value::num(2), &Value::num(10)), Some(Value::num(1024)));
        assert_eq!(arith("exp", &Value::num(2), &Value::num(1 << 40)), None);
        assert_eq!(arith("+", &Value::Vn(7), &Value::num(1)), None);
        assert_eq!(arith("exp", &Value::num(0), &Value::num(0)), Some(Value::num(1)));
    }
}
