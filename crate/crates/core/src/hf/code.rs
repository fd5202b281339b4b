use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::HfError;

/// Default limit on the bit length of any code.
pub const DEFAULT_BIT_CAP: u64 = 1 << 20;

/// Environment variable overriding [`DEFAULT_BIT_CAP`].
pub const BIT_CAP_ENV: &str = "HFKIT_BIT_CAP";

/// The process-wide bit cap. Read once from `HFKIT_BIT_CAP`, falling back to the default.
pub fn bit_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(BIT_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_BIT_CAP)
    })
}

/// A natural number read as the Ackermann code of a hereditarily finite set:
/// `a` is a member of `b` iff bit `a` of `b` is set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct AckCode(BigUint);

impl AckCode {
    pub fn zero() -> Self {
        Self(BigUint::zero())
    }

    /// Wraps a big natural, failing if it is longer than the bit cap.
    pub fn new(value: BigUint) -> Result<Self, HfError> {
        check_bits(value.bits(), "code")?;
        Ok(Self(value))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// The code as a bit index, if it is one the cap allows.
    pub fn as_index(&self) -> Result<u64, HfError> {
        match self.0.to_u64() {
            Some(i) if i < bit_cap() => Ok(i),
            _ => Err(HfError::CapExceeded {
                op: "bit index",
                cap: bit_cap(),
            }),
        }
    }

    /// Tests membership of the set with code `index`.
    pub fn has_member(&self, index: u64) -> bool {
        self.0.bit(index)
    }

    /// Bit indices of the set bits, ascending. These are the codes of the members.
    pub fn member_indices(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.count_ones() as usize);
        for (d, digit) in self.0.iter_u64_digits().enumerate() {
            let mut w = digit;
            while w != 0 {
                let t = w.trailing_zeros() as u64;
                out.push(d as u64 * 64 + t);
                w &= w - 1;
            }
        }
        out
    }

    pub fn members(&self) -> impl Iterator<Item = AckCode> {
        self.member_indices().into_iter().map(AckCode::from)
    }

    /// `2^index`, the code of the singleton `{index}`.
    pub fn singleton(index: u64) -> Result<Self, HfError> {
        check_bits(index + 1, "singleton")?;
        let mut v = BigUint::zero();
        v.set_bit(index, true);
        Ok(Self(v))
    }

    pub fn popcount(&self) -> u64 {
        self.0.count_ones()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

pub(crate) fn check_bits(bits: u64, op: &'static str) -> Result<(), HfError> {
    let cap = bit_cap();
    if bits > cap {
        Err(HfError::CapExceeded { op, cap })
    } else {
        Ok(())
    }
}

impl From<u64> for AckCode {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl From<u32> for AckCode {
    fn from(v: u32) -> Self {
        Self(BigUint::from(v))
    }
}

impl From<AckCode> for String {
    fn from(c: AckCode) -> Self {
        c.0.to_string()
    }
}

impl TryFrom<String> for AckCode {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl std::str::FromStr for AckCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: BigUint = s
            .trim()
            .parse()
            .map_err(|e| format!("invalid code {s:?}: {e}"))?;
        AckCode::new(v).map_err(|e| e.to_string())
    }
}

impl fmt::Display for AckCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for AckCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.bits() <= 128 {
            write!(f, "#{}", self.0)
        } else {
            write!(f, "#<{} bits>", self.0.bits())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn member_indices_cross_word_boundaries() {
        let mut v = BigUint::zero();
        for i in [0u64, 5, 63, 64, 200] {
            v.set_bit(i, true);
        }
        let c = AckCode::new(v).unwrap();
        assert_eq!(c.member_indices(), vec![0, 5, 63, 64, 200]);
        assert_eq!(c.popcount(), 5);
    }

    #[test]
    fn singleton_respects_cap() {
        assert!(AckCode::singleton(bit_cap() - 1).is_ok());
        assert!(matches!(
            AckCode::singleton(bit_cap()),
            Err(HfError::CapExceeded { .. })
        ));
    }

    #[test]
    fn serde_as_decimal_string() {
        let c = AckCode::from(2059u64);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, "\"2059\"");
        let back: AckCode = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
