use serde::{Deserialize, Serialize};

use super::BoundKind;

/// A first-order signature: function symbols, predicate symbols, and the relation used
/// by bounded quantifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub name: String,
    pub functions: Vec<(String, usize)>,
    pub predicates: Vec<(String, usize)>,
    pub bound: BoundKind,
}

impl Signature {
    /// `{0, S, +, *}`.
    pub fn arith() -> Self {
        Self {
            name: "arith".into(),
            functions: vec![
                ("0".into(), 0),
                ("S".into(), 1),
                ("+".into(), 2),
                ("*".into(), 2),
            ],
            predicates: vec![],
            bound: BoundKind::Lt,
        }
    }

    /// Arithmetic with exponentiation as a primitive.
    pub fn arith_plus() -> Self {
        let mut s = Self::arith();
        s.name = "arith+".into();
        s.functions.push(("exp".into(), 2));
        s
    }

    /// Membership only.
    pub fn set() -> Self {
        Self {
            name: "set".into(),
            functions: vec![],
            predicates: vec![("in".into(), 2)],
            bound: BoundKind::In,
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "arith" => Some(Self::arith()),
            "arith+" | "arith_plus" => Some(Self::arith_plus()),
            "set" => Some(Self::set()),
            _ => None,
        }
    }

    pub fn function_arity(&self, sym: &str) -> Option<usize> {
        self.functions
            .iter()
            .find(|(s, _)| s == sym)
            .map(|(_, a)| *a)
    }

    pub fn predicate_arity(&self, sym: &str) -> Option<usize> {
        self.predicates
            .iter()
            .find(|(s, _)| s == sym)
            .map(|(_, a)| *a)
    }

    pub fn is_arithmetic(&self) -> bool {
        self.bound == BoundKind::Lt
    }

    /// True when every symbol of `self` occurs in `other` with the same arity.
    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.bound == other.bound
            && self
                .functions
                .iter()
                .all(|(s, a)| other.function_arity(s) == Some(*a))
            && self
                .predicates
                .iter()
                .all(|(s, a)| other.predicate_arity(s) == Some(*a))
    }
}
