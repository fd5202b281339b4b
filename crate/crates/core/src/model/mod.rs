//! Standard-model semantics for arithmetic and set formulas, the finite stages of the
//! hereditarily finite hierarchy and checks over them.

mod axioms;
mod eval;
mod lfp;
mod oracle;
mod report;
mod roundtrip;
mod stage;
mod value;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::interp::InterpError;
use crate::logic::Formula;

pub use axioms::{check_axiom, fin_bijection, Axiom, CLASS_TEMPLATES, SAMPLE_PAIRS, SAMPLE_SUBSETS};
pub use eval::{Compiled, EvalError};
pub use lfp::{lfp_inductive, Inductive, LFP_CAP_LIMIT};
pub use report::{CheckReport, Outcome};
pub use roundtrip::{roundtrip_check, Roundtrip};
pub use stage::{check_stage_props, dec, stage, Stage, DEC_LIMIT, STAGE_BOUNDS};
pub use value::Value;

/// Strong Kleene truth values, ordered `False < Unknown < True`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TruthValue {
    False,
    Unknown,
    True,
}

impl TruthValue {
    pub fn is_known(self) -> bool {
        self != TruthValue::Unknown
    }

    pub fn and(self, o: Self) -> Self {
        self.min(o)
    }

    pub fn or(self, o: Self) -> Self {
        self.max(o)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Unknown => TruthValue::Unknown,
        }
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "true",
            TruthValue::False => "false",
            TruthValue::Unknown => "unknown",
        })
    }
}

/// Evaluates an arithmetic formula over the naturals. Unbounded quantifiers search
/// `[0, budget)` unless an equation or bound fixes the witness.
pub fn eval_arith(
    f: &Formula,
    env: &BTreeMap<String, Value>,
    budget: u64,
) -> Result<TruthValue, EvalError> {
    eval::eval_with(f, env, budget, false)
}

/// Evaluates a set formula over hereditarily finite sets, membership read off the bits of
/// codes. With `oracle_mode`, subformulas that are instances of the bundled graph
/// formulas are decided directly.
pub fn eval_set(
    f: &Formula,
    env: &BTreeMap<String, Value>,
    budget: u64,
    oracle_mode: bool,
) -> Result<TruthValue, EvalError> {
    eval::eval_with(f, env, budget, oracle_mode)
}

/// Errors from the stage and round-trip checks.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("stage {0} is out of range (0..=5)")]
    StageRange(u32),
    #[error("{what}: size {size} exceeds the limit {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Interp(#[from] InterpError),
}
