//! Ackermann-coded hereditarily finite sets.

mod code;
pub mod oracle;
mod ops;
mod ordinal;
mod recursion;
mod set;

pub use code::{bit_cap, AckCode, BIT_CAP_ENV, DEFAULT_BIT_CAP};
pub use ops::{
    adjoin, bininter, binunion, decode, encode, eps, eps_oracle, is_von_neumann, ordered_pair,
    pair, rank, setunion, sigma, sum_members, sum_members_direct, tc, v, V_TABLE,
};
pub use ordinal::{ord_arith, ordinal_index, von_neumann, OrdOp, ORD_RESULT_LIMIT};
pub use recursion::{recurse_membership, recurse_omega};
pub use set::HfSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HfError {
    #[error("{op}: result exceeds the bit cap of {cap} bits")]
    CapExceeded { op: &'static str, cap: u64 },
    #[error("{op}: argument {arg} out of range")]
    Range { op: &'static str, arg: String },
    #[error("not a von Neumann ordinal")]
    NotOrdinal,
    #[error("ordinal result {0} exceeds the supported limit")]
    ResultTooLarge(String),
}
