//! Hereditarily finite sets under the Ackermann coding, first-order syntax for arithmetic
//! and set theory, the interpretations between them, and a finite-stage model checker.

pub mod acceptance;
pub mod corpus;
pub mod hf;
pub mod hierarchy;
pub mod interp;
pub mod logic;
pub mod model;
