//! Exact computations around G2: octonions and other composition algebras,
//! alternating three-forms and their invariants, derivation and triality Lie
//! algebras, the Freudenthal–Tits magic square, cubic Jordan algebras, root
//! system gradings and the seven-dimensional spinors.
//!
//! All arithmetic is exact over ℚ(i).

#![allow(clippy::needless_range_loop, clippy::should_implement_trait, clippy::suspicious_arithmetic_impl)]

pub mod error;
pub mod exactlinalg;
pub mod forms;
pub mod composition;
pub mod threeform;
pub mod liealg;
pub mod jordan;
pub mod rootdata;
pub mod clifford;
pub mod magicsquare;
pub mod suite;

pub use error::{Error, Result};
pub use exactlinalg::{Matrix, Scalar, Subspace};
pub use forms::KForm;
