//! Exact computation of generalized Catalan and bc-Motzkin numbers, their
//! discrete Laplace transforms, and the associated topological recursion.
//!
//! Everything runs over arbitrary-precision rationals; there is no floating
//! point anywhere. Each quantity of interest is computable along at least two
//! independent routes, and the `verify` module packages the cross-checks.

pub mod bridge;
pub mod combinatorics;
pub mod eo;
pub mod error;
pub mod io;
pub mod laplace;
pub mod maps;
pub mod poly;
pub mod rational;
mod splits;
pub mod verify;

pub use error::{CoreError, Result};
pub use rational::Rat;
