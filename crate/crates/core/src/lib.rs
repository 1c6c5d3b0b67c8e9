//! Orbit lifting for equivariant double fibrations `X <- W -> Y` of classical
//! groups, computed over exact rationals.
//!
//! `W` is a space of matrix blocks carrying commuting actions of two groups
//! `G` (on rows) and `G'` (on columns). The quotient maps `psi: W -> W//G = Y`
//! and `phi: W -> W//G' = X` are evaluated exactly, and the lift of a
//! `G'`-orbit through `y` is represented by `phi` of a generic point in the
//! fiber over `y`.

pub mod cli;
pub mod error;
pub mod exactlin;
pub mod forms;
pub mod liealg;
pub mod lifting;
pub mod quotients;
pub mod scenarios;
pub mod spherical;

pub use error::{Error, Result};
pub use exactlin::{Rational, RationalMatrix};
