//! Iterated-sum (discrete) signatures of time series and the truncated
//! shuffle / quasi-shuffle Hopf algebras they live in.
//!
//! The crate is organised bottom-up:
//!
//! - [`alphabet`]: the graded commutative alphabet of monic monomials.
//! - [`words`]: words over that alphabet, compositions, Lyndon words and
//!   their enumeration formulas.
//! - [`tensor`]: truncated tensors with exact rational coefficients and the
//!   algebra built on them (products, exp/log, Hoffman maps, eulerian maps,
//!   Lie elements, group-likeness tests).
//! - [`signature`]: discrete signatures of time series.
//! - [`varieties`]: tooling for the signature varieties (reachability,
//!   height-two quadrics, Jacobian ranks, fibers, generator checks, Macaulay2
//!   export).
//! - [`cli`]: the `sigvar` command-line front end.

pub mod alphabet;
pub mod cli;
pub mod error;
pub mod io;
pub mod poly;
pub mod rational;
pub mod signature;
pub mod tensor;
pub mod varieties;
pub mod words;

pub use alphabet::Monomial;
pub use error::{Error, Result};
pub use signature::{Interpretation, TimeSeries};
pub use tensor::Tensor;
pub use words::{Composition, Word};

/// Exact rational coefficient type used throughout the crate.
pub type Rational = num_rational::BigRational;
