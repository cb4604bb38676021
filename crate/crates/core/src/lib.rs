//! Numerical machinery for first moments of the Riemann zeta function at the
//! local extrema of `|ζ(1/2 + it)|`.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`] evaluates θ, χ, ζ⁽ⁿ⁾, the Hardy Z-function and the auxiliary
//!   function `Z₁(s) = ζ'(s) − ½ (χ'/χ)(s) ζ(s)` in binary64.
//! * [`zeros`] locates Gram points, zeros γ of Z and zeros λ of Z'.
//! * [`arith`] builds von Mangoldt convolution tables and brute-force sums that
//!   act as oracles for every residue formula.
//! * [`series`] does truncated Laurent arithmetic about `s = 1` on top of an
//!   embedded table of Stieltjes constants.
//! * [`asymptotics`] assembles the predicted expansions in `L = log(T/2π)`.
//! * [`empirical`] accumulates the sums over λ and γ and compares them with the
//!   predictions.

pub mod arith;
pub mod asymptotics;
mod comb;
pub mod config;
pub mod empirical;
pub mod error;
pub mod series;
pub mod special;
pub mod summation;
pub mod zeros;

pub use asymptotics::{CoefficientTable, Prediction, Theorem};
pub use config::RunConfig;
pub use empirical::{ComparisonReport, Observable, RunningSum};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::{CoeffFamily, FamilyKind, StieltjesTable, TruncatedLaurentSeries};
pub use special::{ComplexPoint, DerivativeBundle, EvalAccuracy};
pub use zeros::{CriticalPoint, PointKind, ZeroTable};

/// Version string echoed into run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
