//! Exact-arithmetic library for generalized root systems: construction,
//! validation, classification and decomposition of finite root systems with
//! isotropic roots and of their affinizations presented by fibers over a
//! finite base.
//!
//! All computation is exact over the rationals; see [`scalar::Scalar`]. The
//! concrete instantiations used by the CLI and the test suite are the type
//! aliases exported at the crate root ([`Rat`], [`QVector`], [`QSystem`], …).

pub mod error;
pub mod linalg;
pub mod oracle;
pub mod scalar;

pub mod affine;
pub mod analysis;
pub mod builders;
pub mod catalog;
pub mod classify;
pub mod doc;
pub mod finite;
pub mod iso;

pub use error::{Error, Result};

/// Default exact scalar: arbitrary-precision rational.
pub type Rat = num_rational::BigRational;
/// Machine-word rational for small experiments (may overflow on large data).
pub type Rat64 = num_rational::Rational64;

/// Vector over the default scalar.
pub type QVector = linalg::Vector<Rat>;
/// Matrix over the default scalar.
pub type QMat = linalg::Mat<Rat>;
/// Form space over the default scalar.
pub type QFormSpace = linalg::FormSpace<Rat>;
/// Finite root system over the default scalar.
pub type QSystem = finite::FiniteRootSystem<Rat>;
/// Affine presentation over arbitrary-precision rationals.
pub type QPresentation = affine::AffinePresentation<Rat>;
/// Fiber over arbitrary-precision rationals.
pub type QFiber = affine::Fiber<Rat>;
