//! Error type shared by the whole library.

use thiserror::Error;

/// Errors reported by construction, validation and classification routines.
///
/// Axiom *violations* are not errors: validation returns a report listing
/// them. Errors are reserved for inputs that are malformed (wrong dimensions,
/// unparsable rationals, empty root sets) or for operations whose
/// preconditions are not met (reflecting by a root that is not in the system,
/// asking for the step function of a finite presentation, and so on).
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input data is malformed or violates a structural precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two objects that must live in the same space have different dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An odd reflection is ambiguous: both candidate images are roots.
    #[error("odd reflection of {beta} by isotropic {alpha} is ambiguous: both candidates are roots")]
    AmbiguousReflection { alpha: String, beta: String },

    /// An odd reflection is undefined: neither candidate image is a root.
    #[error("odd reflection of {beta} by isotropic {alpha} is undefined: neither candidate is a root")]
    UndefinedReflection { alpha: String, beta: String },

    /// A numeric or combinatorial precondition failed (for example asking for
    /// a translation coefficient of an orthogonal pair).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested quantity does not exist for this input (for example the
    /// step function of a finite or peculiar presentation).
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// The system is valid but matches no catalogued type.
    #[error("unclassifiable: {0}")]
    Unclassifiable(String),

    /// The requested catalogue tag does not denote a constructible system.
    #[error("unsupported tag: {0}")]
    UnsupportedTag(String),

    /// A document or rational literal could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
