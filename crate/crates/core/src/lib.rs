//! Workbench for finite-dimensional representation theory over exact fields.
//!
//! The crate builds concrete models of three kinds of additive categories —
//! module categories of quiver algebras with relations, stable module
//! categories of self-injective algebras, and orbit categories of translation
//! quivers — and mechanically checks structural properties of additive
//! quotient functors on them (fullness, density, representability of the
//! induced hom functor, cluster-tilting criteria, projective generators in
//! quotients, almost-split behaviour).
//!
//! All linear algebra is exact: prime fields with a runtime modulus, or the
//! rationals via arbitrary-precision arithmetic.

pub mod field;
pub mod poly;
pub mod mat;
pub mod subspace;
pub mod fdalg;
pub mod quiver;
pub mod rep;
pub mod modcat;
pub mod cat;
pub mod stable;
pub mod mesh;
pub mod gamma;
pub mod ideal;
pub mod theory;
pub mod descriptor;
pub mod report;
pub mod dot;

/// Errors surfaced by the workbench.
///
/// Programmer errors (dimension mismatches, out-of-range indices) panic via
/// `assert!`; this enum is reserved for *mathematical* failure modes that a
/// caller can meaningfully react to.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A computation requires the field characteristic to be zero or larger
    /// than some bound (e.g. the trace-form radical criterion).
    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    /// An enumeration cap was exceeded while closing a set of indecomposables;
    /// the input algebra is (possibly) of infinite representation type.
    #[error("indecomposable enumeration exceeded cap {0}; the algebra may be of infinite representation type")]
    PossiblyInfiniteType(usize),

    /// The semisimple quotient of an endomorphism ring has a division-algebra
    /// factor larger than the ground field, so idempotent splitting over this
    /// field is not supported.  We refuse to guess.
    #[error("non-split endomorphism ring: {0}")]
    NonSplit(String),

    /// Exhaustive root extraction was infeasible (e.g. rational coefficients
    /// too large for divisor enumeration).
    #[error("root search infeasible: {0}")]
    RootSearch(String),

    /// A descriptor file is malformed or describes inconsistent data.
    #[error("invalid descriptor: {0}")]
    Descriptor(String),

    /// Some internal cap (path length, iteration count) was exceeded.
    #[error("computation cap exceeded: {0}")]
    Cap(String),

    /// The input does not satisfy a structural precondition of the requested
    /// construction (e.g. stable category of a non-self-injective algebra).
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A certified internal invariant failed to verify.  Indicates a bug, is
    /// never silently ignored.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
