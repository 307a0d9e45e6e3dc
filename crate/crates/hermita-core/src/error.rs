//! Error type shared across the crate.

use core::fmt;

/// Everything that can go wrong in exact form arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// Attempt to invert zero.
    DivisionByZero,
    /// A nonzero element turned out to have reduced norm zero: the
    /// descriptor does not define a division algebra on this element.
    NotDivision,
    /// Operands belong to different algebras.
    DescriptorMismatch,
    /// Matrix or module shapes do not conform.
    ShapeMismatch,
    /// A 1-based index lies outside the matrix.
    IndexOutOfRange,
    /// Row reduction found no invertible pivot.
    Singular,
    /// The matrix is neither hermitian nor skew-hermitian, or a declared
    /// sign is contradicted by the data.
    NotEpsilonHermitian,
    /// The form is on the wrong side for the requested operation.
    SideMismatch,
    /// Two forms carry different ε-statuses.
    EpsilonMismatch,
    /// Two forms carry different adjoint involutions.
    InvolutionMismatch,
    /// A probe of a black-box evaluator contradicts sesquilinearity.
    InconsistentEvaluator,
    /// Rejected algebra parameters.
    InvalidDescriptor(&'static str),
    /// Malformed textual encoding.
    Parse(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotDivision => write!(f, "zero divisor hit: not a division algebra"),
            Error::DescriptorMismatch => write!(f, "operands belong to different algebras"),
            Error::ShapeMismatch => write!(f, "shapes do not conform"),
            Error::IndexOutOfRange => write!(f, "index out of range"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotEpsilonHermitian => {
                write!(f, "matrix is neither hermitian nor skew-hermitian as required")
            }
            Error::SideMismatch => write!(f, "form is on the wrong side for this operation"),
            Error::EpsilonMismatch => write!(f, "forms carry different epsilon statuses"),
            Error::InvolutionMismatch => write!(f, "forms carry different involutions"),
            Error::InconsistentEvaluator => {
                write!(f, "evaluator failed a sesquilinearity probe")
            }
            Error::InvalidDescriptor(msg) => write!(f, "invalid algebra descriptor: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
