use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),
    #[error("non-finite amplitude or matrix entry")]
    NonFinite,
    #[error("superposition cancelled to norm {0}")]
    DestructiveCancellation(f64),
    #[error("matrix is not Hermitian (deviation {0})")]
    NonHermitian(f64),
    #[error("density matrix trace {0} is not 1")]
    BadTrace(f64),
    #[error("density matrix has negative eigenvalue {0}")]
    NegativeEigenvalue(f64),
    #[error("expectation value has imaginary residue {0}")]
    ImaginaryResidue(f64),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("spin magnitude {0} outside [0, 1/2]")]
    MagnitudeOutOfRange(f64),
    #[error("invalid Schmidt decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("shot count must be positive")]
    ZeroShots,
    #[error("plus count {plus} exceeds shots {shots}")]
    CountOverflow { plus: u64, shots: u64 },
    #[error("expected counts along {expected:?}, got {found:?}")]
    AxisMismatch {
        expected: crate::Axis,
        found: crate::Axis,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
