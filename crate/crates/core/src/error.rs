use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude vector length {len} is not a power of two")]
    NotPowerOfTwoLength { len: usize },

    #[error("amplitude vector has zero norm")]
    ZeroNorm,

    #[error("amplitude vector has norm {norm}, expected 1 within {tolerance:e}")]
    NotNormalized { norm: f64, tolerance: f64 },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("M = {m} is outside [2, 2^{n}]")]
    MOutOfRange { m: usize, n: usize },

    #[error("M = {m} is a power of two; the weighted construction requires a non-power of two")]
    MPowerOfTwo { m: usize },

    #[error("expected {expected} weights (popcount(M) - 1), got {found}")]
    WeightLengthMismatch { expected: usize, found: usize },

    #[error("weight b[{index}] = {value} is outside [-1, 1]")]
    WeightOutOfRange { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{n} qubits exceeds the limit of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("qubit index {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("control and target coincide on qubit {qubit}")]
    ControlIsTarget { qubit: usize },

    #[error("rotation angle is not finite")]
    NonFiniteAngle,

    #[error("register must have at least one qubit")]
    EmptyRegister,
}
