use thiserror::Error;

/// Errors raised by group arithmetic, measure validation and sampling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("non-finite angle")]
    NonFiniteAngle,

    #[error("digit {digit} out of range for p = {p}")]
    DigitOutOfRange { digit: u32, p: u32 },

    #[error("mismatched operands: {0}")]
    Mismatch(String),

    #[error("character depth exceeds element depth ({depth} > {max})")]
    CharacterDepth { depth: usize, max: usize },

    #[error("character index {ell} out of range for depth {d}")]
    CharacterIndex { d: usize, ell: i64 },

    #[error("coordinate index {index} out of range 0..={depth}")]
    CoordinateOutOfRange { index: usize, depth: usize },

    #[error("not a solenoid point: integrality residual {residual:e} at coordinate {index}")]
    NotSolenoidPoint { index: usize, residual: f64 },

    #[error("sequence too short: need {needed} integer coordinates, got {got}")]
    SequenceTooShort { needed: usize, got: usize },

    #[error("depth {depth} too large for p = {p}")]
    DepthTooLarge { p: u32, depth: usize },

    #[error("Lévy measure must satisfy η({{e}})=0: atom {index} sits at the identity")]
    AtomAtIdentity { index: usize },

    #[error("Lévy atom {index} has invalid mass {mass}")]
    InvalidMass { index: usize, mass: f64 },

    #[error("there is no nontrivial Gauss measure on the p-adic integers (got b = {0})")]
    GaussOnPadic(f64),

    #[error("quadratic form parameter must be finite and nonnegative (got b = {0})")]
    InvalidQuadraticForm(f64),

    #[error("invalid compact subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("empty interval [{lo}, {hi})")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("invalid rate {0}")]
    InvalidRate(f64),

    #[error("divisibility check requires centered measure")]
    NotCentered,

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
