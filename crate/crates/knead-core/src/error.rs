use thiserror::Error;

/// Errors produced by the map, symbolic and invariant pipelines.
#[derive(Debug, Error)]
pub enum KneadError {
    #[error("point {0} lies outside the map domain [{1}, {2}]")]
    OutsideDomain(f64, f64, f64),

    #[error("orbit escaped the domain at iterate {index} (value {value})")]
    Escape { index: usize, value: f64 },

    #[error("orbit is not closed under the basis map (gap {0} at index {1})")]
    InconsistentOrbit(f64, usize),

    #[error("address is ambiguous: {x} lies within {tol} of two critical points")]
    AmbiguousAddress { x: f64, tol: f64 },

    #[error("modality mismatch: {0} vs {1}")]
    ModalityMismatch(usize, usize),

    #[error("sequences agree through a critical symbol; order is undefined")]
    AmbiguousOrder,

    #[error("kneading data is inadmissible: rule {rule} fails for block {block} at shift {shift}")]
    Inadmissible {
        rule: u8,
        block: usize,
        shift: usize,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("map family '{0}' is not kneading-eligible")]
    NotKneadingEligible(String),

    #[error("map shape violates the standing convention: {0}")]
    ShapeMismatch(String),

    #[error(
        "kneading determinant witnesses disagree: column {col} gives {got}, column 1 gives {want}"
    )]
    WitnessMismatch {
        col: usize,
        got: String,
        want: String,
    },

    #[error("denominators do not clear: {0} is not a polynomial")]
    NotPolynomial(String),

    #[error("partition is not Markov: image endpoint {0} is interior to piece {1}")]
    NotMarkov(f64, usize),

    #[error("degenerate partition: {0}")]
    DegeneratePartition(String),

    #[error("symbolic shift action is inconsistent with the lap orientations at interval {0}")]
    OrientationInconsistent(usize),

    #[error("internal convention error: {0}")]
    InternalConvention(String),

    #[error("no periodic orbit of period <= {0} found from x0 = {1}")]
    NoOrbit(usize, f64),
}

pub type Result<T> = std::result::Result<T, KneadError>;
