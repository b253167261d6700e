use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("morphism is not an epimorphism")]
    NotEpi,
    #[error("morphism is not a monomorphism")]
    NotMono,
    #[error("Γ′-morphism is not onto")]
    NotOnto,
    #[error("degree {0} exceeds the supported maximum of 63")]
    DegreeTooLarge(usize),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("point is not in the interior of its simplex")]
    NotInterior,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ratios coincide at ({0},{1}); no separating interval pair exists")]
    EqualRatios(usize, usize),
    #[error("no coordinate pair separates the two points")]
    NoSeparatingPair,
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("invalid simplicial set: {0}")]
    InvalidSSet(String),
    #[error("simplicial identity d_{i} d_{j} = d_{j_minus_one} d_{i} fails on cell `{cell}`", j_minus_one = .j - 1)]
    IdentityViolation { cell: String, i: usize, j: usize },
    #[error("the two points coincide in the realization")]
    SamePoint,
    #[error("no separating η found after {0} halvings")]
    SearchExhausted(u32),
    #[error("parse error: {0}")]
    Parse(String),
}
