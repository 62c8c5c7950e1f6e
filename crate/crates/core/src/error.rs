use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sign vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("polynomial division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("{m} hyperplanes exceed the enumeration cap of {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("operation `{0}` requires a full-mode arrangement")]
    ModeError(&'static str),
    #[error("arrangement is not central")]
    NotCentral,
    #[error("face {0} has no opposite face in the arrangement")]
    OppositeMissing(String),
    #[error("face {0} is not below face {1}")]
    NotNested(String, String),
    #[error("expected face {0} is missing from the arrangement")]
    TildeMissing(String),
    #[error("apartment contains no chamber")]
    EmptyApartment,
    #[error("{0} is not a flat of the arrangement")]
    UnknownFlat(String),
    #[error("{0} is not a chamber")]
    NotChamber(String),
    #[error("{0} is a chamber and has no weight or multiplicity")]
    ChamberHasNoWeight(String),
    #[error("multiplicity of {face} is inconsistent: per-hyperplane chamber counts {counts:?}")]
    MultiplicityInconsistent { face: String, counts: Vec<usize> },
    #[error("q-assignment is degenerate for this arrangement (det S_A vanishes)")]
    DegenerateAssignment,
    #[error("recursion denominator vanishes at face {0}")]
    PoleEncountered(String),
    #[error("unknown face {0}")]
    UnknownFace(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
