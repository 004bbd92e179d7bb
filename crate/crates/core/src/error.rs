use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope: 0/0")]
    InvalidSlope,
    #[error("invalid substitution t -> t^0")]
    InvalidSubstitution,
    #[error("not an Alexander polynomial: {0}")]
    NotAlexander(String),
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("parse error in {what}: {msg}")]
    Parse { what: &'static str, msg: String },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("closure has {0} components, a knot is required")]
    MultiComponent(usize),
    #[error("diagram has {crossings} crossings, above the state-sum cap of {cap}")]
    ResourceLimit { crossings: usize, cap: usize },
    #[error("invalid cable parameters ({p},{q}): {msg}")]
    InvalidCable { p: String, q: String, msg: &'static str },
    #[error("T({0},{1}) has a unit parameter; use U for the unknot")]
    TorusUnitParameter(String, String),
    #[error("slope ∞ is settled by the knot complement theorem, not by the classifier")]
    InfiniteSlope,
    #[error("descriptor lacks JSJ annotations: {0}")]
    UnannotatedDescriptor(String),
    #[error("leaf {name} is missing attribute `{attribute}`")]
    MissingAttribute { name: String, attribute: &'static str },
    #[error("unknown knot name {0}")]
    UnknownKnot(String),
    #[error("r = -r: slope 0 compares a surgery with itself")]
    SlopesEqual,
    #[error("{0} is a torus knot; the torus-knot theorem applies instead")]
    TorusKnot(String),
    #[error("{0} is not a cable knot")]
    NotACable(String),
    #[error("sample is too degenerate: {0}")]
    NeedsMoreSamples(String),
    #[error("affine cabling model violated: residual {residual} in {system}")]
    ModelViolation { system: &'static str, residual: String },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, msg: impl Into<String>) -> Self {
        Error::Parse { what, msg: msg.into() }
    }

    /// Resource exhaustion is reported separately from bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
