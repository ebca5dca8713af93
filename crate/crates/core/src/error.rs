use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("normal vector must be nonzero")]
    ZeroNormal,
    #[error("half-space normal {0} is not primitive")]
    NonPrimitiveNormal(String),
    #[error("degenerate simplex: {0}")]
    DegenerateSimplex(String),
    #[error("vertex subset {0:?} is not a valid face")]
    InvalidFace(Vec<usize>),
    #[error("unbounded region")]
    UnboundedRegion,
    #[error("edge has no interior lattice points")]
    EdgeWithoutInteriorPoints,
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error("subdivision violates the interior-point identity: l*(parent) = {lhs} but pieces + cuts = {rhs}")]
    IdentityViolated { lhs: String, rhs: String },
    #[error("rational vertex; not a lattice simplex for this degree")]
    RationalVertex,
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("{0}")]
    Parse(String),
}
