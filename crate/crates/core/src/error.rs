use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("complex has no facets")]
    Empty,

    #[error("complex is not pure: facet {facet} has {found} vertices, expected {expected}")]
    NotPure {
        facet: String,
        found: usize,
        expected: usize,
    },

    #[error("complex mixes colored and uncolored vertices")]
    MixedVertices,

    #[error("facet {0} repeats a vertex")]
    RepeatedVertex(String),

    #[error("dimension {requested} is outside 0..={max}")]
    DimensionOutOfRange { requested: usize, max: usize },

    #[error("chain dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },

    #[error("face {0} is not in the complex")]
    MissingFace(String),

    #[error("brute-force enumeration refused: {facets} facets exceeds the bound of {bound}")]
    TooManyFacets { facets: usize, bound: usize },

    #[error("weight for vertex {0} is missing")]
    MissingWeight(String),

    #[error("weight for vertex {0} must be positive")]
    NonPositiveWeight(String),

    #[error("source current must be positive")]
    NonPositiveCurrent,

    #[error("{0} must have one vertex more than the complex dimension")]
    WrongGeneratorSize(String),

    #[error("boundary not spanned: the boundary of {0} is not in the image of the top boundary map")]
    BoundaryNotSpanned(String),

    #[error("the generator facet is not present in the complex")]
    MissingGenerator,

    #[error("{0} is not a facet of the complex")]
    NotAFacet(String),

    #[error("{0} is a bridge facet: every spanning tree contains it, so the deletion has no spanning tree")]
    BridgeFacet(String),

    #[error("every proper subset of {0} is already a face; use the network ratio instead")]
    AllBoundaryPresent(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("not a {family} complex: {reason}")]
    NotInFamily { family: &'static str, reason: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
