use alloc::string::String;

/// Errors raised by the core operations on malformed or mismatched input.
///
/// Mathematical outcomes (a cycle that does not bound, a failed closeness
/// test) are reported through return values, never through this type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix entry is not an integer: {0}")]
    NotIntegral(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("cannot parse coefficient `{0}`")]
    BadCoefficient(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("simplex {0} does not belong to the complex")]
    UnknownSimplex(String),
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("chain is not a cycle: {0}")]
    NotACycle(String),
    #[error("carrier leaves the subcomplex: {0}")]
    CarrierOutside(String),
    #[error("not a chain morphism: {0}")]
    NotAChainMorphism(String),
    #[error("homology class depends on the representative: {0}")]
    RepresentativeDependence(String),
    #[error("nesting violated: {0}")]
    NestingViolated(String),
}
