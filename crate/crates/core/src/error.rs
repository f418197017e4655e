use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("matrices live over different fields")]
    FieldMismatch,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("modules live over different groups")]
    GroupMismatch,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0:?} is not a partition")]
    NotAPartition(Vec<usize>),
    #[error("not a module map: fails to intertwine generator {generator}")]
    NotEquivariant { generator: usize },
    #[error("action matrix for generator {generator} is not invertible")]
    NotInvertible { generator: usize },
    #[error("action matrices violate a group relation")]
    RelationViolated,
    #[error("not a subgroup embedding: {0}")]
    BadSubgroup(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("morphism data does not satisfy the lifting square")]
    BadMorphism,
    #[error("unsupported pairing host: {0}")]
    UnsupportedHost(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Other(String),
}
