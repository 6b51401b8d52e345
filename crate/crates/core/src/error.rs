use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("map is not monotone: {0:?}")]
    NotMonotone(Vec<usize>),

    #[error("map value {value} exceeds codomain [{codomain}]")]
    ValueOutOfRange { value: usize, codomain: usize },

    #[error("map has {got} values but domain [{domain}] needs {}", domain + 1)]
    ArityMismatch { domain: usize, got: usize },

    #[error("cannot compose: inner map lands in [{inner_codomain}] but outer map starts at [{outer_domain}]")]
    CompositionMismatch {
        inner_codomain: usize,
        outer_domain: usize,
    },

    #[error("face index {k} out of range for [{n}]")]
    FaceOutOfRange { n: usize, k: usize },

    #[error("map {0:?} is not injective")]
    NotInjective(Vec<usize>),

    #[error("vertex {vertex} out of range for [{m}]")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("context mismatch: expected {expected}, got {got}")]
    ContextMismatch { expected: String, got: String },

    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("substitution: {0}")]
    Substitution(String),

    #[error("input not in C_{m}: reconstruction differs from the input")]
    NotElementary { m: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
