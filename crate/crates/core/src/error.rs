use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown item id {0}")]
    UnknownItem(u32),
    #[error("unknown object index {0}")]
    UnknownObject(usize),
    #[error("worst-case context needs at least one item")]
    EmptyWorstCase,
    #[error("minimum support must be at least 1 object")]
    ZeroMinsupp,
    #[error("minimum confidence {num}/{den} is not in [0, 1]")]
    InvalidMinconf { num: u64, den: u64 },
    #[error("oracle refuses contexts with {items} items (limit {limit})")]
    OracleTooLarge { items: usize, limit: usize },
    #[error("generator {0} has not been placed in the lattice")]
    UnprocessedGenerator(usize),
}
