use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("permutations of different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a permutation of 0..{0}")]
    InvalidPerm(usize),
    #[error("set is not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("group is not soluble")]
    NotSoluble,
    #[error("subgroup has non-trivial core, coset action is not faithful")]
    CoreNotTrivial,
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("q = {0} is not a Sophie Germain prime (need q >= 3 prime and 2q+1 prime)")]
    NotSophieGermain(u64),
    #[error("invalid group presentation: {0}")]
    InvalidSpec(String),
    #[error("permutation is not an element of the holomorph")]
    NotInHolomorph,
    #[error("count {numerator}/{denominator} is not an integer")]
    NonIntegerCount { numerator: u64, denominator: u64 },
    #[error("degree {0} is not a composite squarefree number greater than 6")]
    BadDegree(u64),
    #[error("degree {degree} exceeds the oracle limit {max}")]
    DegreeTooLarge { degree: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
