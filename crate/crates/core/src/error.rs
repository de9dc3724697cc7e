use thiserror::Error;

use crate::lattice::LatticeError;
use crate::set::ElementSet;
use crate::zfl::ZViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("ground set of {0} elements exceeds the supported maximum of 64")]
    GroundTooLarge(usize),

    #[error("rank {k} is outside 0..={rank}")]
    RankOutOfRange { k: usize, rank: usize },

    #[error("{0} is not a cyclic flat")]
    NotCyclicFlat(ElementSet),

    #[error("{0} is not a nonempty proper cyclic flat")]
    NotProperCyclicFlat(ElementSet),

    #[error("{inner} is not contained in {outer}")]
    NotNested { inner: ElementSet, outer: ElementSet },

    #[error("matroid has loops {0}")]
    Loops(ElementSet),

    #[error("matroid has coloops {0}")]
    Coloops(ElementSet),

    #[error("cyclic-flat family rejected: {0}")]
    InvalidFamily(ZViolation),

    #[error("invalid paving data: {0}")]
    Paving(String),

    #[error(transparent)]
    Lattice(#[from] LatticeError),

    #[error("not a permutation of the ground set: {0}")]
    NotAPermutation(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("{what} needs n <= {limit}, got n = {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

impl From<ZViolation> for Error {
    fn from(v: ZViolation) -> Self {
        Error::InvalidFamily(v)
    }
}
