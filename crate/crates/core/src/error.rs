use alloc::string::String;

use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The sum table is not well formed (independent of the axioms).
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("not an effect algebra: {0}")]
    NotEffectAlgebra(String),
    #[error("the derived order is not a lattice")]
    NotLattice,
    #[error("{a} and {b} are not comparable, so {b} - {a} is not defined")]
    NotComparable { a: Elem, b: Elem },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what}: size {size} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    /// A claim that holds for every finite lattice effect algebra failed on
    /// this instance. Either the instance or the implementation is wrong.
    #[error("falsified: {claim}: {witness}")]
    Falsified { claim: &'static str, witness: String },
}

impl Error {
    pub(crate) fn falsified(claim: &'static str, witness: impl Into<String>) -> Self {
        Error::Falsified { claim, witness: witness.into() }
    }

    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsified { .. })
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub(crate) fn falsified(claim: &'static str, witness: impl Into<String>) -> Error {
    Error::falsified(claim, witness)
}
