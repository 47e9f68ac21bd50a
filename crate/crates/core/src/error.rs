use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group enumeration passed the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("matrix generator {index} is singular")]
    NotInvertible { index: usize },
    #[error("the involution is the identity")]
    TrivialInvolution,
    #[error("element {u} is not a central involution")]
    NotCentralInvolution { u: usize },
    #[error("{what}: {needed} exceeds the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        limit: u64,
    },
    #[error("the cochain is not a 2-cocycle")]
    NotCocycle,
    #[error("the central involution does not split off the group")]
    NotSplit,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form is not invariant under generator {generator}")]
    NotInvariant { generator: usize },
    #[error("the involution does not act as -1 on the representation")]
    NotMinusOne,
    #[error("W(E8) is never enumerated")]
    E8Refused,
    #[error("{0} requires an explicit opt-in")]
    OptInRequired(String),
    #[error("coefficient modulus {0} is odd")]
    OddModulus(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
