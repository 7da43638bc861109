use alloc::string::String;

use thiserror::Error;

use crate::matrix::{Order, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element uses a letter outside the generator set of this matrix")]
    ForeignElement,
    #[error("subset is not irreducible ({0} components)")]
    NotIrreducible(usize),
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("`{s}` is not right-angled: m({s}, {t}) = {order}")]
    NotRightAngled { s: String, t: String, order: Order },
    #[error("the system is not right-angled: `{0}` has a label outside {{2, inf}}")]
    SystemNotRightAngled(String),
    #[error("the odd class of `{0}` is not a singleton")]
    OddClassNotSingleton(String),
    #[error("element does not lie in the parabolic subgroup")]
    NotInSubgroup,
    #[error("element is not an involution")]
    NotInvolution,
    #[error("element is not a reflection")]
    NotAReflection,
    #[error("component is not an s-component of (-1)-type")]
    ComponentNotMinusOneType,
    #[error("candidate is already proper")]
    CandidateAlreadyProper,
    #[error("candidate is not proper; apply a diagram twist first")]
    CandidateNotProper,
    #[error("invalid blowing-down candidate: {0}")]
    CandidateInvalid(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}
