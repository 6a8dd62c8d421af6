use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FcError {
    #[error("bad Coxeter or Cartan matrix: {0}")]
    BadMatrix(String),
    #[error("the bilinear form is not positive definite; the group is infinite")]
    InfiniteGroup,
    #[error("cannot parse input: {0}")]
    Parse(String),
    #[error("object does not belong to this system")]
    SystemMismatch,
    #[error("enumeration exceeds the cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("left divisibility fails")]
    NotDivisible,
    #[error("element is not in the m-weak interval")]
    NotInInterval,
    #[error("position set is not a facet")]
    NotAFacet,
    #[error("no flip partner at this position")]
    NoPartner,
    #[error("target is not a power of the longest element")]
    TargetNotRotatable,
    #[error("element is not noncrossing")]
    NotNoncrossing,
    #[error("invalid chain")]
    InvalidChain,
    #[error("invalid delta sequence")]
    InvalidDelta,
    #[error("generator is not initial in the Coxeter element")]
    NotInitial,
    #[error("reflection cannot be flipped")]
    NotFlippable,
    #[error("element is not sortable for this Coxeter element")]
    NotSortable,
    #[error("invalid skip set")]
    InvalidSkipSet,
    #[error("Coxeter element is not bipartite")]
    NotBipartite,
    #[error("not a Coxeter element: {0}")]
    NotCoxeterElement(String),
}

pub type Result<T> = std::result::Result<T, FcError>;
