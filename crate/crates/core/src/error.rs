use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element id {id} out of range for poset of size {size}")]
    ElementOutOfRange { id: usize, size: usize },

    #[error("vertex id {id} out of range for digraph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("self loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("cover relations contain a cycle through elements {0} and {1}")]
    CycleInCoverRelations(usize, usize),

    #[error("more than {limit} antichains; raise the limit")]
    AntichainLimitExceeded { limit: usize },

    #[error("{what} exceeds the configured limit of {limit}")]
    SizeLimitExceeded { what: &'static str, limit: u128 },

    #[error("poset is not a lattice: {0}")]
    NotALattice(String),

    #[error("lattice is not distributive")]
    NotDistributive,

    #[error("vertices {0} and {1} are adjacent but share a color")]
    NotProperColoring(usize, usize),

    #[error("walk {0:?} has no color")]
    MissingColor(Vec<usize>),

    #[error("coloring assigns walk {walk:?} color {color}, which is not an element of the poset")]
    ColorOutOfRange { walk: Vec<usize>, color: usize },

    #[error("walk {0:?} is not a walk of the digraph")]
    NotAWalk(Vec<usize>),

    #[error("input coloring is not valid: empty candidate set for walk {0:?}")]
    InvalidInputColoring(Vec<usize>),

    #[error("representation is not an order embedding at elements {0} and {1}")]
    InvalidRepresentation(usize, usize),

    #[error("run of {len} walks colored {color} starting with {walk:?} exceeds its budget")]
    BudgetViolated {
        color: usize,
        len: usize,
        walk: Vec<usize>,
    },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for the errors that mean "the instance is too big", as opposed
    /// to malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::AntichainLimitExceeded { .. } | Error::SizeLimitExceeded { .. }
        )
    }
}
