use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("group order {order} exceeds the subgroup enumeration bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("representation is not fixed point free (trivial multiplicity {0})")]
    NotFixedPointFree(u64),
    #[error("cell budget exceeded: {cells} simplices for |X| = {set_size}, k = {copies} (budget {budget})")]
    CellBudgetExceeded { set_size: usize, copies: usize, cells: u128, budget: u128 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("coboundary composite delta^{degree} o delta^{prev} is nonzero", prev = .degree.saturating_sub(1))]
    NonzeroComposite { degree: usize },
    #[error("coefficient system has no value for orbit type {0}")]
    MissingOrbitType(String),
    #[error("coefficient system has no structure map for {0}")]
    MissingMorphism(String),
    #[error("ill-defined coefficient data: {0}")]
    IllDefined(String),
    #[error("module has torsion; lattice resolutions need a torsion-free module")]
    Torsion,
    #[error("resolution depth {depth} too small for degree {degree}")]
    DepthInsufficient { depth: usize, degree: usize },
}

impl Error {
    /// Budget exhaustion as opposed to invalid input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::CellBudgetExceeded { .. } | Error::BudgetExceeded(_) | Error::OrderBoundExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
