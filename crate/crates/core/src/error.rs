use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse group spec `{spec}`: {reason}")]
    GroupSpec { spec: String, reason: String },
    #[error("cannot parse subset spec `{spec}`: {reason}")]
    SubsetSpec { spec: String, reason: String },
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("subsets belong to different groups")]
    GroupMismatch,
    #[error("element {element} is outside a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("{0} must be nonempty")]
    Empty(&'static str),
    #[error("A^n is undefined for n = 0")]
    ZeroPower,
    #[error("epsilon {0} is outside the open interval (0, 1)")]
    EpsilonRange(String),
    #[error("threshold must be a nonnegative rational with positive denominator")]
    BadThreshold,
    #[error("set is not symmetric (closed under inverses and containing the identity)")]
    NotSymmetric,
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("operation requires an abelian group given as a product of cyclic groups")]
    NotAbelian,
    #[error("precondition violated: {what} (witness element {witness})")]
    Precondition { what: &'static str, witness: usize },
    #[error("VC dimension is at least {0}; exact value unavailable")]
    VcCapReached(usize),
    #[error("VC dimension is 0; use the coset description instead")]
    VcZero,
    #[error("Bohr membership of element {element} is within 1e-9 of the radius")]
    BohrBoundary { element: usize },
    #[error("invalid Bohr specification: {0}")]
    BohrSpec(String),
    #[error("subgroup enumeration for order {order} exceeds the cap {cap}; pass a limit")]
    EnumerationCap { order: usize, cap: usize },
    #[error("no admissible iteration depth found: {0}")]
    Falsified(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
