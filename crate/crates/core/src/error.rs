use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec {spec:?}: {reason}")]
    Grammar { spec: String, reason: String },
    #[error("invalid Cayley table: {0}")]
    Table(String),
    #[error("semidirect product {spec:?}: exponent {k} does not define an action of C{n} ({reason})")]
    SemidirectExponent { spec: String, k: u64, n: u64, reason: String },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("element is not a Brauer relation in characteristic {0}")]
    NotARelation(u64),
    #[error("relation must have integer coefficients")]
    NonIntegral,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("group does not have the form C_p^r : C_n at p = {0}")]
    NotHypoShape(u64),
    #[error("Sylow {0}-subgroup is not cyclic")]
    NonCyclicSylow(u64),
    #[error("invalid lattice: {0}")]
    Lattice(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("unknown subgroup class label {0:?}")]
    UnknownClass(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
