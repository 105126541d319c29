use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    // finite fields
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree {0} is outside 1..=6")]
    DegreeTooLarge(u32),
    #[error("field order {0} exceeds 10^6")]
    FieldOrderTooLarge(u64),
    #[error("no irreducible polynomial found for p={p}, r={r}")]
    NoIrreducibleFound { p: u32, r: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("elements belong to different fields (q={0} vs q={1})")]
    FieldMismatch(u32, u32),
    #[error("operation requires a nonzero element")]
    ZeroElement,

    // abstract groups
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("group of order {0} is too large for commutator enumeration")]
    CommutatorTooLarge(usize),
    #[error("abelianization is not cyclic")]
    AbelianizationNotCyclic,
    #[error("index {n} does not divide abelianization order {m}")]
    IndexDoesNotDivide { n: usize, m: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("isomorphism undecided: order {0} exceeds the backtracking cap and no candidate map was given")]
    Indeterminate(usize),
    #[error("map is not a group homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    // matrix groups
    #[error("field of order {0} is too large for this matrix group")]
    FieldTooLarge(u32),
    #[error("q = {q} is not congruent to 1 mod {n}")]
    CongruenceFailed { q: u32, n: u64 },
    #[error("no witness exists for p = {0}")]
    NoWitness(u32),
    #[error("group is not a matrix group")]
    NotMatrixGroup,

    // splitting
    #[error("subgroup index is {actual}, expected {expected}")]
    IndexMismatch { expected: usize, actual: usize },
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("gcd(r, n) = {0} must be 1")]
    GcdPrecondition(u64),
    #[error("limit {0} exceeds 10^7")]
    LimitTooLarge(u64),

    // semidirect products
    #[error("transversals are not aligned: {0}")]
    MisalignedTransversals(String),
    #[error("product order {0} exceeds the cap")]
    OrderCap(u128),
    #[error("transversal is not closed under multiplication")]
    NotClosed,

    // representations
    #[error("dimension {0} exceeds the cap of 64")]
    DimCap(usize),
    #[error("sigma is not the restriction of pi to H")]
    NotRestriction,
    #[error("coset images are not pairwise disjoint")]
    DisjointnessFailure,
    #[error("representations are not defined on the same group or field")]
    GroupMismatch,
    #[error("pair is not (pi, Ind(pi|H))")]
    NotInducedPair,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    // input
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
