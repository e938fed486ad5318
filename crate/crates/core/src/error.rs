use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    // field
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("no built-in modulus for GF({p}^{k})")]
    NoDefaultModulus { p: u32, k: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {0} is larger than supported (2^16)")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("code {code} is not an element of a field with {q} elements")]
    InvalidElement { code: u32, q: u32 },

    // semigroup
    #[error("generators must be positive with gcd 1")]
    GcdNotOne,
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(u32),
    #[error("{0} is not a valid delta (must lie in S and not exceed the conductor)")]
    InvalidDelta(u32),
    #[error("{0} is outside [0, c-1]")]
    OutOfRange(u32),

    // function field
    #[error("element has a term of pole order {0} outside the registry span")]
    NotInSpan(u32),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("d = {0} lies in D_A or D_B")]
    DInSets(u32),
    #[error("basis modification hit a zero projection at pole order {0}")]
    ZeroProjection(u32),

    // constructions
    #[error("duplicate element {0} in degree set")]
    DuplicateElement(u32),
    #[error("degree sets must be nonempty")]
    EmptySet,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("m = {0} is not in the semigroup")]
    MNotInSemigroup(u32),
    #[error("expected exactly one multiple of m in [c, c+m-1]")]
    NoUniqueMultiple,
    #[error("m = {m} is below the required minimum {required}")]
    MTooSmall { m: u32, required: u32 },
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("search space of {size} candidates exceeds the guard")]
    SearchSpaceTooLarge { size: f64 },
    #[error("no solution within search bound {0}")]
    NoSolutionInBound(u32),
    #[error("method {method} is not available for {kind} codes")]
    MethodMismatch { method: String, kind: String },

    // codec
    #[error("not enough places: need {needed}, curve/scheme offers {available}")]
    NotEnoughPlaces { needed: usize, available: usize },
    #[error("solution semigroup does not match the curve's Weierstrass semigroup")]
    SemigroupCurveMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("partition does not divide: {0}")]
    PartitionIndivisible(String),
    #[error("too few responders: got {got}, need {needed}")]
    TooFewResponders { got: usize, needed: usize },
    #[error("duplicate place index {0}")]
    DuplicatePlace(usize),
    #[error("unknown place index {0}")]
    UnknownPlace(usize),
    #[error("matrix is rank deficient")]
    RankDeficient,

    // sim / io
    #[error("invalid straggler model: {0}")]
    InvalidModel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
