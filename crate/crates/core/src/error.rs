use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("determinant {det} is not a unit mod {modulus}")]
    NotInvertible { det: u32, modulus: u32 },
    #[error("{divisor} does not divide {modulus}")]
    NotDivisor { divisor: u32, modulus: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("modulus {0} exceeds the 8-bit packing limit")]
    TooLargeToPack(u32),
    #[error("packed word {word:#010x} has an entry out of range mod {modulus}")]
    BadPackedWord { word: u32, modulus: u32 },
    #[error("unsupported symplectic dimension g = {0}")]
    UnsupportedDimension(usize),
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix is not a symplectic similitude")]
    NotSimilitude,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(String),
    #[error("element set would exceed the budget of {budget} elements")]
    ElementBudget { budget: usize },
    #[error("conjugation orbit would exceed the budget of {budget} cosets")]
    OrbitBudget { budget: usize },
    #[error("group of order {order} is not a 2-group")]
    NotTwoGroup { order: usize },
    #[error("modulus {modulus} is too small; need at least {needed}")]
    ModulusTooSmall { modulus: u32, needed: u32 },
    #[error("expected a power of {prime}, got modulus {modulus}")]
    WrongPrime { prime: u32, modulus: u32 },
    #[error("determinant is not surjective mod {0}")]
    DetNotSurjective(u32),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("search budget exhausted after {processed} nodes: {reason}")]
    Budget { processed: usize, reason: String },
    #[error("no non-minimality witness found for {0}")]
    WitnessNotFound(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("input is not congruent to {0} mod 4")]
    Precondition(&'static str),
    #[error("precision dropped to {got} bits, need {needed}")]
    PrecisionUnderflow { got: u32, needed: u32 },
    #[error("class {class} exhausted {retries} lifts with d ≡ 0 mod 2^50")]
    RetriesExhausted { class: usize, retries: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve is singular")]
    Singular,
    #[error("twist parameter is zero")]
    ZeroTwist,
    #[error("B = 0: no 2-isogeny with kernel {{O, (0,0)}}")]
    NoTwoTorsionKernel,
    #[error("{0}")]
    Field(String),
    #[error("expression parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("identity failure: {0}")]
    Identity(String),
    #[error("family table checksum mismatch: {0}")]
    Checksum(String),
}
