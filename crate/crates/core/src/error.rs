use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("invalid tower parameters: {0}")]
    InvalidParams(String),
    #[error("field with p = {p}, k·r = {degree} exceeds the 2^26 element cap")]
    SizeCapExceeded { p: u64, degree: u64 },
    #[error("no monic irreducible polynomial of degree {0} found")]
    IrreducibleSearchFailed(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("{d} is not a divisor of r = {r}")]
    InvalidDivisor { d: u32, r: u32 },
    #[error("element {0} does not belong to the field")]
    InvalidElement(u32),

    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("polynomial does not split over the field")]
    NonSplittingPolynomial,

    #[error("character index {index} out of range [0, {order})")]
    IndexOutOfRange { index: u64, order: u64 },
    #[error("{e} does not divide the group order {n}")]
    NonDivisorOrder { e: u64, n: u64 },

    #[error("coordinate set A_{0} is empty")]
    EmptyCoordinateSet(usize),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid sparse weight s = {s} for r = {r}")]
    InvalidWeight { s: u32, r: u32 },

    #[error("inconsistent context: {0}")]
    InconsistentContext(String),
    #[error("empty character product")]
    EmptyProduct,
    #[error("precondition unmet: {0}")]
    PrereqUnmet(String),

    #[error("domain error: {0}")]
    DomainError(String),
    #[error("r = {r} is outside the admissible range: {reason}")]
    PreconditionROutOfRange { r: u32, reason: String },
    #[error("{0} is too large to factor (limit 2^63)")]
    FactorizationTooLarge(u128),

    #[error("parse error: {0}")]
    Parse(String),
}
