use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is outside the supported range (p < 65536)")]
    PrimeTooLarge(u64),
    #[error("dimension {0} is outside the supported range 1..=4")]
    Dimension(usize),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} exceeds dimension {d}")]
    VariableIndex { index: usize, d: usize },
    #[error("ring mismatch: {0}")]
    Mismatch(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("not of cellular automaton form: {0}")]
    NotCaForm(String),
    #[error("the update polynomial needs at least two terms, found {0}")]
    TooFewTerms(usize),
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("configuration at {0} does not occur in the shift")]
    NotInLanguage(String),
    #[error("exponent overflow")]
    Overflow,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::Budget { what, needed, limit })
    } else {
        Ok(())
    }
}
