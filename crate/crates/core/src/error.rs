use thiserror::Error;

use crate::series::Exp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings ({0} vs {1})")]
    DescriptorMismatch(String, String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field descriptor `{0}`")]
    BadDescriptor(String),
    #[error("image of a Laurent variable must be a unit monomial, got {0}")]
    NonUnitLambdaImage(String),
    #[error("variable {0} cannot carry a negative exponent")]
    NegativeExponent(String),
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(String),
    #[error("insufficient precision: need O(t^{needed}), have O(t^{available})")]
    InsufficientPrecision { needed: Exp, available: Exp },
    #[error("the series is exactly zero")]
    ZeroSeries,
    #[error("series has a negative exponent t^{0}")]
    NegativeExponentPresent(Exp),
    #[error("exponent {0} is not usable here")]
    FractionalExponent(Exp),
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("dimension error: {0}")]
    DimensionError(String),
    #[error("the input is integral; the operation needs a non-integral element")]
    IntegralInput,
    #[error("g^-1 sigma(g) has a negative exponent at its entry ({0}, {1})")]
    ResidueNotIntegral(usize, usize),
    #[error("computed residue is trivial")]
    TrivialResidue,
    #[error("operation needs characteristic p > 0, ring has characteristic {0}")]
    WrongCharacteristic(u64),
    #[error("jet leading coefficient {0} is not a unit")]
    NonUnitLeadingJetCoefficient(String),
    #[error("no level found up to w = {0}")]
    SearchBoundExceeded(usize),
    #[error("index {0} is not an integer")]
    NonIntegralIndex(String),
    #[error("ring {0} is not a field")]
    NotAField(String),
    #[error("the membership system has no invertible solution although r(g) = 0")]
    LinearSystemInconsistent,
    #[error("unsupported cell type: {0}")]
    UnsupportedCellType(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
