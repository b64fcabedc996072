use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base {p}/{q} must satisfy p > q >= 1")]
    InvalidBase { p: u64, q: u64 },

    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },

    #[error("rhythm {0:?} must have at least one component and sum strictly greater than its length")]
    InvalidDirectingParameter(Vec<u64>),

    #[error("rhythm is invalid at j={index}")]
    InvalidRhythm { index: usize },

    #[error("labelling has length {actual}, expected {expected}")]
    LabellingLength { expected: usize, actual: usize },

    #[error("labelling is not increasing on the children of node {node}")]
    InvalidLabelling { node: u64 },

    #[error("digit {digit} is outside 0..{p}")]
    DigitOutOfRange { digit: i64, p: u64 },

    #[error("growth ratio {p}/{q} is not an integer: the branch language is FLIP, not regular")]
    NonIntegralGrowth { p: u64, q: u64 },

    #[error("iterated word must be non-empty")]
    EmptyIteration,

    #[error("word {0} is not in the branch language")]
    NotAMember(String),

    #[error("word {word} has value {value}, which is not a non-negative integer")]
    NotANaturalValue { word: String, value: String },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
