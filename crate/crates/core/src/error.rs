use thiserror::Error;

/// Errors raised by the workbench operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("requested length {requested} exceeds the safe depth {depth} of the factor set")]
    DepthExceeded { requested: usize, depth: usize },

    #[error("factor set is not certified complete")]
    IncompleteSet,

    #[error("word `{0}` is not a member of the factor set")]
    NotAMember(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("letter `{0}` is not in the alphabet")]
    LetterNotInAlphabet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("the empty word cannot belong to a code")]
    EmptyWordInCode,

    #[error("set is not a code: {0}")]
    NotACode(String),

    #[error("set is not a prefix code")]
    NotPrefixCode,

    #[error("set is not a suffix code")]
    NotSuffixCode,

    #[error("set is not a bifix code")]
    NotBifixCode,

    #[error("code is not S-maximal: {0}")]
    NotSMaximal(String),

    #[error("code word `{0}` is not in the factor set")]
    CodeNotInSet(String),

    #[error("insufficient depth: need {needed}, have {have}")]
    InsufficientDepth { needed: usize, have: usize },

    #[error("morphism is not primitive within exponent {0}")]
    NotPrimitive(usize),

    #[error("seed letter does not generate an infinite fixed point: {0}")]
    NonGrowingSeed(String),

    #[error("interval lengths sum to {0}, not 1")]
    LengthsNotNormalized(String),

    #[error("interval length for `{0}` is not positive")]
    NonPositiveLength(String),

    #[error("point {0} lies outside [0, 1)")]
    OutOfDomain(String),

    #[error("quadratic numbers over different radicands ({0} and {1})")]
    MixedRadicand(u64, u64),

    #[error("first return words to `{0}` are not certified complete")]
    IncompleteReturns(String),

    #[error("word `{0}` does not occur within the searched horizon")]
    WordNotFound(String),

    #[error("set is not a basis of the free group: {0}")]
    NotABasis(String),

    #[error("elementary automorphism needs two distinct letters")]
    EqualLetters,

    #[error("decomposition impossible: {0}")]
    DecompositionImpossible(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
