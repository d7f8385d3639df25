use thiserror::Error;

/// Errors produced by group computations, parsers and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: String,
        cap: u64,
    },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("not a subgroup of the ambient group")]
    NotASubgroup,

    #[error("subgroup is not proper")]
    NotProper,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not maximal")]
    NotMaximal,

    #[error("subgroup does not contain a Sylow {0}-subgroup of the group")]
    SylowNotContained(u64),

    #[error("group is not {0}-solvable")]
    NotPSolvable(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no nontrivial {p}-element exists for n = {n}")]
    NoPElement { n: usize, p: u64 },

    #[error("outside the validity domain: {0}")]
    OutOfDomain(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("conjugacy class cannot be covered by proper subgroups")]
    ClassNotCoverable,

    #[error("unsupported field size {0}")]
    UnsupportedField(u64),

    #[error("unsupported group: {0}")]
    Unsupported(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn cap(what: &'static str, size: impl ToString, cap: u64) -> Self {
        Error::CapExceeded {
            what,
            size: size.to_string(),
            cap,
        }
    }

    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }
}
