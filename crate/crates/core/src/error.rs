use thiserror::Error;

/// Everything that can go wrong while building or analysing a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be positive (got {0})")]
    NonPositiveN(i64),
    #[error("d = 2a+b+c must be positive")]
    ZeroD,
    #[error("arc multiplicities must be non-negative (a={a}, b={b}, c={c})")]
    NegativeMultiplicity { a: i64, b: i64, c: i64 },
    #[error("the planar graph of {0} is disconnected, so the diagram is not cellular")]
    DisconnectedDiagram(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("odd Euler characteristic {0}: map is corrupt")]
    OddChi(i64),
    #[error("forest enumeration exceeded the cap of {0}")]
    ForestCapExceeded(usize),
    #[error(
        "lower bound requires a closed irreducible manifold other than S^3, RP^3, L(3,1), S^2xS^1"
    )]
    NotApplicable,
    #[error("b({0}, β) is a link, not a knot")]
    NotAKnot(i64),
    #[error("b({0}, β) is a knot, not a two-component link")]
    NotALink(i64),
    #[error("gcd({0}, {1}) != 1")]
    GcdError(i64, i64),
    #[error("monodromy s must be non-zero mod n")]
    ZeroMonodromy,
    #[error("monodromy s must avoid 0 and 1 mod n (got {0})")]
    BadMonodromy(i64),
    #[error("torus knot parameters fit no supported case: {0}")]
    CaseMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("C' system is not proper and reduced; reducing it is unsupported")]
    UnsupportedPrimeReduction,
}

impl Error {
    /// True for errors caused by bad user input rather than a bug.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::InternalInconsistency(_) | Error::OddChi(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
