use thiserror::Error;

/// Errors surfaced by the algebraic operations in this crate.
///
/// Construction-time validation (bad quivers, bad orders, bad weight tables)
/// and mathematical impossibilities (infinite nontip sets, capped bases) all
/// land here so callers can map them onto one exit-code contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("arrow name `{0}` collides with a vertex name")]
    ArrowVertexClash(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows `{0}` and `{1}` do not compose")]
    NonComposable(String, String),
    #[error("precedence list must mention every {kind} exactly once (problem near `{name}`)")]
    IncompletePrecedence { kind: &'static str, name: String },

    #[error("arrow `{0}` has no assigned weight")]
    UnassignedWeight(String),

    #[error("tip of the zero element is undefined")]
    TipOfZero,
    #[error("element is not uniform")]
    NotUniform,
    #[error("cannot normalize: tip coefficient has no inverse in this domain")]
    NonInvertibleTip,

    #[error("generating set is not tip-reduced: `{contained}` is a subpath of `{containing}`")]
    NotTipReduced {
        contained: String,
        containing: String,
    },
    #[error("tip `{0}` has length < 2")]
    TipTooShort(String),
    #[error("basis is capped, cannot certify: {0}")]
    CappedBasis(String),

    #[error("nontip set is infinite (pumpable cycle through `{witness}`)")]
    InfiniteNontips { witness: String },
    #[error("cannot certify finitely many nontips in degree {degree}")]
    InfiniteDegree { degree: String },
    #[error("algebra is not finite dimensional")]
    NotFiniteDimensional,
    #[error("nontip `{nontip}` has length {len} > {max} = m-1, so no admissible ideal with this tip set contains all length-{m} paths")]
    NontipTooLong {
        nontip: String,
        len: usize,
        max: usize,
        m: usize,
    },
    #[error("admissibility exponent must satisfy m >= 2, got {0}")]
    BadAdmissibleExponent(usize),

    #[error("`{tail}` is not a tail of `{tip}`")]
    NotATail { tip: String, tail: String },
    #[error("point does not lie on the variety; violated equations: {0}")]
    PointOffVariety(String),
    #[error("algebra has tip set {actual}, expected {expected}")]
    TipSetMismatch { actual: String, expected: String },
    #[error("point has {got} coordinates, presentation has {want} variables")]
    PointDimensionMismatch { got: usize, want: usize },

    #[error("polynomial evaluation is missing an assignment for `{0}`")]
    MissingAssignment(String),

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
