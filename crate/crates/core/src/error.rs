use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("negative radicand: ab+bc+ca = {0} < 0, the tricycle is not realizable")]
    NegativeRadicand(String),
    #[error("all entries must be positive")]
    NonPositiveInput,
    #[error("point at infinity is not allowed here")]
    InfinitePoint,
    #[error("triple is not realizable as a tricycle: {0}")]
    NotRealizable(String),
    #[error("disks are not tangent (residual {0:e})")]
    NotTangent(f64),
    #[error("tangency spinors are undefined for lines")]
    LineUnsupported,
    #[error("singular matrix (zero determinant)")]
    SingularMatrix,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("group closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("seed is not a Descartes configuration: {0}")]
    GeometryInconsistent(String),
    #[error("resource guard tripped: {0}")]
    Overflow(String),
    #[error("input is not rational")]
    NonRationalInput,
    #[error("unsupported symbolic form: {0}")]
    UnsupportedForm(String),
    #[error("zero-depth subgraph unreachable from vertex {0}; enlarge max_curvature")]
    Unreachable(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate circle form (non-positive discriminant)")]
    DegenerateCircle,
}

pub type Result<T> = std::result::Result<T, Error>;
