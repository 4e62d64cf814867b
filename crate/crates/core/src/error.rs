use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable tables do not match: [{0}] vs [{1}]")]
    VarTableMismatch(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("bivectors are linearly dependent")]
    DependentSubspace,
    #[error("singular metric: det g vanishes identically")]
    SingularMetric,
    #[error("entry `{0}` has degree > 2 in the coordinates")]
    DegreeTooHigh(String),
    #[error("symbolic parameters must be specialised first: {0}")]
    Parametric(String),
    #[error("normal-form system is singular: {0}")]
    NormalFormSingular(String),
    #[error("projective map is not invertible")]
    SingularMap,
    #[error("chart degeneracy: {0}")]
    ChartDegenerate(String),
    #[error("nonlocal residue after applying the operator: {0}")]
    NonlocalResidue(String),
    #[error("jet order {0} exceeds the supported maximum")]
    JetOrderExceeded(usize),
    #[error("input is not Hamiltonian: {0}")]
    NotHamiltonian(String),
    #[error("no invertible leading block reachable: {0}")]
    NoInvertibleBlock(String),
    #[error("unknown catalog id `{0}`")]
    UnknownCatalogId(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}
