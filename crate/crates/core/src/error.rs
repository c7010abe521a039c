use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants map one-to-one onto the machine-readable `kind` strings used by
/// the command-line front end (see [`Error::kind`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is not an isometry (defect {defect:.3e})")]
    NotIsometry { defect: f64 },
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("map is not completely positive (eigenvalue {eigenvalue:.3e})")]
    NotCp { eigenvalue: f64 },
    #[error("map is not trace preserving (defect {defect:.3e})")]
    NotTracePreserving { defect: f64 },
    #[error("map is not unital (defect {defect:.3e})")]
    NotUnital { defect: f64 },
    #[error("map is not a unital *-homomorphism")]
    NotStarHom,
    #[error("map is not completely positive and unital")]
    NotCpu,
    #[error("map is not completely positive and trace preserving")]
    NotCptp,
    #[error("codomain must be a single block, found {0} blocks")]
    NotSingleBlockCodomain(usize),
    #[error("witness infeasible (residual {residual:.3e}): {reason}")]
    WitnessInfeasible { residual: f64, reason: String },
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("both morphisms lie in the same component")]
    SameComponent,
    #[error("witness element has norm {norm}, expected 1")]
    WitnessNotNormalized { norm: f64 },
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("type error: {0}")]
    Type(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    /// Stable identifier used in JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "ShapeError",
            Error::NotIsometry { .. } => "NotIsometry",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotCp { .. } => "NotCP",
            Error::NotTracePreserving { .. } => "NotTracePreserving",
            Error::NotUnital { .. } => "NotUnital",
            Error::NotStarHom => "NotStarHom",
            Error::NotCpu => "NotCPU",
            Error::NotCptp => "NotCPTP",
            Error::NotSingleBlockCodomain(_) => "NotSingleBlockCodomain",
            Error::WitnessInfeasible { .. } => "WitnessInfeasible",
            Error::IllConditioned(_) => "IllConditioned",
            Error::SameComponent => "SameComponent",
            Error::WitnessNotNormalized { .. } => "WitnessNotNormalized",
            Error::Syntax { .. } => "SyntaxError",
            Error::Type(_) => "TypeError",
            Error::InvalidData(_) => "InvalidData",
        }
    }
}
