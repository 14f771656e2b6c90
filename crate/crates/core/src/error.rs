use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("cannot parse complex number {0:?}")]
    ParseComplex(String),

    #[error("vector syntax error at byte {pos}: {msg}")]
    VectorSyntax { pos: usize, msg: String },

    #[error("invalid normal-form monomial: {0}")]
    InvalidMonomial(String),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("unknown builtin vector {0:?}")]
    UnknownBuiltin(String),

    #[error("unknown module {0:?}")]
    UnknownModule(String),

    #[error("series has zero leading coefficient")]
    ZeroLeadingCoefficient,

    #[error("exponent {0} is not on the series lattice")]
    OffLattice(String),

    #[error("invalid Virasoro label m={m}, r={r}, s={s}")]
    InvalidLabel { m: i64, r: i64, s: i64 },

    #[error("truncation tail {tail:.3e} exceeds tolerance {tol:.1e}; raise the truncation or Im(z)")]
    TailTooLarge { tail: f64, tol: f64 },

    #[error("point must lie in the upper half plane")]
    NotInUpperHalfPlane,
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
