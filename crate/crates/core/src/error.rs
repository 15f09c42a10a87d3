use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("no confinement: a = 0 and B = 0 leave no bound spectrum")]
    DegenerateConfinement,

    #[error("inverse-square potential has no bound states without a magnetic field")]
    CaseDNeedsField,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: estimate {estimate:e} above tolerance {tol:e} after {evaluations} evaluations")]
    ConvergenceFailure {
        estimate: f64,
        tol: f64,
        evaluations: usize,
    },

    #[error("could not bracket level n = {n}: {reason}")]
    BracketingFailure { n: u32, reason: String },

    #[error("grid too coarse: N and 2N eigenvalues differ by {difference:e} (limit {limit:e})")]
    GridTooCoarse { difference: f64, limit: f64 },

    #[error("derivative with respect to the flux is undefined at Phi = ell")]
    KinkPoint,

    #[error("value overflows: ln Z = {log_value}")]
    Overflow { log_value: f64 },

    #[error("momentum cutoff {p_max} is not in the asymptotic regime (relative mismatch {mismatch:e})")]
    TailMassExceeded { p_max: f64, mismatch: f64 },

    #[error("momentum density decays as p^-{exponent}; its entropy integral diverges")]
    DivergentMomentumDensity { exponent: f64 },

    #[error("no density convention reproduces the anchors (best max residual {best_residual:.5})")]
    NoConventionMatches { best_residual: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter { name, value, reason }
    }
}
