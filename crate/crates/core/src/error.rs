use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{function}: argument {value} outside the domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("{function}: result overflows f64 at argument {value}")]
    Overflow { function: &'static str, value: f64 },
    #[error("{function}: result underflows at argument {value}")]
    Underflow { function: &'static str, value: f64 },
    #[error("invalid parameter for {context}: {reason}")]
    InvalidParameter {
        context: &'static str,
        reason: String,
    },
    #[error("{law} has no Laplace transform in the catalog")]
    UnsupportedTransform { law: &'static str },
    #[error("{law} has no density")]
    NoDensity { law: &'static str },
    #[error("operation requires an exponential response, got {response}")]
    UnsupportedResponse { response: &'static str },
    #[error("the shot noise series diverges: {criterion}")]
    Divergent { criterion: String },
    #[error("truncation tolerance {tol} unreachable below horizon cap {cap}")]
    ToleranceUnreachable { tol: f64, cap: f64 },
    #[error("no truncation bound available: {reason}")]
    TruncationBoundUnavailable { reason: &'static str },
    #[error("quadrature failed in {context}: estimate {estimate}, error {abs_error}")]
    Quadrature {
        context: &'static str,
        estimate: f64,
        abs_error: f64,
    },
    #[error("not a valid Laplace transform: value {value} at s = {s}")]
    NotLaplaceTransform { s: f64, value: f64 },
    #[error("{transform} transform has no continuation to complex arguments")]
    NoComplexContinuation { transform: &'static str },
    #[error("numerical differentiation failed at s = {s}")]
    Differentiation { s: f64 },
    #[error("integrand log Psi(r)/r is not integrable at 0 (log Psi(0+) = {at_zero})")]
    SingularIntegrand { at_zero: f64 },
    #[error("insufficient small-x mass: {found} points in the scan window, need {required}")]
    InsufficientData { found: usize, required: usize },
    #[error("Lévy measure tail is infinite: {criterion}")]
    NonconvergentMeasure { criterion: String },
}
