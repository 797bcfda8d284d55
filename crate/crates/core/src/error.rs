use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order m = {m} is below 2")]
    OrderTooSmall { m: usize },
    #[error("omega = {omega} must be positive and finite")]
    InvalidOmega { omega: f64 },
    #[error("N = {n} too small for m = {m}: need N + 1 >= m and N >= 1")]
    TooFewNodes { n: usize, m: usize },
    #[error("h*omega = {h_omega} exceeds 1")]
    StepTooLarge { h_omega: f64 },
    #[error("|cos(omega)| = {cos_omega:e} is below 1e-8 (omega = {omega})")]
    DegenerateCosine { omega: f64, cos_omega: f64 },
    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },
    #[error("sample {index} is not finite")]
    NonFiniteSample { index: usize },
    #[error("|q| = {modulus} is not below 1")]
    NotContracting { modulus: f64 },
    #[error("exponent alpha = {alpha} outside 0..={max}")]
    ExponentOutOfRange { alpha: usize, max: i64 },
    #[error("window {window} is smaller than the truncation window {required}")]
    WindowTooSmall { window: usize, required: usize },
    #[error("root finder did not converge after {iterations} iterations")]
    RootsNotConverged { iterations: usize },
    #[error("root residual {residual:e} exceeds tolerance at root {index}")]
    RootResidual { index: usize, residual: f64 },
    #[error("polynomial must have degree >= 1")]
    ConstantPolynomial,
    #[error("root with modulus {modulus} lies within {tol:e} of the unit circle")]
    RootOnUnitCircle { modulus: f64, tol: f64 },
    #[error("expected {expected} roots inside the unit disk, found {found}")]
    StableRootCount { expected: usize, found: usize },
    #[error("repeated characteristic root near {root}")]
    RepeatedRoot { root: f64 },
    #[error("leading coefficient {value:e} is degenerate")]
    DegenerateLeadingCoefficient { value: f64 },
    #[error("{context}: matrix is numerically singular (pivot {pivot} of {size})")]
    SingularMatrix {
        context: &'static str,
        pivot: usize,
        size: usize,
    },
    #[error("x = {x} lies outside [0, 1]")]
    OutsideDomain { x: f64 },
    #[error("derivative order {j} not available at x = 0 for m = {m}")]
    DerivativeAtOrigin { j: usize, m: usize },
    #[error("derivative order {j} exceeds 2m = {max}")]
    DerivativeOrder { j: usize, max: usize },
    #[error("nodes must be strictly increasing (index {index})")]
    NodesNotIncreasing { index: usize },
    #[error("nodes must lie in [0, 1] (index {index})")]
    NodeOutsideDomain { index: usize },
    #[error("shape mismatch: {what}")]
    ShapeMismatch { what: String },
    #[error("quadrature needs at least {required} points, got {got}")]
    TooFewQuadraturePoints { required: usize, got: usize },
}

impl Error {
    /// True for errors caused by invalid input rather than numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::OrderTooSmall { .. }
                | Error::InvalidOmega { .. }
                | Error::TooFewNodes { .. }
                | Error::StepTooLarge { .. }
                | Error::DegenerateCosine { .. }
                | Error::SampleCount { .. }
                | Error::NonFiniteSample { .. }
                | Error::NotContracting { .. }
                | Error::ExponentOutOfRange { .. }
                | Error::WindowTooSmall { .. }
                | Error::ConstantPolynomial
                | Error::OutsideDomain { .. }
                | Error::DerivativeAtOrigin { .. }
                | Error::DerivativeOrder { .. }
                | Error::NodesNotIncreasing { .. }
                | Error::NodeOutsideDomain { .. }
                | Error::ShapeMismatch { .. }
                | Error::TooFewQuadraturePoints { .. }
        )
    }

    /// Short stable identifier, used in machine-readable diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::OrderTooSmall { .. } => "order_too_small",
            Error::InvalidOmega { .. } => "invalid_omega",
            Error::TooFewNodes { .. } => "too_few_nodes",
            Error::StepTooLarge { .. } => "step_too_large",
            Error::DegenerateCosine { .. } => "degenerate_cosine",
            Error::SampleCount { .. } => "sample_count",
            Error::NonFiniteSample { .. } => "non_finite_sample",
            Error::NotContracting { .. } => "not_contracting",
            Error::ExponentOutOfRange { .. } => "exponent_out_of_range",
            Error::WindowTooSmall { .. } => "window_too_small",
            Error::RootsNotConverged { .. } => "roots_not_converged",
            Error::RootResidual { .. } => "root_residual",
            Error::ConstantPolynomial => "constant_polynomial",
            Error::RootOnUnitCircle { .. } => "root_on_unit_circle",
            Error::StableRootCount { .. } => "stable_root_count",
            Error::RepeatedRoot { .. } => "repeated_root",
            Error::DegenerateLeadingCoefficient { .. } => "degenerate_leading_coefficient",
            Error::SingularMatrix { .. } => "singular_matrix",
            Error::OutsideDomain { .. } => "outside_domain",
            Error::DerivativeAtOrigin { .. } => "derivative_at_origin",
            Error::DerivativeOrder { .. } => "derivative_order",
            Error::NodesNotIncreasing { .. } => "nodes_not_increasing",
            Error::NodeOutsideDomain { .. } => "node_outside_domain",
            Error::ShapeMismatch { .. } => "shape_mismatch",
            Error::TooFewQuadraturePoints { .. } => "too_few_quadrature_points",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
