use thiserror::Error;

/// Errors surfaced by the analysis layers.
///
/// Variants are split by what the caller can do about them: `Domain` means
/// the inputs were rejected before any numerics ran, the solver variants
/// mean a well-posed computation failed to converge or hit a physical
/// obstruction, and `Infeasible` means a search exhausted its space.
#[derive(Debug, Error)]
pub enum CoreError {
    /// The series-branch flux relation is not invertible: the junction is
    /// too strong for the series inductance (k*gamma/beta must exceed 1).
    #[error(
        "series branch not invertible: k*gamma/beta = {k_gamma_over_beta:.6} must exceed 1"
    )]
    Invertibility { k_gamma_over_beta: f64 },

    /// An iterative solver ran out of iterations.
    #[error("{what} failed to converge after {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },

    /// The potential landscape lost its single confining well at the
    /// requested flux point, so a quadratic expansion is meaningless there.
    #[error(
        "potential is not singly confining at phi_x={phi_x:.6}, phi_xb={phi_xb:.6}: {detail}"
    )]
    DoubleWell {
        phi_x: f64,
        phi_xb: f64,
        detail: String,
    },

    /// Dressed eigenstates could not be matched to bare-mode labels.
    #[error(
        "could not label dressed states with {nq}x{nr} basis states (best overlap {overlap:.3})"
    )]
    Labeling { nq: usize, nr: usize, overlap: f64 },

    /// The requested operation is not defined for this circuit variant.
    #[error("operation not supported for this circuit variant: {0}")]
    UnsupportedVariant(String),

    /// A parameter search found no candidate satisfying every constraint.
    #[error("search space exhausted without a feasible candidate: {0}")]
    Infeasible(String),

    /// Inputs rejected up front (non-positive element values, flux outside
    /// the supported bias points, grid sizes of zero, and the like).
    #[error("invalid input: {0}")]
    Domain(String),

    /// File I/O failed.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A file had the right envelope but unparseable content.
    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
