//! Error taxonomy shared by all numerical modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ZmlError {
    /// Gamma evaluated at a non-positive integer.
    #[error("gamma pole at z = {re}+{im}i (non-positive integer)")]
    PoleOfGamma { re: f64, im: f64 },

    /// A series or iteration failed to converge within its cap.
    #[error("{what} did not converge within {cap} iterations")]
    NonConvergence { what: &'static str, cap: usize },

    /// Argument outside the supported domain.
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// Requested tolerance unattainable within the work budget.
    #[error("precision error in {what}: reached {reached:e}, wanted {wanted:e}")]
    Precision {
        what: &'static str,
        reached: f64,
        wanted: f64,
    },

    /// Truncation point too small for the requested tail budget.
    #[error("tail budget error: x_max = {x_max} leaves tail bound {bound:e} > {budget:e}")]
    TailBudget { x_max: f64, bound: f64, budget: f64 },

    /// Least-squares design matrix too ill-conditioned to trust.
    #[error("ill-conditioned fit: condition number estimate {cond:e} exceeds {limit:e}")]
    IllConditioned { cond: f64, limit: f64 },

    /// Saddle-point equation has no real solution in the requested regime.
    #[error("no saddle: {detail}")]
    NoSaddle { detail: String },

    /// A map assumed monotone had non-positive derivative at an iterate.
    #[error("non-monotone map in {what}: derivative {deriv} at x = {x}")]
    NonMonotone { what: &'static str, x: f64, deriv: f64 },

    /// Spectral data file or contents violate the ingestion invariants.
    #[error("spectral data error: {detail}")]
    SpectralData { detail: String },

    /// Spectral expansion requested but the data truncation exceeds budget.
    #[error("spectral data insufficient: tail bound {tail:e} exceeds budget {budget:e}")]
    SpectralInsufficient { tail: f64, budget: f64 },

    /// Parameter set admits no solution (e.g. Holder exponent algebra).
    #[error("infeasible parameters: {detail}")]
    Infeasible { detail: String },

    /// Degenerate input (all abscissas equal, empty range, ...).
    #[error("degenerate input: {detail}")]
    Degenerate { detail: String },

    /// I/O wrapper for cache and data files.
    #[error("io error on {path}: {detail}")]
    Io { path: String, detail: String },
}

pub type Result<T> = std::result::Result<T, ZmlError>;
