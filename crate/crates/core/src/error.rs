use thiserror::Error;

use crate::decomp::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates the preconditions of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The genus formula produced a non-integer. Always a formula bug.
    #[error("genus of {group} evaluated to non-integer {value}")]
    NonIntegralGenus { group: String, value: String },

    #[error("section dimensions are not realizable: residual {value} at index {index}")]
    NegativeResidual { index: usize, value: i64 },

    #[error("rank mismatch: expected {expected}, peeled {found}")]
    RankMismatch { expected: u64, found: u64 },

    #[error("weight-one cusp form dimension unknown for {group}")]
    WeightOneUnknown { group: String },

    #[error("invalid {base} sequence for {group}: {}", failed_names(.diagnostics))]
    InvalidSequence {
        group: String,
        base: String,
        coeffs: Vec<i64>,
        diagnostics: Vec<Diagnostic>,
    },

    #[error("reconstruction of k from kappa failed at index {index}")]
    ReconstructionFailure { index: usize },

    #[error("valuation of zero is undefined")]
    ZeroArgument,

    #[error("coefficient {index} of {series} is not 2-integral: {value}")]
    IntegralityFailure {
        series: &'static str,
        index: usize,
        value: String,
    },

    #[error("hasse lift verification failed at coefficient {index}")]
    VerificationFailure { index: usize },

    #[error("malformed weight-one data: {0}")]
    Data(String),
}

fn failed_names(diagnostics: &[Diagnostic]) -> String {
    let failed: Vec<&str> = diagnostics
        .iter()
        .filter(|d| !d.passed)
        .map(|d| d.name.as_str())
        .collect();
    format!("failed checks [{}]", failed.join(", "))
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
