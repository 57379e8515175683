use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// A graph invariant failed; `invariant` names it.
    #[error("validation error: {invariant}{}", detail_suffix(.detail))]
    Validation { invariant: String, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("quotient engine not stabilized (cap {cap}, margin {margin}): {reason}")]
    NotStabilized { cap: usize, margin: usize, reason: String },

    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),

    #[error("quiver mismatch: {0}")]
    QuiverMismatch(String),

    #[error("not a complex: d∘d != 0 at degree {degree}, entry ({row}, {col})")]
    NotAComplex { degree: i32, row: usize, col: usize },

    #[error("hom space Hom(P({from}), P({to})) has dimension {dim}, expected 1")]
    NonUniqueHom { from: String, to: String, dim: usize },

    #[error("empty tree: edge {0} carries no tree edges")]
    EmptyTree(String),

    #[error("certificate failure{}: {axiom}", step_suffix(.step))]
    CertificateFailure { step: Option<usize>, axiom: String },

    #[error("relation failure: {0}")]
    RelationFailure(String),
}

fn detail_suffix(detail: &str) -> String {
    if detail.is_empty() {
        String::new()
    } else {
        format!(" ({detail})")
    }
}

fn step_suffix(step: &Option<usize>) -> String {
    match step {
        Some(s) => format!(" at step {s}"),
        None => String::new(),
    }
}

impl Error {
    /// Short name of the failed check; validation errors report the invariant.
    pub fn kind(&self) -> &str {
        match self {
            Error::MalformedInput(_) => "malformed-input",
            Error::Validation { invariant, .. } => invariant,
            Error::Domain(_) => "domain",
            Error::Internal(_) => "internal",
            Error::NotStabilized { .. } => "not-stabilized",
            Error::CompositionMismatch(_) => "composition-mismatch",
            Error::QuiverMismatch(_) => "quiver-mismatch",
            Error::NotAComplex { .. } => "not-a-complex",
            Error::NonUniqueHom { .. } => "non-unique-hom",
            Error::EmptyTree(_) => "empty-tree",
            Error::CertificateFailure { .. } => "certificate",
            Error::RelationFailure(_) => "relation",
        }
    }

    pub(crate) fn validation(invariant: &str, detail: impl Into<String>) -> Self {
        Error::Validation {
            invariant: invariant.to_string(),
            detail: detail.into(),
        }
    }

    pub(crate) fn certificate(axiom: impl Into<String>) -> Self {
        Error::CertificateFailure {
            step: None,
            axiom: axiom.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
