//! Reports built on top of cross-validation runs: which evidence decision
//! lists rely on, what filtering stop-words or selecting parts of speech
//! costs, how large and where the context window should be, and whether
//! n-grams touching the target help.
//!
//! Every report has a CSV writer with a fixed header; precisions are written
//! as fractions with six decimals, decreases in percentage points.

mod ablation;
mod context;
mod evidence;
mod studies;

use thiserror::Error;

use crate::evaluation::EvaluationError;

pub use ablation::{
    ablation_between, content_ablation, write_ablation_csv, AblationCell, AblationReport, ABLATION_HEADER,
};
pub use context::{
    context_report, write_context_csv, write_curves_csv, ContextCell, ContextReport, CurvePoint,
    CONTEXT_HEADER, CURVES_HEADER,
};
pub use evidence::{
    evidence_profile, evidence_study, space_distribution_summary, write_evidence_profile_csv,
    write_evidence_space_csv, write_evidence_summary_csv, EvidenceProfile, EvidenceStudy, OffsetCount,
    TagEvidence, EVIDENCE_PROFILE_HEADER, EVIDENCE_SPACE_HEADER, EVIDENCE_SUMMARY_HEADER, FALLBACK_TAG,
};
pub use studies::{
    adjacency_baseline, adjacency_experiment, adjacency_spec, selection_comparison, shift_study,
    write_adjacency_csv, write_selection_csv, write_shift_csv, AdjacencyReport, AdjacencyRow,
    SelectionReport, SelectionRow, ShiftReport, ShiftRow, ADJACENCY_HEADER, SELECTION_HEADER, SHIFT_HEADER,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("decision for occurrence {occurrence} carries no evidence; evidence analyses need decision-list runs")]
    MissingEvidence { occurrence: usize },
    #[error("evidence of occurrence {occurrence} spans {tokens} tokens; evidence analyses need unigram criteria")]
    MultiTokenEvidence { occurrence: usize, tokens: usize },
    #[error("evidence analyses need the decision-list classifier, got {0}")]
    WrongClassifier(String),
    #[error("evidence analyses need a unigram criterion, got {0}")]
    NotUnigram(String),
    #[error("criteria without a partner: {}", .0.join(", "))]
    UnmatchedPairs(Vec<String>),
    #[error("no {0} criteria in the grid")]
    NoPairs(String),
    #[error("base criterion must use the `all` filter, got {0}")]
    BaseFilter(String),
    #[error("shift list must contain 0")]
    MissingZeroShift,
    #[error("fold plans differ between runs")]
    FoldMismatch,
    #[error("no target word has enough occurrences")]
    NoWords,
    #[error(transparent)]
    Evaluation(#[from] EvaluationError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn fmt_real(x: f64) -> String {
    format!("{x:.6}")
}

/// Empty string for a missing value.
pub(crate) fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}
