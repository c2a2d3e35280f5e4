//! K-fold cross-validation, grid search over criteria, and aggregation by
//! word category.
//!
//! Precision is pooled over the folds of a word (every occurrence is
//! classified exactly once) and averaged without weighting across the words
//! of a category.

mod cv;
mod export;
mod folds;
mod grid;

use thiserror::Error;

use crate::classifiers::{ClassifierError, ClassifierKind, SmoothingParams};
use crate::corpus::CorpusError;
use crate::criteria::{CriteriaError, FeatureExtractor};

pub use cv::{cross_validate, cross_validate_vectors, extract_all, DecisionRecord, WordResult};
pub use export::{write_best_csv, write_grid_csv, write_results_csv, BEST_HEADER, GRID_HEADER};
pub use folds::{kfold_split, FoldPlan};
pub use grid::{
    evaluate_specs, grid_search, macro_average, mean, prepare_words, BestCriterion, FamilyOptimum,
    GridResult, PreparedWord, SkippedWord,
};

/// Default number of folds.
pub const DEFAULT_K: usize = 10;
/// Default fold-shuffling seed.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Error)]
pub enum EvaluationError {
    #[error("fold plan: {0}")]
    Folds(String),
    #[error("fold plan was built for different occurrences")]
    PlanMismatch,
    #[error("no occurrences to evaluate")]
    NoOccurrences,
    #[error("cannot average an empty group")]
    EmptyGroup,
    #[error("word {0:?} appears twice in one group")]
    DuplicateWord(String),
    #[error("criterion grid is empty")]
    EmptyGrid,
    #[error("worker pool: {0}")]
    Workers(String),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Everything that, together with the corpus, targets and criteria,
/// determines an evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalSettings {
    pub classifier: ClassifierKind,
    pub smoothing: SmoothingParams,
    pub extractor: FeatureExtractor,
    pub k: usize,
    pub seed: u64,
    /// Worker threads; 0 uses one per core. Results do not depend on it.
    pub jobs: usize,
}

impl EvalSettings {
    pub fn new(classifier: ClassifierKind) -> Self {
        EvalSettings {
            classifier,
            smoothing: SmoothingParams::default(),
            extractor: FeatureExtractor::default(),
            k: DEFAULT_K,
            seed: DEFAULT_SEED,
            jobs: 1,
        }
    }

    pub fn with_classifier(&self, classifier: ClassifierKind) -> Self {
        EvalSettings {
            classifier,
            ..self.clone()
        }
    }
}
