//! Naive Bayes and decision-list classifiers over feature vectors.
//!
//! Both estimate probabilities with the m-estimate
//! `(n_c + m * p) / (n + m)` and fall back to the most frequent training
//! sense when a vector shares no feature with the training data, so every
//! input receives a sense.

mod dl;
mod format;
mod nb;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::criteria::{Feature, FeatureVector};

pub use dl::{classify_dl, feature_strength, train_dl, DlEntry, DlModel};
pub use format::{read_model, write_model};
pub use nb::{classify_nb, train_nb, NbModel};

#[derive(Debug, Error, PartialEq)]
pub enum ClassifierError {
    #[error("training set is empty")]
    EmptyTraining,
    #[error("m-estimate undefined: no observations and m = 0")]
    Undefined,
    #[error("invalid m-estimate arguments: {0}")]
    InvalidArgument(String),
    #[error("unknown classifier {0:?} (valid: nb, dl, mfs)")]
    UnknownClassifier(String),
    #[error("unknown prior mode {0:?} (valid: feature-values, senses)")]
    UnknownPrior(String),
    #[error("model file line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Smoothed estimate of `event / condition` pulled toward `prior` with
/// weight `m`.
pub fn m_estimate(event: u64, condition: u64, prior: f64, m: f64) -> Result<f64, ClassifierError> {
    if !m.is_finite() || m < 0.0 {
        return Err(ClassifierError::InvalidArgument(format!("m = {m}")));
    }
    if prior.is_nan() || prior <= 0.0 || prior > 1.0 {
        return Err(ClassifierError::InvalidArgument(format!("prior = {prior}")));
    }
    if event > condition {
        return Err(ClassifierError::InvalidArgument(format!(
            "event count {event} exceeds condition count {condition}"
        )));
    }
    if condition == 0 && m == 0.0 {
        return Err(ClassifierError::Undefined);
    }
    Ok((event as f64 + m * prior) / (condition as f64 + m))
}

/// Prior used by Naive Bayes for `P(feature | sense)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PriorMode {
    /// `1 / V` over the training feature vocabulary.
    #[default]
    FeatureValues,
    /// `1 / #senses`.
    Senses,
}

impl PriorMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PriorMode::FeatureValues => "feature-values",
            PriorMode::Senses => "senses",
        }
    }
}

impl FromStr for PriorMode {
    type Err = ClassifierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "feature-values" => Ok(PriorMode::FeatureValues),
            "senses" => Ok(PriorMode::Senses),
            _ => Err(ClassifierError::UnknownPrior(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingParams {
    pub m: f64,
    pub prior: PriorMode,
}

impl Default for SmoothingParams {
    fn default() -> Self {
        SmoothingParams {
            m: 1.0,
            prior: PriorMode::FeatureValues,
        }
    }
}

impl SmoothingParams {
    pub fn with_m(m: f64) -> Self {
        SmoothingParams {
            m,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub sense: String,
    /// Log posterior (Naive Bayes) or entry strength (decision list); 0 for
    /// fallback answers.
    pub score: f64,
    /// The feature of the input that decided, for decision lists.
    pub evidence: Option<Feature>,
    pub used_fallback: bool,
}

impl Prediction {
    fn fallback(sense: &str) -> Self {
        Prediction {
            sense: sense.to_string(),
            score: 0.0,
            evidence: None,
            used_fallback: true,
        }
    }
}

/// A training instance: the feature vector of one occurrence and its sense.
pub type Example<'a> = (&'a FeatureVector, &'a str);

/// Sorted distinct senses with their instance counts.
fn sense_inventory(training: &[Example<'_>]) -> (Vec<String>, Vec<usize>) {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, s) in training {
        *counts.entry(s).or_insert(0) += 1;
    }
    (
        counts.keys().map(|s| s.to_string()).collect(),
        counts.values().copied().collect(),
    )
}

/// Index of the most frequent sense; ties go to the smallest label.
fn most_frequent(counts: &[usize]) -> usize {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

/// Classifier identifiers accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassifierKind {
    NaiveBayes,
    DecisionList,
    /// Always answers the most frequent training sense.
    MostFrequentSense,
}

impl ClassifierKind {
    pub fn id(self) -> &'static str {
        match self {
            ClassifierKind::NaiveBayes => "nb",
            ClassifierKind::DecisionList => "dl",
            ClassifierKind::MostFrequentSense => "mfs",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.id())
    }
}

impl FromStr for ClassifierKind {
    type Err = ClassifierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nb" => Ok(ClassifierKind::NaiveBayes),
            "dl" => Ok(ClassifierKind::DecisionList),
            "mfs" => Ok(ClassifierKind::MostFrequentSense),
            _ => Err(ClassifierError::UnknownClassifier(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrainedModel {
    NaiveBayes(NbModel),
    DecisionList(DlModel),
    MostFrequentSense(String),
}

impl TrainedModel {
    pub fn train(
        kind: ClassifierKind,
        training: &[Example<'_>],
        smoothing: &SmoothingParams,
    ) -> Result<Self, ClassifierError> {
        Ok(match kind {
            ClassifierKind::NaiveBayes => TrainedModel::NaiveBayes(train_nb(training, smoothing)?),
            ClassifierKind::DecisionList => TrainedModel::DecisionList(train_dl(training, smoothing)?),
            ClassifierKind::MostFrequentSense => {
                if training.is_empty() {
                    return Err(ClassifierError::EmptyTraining);
                }
                let (senses, counts) = sense_inventory(training);
                TrainedModel::MostFrequentSense(senses[most_frequent(&counts)].clone())
            }
        })
    }

    pub fn classify(&self, vector: &FeatureVector) -> Prediction {
        match self {
            TrainedModel::NaiveBayes(m) => classify_nb(m, vector),
            TrainedModel::DecisionList(m) => classify_dl(m, vector),
            TrainedModel::MostFrequentSense(s) => Prediction::fallback(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn m_estimate_examples() {
        assert_eq!(m_estimate(0, 0, 0.5, 1.0).unwrap(), 0.5);
        assert!((m_estimate(3, 10, 0.5, 1.0).unwrap() - 3.5 / 11.0).abs() < 1e-15);
        assert_eq!(m_estimate(3, 10, 0.5, 0.0).unwrap(), 0.3);
    }

    #[test]
    fn m_estimate_errors() {
        assert_eq!(m_estimate(0, 0, 0.5, 0.0), Err(ClassifierError::Undefined));
        assert!(m_estimate(4, 3, 0.5, 1.0).is_err());
        assert!(m_estimate(1, 3, 0.0, 1.0).is_err());
        assert!(m_estimate(1, 3, 0.5, -1.0).is_err());
        assert!(m_estimate(1, 3, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn m_estimate_limits() {
        assert!((m_estimate(7, 9, 0.2, 1e9).unwrap() - 0.2).abs() < 1e-6);
        assert!((m_estimate(7, 9, 0.2, 1e-12).unwrap() - 7.0 / 9.0).abs() < 1e-9);
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("nb".parse::<ClassifierKind>(), Ok(ClassifierKind::NaiveBayes));
        assert_eq!("dl".parse::<ClassifierKind>(), Ok(ClassifierKind::DecisionList));
        assert!("svm".parse::<ClassifierKind>().is_err());
        assert_eq!("senses".parse::<PriorMode>(), Ok(PriorMode::Senses));
    }

    proptest! {
        #[test]
        fn m_estimate_monotone_and_bounded(
            cond in 1u64..500, a in 0u64..500, b in 0u64..500,
            p in 0.001f64..0.999, m in 0.001f64..100.0,
        ) {
            let (lo, hi) = (a.min(b).min(cond), a.max(b).min(cond));
            let x = m_estimate(lo, cond, p, m).unwrap();
            let y = m_estimate(hi, cond, p, m).unwrap();
            prop_assert!(x <= y);
            prop_assert!(x > 0.0 && y < 1.0);
        }
    }
}
