use super::{EvalSettings, EvaluationError, FoldPlan};
use crate::classifiers::{ClassifierKind, Example, TrainedModel};
use crate::corpus::{Corpus, Occurrence, Target};
use crate::criteria::{FeatureSpec, FeatureVector};

/// Outcome of classifying one held-out occurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionRecord {
    /// Index into the word's occurrence list.
    pub occurrence: usize,
    pub document_id: String,
    pub token_index: usize,
    pub fold: usize,
    pub gold: String,
    pub predicted: String,
    pub used_fallback: bool,
    /// Offsets of the deciding feature (decision lists only).
    pub evidence_offsets: Option<Vec<i32>>,
    pub evidence_cgems: Option<Vec<String>>,
}

impl DecisionRecord {
    pub fn is_correct(&self) -> bool {
        self.gold == self.predicted
    }
}

/// Cross-validated precision of one feature recipe on one word.
#[derive(Debug, Clone, PartialEq)]
pub struct WordResult {
    pub target: Target,
    pub spec: FeatureSpec,
    pub classifier: ClassifierKind,
    pub correct: usize,
    pub total: usize,
    /// `correct / total` pooled over all folds.
    pub precision: f64,
    pub fold_precisions: Vec<f64>,
    /// Empty when produced by a grid search.
    pub records: Vec<DecisionRecord>,
}

/// Feature vectors of every occurrence under `spec`.
pub fn extract_all(
    corpus: &Corpus,
    occurrences: &[Occurrence],
    spec: &FeatureSpec,
    settings: &EvalSettings,
) -> Vec<FeatureVector> {
    occurrences
        .iter()
        .map(|o| settings.extractor.extract_spec(corpus, o, spec))
        .collect()
}

/// Trains on `k - 1` folds and classifies the remaining one, for every fold.
pub fn cross_validate(
    corpus: &Corpus,
    occurrences: &[Occurrence],
    spec: &FeatureSpec,
    settings: &EvalSettings,
    plan: &FoldPlan,
) -> Result<WordResult, EvaluationError> {
    let vectors = extract_all(corpus, occurrences, spec, settings);
    cross_validate_vectors(occurrences, &vectors, spec, settings, plan)
}

/// Cross-validation over feature vectors that are already extracted.
pub fn cross_validate_vectors(
    occurrences: &[Occurrence],
    vectors: &[FeatureVector],
    spec: &FeatureSpec,
    settings: &EvalSettings,
    plan: &FoldPlan,
) -> Result<WordResult, EvaluationError> {
    let first = occurrences.first().ok_or(EvaluationError::NoOccurrences)?;
    plan.check_matches(occurrences)?;
    assert_eq!(vectors.len(), occurrences.len());

    let mut records = Vec::with_capacity(occurrences.len());
    let mut fold_precisions = Vec::with_capacity(plan.k);
    let mut correct = 0;

    for fold in 0..plan.k {
        let training: Vec<Example<'_>> = (0..occurrences.len())
            .filter(|&i| plan.assignment[i] != fold)
            .map(|i| (&vectors[i], occurrences[i].sense.as_str()))
            .collect();
        let model = TrainedModel::train(settings.classifier, &training, &settings.smoothing)?;

        let held_out = plan.members(fold);
        let mut fold_correct = 0;
        for &i in &held_out {
            let o = &occurrences[i];
            let p = model.classify(&vectors[i]);
            let record = DecisionRecord {
                occurrence: i,
                document_id: o.document_id.clone(),
                token_index: o.token_index,
                fold,
                gold: o.sense.clone(),
                predicted: p.sense,
                used_fallback: p.used_fallback,
                evidence_offsets: p.evidence.as_ref().map(|f| f.offsets.clone()),
                evidence_cgems: p.evidence.map(|f| f.cgems),
            };
            if record.is_correct() {
                fold_correct += 1;
            }
            records.push(record);
        }
        correct += fold_correct;
        fold_precisions.push(fold_correct as f64 / held_out.len().max(1) as f64);
    }

    Ok(WordResult {
        target: Target::new(&first.lemma, first.category),
        spec: spec.clone(),
        classifier: settings.classifier,
        correct,
        total: occurrences.len(),
        precision: correct as f64 / occurrences.len() as f64,
        fold_precisions,
        records,
    })
}
