use std::collections::HashMap;

use super::{
    m_estimate, most_frequent, sense_inventory, ClassifierError, Example, Prediction, PriorMode,
    SmoothingParams,
};
use crate::criteria::FeatureVector;

/// Scores closer than this on the log scale count as ties.
const TIE_EPSILON: f64 = 1e-9;

/// Presence-only Naive Bayes model.
#[derive(Debug, Clone, PartialEq)]
pub struct NbModel {
    /// Sorted sense labels; all per-sense vectors follow this order.
    pub senses: Vec<String>,
    pub sense_counts: Vec<usize>,
    /// Feature key to per-sense presence counts.
    pub counts: HashMap<String, Vec<u64>>,
    /// Per-sense sum of feature presences.
    pub feature_totals: Vec<u64>,
    pub smoothing: SmoothingParams,
}

impl NbModel {
    pub fn priors(&self) -> Vec<f64> {
        let n: usize = self.sense_counts.iter().sum();
        self.sense_counts.iter().map(|&c| c as f64 / n as f64).collect()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.counts.len()
    }

    pub fn fallback_sense(&self) -> &str {
        &self.senses[most_frequent(&self.sense_counts)]
    }

    fn conditional_prior(&self) -> f64 {
        match self.smoothing.prior {
            PriorMode::FeatureValues => 1.0 / self.vocabulary_size().max(1) as f64,
            PriorMode::Senses => 1.0 / self.senses.len() as f64,
        }
    }

    /// `ln P(f | s)`; negative infinity where the estimate is zero or
    /// undefined (a sense with no features and `m = 0`).
    fn log_conditional(&self, counts: &[u64], sense: usize, prior: f64) -> f64 {
        match m_estimate(counts[sense], self.feature_totals[sense], prior, self.smoothing.m) {
            Ok(p) => p.ln(),
            Err(_) => f64::NEG_INFINITY,
        }
    }
}

pub fn train_nb(training: &[Example<'_>], smoothing: &SmoothingParams) -> Result<NbModel, ClassifierError> {
    if training.is_empty() {
        return Err(ClassifierError::EmptyTraining);
    }
    let (senses, sense_counts) = sense_inventory(training);
    let index: HashMap<&str, usize> = senses.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();

    let mut counts: HashMap<String, Vec<u64>> = HashMap::new();
    let mut feature_totals = vec![0u64; senses.len()];
    for (vector, sense) in training {
        let s = index[sense];
        for key in vector.keys() {
            counts
                .entry(key.to_string())
                .or_insert_with(|| vec![0; senses.len()])[s] += 1;
        }
        feature_totals[s] += vector.len() as u64;
    }

    Ok(NbModel {
        senses,
        sense_counts,
        counts,
        feature_totals,
        smoothing: *smoothing,
    })
}

/// Most probable sense given the features of `vector` that occur in the
/// training vocabulary. Unknown features are ignored; a vector with no known
/// feature gets the most frequent training sense.
pub fn classify_nb(model: &NbModel, vector: &FeatureVector) -> Prediction {
    let known: Vec<&Vec<u64>> = vector.keys().filter_map(|k| model.counts.get(k)).collect();
    if known.is_empty() {
        return Prediction::fallback(model.fallback_sense());
    }

    let priors = model.priors();
    let p = model.conditional_prior();
    let scores: Vec<f64> = (0..model.senses.len())
        .map(|s| {
            priors[s].ln()
                + known
                    .iter()
                    .map(|c| model.log_conditional(c, s, p))
                    .sum::<f64>()
        })
        .collect();

    let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    // Among near-ties: higher prior, then smaller label (senses are sorted).
    let mut winner = None;
    for (s, &score) in scores.iter().enumerate() {
        if score >= best - TIE_EPSILON {
            match winner {
                Some(w) if model.sense_counts[w] >= model.sense_counts[s] => {}
                _ => winner = Some(s),
            }
        }
    }
    let winner = winner.unwrap_or(0);
    Prediction {
        sense: model.senses[winner].clone(),
        score: scores[winner],
        evidence: None,
        used_fallback: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Feature;

    fn fv(keys: &[&str]) -> FeatureVector {
        keys.iter()
            .map(|k| Feature {
                key: k.to_string(),
                offsets: vec![-1],
                cgems: vec!["NCOM".into()],
            })
            .collect()
    }

    #[test]
    fn priors_and_counts() {
        let a = fv(&["x"]);
        let b = fv(&["y"]);
        let m = train_nb(&[(&a, "A"), (&b, "B")], &SmoothingParams::default()).unwrap();
        assert_eq!(m.priors(), vec![0.5, 0.5]);
        assert_eq!(m.counts["x"], vec![1, 0]);
        assert_eq!(m.counts["y"], vec![0, 1]);
    }

    #[test]
    fn single_sense_prior() {
        let v = fv(&["x"]);
        let data: Vec<Example> = (0..10).map(|_| (&v, "A")).collect();
        let m = train_nb(&data, &SmoothingParams::default()).unwrap();
        assert_eq!(m.priors(), vec![1.0]);
        assert_eq!(classify_nb(&m, &v).sense, "A");
    }

    #[test]
    fn empty_training_rejected() {
        assert_eq!(
            train_nb(&[], &SmoothingParams::default()),
            Err(ClassifierError::EmptyTraining)
        );
    }

    #[test]
    fn toy_model_prefers_pure_sense() {
        // x seen in all 5 A instances, in none of the 5 B instances
        let ax = fv(&["x"]);
        let by = fv(&["y"]);
        let mut data: Vec<Example> = Vec::new();
        for _ in 0..5 {
            data.push((&ax, "A"));
            data.push((&by, "B"));
        }
        let smoothing = SmoothingParams {
            m: 1.0,
            prior: PriorMode::Senses,
        };
        let m = train_nb(&data, &smoothing).unwrap();
        let p = classify_nb(&m, &fv(&["x"]));
        assert_eq!(p.sense, "A");
        assert!(!p.used_fallback);
        let expected = 0.5f64.ln() + (5.5f64 / 6.0).ln();
        assert!((p.score - expected).abs() < 1e-12);
    }

    #[test]
    fn empty_or_unknown_vector_falls_back() {
        let a = fv(&["x"]);
        let b = fv(&["y"]);
        let m = train_nb(&[(&a, "B"), (&a, "B"), (&b, "A")], &SmoothingParams::default()).unwrap();
        for v in [FeatureVector::new(), fv(&["zzz"])] {
            let p = classify_nb(&m, &v);
            assert!(p.used_fallback);
            assert_eq!(p.sense, "B");
        }
    }

    #[test]
    fn ties_prefer_higher_prior_then_label() {
        let a = fv(&["x"]);
        let m = train_nb(&[(&a, "B"), (&a, "A")], &SmoothingParams::default()).unwrap();
        assert_eq!(classify_nb(&m, &a).sense, "A");
    }
}
