use std::cmp::Ordering;
use std::collections::HashMap;

use super::{m_estimate, most_frequent, sense_inventory, ClassifierError, Example, Prediction, SmoothingParams};
use crate::criteria::FeatureVector;

#[derive(Debug, Clone, PartialEq)]
pub struct DlEntry {
    pub key: String,
    pub sense: String,
    /// Natural-log odds of the predicted sense against all others.
    pub strength: f64,
    /// Training instances containing the feature.
    pub count: u64,
}

/// Decision list: entries sorted by strength (descending), then count
/// (descending), then key.
#[derive(Debug, Clone, PartialEq)]
pub struct DlModel {
    pub entries: Vec<DlEntry>,
    pub fallback: String,
    pub m: f64,
    rank: HashMap<String, usize>,
}

impl DlModel {
    /// Builds a model from entries in any order.
    pub fn new(mut entries: Vec<DlEntry>, fallback: String, m: f64) -> Self {
        entries.sort_by(compare_entries);
        let rank = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key.clone(), i))
            .collect();
        DlModel {
            entries,
            fallback,
            m,
            rank,
        }
    }
}

pub(crate) fn compare_entries(a: &DlEntry, b: &DlEntry) -> Ordering {
    b.strength
        .total_cmp(&a.strength)
        .then(b.count.cmp(&a.count))
        .then_with(|| a.key.cmp(&b.key))
}

/// Predicted sense index and strength of a feature from its per-sense
/// counts. With fewer than two senses the one-vs-rest prior is taken as 1/2
/// so the odds stay finite.
pub fn feature_strength(counts: &[u64], smoothing: &SmoothingParams) -> (usize, f64) {
    let total: u64 = counts.iter().sum();
    let prior = 1.0 / counts.len().max(2) as f64;
    let mut best = 0;
    for (s, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = s;
        }
    }
    let p = m_estimate(counts[best], total, prior, smoothing.m).unwrap_or(prior);
    let strength = if p >= 1.0 { f64::MAX } else { (p / (1.0 - p)).ln() };
    (best, strength)
}

pub fn train_dl(training: &[Example<'_>], smoothing: &SmoothingParams) -> Result<DlModel, ClassifierError> {
    if training.is_empty() {
        return Err(ClassifierError::EmptyTraining);
    }
    let (senses, sense_counts) = sense_inventory(training);
    let index: HashMap<&str, usize> = senses.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();

    let mut counts: HashMap<&str, Vec<u64>> = HashMap::new();
    for (vector, sense) in training {
        let s = index[sense];
        for key in vector.keys() {
            counts.entry(key).or_insert_with(|| vec![0; senses.len()])[s] += 1;
        }
    }

    let entries = counts
        .into_iter()
        .map(|(key, c)| {
            let (s, strength) = feature_strength(&c, smoothing);
            DlEntry {
                key: key.to_string(),
                sense: senses[s].clone(),
                strength,
                count: c.iter().sum(),
            }
        })
        .collect();
    Ok(DlModel::new(
        entries,
        senses[most_frequent(&sense_counts)].clone(),
        smoothing.m,
    ))
}

/// The highest-ranked entry whose key occurs in `vector` decides.
pub fn classify_dl(model: &DlModel, vector: &FeatureVector) -> Prediction {
    match vector.keys().filter_map(|k| model.rank.get(k)).min() {
        Some(&r) => {
            let entry = &model.entries[r];
            Prediction {
                sense: entry.sense.clone(),
                score: entry.strength,
                evidence: vector.get(&entry.key).cloned(),
                used_fallback: false,
            }
        }
        None => Prediction::fallback(&model.fallback),
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
    fn strength_examples() {
        let sm = SmoothingParams::with_m(1.0);
        let (s, st) = feature_strength(&[5, 0], &sm);
        assert_eq!(s, 0);
        assert!((st - 11f64.ln()).abs() < 1e-12);
        let (_, st) = feature_strength(&[3, 3], &sm);
        assert!(st.abs() < 1e-12);
        let (_, st) = feature_strength(&[1, 0], &sm);
        assert!((st - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn unsmoothed_pure_feature_is_finite() {
        let (_, st) = feature_strength(&[4, 0], &SmoothingParams::with_m(0.0));
        assert!(st.is_finite());
    }

    #[test]
    fn pure_feature_ranks_first() {
        let pure = fv(&["pure"]);
        let mixed = fv(&["mixed"]);
        let mut data: Vec<Example> = (0..5).map(|_| (&pure, "A")).collect();
        data.extend((0..3).map(|_| (&mixed, "A")));
        data.extend((0..3).map(|_| (&mixed, "B")));
        let m = train_dl(&data, &SmoothingParams::default()).unwrap();
        assert_eq!(m.entries[0].key, "pure");
        assert_eq!(m.entries[1].key, "mixed");
        assert_eq!(m.fallback, "A");
    }

    #[test]
    fn equal_entries_order_by_key() {
        let v = fv(&["c", "a", "b"]);
        let m = train_dl(&[(&v, "S")], &SmoothingParams::default()).unwrap();
        let keys: Vec<&str> = m.entries.iter().map(|e| e.key.as_str()).collect();
        assert_eq!(keys, vec!["a", "b", "c"]);
        assert!(m.entries.iter().all(|e| e.sense == "S"));
    }

    #[test]
    fn first_matching_entry_decides() {
        let entries: Vec<DlEntry> = (1..=5)
            .map(|i| DlEntry {
                key: format!("k{i}"),
                sense: format!("s{i}"),
                strength: 10.0 - i as f64,
                count: 1,
            })
            .collect();
        let m = DlModel::new(entries, "s0".into(), 1.0);
        let p = classify_dl(&m, &fv(&["k5", "k1", "other"]));
        assert_eq!(p.sense, "s1");
        assert_eq!(p.evidence.unwrap().key, "k1");
        let p = classify_dl(&m, &fv(&["unknown"]));
        assert!(p.used_fallback);
        assert_eq!(p.sense, "s0");
        assert!(p.evidence.is_none());
    }
}
