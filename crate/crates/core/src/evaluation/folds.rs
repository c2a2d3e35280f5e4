use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::EvaluationError;
use crate::corpus::Occurrence;

/// Stratified assignment of occurrences to `k` folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    /// Fold of each occurrence, aligned with the occurrence slice the plan
    /// was built from.
    pub assignment: Vec<usize>,
    /// `(document, token index)` of each occurrence, to detect misuse.
    positions: Vec<(usize, usize)>,
}

impl FoldPlan {
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Occurrence indices held out in `fold`.
    pub fn members(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == fold)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment {
            sizes[f] += 1;
        }
        sizes
    }

    /// FNV-1a hash of `k`, the seed and the assignment.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        feed(self.k as u64);
        feed(self.seed);
        for (&f, &(d, t)) in self.assignment.iter().zip(&self.positions) {
            feed(f as u64);
            feed(d as u64);
            feed(t as u64);
        }
        h
    }

    pub(crate) fn check_matches(&self, occurrences: &[Occurrence]) -> Result<(), EvaluationError> {
        let same = occurrences.len() == self.positions.len()
            && occurrences
                .iter()
                .zip(&self.positions)
                .all(|(o, &(d, t))| o.document == d && o.token_index == t);
        if same {
            Ok(())
        } else {
            Err(EvaluationError::PlanMismatch)
        }
    }
}

/// Splits occurrences into `k` folds, stratified by gold sense.
///
/// Occurrences of each sense are shuffled with the seed, then all senses
/// (in label order) are dealt round-robin as one sequence. Fold sizes and
/// per-sense counts per fold therefore differ by at most one.
pub fn kfold_split(occurrences: &[Occurrence], k: usize, seed: u64) -> Result<FoldPlan, EvaluationError> {
    if k < 2 {
        return Err(EvaluationError::Folds(format!("k must be at least 2, got {k}")));
    }
    if occurrences.len() < k {
        return Err(EvaluationError::Folds(format!(
            "{} occurrences cannot fill {k} folds",
            occurrences.len()
        )));
    }

    let mut by_sense: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, o) in occurrences.iter().enumerate() {
        by_sense.entry(&o.sense).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; occurrences.len()];
    let mut next = 0;
    for indices in by_sense.values_mut() {
        indices.shuffle(&mut rng);
        for &i in indices.iter() {
            assignment[i] = next % k;
            next += 1;
        }
    }

    Ok(FoldPlan {
        k,
        seed,
        assignment,
        positions: occurrences.iter().map(|o| (o.document, o.token_index)).collect(),
    })
}
