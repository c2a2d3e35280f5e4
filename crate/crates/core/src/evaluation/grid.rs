use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{cross_validate_vectors, extract_all, kfold_split, EvalSettings, EvaluationError, FoldPlan, WordResult};
use crate::classifiers::ClassifierKind;
use crate::corpus::{extract_occurrences, Category, Corpus, Occurrence, Target};
use crate::criteria::{Criterion, Family, FeatureSpec};

/// A target word with its occurrences and fold plan.
#[derive(Debug, Clone)]
pub struct PreparedWord {
    pub target: Target,
    pub occurrences: Vec<Occurrence>,
    pub plan: FoldPlan,
}

/// A target left out of an evaluation, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedWord {
    pub target: Target,
    pub occurrences: usize,
    pub reason: String,
}

/// Collects occurrences and builds fold plans. Targets are sorted by lemma
/// (then category); words with fewer than `k` occurrences are skipped.
pub fn prepare_words(
    corpus: &Corpus,
    targets: &[Target],
    k: usize,
    seed: u64,
) -> Result<(Vec<PreparedWord>, Vec<SkippedWord>), EvaluationError> {
    if k < 2 {
        return Err(EvaluationError::Folds(format!("k must be at least 2, got {k}")));
    }
    let unique: BTreeSet<&Target> = targets.iter().collect();
    let mut words = Vec::new();
    let mut skipped = Vec::new();
    for target in unique {
        let occurrences = extract_occurrences(corpus, &target.lemma, target.category);
        if occurrences.len() < k {
            skipped.push(SkippedWord {
                target: target.clone(),
                occurrences: occurrences.len(),
                reason: format!("{} occurrences, fewer than k = {k}", occurrences.len()),
            });
            continue;
        }
        let plan = kfold_split(&occurrences, k, seed)?;
        words.push(PreparedWord {
            target: target.clone(),
            occurrences,
            plan,
        });
    }
    Ok((words, skipped))
}

/// Runs `f(0..n)` on `jobs` worker threads (0 = one per core) and returns
/// the results in index order.
pub(crate) fn run_indexed<T, F>(jobs: usize, n: usize, f: F) -> Result<Vec<T>, EvaluationError>
where
    T: Send,
    F: Fn(usize) -> Result<T, EvaluationError> + Sync + Send,
{
    if jobs == 1 {
        return (0..n).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| EvaluationError::Workers(e.to_string()))?;
    pool.install(|| (0..n).into_par_iter().map(&f).collect())
}

/// Cross-validates every (word, spec) pair, word-major. Decision records
/// are kept only when `keep_records` is set.
pub fn evaluate_specs(
    corpus: &Corpus,
    words: &[PreparedWord],
    specs: &[FeatureSpec],
    settings: &EvalSettings,
    keep_records: bool,
) -> Result<Vec<WordResult>, EvaluationError> {
    let cells = words.len() * specs.len();
    run_indexed(settings.jobs, cells, |cell| {
        let word = &words[cell / specs.len()];
        let spec = &specs[cell % specs.len()];
        let vectors = extract_all(corpus, &word.occurrences, spec, settings);
        let mut result = cross_validate_vectors(&word.occurrences, &vectors, spec, settings, &word.plan)?;
        if !keep_records {
            result.records = Vec::new();
        }
        Ok(result)
    })
}

/// Best criterion of one word.
#[derive(Debug, Clone, PartialEq)]
pub struct BestCriterion {
    pub target: Target,
    pub criterion: Criterion,
    pub precision: f64,
}

/// Optimal context size of a criterion family over one category, judged by
/// macro-averaged precision.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyOptimum {
    pub category: Category,
    pub family: Family,
    pub size: usize,
    pub precision: f64,
}

/// Full matrix of cross-validated precisions over words and criteria.
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub classifier: ClassifierKind,
    pub criteria: Vec<Criterion>,
    pub words: Vec<Target>,
    pub skipped: Vec<SkippedWord>,
    /// `words.len() * criteria.len()` results, word-major in grid order.
    pub results: Vec<WordResult>,
}

/// Index of the best precision; ties go to the smaller context size, then
/// to the earlier index.
fn argmax_precision<'a>(cands: impl Iterator<Item = (usize, usize, f64)> + 'a) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for (idx, size, p) in cands {
        best = match best {
            Some((bi, bs, bp)) if bp > p || (bp == p && (bs, bi) <= (size, idx)) => Some((bi, bs, bp)),
            _ => Some((idx, size, p)),
        };
    }
    best
}

impl GridResult {
    pub fn result(&self, word: usize, criterion: usize) -> &WordResult {
        &self.results[word * self.criteria.len() + criterion]
    }

    pub fn word_results(&self, word: usize) -> &[WordResult] {
        let n = self.criteria.len();
        &self.results[word * n..(word + 1) * n]
    }

    pub fn categories(&self) -> Vec<Category> {
        let set: BTreeSet<Category> = self.words.iter().map(|t| t.category).collect();
        set.into_iter().collect()
    }

    /// Distinct families in order of first appearance in the grid.
    pub fn families(&self) -> Vec<Family> {
        let mut seen = BTreeSet::new();
        self.criteria
            .iter()
            .map(Criterion::family)
            .filter(|f| seen.insert(*f))
            .collect()
    }

    pub fn best_per_word(&self) -> Vec<BestCriterion> {
        (0..self.words.len())
            .filter_map(|w| {
                let (idx, _, precision) = argmax_precision(
                    self.word_results(w)
                        .iter()
                        .enumerate()
                        .map(|(i, r)| (i, self.criteria[i].size, r.precision)),
                )?;
                Some(BestCriterion {
                    target: self.words[w].clone(),
                    criterion: self.criteria[idx].clone(),
                    precision,
                })
            })
            .collect()
    }

    /// Optimal size and precision of `family` for one word.
    pub fn word_family_optimum(&self, word: usize, family: &Family) -> Option<(usize, f64)> {
        argmax_precision(
            self.criteria
                .iter()
                .enumerate()
                .filter(|(_, c)| c.family() == *family)
                .map(|(i, c)| (i, c.size, self.result(word, i).precision)),
        )
        .map(|(_, size, p)| (size, p))
    }

    /// Macro-averaged precision of criterion `idx` per category.
    pub fn category_precision(&self, idx: usize) -> BTreeMap<Category, f64> {
        let results: Vec<&WordResult> = (0..self.words.len()).map(|w| self.result(w, idx)).collect();
        macro_average(&results).unwrap_or_default()
    }

    /// Pooled (micro-averaged) precision of criterion `idx` per category.
    pub fn category_micro_precision(&self, idx: usize) -> BTreeMap<Category, f64> {
        let mut pooled: BTreeMap<Category, (usize, usize)> = BTreeMap::new();
        for w in 0..self.words.len() {
            let r = self.result(w, idx);
            let e = pooled.entry(r.target.category).or_default();
            e.0 += r.correct;
            e.1 += r.total;
        }
        pooled
            .into_iter()
            .map(|(c, (ok, n))| (c, ok as f64 / n as f64))
            .collect()
    }

    /// For every category and family, the size with the best macro precision.
    pub fn family_optima(&self) -> Vec<FamilyOptimum> {
        let per_criterion: Vec<BTreeMap<Category, f64>> =
            (0..self.criteria.len()).map(|i| self.category_precision(i)).collect();
        let mut out = Vec::new();
        for category in self.categories() {
            for family in self.families() {
                let best = argmax_precision(
                    self.criteria
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.family() == family)
                        .filter_map(|(i, c)| per_criterion[i].get(&category).map(|&p| (i, c.size, p))),
                );
                if let Some((_, size, precision)) = best {
                    out.push(FamilyOptimum {
                        category,
                        family,
                        size,
                        precision,
                    });
                }
            }
        }
        out
    }

    /// Per category and n-gram order, the best family at its optimal size.
    pub fn best_by_order(&self) -> Vec<FamilyOptimum> {
        let mut best: BTreeMap<(Category, usize), FamilyOptimum> = BTreeMap::new();
        for opt in self.family_optima() {
            let key = (opt.category, opt.family.order);
            match best.get(&key) {
                Some(b) if b.precision >= opt.precision => {}
                _ => {
                    best.insert(key, opt);
                }
            }
        }
        best.into_values().collect()
    }

    /// Mean of per-word optimal sizes over all families of each n-gram
    /// order, per category. Values are `(mean size, cells averaged)`.
    pub fn average_optimal_sizes(&self) -> BTreeMap<(Category, usize), (f64, usize)> {
        let mut acc: BTreeMap<(Category, usize), (usize, usize)> = BTreeMap::new();
        let families = self.families();
        for (w, target) in self.words.iter().enumerate() {
            for family in &families {
                if let Some((size, _)) = self.word_family_optimum(w, family) {
                    let e = acc.entry((target.category, family.order)).or_default();
                    e.0 += size;
                    e.1 += 1;
                }
            }
        }
        acc.into_iter()
            .map(|(k, (sum, n))| (k, (sum as f64 / n as f64, n)))
            .collect()
    }
}

/// Evaluates every criterion on every target. Words with fewer than `k`
/// occurrences are listed in `skipped`. Decision records are not kept.
pub fn grid_search(
    corpus: &Corpus,
    targets: &[Target],
    criteria: &[Criterion],
    settings: &EvalSettings,
) -> Result<GridResult, EvaluationError> {
    if criteria.is_empty() {
        return Err(EvaluationError::EmptyGrid);
    }
    let (words, skipped) = prepare_words(corpus, targets, settings.k, settings.seed)?;
    let specs: Vec<FeatureSpec> = criteria.iter().cloned().map(FeatureSpec::from).collect();
    let results = evaluate_specs(corpus, &words, &specs, settings, false)?;
    Ok(GridResult {
        classifier: settings.classifier,
        criteria: criteria.to_vec(),
        words: words.into_iter().map(|w| w.target).collect(),
        skipped,
        results,
    })
}

/// Unweighted mean of word precisions per category.
pub fn macro_average(results: &[&WordResult]) -> Result<BTreeMap<Category, f64>, EvaluationError> {
    if results.is_empty() {
        return Err(EvaluationError::EmptyGroup);
    }
    let mut groups: BTreeMap<Category, Vec<f64>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for r in results {
        if !seen.insert(&r.target) {
            return Err(EvaluationError::DuplicateWord(r.target.lemma.clone()));
        }
        groups.entry(r.target.category).or_default().push(r.precision);
    }
    groups
        .into_iter()
        .map(|(c, values)| Ok((c, mean(&values)?)))
        .collect()
}

pub fn mean(values: &[f64]) -> Result<f64, EvaluationError> {
    if values.is_empty() {
        return Err(EvaluationError::EmptyGroup);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}
