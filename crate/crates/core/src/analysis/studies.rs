use std::collections::BTreeMap;
use std::io::Write;

use super::{fmt_opt, fmt_real, AnalysisError};
use crate::corpus::{Category, Corpus, Target};
use crate::criteria::{Criterion, FeatureSpec, Positioning, TagKind, WordFilter};
use crate::evaluation::{
    evaluate_specs, macro_average, mean, prepare_words, EvalSettings, PreparedWord, SkippedWord, WordResult,
};

pub const SELECTION_HEADER: [&str; 4] = ["criterion", "noun", "adjective", "verb"];
pub const SHIFT_HEADER: [&str; 5] = ["shift", "criterion", "words", "precision", "delta"];
pub const ADJACENCY_HEADER: [&str; 5] = ["group", "words", "anchored_precision", "plain_precision", "delta"];

fn prepare(
    corpus: &Corpus,
    targets: &[Target],
    settings: &EvalSettings,
) -> Result<(Vec<PreparedWord>, Vec<SkippedWord>), AnalysisError> {
    let (words, skipped) = prepare_words(corpus, targets, settings.k, settings.seed)?;
    if words.is_empty() {
        return Err(AnalysisError::NoWords);
    }
    Ok((words, skipped))
}

/// Results for `specs`, grouped by spec.
fn by_spec(
    corpus: &Corpus,
    words: &[PreparedWord],
    specs: &[FeatureSpec],
    settings: &EvalSettings,
) -> Result<Vec<Vec<WordResult>>, AnalysisError> {
    let results = evaluate_specs(corpus, words, specs, settings, false)?;
    let mut grouped = vec![Vec::with_capacity(words.len()); specs.len()];
    for (i, r) in results.into_iter().enumerate() {
        grouped[i % specs.len()].push(r);
    }
    Ok(grouped)
}

fn overall(results: &[WordResult]) -> Result<f64, AnalysisError> {
    let values: Vec<f64> = results.iter().map(|r| r.precision).collect();
    Ok(mean(&values)?)
}

fn fingerprints(words: &[PreparedWord]) -> Vec<u64> {
    words.iter().map(|w| w.plan.fingerprint()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionRow {
    pub criterion: Criterion,
    /// Macro precision per category.
    pub precision: BTreeMap<Category, f64>,
}

/// The same criterion under the `all`, `content` and `selected` filters.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    pub rows: Vec<SelectionRow>,
    pub words: Vec<Target>,
    pub skipped: Vec<SkippedWord>,
}

pub fn selection_comparison(
    corpus: &Corpus,
    targets: &[Target],
    base: &Criterion,
    settings: &EvalSettings,
) -> Result<SelectionReport, AnalysisError> {
    if base.filter != WordFilter::All {
        return Err(AnalysisError::BaseFilter(base.to_string()));
    }
    let mut rows = Vec::new();
    let mut reference: Option<(Vec<Target>, Vec<SkippedWord>, Vec<u64>)> = None;
    for filter in WordFilter::ALL {
        // Fold plans are rebuilt per run; they must come out identical.
        let (words, skipped) = prepare(corpus, targets, settings)?;
        let prints = fingerprints(&words);
        match &reference {
            Some((_, _, r)) if *r != prints => return Err(AnalysisError::FoldMismatch),
            Some(_) => {}
            None => {
                let targets = words.iter().map(|w| w.target.clone()).collect();
                reference = Some((targets, skipped, prints));
            }
        }
        let criterion = base.clone().with_filter(filter);
        let spec = FeatureSpec::Single(criterion.clone());
        let results = evaluate_specs(corpus, &words, std::slice::from_ref(&spec), settings, false)?;
        let refs: Vec<&WordResult> = results.iter().collect();
        rows.push(SelectionRow {
            criterion,
            precision: macro_average(&refs)?,
        });
    }
    let (words, skipped, _) = reference.expect("three runs");
    Ok(SelectionReport { rows, words, skipped })
}

pub fn write_selection_csv<W: Write>(report: &SelectionReport, out: W) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SELECTION_HEADER)?;
    for row in &report.rows {
        let mut record = vec![row.criterion.to_string()];
        record.extend(Category::ALL.iter().map(|c| fmt_opt(row.precision.get(c).copied())));
        w.write_record(record)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftRow {
    pub shift: i32,
    pub criterion: Criterion,
    /// Mean precision over all evaluated words.
    pub precision: f64,
    /// `precision` minus the precision at shift 0.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftReport {
    pub rows: Vec<ShiftRow>,
    pub words: Vec<Target>,
    pub skipped: Vec<SkippedWord>,
}

/// Evaluates `criterion` moved by each shift, with the same folds for all.
pub fn shift_study(
    corpus: &Corpus,
    targets: &[Target],
    criterion: &Criterion,
    shifts: &[i32],
    settings: &EvalSettings,
) -> Result<ShiftReport, AnalysisError> {
    if !shifts.contains(&0) {
        return Err(AnalysisError::MissingZeroShift);
    }
    let (words, skipped) = prepare(corpus, targets, settings)?;
    let criteria: Vec<Criterion> = shifts.iter().map(|&s| criterion.clone().with_shift(s)).collect();
    let specs: Vec<FeatureSpec> = criteria.iter().cloned().map(FeatureSpec::from).collect();
    let grouped = by_spec(corpus, &words, &specs, settings)?;
    let precisions = grouped.iter().map(|g| overall(g)).collect::<Result<Vec<_>, _>>()?;
    let zero = precisions[shifts.iter().position(|&s| s == 0).expect("checked")];
    let rows = shifts
        .iter()
        .zip(criteria)
        .zip(precisions)
        .map(|((&shift, criterion), precision)| ShiftRow {
            shift,
            criterion,
            precision,
            delta: precision - zero,
        })
        .collect();
    Ok(ShiftReport {
        rows,
        words: words.into_iter().map(|w| w.target).collect(),
        skipped,
    })
}

pub fn write_shift_csv<W: Write>(report: &ShiftReport, out: W) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SHIFT_HEADER)?;
    for row in &report.rows {
        w.write_record([
            row.shift.to_string(),
            row.criterion.to_string(),
            report.words.len().to_string(),
            fmt_real(row.precision),
            fmt_real(row.delta),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Anchored lemma n-grams of orders 2 to 5, each reaching at most four
/// words away from the target.
pub fn adjacency_spec() -> FeatureSpec {
    FeatureSpec::Combined(
        (2..=5)
            .map(|n| Criterion::new(n, TagKind::Lemma, Positioning::LeftRight, WordFilter::All, n - 1).anchored())
            .collect(),
    )
}

/// The plain criterion the anchored combination is compared with.
pub fn adjacency_baseline() -> Criterion {
    Criterion::new(2, TagKind::Lemma, Positioning::LeftRight, WordFilter::All, 4)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyRow {
    /// A category name, or `all` for every word.
    pub group: String,
    pub words: usize,
    pub anchored: f64,
    pub plain: f64,
    /// `anchored - plain`.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyReport {
    /// One row per category present, then the `all` row.
    pub rows: Vec<AdjacencyRow>,
    pub skipped: Vec<SkippedWord>,
}

impl AdjacencyReport {
    pub fn overall(&self) -> &AdjacencyRow {
        self.rows.last().expect("report has an overall row")
    }
}

pub fn adjacency_experiment(
    corpus: &Corpus,
    targets: &[Target],
    settings: &EvalSettings,
) -> Result<AdjacencyReport, AnalysisError> {
    let (words, skipped) = prepare(corpus, targets, settings)?;
    let specs = [adjacency_spec(), FeatureSpec::Single(adjacency_baseline())];
    let grouped = by_spec(corpus, &words, &specs, settings)?;
    let (anchored, plain) = (&grouped[0], &grouped[1]);

    let row = |group: String, pick: &dyn Fn(&WordResult) -> bool| -> Result<AdjacencyRow, AnalysisError> {
        let a: Vec<WordResult> = anchored.iter().filter(|r| pick(r)).cloned().collect();
        let p: Vec<WordResult> = plain.iter().filter(|r| pick(r)).cloned().collect();
        let (a, p) = (overall(&a)?, overall(&p)?);
        Ok(AdjacencyRow {
            group,
            words: anchored.iter().filter(|r| pick(r)).count(),
            anchored: a,
            plain: p,
            delta: a - p,
        })
    };

    let mut rows = Vec::new();
    for category in Category::ALL {
        if anchored.iter().any(|r| r.target.category == category) {
            rows.push(row(category.to_string(), &|r| r.target.category == category)?);
        }
    }
    rows.push(row("all".into(), &|_| true)?);
    Ok(AdjacencyReport { rows, skipped })
}

pub fn write_adjacency_csv<W: Write>(report: &AdjacencyReport, out: W) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ADJACENCY_HEADER)?;
    for row in &report.rows {
        w.write_record([
            row.group.clone(),
            row.words.to_string(),
            fmt_real(row.anchored),
            fmt_real(row.plain),
            fmt_real(row.delta),
        ])?;
    }
    w.flush()?;
    Ok(())
}
