use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use super::{fmt_real, AnalysisError};
use crate::corpus::Category;
use crate::criteria::{Criterion, WordFilter};
use crate::evaluation::GridResult;

pub const ABLATION_HEADER: [&str; 9] = [
    "category",
    "order",
    "base",
    "compared",
    "pairs",
    "base_precision",
    "compared_precision",
    "decrease_points",
    "decrease_relative_pct",
];

/// Mean effect of switching the word filter, for one category and n-gram
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationCell {
    pub category: Category,
    pub order: usize,
    pub pairs: usize,
    /// Mean macro precision of the base criteria.
    pub base_precision: f64,
    pub compared_precision: f64,
    /// Mean of `base - compared` over the pairs, in percentage points.
    /// Negative when the compared filter does better.
    pub decrease_points: f64,
    /// The same decrease relative to the base precision, in percent.
    pub decrease_relative: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AblationReport {
    pub base: WordFilter,
    pub compared: WordFilter,
    pub cells: Vec<AblationCell>,
}

/// Pairs every criterion using `compared` with the criterion that differs
/// only by using `base`, and averages the precision differences per
/// category and order.
pub fn ablation_between(
    grid: &GridResult,
    base: WordFilter,
    compared: WordFilter,
) -> Result<AblationReport, AnalysisError> {
    let index: HashMap<&Criterion, usize> = grid.criteria.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut missing = Vec::new();
    let mut pairs = Vec::new();
    for (i, c) in grid.criteria.iter().enumerate() {
        if c.filter == compared {
            match index.get(&c.clone().with_filter(base)) {
                Some(&j) => pairs.push((j, i)),
                None => missing.push(c.clone().with_filter(base).to_string()),
            }
        } else if c.filter == base && !index.contains_key(&c.clone().with_filter(compared)) {
            missing.push(c.clone().with_filter(compared).to_string());
        }
    }
    if !missing.is_empty() {
        return Err(AnalysisError::UnmatchedPairs(missing));
    }
    if pairs.is_empty() {
        return Err(AnalysisError::NoPairs(format!("{base}/{compared}")));
    }

    let per_criterion: Vec<BTreeMap<Category, f64>> =
        (0..grid.criteria.len()).map(|i| grid.category_precision(i)).collect();
    // (sum base, sum compared, sum differences, pairs)
    let mut acc: BTreeMap<(Category, usize), (f64, f64, f64, usize)> = BTreeMap::new();
    for (b, c) in pairs {
        let order = grid.criteria[b].order;
        for (category, &pb) in &per_criterion[b] {
            let pc = per_criterion[c][category];
            let e = acc.entry((*category, order)).or_default();
            e.0 += pb;
            e.1 += pc;
            e.2 += 100.0 * (pb - pc);
            e.3 += 1;
        }
    }
    let cells = acc
        .into_iter()
        .map(|((category, order), (sb, sc, sd, n))| {
            let n_f = n as f64;
            let base_precision = sb / n_f;
            let compared_precision = sc / n_f;
            let decrease_points = sd / n_f;
            AblationCell {
                category,
                order,
                pairs: n,
                base_precision,
                compared_precision,
                decrease_points,
                decrease_relative: decrease_points / base_precision,
            }
        })
        .collect();
    Ok(AblationReport { base, compared, cells })
}

/// Cost of dropping non-content words: `all` versus `content`.
pub fn content_ablation(grid: &GridResult) -> Result<AblationReport, AnalysisError> {
    ablation_between(grid, WordFilter::All, WordFilter::Content)
}

pub fn write_ablation_csv<W: Write>(report: &AblationReport, out: W) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ABLATION_HEADER)?;
    for c in &report.cells {
        w.write_record([
            c.category.to_string(),
            c.order.to_string(),
            report.base.to_string(),
            report.compared.to_string(),
            c.pairs.to_string(),
            fmt_real(c.base_precision),
            fmt_real(c.compared_precision),
            fmt_real(c.decrease_points),
            fmt_real(c.decrease_relative),
        ])?;
    }
    w.flush()?;
    Ok(())
}
