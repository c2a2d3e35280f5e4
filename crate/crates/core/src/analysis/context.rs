use std::io::Write;

use super::{fmt_real, AnalysisError};
use crate::classifiers::ClassifierKind;
use crate::corpus::Category;
use crate::criteria::Family;
use crate::evaluation::GridResult;

pub const CONTEXT_HEADER: [&str; 5] = ["category", "order", "classifier", "mean_optimal_size", "cells"];
pub const CURVES_HEADER: [&str; 5] = ["category", "family", "size", "classifier", "precision"];

/// Average optimal context size of one category and n-gram order.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextCell {
    pub category: Category,
    pub order: usize,
    pub mean_size: f64,
    /// (word, family) optima that were averaged.
    pub cells: usize,
}

/// Macro precision of a family at one size.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub category: Category,
    pub family: Family,
    pub size: usize,
    pub precision: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContextReport {
    pub classifier: ClassifierKind,
    pub cells: Vec<ContextCell>,
    /// Grouped by category, families in grid order, sizes ascending.
    pub curves: Vec<CurvePoint>,
}

/// Optimal sizes are taken per word and family (ties to the smaller size)
/// and then averaged over the words and families of each cell.
pub fn context_report(grid: &GridResult) -> ContextReport {
    let cells = grid
        .average_optimal_sizes()
        .into_iter()
        .map(|((category, order), (mean_size, cells))| ContextCell {
            category,
            order,
            mean_size,
            cells,
        })
        .collect();

    let per_criterion: Vec<_> = (0..grid.criteria.len()).map(|i| grid.category_precision(i)).collect();
    let mut curves = Vec::new();
    for category in grid.categories() {
        for family in grid.families() {
            let mut points: Vec<CurvePoint> = grid
                .criteria
                .iter()
                .enumerate()
                .filter(|(_, c)| c.family() == family)
                .filter_map(|(i, c)| {
                    per_criterion[i].get(&category).map(|&precision| CurvePoint {
                        category,
                        family,
                        size: c.size,
                        precision,
                    })
                })
                .collect();
            points.sort_by_key(|p| p.size);
            curves.extend(points);
        }
    }
    ContextReport {
        classifier: grid.classifier,
        cells,
        curves,
    }
}

pub fn write_context_csv<W: Write>(report: &ContextReport, out: W) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CONTEXT_HEADER)?;
    for c in &report.cells {
        w.write_record([
            c.category.to_string(),
            c.order.to_string(),
            report.classifier.to_string(),
            fmt_real(c.mean_size),
            c.cells.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_curves_csv<W: Write>(report: &ContextReport, out: W) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CURVES_HEADER)?;
    for p in &report.curves {
        w.write_record([
            p.category.to_string(),
            p.family.to_string(),
            p.size.to_string(),
            report.classifier.to_string(),
            fmt_real(p.precision),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Target;
    use crate::criteria::{Criterion, FeatureSpec, Positioning, TagKind, WordFilter};
    use crate::evaluation::WordResult;

    fn grid(per_word: &[&[f64]]) -> GridResult {
        let sizes = per_word[0].len();
        let criteria: Vec<Criterion> = (1..=sizes)
            .map(|s| Criterion::new(1, TagKind::Lemma, Positioning::Ordered, WordFilter::All, s))
            .collect();
        let words: Vec<Target> = (0..per_word.len())
            .map(|i| Target::new(&format!("w{i}"), Category::Noun))
            .collect();
        let mut results = Vec::new();
        for (w, ps) in per_word.iter().enumerate() {
            for (c, &p) in criteria.iter().zip(ps.iter()) {
                results.push(WordResult {
                    target: words[w].clone(),
                    spec: FeatureSpec::Single(c.clone()),
                    classifier: ClassifierKind::NaiveBayes,
                    correct: 0,
                    total: 0,
                    precision: p,
                    fold_precisions: Vec::new(),
                    records: Vec::new(),
                });
            }
        }
        GridResult {
            classifier: ClassifierKind::NaiveBayes,
            criteria,
            words,
            skipped: Vec::new(),
            results,
        }
    }

    #[test]
    fn averages_word_optima() {
        let r = context_report(&grid(&[&[0.9, 0.8, 0.7], &[0.7, 0.8, 0.6]]));
        assert_eq!(r.cells.len(), 1);
        assert_eq!(r.cells[0].mean_size, 1.5);
        assert_eq!(r.curves.len(), 3);
        assert!((r.curves[1].precision - 0.8).abs() < 1e-12);
    }

    #[test]
    fn flat_curve_picks_smallest() {
        let r = context_report(&grid(&[&[0.5; 8], &[0.5; 8]]));
        assert_eq!(r.cells[0].mean_size, 1.0);
        let r = context_report(&grid(&[&[0.5]]));
        assert_eq!(r.cells[0].mean_size, 1.0);
    }

    #[test]
    fn argmax_over_eight_sizes() {
        let r = context_report(&grid(&[&[0.5, 0.6, 0.65, 0.7, 0.68, 0.6, 0.6, 0.55]]));
        assert_eq!(r.cells[0].mean_size, 4.0);
    }
}
