use std::io::Write;

use super::{EvaluationError, GridResult, WordResult};

pub const GRID_HEADER: [&str; 7] = [
    "word",
    "category",
    "criterion",
    "size",
    "classifier",
    "precision",
    "fold_precisions",
];

pub const BEST_HEADER: [&str; 7] = [
    "category",
    "order",
    "criterion",
    "size",
    "precision",
    "micro_precision",
    "words",
];

pub(crate) fn fmt_real(x: f64) -> String {
    format!("{x:.6}")
}

fn result_row(r: &WordResult) -> [String; 7] {
    [
        r.target.lemma.clone(),
        r.target.category.to_string(),
        r.spec.to_string(),
        r.spec.size().to_string(),
        r.classifier.to_string(),
        fmt_real(r.precision),
        r.fold_precisions
            .iter()
            .map(|&p| fmt_real(p))
            .collect::<Vec<_>>()
            .join(";"),
    ]
}

/// One row per result, in the given order.
pub fn write_results_csv<W: Write>(results: &[WordResult], out: W) -> Result<(), EvaluationError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(GRID_HEADER)?;
    for r in results {
        w.write_record(result_row(r))?;
    }
    w.flush()?;
    Ok(())
}

/// One row per (word, criterion): words ascending, criteria in grid order.
pub fn write_grid_csv<W: Write>(grid: &GridResult, out: W) -> Result<(), EvaluationError> {
    write_results_csv(&grid.results, out)
}

/// Best criterion per category and n-gram order, at its optimal size.
pub fn write_best_csv<W: Write>(grid: &GridResult, out: W) -> Result<(), EvaluationError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BEST_HEADER)?;
    for opt in grid.best_by_order() {
        let criterion = opt.family.with_size(opt.size);
        let idx = grid.criteria.iter().position(|c| *c == criterion);
        let micro = idx
            .and_then(|i| grid.category_micro_precision(i).get(&opt.category).copied())
            .unwrap_or(f64::NAN);
        let words = grid.words.iter().filter(|t| t.category == opt.category).count();
        w.write_record([
            opt.category.to_string(),
            opt.family.order.to_string(),
            criterion.to_string(),
            opt.size.to_string(),
            fmt_real(opt.precision),
            fmt_real(micro),
            words.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
