//! Grid search over a reduced criterion grid: best criterion per word and
//! per n-gram order, and the average optimal context size.
//!
//! cargo run --release --example grid_search

use wsdlab::analysis::context_report;
use wsdlab::classifiers::ClassifierKind;
use wsdlab::corpus::{generate_pseudoword_suite, parse_pseudoword_config};
use wsdlab::criteria::{enumerate_grid, parse_grid_config};
use wsdlab::evaluation::{grid_search, write_best_csv, EvalSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/pseudowords.conf"))?;
    let suite = parse_pseudoword_config(&text)?;
    let corpus = generate_pseudoword_suite(&suite, suite.seed.unwrap_or(0))?;

    let grid = parse_grid_config("orders = 1-3\ntags = lemma, cgems\npositionings = ordered, leftright\nfilters = all\nsizes = 1-5\n")?;
    let criteria = enumerate_grid(&grid)?;
    let settings = EvalSettings {
        jobs: 0,
        ..EvalSettings::new(ClassifierKind::NaiveBayes)
    };
    let result = grid_search(&corpus, &suite.targets(), &criteria, &settings)?;
    println!("{} criteria x {} words", result.criteria.len(), result.words.len());

    for best in result.best_per_word() {
        println!("{:<10} best {} ({:.3})", best.target.lemma, best.criterion, best.precision);
    }
    println!();
    write_best_csv(&result, std::io::stdout())?;
    println!();
    for cell in context_report(&result).cells {
        println!("{} {}-grams: mean optimal size {:.2}", cell.category, cell.order, cell.mean_size);
    }
    Ok(())
}
