//! What dropping stop-words or keeping only selected parts of speech costs.
//!
//! cargo run --release --example feature_filters

use wsdlab::analysis::{content_ablation, selection_comparison};
use wsdlab::classifiers::ClassifierKind;
use wsdlab::corpus::{generate_pseudoword_suite, parse_pseudoword_config, Category};
use wsdlab::criteria::{enumerate_grid, CriterionGrid, Positioning, TagKind, WordFilter};
use wsdlab::evaluation::{grid_search, EvalSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/pseudowords.conf"))?;
    let suite = parse_pseudoword_config(&text)?;
    let corpus = generate_pseudoword_suite(&suite, suite.seed.unwrap_or(0))?;
    let targets = suite.targets();

    let grid = CriterionGrid {
        tags: vec![TagKind::Mform, TagKind::Lemma],
        positionings: vec![Positioning::Ordered, Positioning::LeftRight],
        filters: vec![WordFilter::All, WordFilter::Content],
        sizes: (1..=4).collect(),
        ..CriterionGrid::default()
    };
    let dl = EvalSettings::new(ClassifierKind::DecisionList);
    let result = grid_search(&corpus, &targets, &enumerate_grid(&grid)?, &dl)?;
    println!("precision lost by keeping content words only (points):");
    for cell in content_ablation(&result)?.cells {
        println!("  {:<9} {}-grams {:>6.2} over {} pairs", cell.category, cell.order, cell.decrease_points, cell.pairs);
    }

    let nb = EvalSettings::new(ClassifierKind::NaiveBayes);
    let report = selection_comparison(&corpus, &targets, &"[1gr|mform|ordered|all]@3".parse()?, &nb)?;
    println!("\n{:<32} {:>6} {:>6} {:>6}", "criterion", "noun", "adj", "verb");
    for row in &report.rows {
        let p = |c| row.precision.get(&c).copied().unwrap_or(f64::NAN);
        println!(
            "{:<32} {:>6.3} {:>6.3} {:>6.3}",
            row.criterion.to_string(),
            p(Category::Noun),
            p(Category::Adjective),
            p(Category::Verb)
        );
    }
    Ok(())
}
