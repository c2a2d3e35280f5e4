//! Shifting the window forward for verbs, and anchored n-grams against
//! plain bigrams.
//!
//! cargo run --release --example optimal_context

use wsdlab::analysis::{adjacency_experiment, adjacency_spec, shift_study};
use wsdlab::classifiers::ClassifierKind;
use wsdlab::corpus::{generate_pseudoword_suite, parse_pseudoword_config, Category};
use wsdlab::evaluation::EvalSettings;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/pseudowords.conf"))?;
    let suite = parse_pseudoword_config(&text)?;
    let corpus = generate_pseudoword_suite(&suite, suite.seed.unwrap_or(0))?;
    let settings = EvalSettings::new(ClassifierKind::NaiveBayes);

    let verbs: Vec<_> = suite.targets().into_iter().filter(|t| t.category == Category::Verb).collect();
    let report = shift_study(&corpus, &verbs, &"[1gr|lemma|ordered|all]@2".parse()?, &[-1, 0, 1, 2], &settings)?;
    for row in &report.rows {
        println!("shift {:+}: {:.3} ({:+.3})", row.shift, row.precision, row.delta);
    }

    println!("\nanchored combination: {}", adjacency_spec());
    let report = adjacency_experiment(&corpus, &suite.targets(), &settings)?;
    for row in &report.rows {
        println!(
            "{:<10} anchored {:.3}  plain {:.3}  delta {:+.3}",
            row.group, row.anchored, row.plain, row.delta
        );
    }
    Ok(())
}
