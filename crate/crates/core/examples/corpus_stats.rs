//! Reads the tagged corpus extract, lists its occurrences, and prints
//! frequency, sense count, entropy and baseline for generated targets.
//!
//! cargo run --example corpus_stats

use std::fs::File;
use std::io::BufReader;

use wsdlab::corpus::{
    extract_occurrences, generate_pseudoword_suite, parse_corpus, parse_pseudoword_config, word_stats,
    Category,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

    let extract = parse_corpus(BufReader::new(File::open(format!("{data}/extract.tsv"))?))?;
    println!("extract: {} tokens", extract.token_count());
    for o in extract_occurrences(&extract, "détention", Category::Noun) {
        println!("  {} at {}:{} sense {}", o.lemma, o.document_id, o.token_index, o.sense);
    }

    let suite = parse_pseudoword_config(&std::fs::read_to_string(format!("{data}/pseudowords.conf"))?)?;
    let corpus = generate_pseudoword_suite(&suite, suite.seed.unwrap_or(0))?;
    let report = word_stats(&corpus, &suite.targets());
    println!("\n{:<12} {:<10} {:>5} {:>3} {:>6} {:>7}", "word", "category", "F", "S", "H", "MFS");
    for row in &report.rows {
        if let Some(s) = &row.stats {
            println!(
                "{:<12} {:<10} {:>5} {:>3} {:>6.3} {:>6.1}%",
                row.target.lemma,
                row.target.category,
                s.frequency,
                s.senses,
                s.entropy,
                100.0 * s.mfs
            );
        }
    }
    Ok(())
}
