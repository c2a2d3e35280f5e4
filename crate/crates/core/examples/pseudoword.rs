//! Builds a pseudo-word corpus in code and writes it in the vertical format.
//!
//! cargo run --example pseudoword -- [corpus.tsv]

use std::fs::File;
use std::io::BufWriter;

use wsdlab::corpus::{
    extract_occurrences, generate_pseudoword_corpus, parse_corpus_str, sense_distribution, write_corpus,
    Category, PseudoWordConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = PseudoWordConfig::new("banaporte", Category::Noun, &["banane", "porte"], &[60, 40])
        .with_signal("banane", "-1:mûr/ADJ")?
        .with_signal("porte", "-1:ouvert/ADJ")?
        .with_signal("porte", "-2:la/DET, -1:grande/ADJ")?
        .with_noise(0.1)
        .with_vocabulary(30);
    let corpus = generate_pseudoword_corpus(&config, 1)?;

    let mut text = Vec::new();
    write_corpus(&corpus, &mut text)?;
    assert_eq!(parse_corpus_str(std::str::from_utf8(&text)?)?, corpus);
    let first: Vec<&str> = std::str::from_utf8(&text)?.lines().take(11).collect();
    println!("{}", first.join("\n"));

    let occ = extract_occurrences(&corpus, "banaporte", Category::Noun);
    println!("...\n{} occurrences, senses {:?}", occ.len(), sense_distribution(&occ)?);

    if let Some(path) = std::env::args().nth(1) {
        write_corpus(&corpus, BufWriter::new(File::create(&path)?))?;
        println!("written to {path}");
    }
    Ok(())
}
