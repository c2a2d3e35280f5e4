//! Criterion names, the default grid, and the features criteria extract
//! around "détentions" in the corpus extract.
//!
//! cargo run --example criteria

use wsdlab::corpus::{extract_occurrences, parse_corpus_str, Category};
use wsdlab::criteria::{
    combine_features, enumerate_grid, extract_features, Criterion, CriterionGrid, FeatureExtractor,
    FeatureSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = enumerate_grid(&CriterionGrid::default())?;
    println!("default grid: {} criteria, first {} last {}", grid.len(), grid[0], grid[grid.len() - 1]);

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/extract.tsv"))?;
    let corpus = parse_corpus_str(&text)?;
    let occ = &extract_occurrences(&corpus, "détention", Category::Noun)[0];

    for name in [
        "[1gr|lemma|ordered|all]@2",
        "[1gr|lemma|ordered|content]@2",
        "[2gr|lemma|leftright|all]@3",
        "[1gr|cgems|unordered|all]@4",
        "[2gr|lemma|leftright|all]@2anchored",
    ] {
        let c: Criterion = name.parse()?;
        let vector = extract_features(&corpus, occ, &c);
        let keys: Vec<&str> = vector.keys().collect();
        println!("{c:<40} {keys:?}");
    }

    // Several criteria can be pooled into one feature vector.
    let spec: FeatureSpec = "[1gr|lemma|ordered|all]@1+[2gr|lemma|leftright|all]@2".parse()?;
    let parts: Vec<_> = spec
        .criteria()
        .iter()
        .map(|c| (c.clone(), extract_features(&corpus, occ, c)))
        .collect();
    let combined = combine_features(&parts);
    assert_eq!(combined, FeatureExtractor::default().extract_spec(&corpus, occ, &spec));
    for f in combined.iter() {
        println!("  {} offsets {:?} tags {:?}", f.key, f.offsets, f.cgems);
    }
    Ok(())
}
