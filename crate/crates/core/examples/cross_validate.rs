//! Ten-fold cross-validation of a few criteria on a generated pseudo-word
//! whose senses are told apart only by the word pair before it.
//!
//! cargo run --example cross_validate

use wsdlab::classifiers::ClassifierKind;
use wsdlab::corpus::{extract_occurrences, generate_pseudoword_corpus, mfs_baseline, Category, PseudoWordConfig};
use wsdlab::evaluation::{cross_validate, kfold_split, EvalSettings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = PseudoWordConfig::new("clairsûr", Category::Adjective, &["clair", "sûr"], &[200, 200])
        .with_signal("clair", "-2:pour/PREP, -1:le/DET")?
        .with_signal("clair", "-2:contre/PREP, -1:la/DET")?
        .with_signal("sûr", "-2:pour/PREP, -1:la/DET")?
        .with_signal("sûr", "-2:contre/PREP, -1:le/DET")?;
    let corpus = generate_pseudoword_corpus(&config, 3)?;
    let occ = extract_occurrences(&corpus, "clairsûr", Category::Adjective);
    let plan = kfold_split(&occ, 10, 42)?;
    println!("{} occurrences, folds {:?}, baseline {:.3}", occ.len(), plan.fold_sizes(), mfs_baseline(&occ)?);

    for kind in [ClassifierKind::NaiveBayes, ClassifierKind::DecisionList] {
        let settings = EvalSettings::new(kind);
        for name in ["[1gr|lemma|ordered|all]@2", "[2gr|lemma|leftright|all]@2", "[2gr|lemma|unordered|all]@2"] {
            let r = cross_validate(&corpus, &occ, &name.parse()?, &settings, &plan)?;
            let fallbacks = r.records.iter().filter(|d| d.used_fallback).count();
            println!("{kind} {name:<30} precision {:.3} ({} fallbacks)", r.precision, fallbacks);
        }
    }
    Ok(())
}
