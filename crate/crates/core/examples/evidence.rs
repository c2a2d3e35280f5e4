//! Which parts of speech, at which offsets, a decision list relies on.
//!
//! cargo run --example evidence

use wsdlab::analysis::{evidence_study, space_distribution_summary};
use wsdlab::classifiers::ClassifierKind;
use wsdlab::corpus::{generate_pseudoword_suite, parse_pseudoword_config};
use wsdlab::evaluation::EvalSettings;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/pseudowords.conf"))?;
    let suite = parse_pseudoword_config(&text)?;
    let corpus = generate_pseudoword_suite(&suite, suite.seed.unwrap_or(0))?;

    let settings = EvalSettings::new(ClassifierKind::DecisionList);
    let study = evidence_study(&corpus, &suite.targets(), &"[1gr|mform|ordered|all]@4".parse()?, &settings)?;

    for (category, profile) in &study.profiles {
        println!("{category}: {} decisions on evidence, {} fallbacks", profile.total_uses(), profile.fallback_total);
        let dominant = space_distribution_summary(profile, 2);
        for tag in profile.tags.keys() {
            println!(
                "  {:<6} P {:>5.1}%  U {:>5.1}%  offsets {:?}",
                tag,
                profile.precision_pct(tag).unwrap_or(0.0),
                profile.usage_pct(tag).unwrap_or(0.0),
                dominant[tag]
            );
        }
    }
    Ok(())
}
