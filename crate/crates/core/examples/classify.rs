//! Trains Naive Bayes and a decision list on a handful of feature vectors,
//! then classifies new contexts.
//!
//! cargo run --example classify

use wsdlab::classifiers::{m_estimate, train_dl, train_nb, classify_dl, classify_nb, SmoothingParams};
use wsdlab::criteria::{Feature, FeatureVector};

fn vector(keys: &[&str]) -> FeatureVector {
    keys.iter()
        .map(|k| Feature {
            key: k.to_string(),
            offsets: vec![-1],
            cgems: vec!["NCOM".into()],
        })
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = [
        (vector(&["-1:provisoire", "+1:de"]), "prison"),
        (vector(&["-1:provisoire", "+1:des"]), "prison"),
        (vector(&["-1:longue", "+1:de"]), "prison"),
        (vector(&["-1:la", "+1:d'actions"]), "possession"),
        (vector(&["-1:la", "+1:de"]), "possession"),
    ];
    let training: Vec<_> = data.iter().map(|(v, s)| (v, *s)).collect();
    let smoothing = SmoothingParams::with_m(1.0);

    println!("m-estimate of 2 in 3 with prior 0.5: {:.3}", m_estimate(2, 3, 0.5, 1.0)?);

    let dl = train_dl(&training, &smoothing)?;
    println!("decision list:");
    for e in &dl.entries {
        println!("  {:<16} -> {:<10} strength {:.3} ({} seen)", e.key, e.sense, e.strength, e.count);
    }
    let nb = train_nb(&training, &smoothing)?;

    for keys in [&["-1:provisoire", "+1:d'actions"][..], &["-1:la"], &["-1:inconnu"]] {
        let v = vector(keys);
        let p = classify_dl(&dl, &v);
        let q = classify_nb(&nb, &v);
        println!(
            "{keys:?}: dl {} (evidence {:?}, fallback {}), nb {} (score {:.3})",
            p.sense,
            p.evidence.map(|f| f.key),
            p.used_fallback,
            q.sense,
            q.score
        );
    }
    Ok(())
}
