//! Drives a full run through the library front end: generate a corpus,
//! evaluate a criterion, then replay the run from its `run.meta`.
//!
//! cargo run --example reproducible_run

use wsdlab::cli::{from_meta, run, RunConfig, Subcommand};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("wsdlab-example");
    let conf = concat!(env!("CARGO_MANIFEST_DIR"), "/data/pseudowords.conf");

    let generated = run(
        Subcommand::Pseudoword,
        &RunConfig {
            config: Some(conf.into()),
            output: dir.join("corpus"),
            ..RunConfig::default()
        },
    )?;
    println!("{}", generated.messages.join("\n"));

    let config = RunConfig {
        corpus: Some(dir.join("corpus/corpus.tsv")),
        targets: Some(dir.join("corpus/targets.txt")),
        criterion: Some("[2gr|lemma|leftright|all]@4".into()),
        classifier: Some("nb".into()),
        output: dir.join("first"),
        ..RunConfig::default()
    };
    run(Subcommand::Evaluate, &config)?;
    print!("{}", std::fs::read_to_string(dir.join("first/results.csv"))?);

    let (command, mut replay) = from_meta(&std::fs::read_to_string(dir.join("first/run.meta"))?)?;
    replay.output = dir.join("replay");
    run(command, &replay)?;
    let same = std::fs::read(dir.join("first/results.csv"))? == std::fs::read(dir.join("replay/results.csv"))?;
    println!("replay identical: {same}");

    // Problems are reported together, not one at a time.
    let bad = RunConfig {
        k: 1,
        classifier: Some("svm".into()),
        ..config
    };
    if let Err(e) = run(Subcommand::Evaluate, &bad) {
        println!("exit {}: {e}", e.exit_code());
    }
    Ok(())
}
