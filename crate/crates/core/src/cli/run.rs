use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use super::{
    effective_criterion, parse_classifier, parse_content_mode, to_meta, validate_for, RunConfig, RunError,
    Subcommand,
};
use crate::analysis::{self, AnalysisError};
use crate::classifiers::SmoothingParams;
use crate::corpus::{
    generate_pseudoword_suite, parse_corpus, parse_pseudoword_config, parse_targets, word_stats, write_corpus,
    write_targets, Corpus, CorpusError, Target,
};
use crate::criteria::{
    enumerate_grid, parse_grid_config, Criterion, CriterionGrid, FeatureExtractor, FeatureSpec, FilterSets,
};
use crate::evaluation::{
    evaluate_specs, grid_search, prepare_words, write_best_csv, write_grid_csv, write_results_csv,
    EvalSettings, EvaluationError, SkippedWord, WordResult,
};

/// Files written by a run, in writing order, and notes for the user.
#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub directory: PathBuf,
    pub files: Vec<String>,
    pub messages: Vec<String>,
}

impl From<AnalysisError> for RunError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::NoWords => RunError::Empty(e.to_string()),
            AnalysisError::Evaluation(e) => e.into(),
            AnalysisError::Csv(_) | AnalysisError::Io(_) => RunError::Failed(e.to_string()),
            _ => RunError::config(e.to_string()),
        }
    }
}

impl From<EvaluationError> for RunError {
    fn from(e: EvaluationError) -> Self {
        RunError::Failed(e.to_string())
    }
}

fn corpus_error(path: &Path, e: CorpusError) -> RunError {
    match e.line() {
        Some(line) => RunError::Parse {
            path: path.to_path_buf(),
            line,
            message: e.to_string(),
        },
        None => RunError::Failed(format!("{}: {e}", path.display())),
    }
}

fn open(path: &Path) -> Result<BufReader<File>, RunError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| RunError::Failed(format!("{}: {e}", path.display())))
}

fn load_corpus(path: &Path) -> Result<Corpus, RunError> {
    parse_corpus(open(path)?).map_err(|e| corpus_error(path, e))
}

fn load_targets(path: &Path) -> Result<Vec<Target>, RunError> {
    parse_targets(open(path)?).map_err(|e| corpus_error(path, e))
}

pub(crate) fn load_grid(spec: &str) -> Result<CriterionGrid, RunError> {
    if spec == "default" {
        return Ok(CriterionGrid::default());
    }
    let text = std::fs::read_to_string(spec).map_err(|e| RunError::config(format!("{spec}: {e}")))?;
    parse_grid_config(&text).map_err(|e| RunError::config(format!("{spec}: {e}")))
}

/// Reports collected in memory until the run has succeeded.
#[derive(Default)]
struct Outputs {
    files: Vec<(String, Vec<u8>)>,
    messages: Vec<String>,
}

impl Outputs {
    fn add<E>(&mut self, name: &str, write: impl FnOnce(&mut Vec<u8>) -> Result<(), E>) -> Result<(), RunError>
    where
        E: std::fmt::Display,
    {
        let mut buf = Vec::new();
        write(&mut buf).map_err(|e| RunError::Failed(format!("{name}: {e}")))?;
        self.files.push((name.to_string(), buf));
        Ok(())
    }

    fn skipped(&mut self, skipped: &[SkippedWord]) -> Result<(), RunError> {
        for s in skipped {
            self.messages
                .push(format!("skipped {} ({}): {}", s.target.lemma, s.target.category, s.reason));
        }
        self.add("skipped.csv", |buf| -> Result<(), csv::Error> {
            let mut w = csv::Writer::from_writer(buf);
            w.write_record(["word", "category", "occurrences", "reason"])?;
            for s in skipped {
                w.write_record([
                    s.target.lemma.as_str(),
                    s.target.category.as_str(),
                    &s.occurrences.to_string(),
                    &s.reason,
                ])?;
            }
            w.flush()?;
            Ok(())
        })
    }
}

struct Inputs {
    corpus: Corpus,
    targets: Vec<Target>,
    settings: EvalSettings,
    criterion: Option<FeatureSpec>,
}

fn single(spec: &Option<FeatureSpec>) -> Result<Criterion, RunError> {
    match spec {
        Some(FeatureSpec::Single(c)) => Ok(c.clone()),
        _ => Err(RunError::config("a single criterion is required")),
    }
}

/// Validates `config`, runs `command`, then writes every report and
/// `run.meta` into the output directory. Nothing is written on failure.
pub fn run(command: Subcommand, config: &RunConfig) -> Result<RunOutput, RunError> {
    validate_for(command, config).map_err(RunError::Config)?;
    let mut out = Outputs::default();

    if command == Subcommand::Pseudoword {
        pseudoword(config, &mut out)?;
    } else {
        let inputs = load_inputs(command, config)?;
        if inputs.targets.is_empty() {
            return Err(RunError::Empty("targets file lists no words".into()));
        }
        match command {
            Subcommand::Stats => stats(&inputs, &mut out)?,
            Subcommand::Evaluate => evaluate(&inputs, &mut out)?,
            Subcommand::Grid => grid(&inputs, config, &mut out)?,
            Subcommand::Evidence => evidence(&inputs, config, &mut out)?,
            Subcommand::Ablation => ablation(&inputs, config, &mut out)?,
            Subcommand::Selection => {
                let r = analysis::selection_comparison(
                    &inputs.corpus,
                    &inputs.targets,
                    &single(&inputs.criterion)?,
                    &inputs.settings,
                )?;
                out.add("selection.csv", |b| analysis::write_selection_csv(&r, b))?;
                out.skipped(&r.skipped)?;
            }
            Subcommand::Shift => {
                let r = analysis::shift_study(
                    &inputs.corpus,
                    &inputs.targets,
                    &single(&inputs.criterion)?,
                    &config.shifts,
                    &inputs.settings,
                )?;
                out.add("shift.csv", |b| analysis::write_shift_csv(&r, b))?;
                out.skipped(&r.skipped)?;
            }
            Subcommand::Adjacency => {
                let r = analysis::adjacency_experiment(&inputs.corpus, &inputs.targets, &inputs.settings)?;
                out.add("adjacency.csv", |b| analysis::write_adjacency_csv(&r, b))?;
                out.skipped(&r.skipped)?;
            }
            Subcommand::Pseudoword => unreachable!(),
        }
    }

    let dir = &config.output;
    let io = |e: std::io::Error| RunError::Failed(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut files = Vec::new();
    for (name, bytes) in out.files {
        std::fs::write(dir.join(&name), bytes).map_err(io)?;
        files.push(name);
    }
    std::fs::write(dir.join("run.meta"), to_meta(command, config)).map_err(io)?;
    files.push("run.meta".into());
    Ok(RunOutput {
        directory: dir.clone(),
        files,
        messages: out.messages,
    })
}

fn load_inputs(command: Subcommand, config: &RunConfig) -> Result<Inputs, RunError> {
    let corpus = load_corpus(config.corpus.as_deref().expect("validated"))?;
    let targets = load_targets(config.targets.as_deref().expect("validated"))?;
    let classifier = match &config.classifier {
        Some(c) => parse_classifier(c).map_err(RunError::config)?,
        None => command.default_classifier(),
    };
    let settings = EvalSettings {
        classifier,
        smoothing: SmoothingParams {
            m: config.m,
            prior: config.prior.parse().map_err(|e| RunError::config(format!("{e}")))?,
        },
        extractor: FeatureExtractor::new(
            FilterSets::default(),
            parse_content_mode(&config.content_mode).map_err(RunError::config)?,
        ),
        k: config.k,
        seed: config.seed,
        jobs: config.jobs,
    };
    let criterion = effective_criterion(command, config)
        .map(|c| c.parse::<FeatureSpec>())
        .transpose()
        .map_err(|e| RunError::config(e.to_string()))?;
    Ok(Inputs {
        corpus,
        targets,
        settings,
        criterion,
    })
}

fn fmt_real(x: f64) -> String {
    format!("{x:.6}")
}

fn stats(inputs: &Inputs, out: &mut Outputs) -> Result<(), RunError> {
    let report = word_stats(&inputs.corpus, &inputs.targets);
    out.add("stats.csv", |buf| -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["word", "category", "frequency", "senses", "entropy", "mfs"])?;
        for row in &report.rows {
            let (senses, entropy, mfs) = match &row.stats {
                Some(s) => (s.senses.to_string(), fmt_real(s.entropy), fmt_real(s.mfs)),
                None => Default::default(),
            };
            w.write_record([
                row.target.lemma.clone(),
                row.target.category.to_string(),
                row.frequency.to_string(),
                senses,
                entropy,
                mfs,
            ])?;
        }
        w.flush()?;
        Ok(())
    })?;
    out.add("stats_averages.csv", |buf| -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["category", "words", "frequency", "senses", "entropy", "mfs"])?;
        for (category, a) in &report.averages {
            w.write_record([
                category.to_string(),
                a.words.to_string(),
                fmt_real(a.frequency),
                fmt_real(a.senses),
                fmt_real(a.entropy),
                fmt_real(a.mfs),
            ])?;
        }
        w.flush()?;
        Ok(())
    })
}

fn write_decisions(results: &[WordResult], buf: &mut Vec<u8>) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(buf);
    w.write_record([
        "word",
        "category",
        "document",
        "token",
        "fold",
        "gold",
        "predicted",
        "fallback",
        "evidence_offsets",
        "evidence_cgems",
    ])?;
    for r in results {
        for d in &r.records {
            let offsets = d
                .evidence_offsets
                .as_ref()
                .map(|o| o.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"))
                .unwrap_or_default();
            let cgems = d.evidence_cgems.as_ref().map(|c| c.join(";")).unwrap_or_default();
            w.write_record([
                r.target.lemma.clone(),
                r.target.category.to_string(),
                d.document_id.clone(),
                d.token_index.to_string(),
                d.fold.to_string(),
                d.gold.clone(),
                d.predicted.clone(),
                d.used_fallback.to_string(),
                offsets,
                cgems,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn evaluate(inputs: &Inputs, out: &mut Outputs) -> Result<(), RunError> {
    let s = &inputs.settings;
    let (words, skipped) = prepare_words(&inputs.corpus, &inputs.targets, s.k, s.seed)?;
    if words.is_empty() {
        return Err(RunError::Empty("no target word has enough occurrences".into()));
    }
    let spec = inputs.criterion.clone().expect("validated");
    let results = evaluate_specs(&inputs.corpus, &words, std::slice::from_ref(&spec), s, true)?;
    out.add("results.csv", |b| write_results_csv(&results, b))?;
    out.add("decisions.csv", |b| write_decisions(&results, b))?;
    out.skipped(&skipped)
}

fn run_grid(inputs: &Inputs, config: &RunConfig) -> Result<crate::evaluation::GridResult, RunError> {
    let criteria = enumerate_grid(&load_grid(&config.grid)?).map_err(|e| RunError::config(e.to_string()))?;
    let result = grid_search(&inputs.corpus, &inputs.targets, &criteria, &inputs.settings)?;
    if result.words.is_empty() {
        return Err(RunError::Empty("no target word has enough occurrences".into()));
    }
    Ok(result)
}

fn grid(inputs: &Inputs, config: &RunConfig, out: &mut Outputs) -> Result<(), RunError> {
    let g = run_grid(inputs, config)?;
    let context = analysis::context_report(&g);
    out.add("grid.csv", |b| write_grid_csv(&g, b))?;
    out.add("best_criteria.csv", |b| write_best_csv(&g, b))?;
    out.add("context.csv", |b| analysis::write_context_csv(&context, b))?;
    out.add("context_curves.csv", |b| analysis::write_curves_csv(&context, b))?;
    out.skipped(&g.skipped)
}

fn ablation(inputs: &Inputs, config: &RunConfig, out: &mut Outputs) -> Result<(), RunError> {
    let g = run_grid(inputs, config)?;
    let report = analysis::content_ablation(&g)?;
    out.add("ablation.csv", |b| analysis::write_ablation_csv(&report, b))?;
    out.add("grid.csv", |b| write_grid_csv(&g, b))?;
    out.skipped(&g.skipped)
}

fn evidence(inputs: &Inputs, config: &RunConfig, out: &mut Outputs) -> Result<(), RunError> {
    let criterion = single(&inputs.criterion)?;
    let study = analysis::evidence_study(&inputs.corpus, &inputs.targets, &criterion, &inputs.settings)?;
    let profiles = &study.profiles;
    out.add("evidence_profile.csv", |b| analysis::write_evidence_profile_csv(profiles, b))?;
    out.add("evidence_space.csv", |b| analysis::write_evidence_space_csv(profiles, b))?;
    out.add("evidence_summary.csv", |b| {
        analysis::write_evidence_summary_csv(profiles, config.top, b)
    })?;
    out.add("results.csv", |b| write_results_csv(&study.results, b))?;
    out.skipped(&study.skipped)
}

fn pseudoword(config: &RunConfig, out: &mut Outputs) -> Result<(), RunError> {
    let path = config.config.as_deref().expect("validated");
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Failed(format!("{}: {e}", path.display())))?;
    let suite = parse_pseudoword_config(&text).map_err(|e| match e.line() {
        Some(_) => corpus_error(path, e),
        None => RunError::config(format!("{}: {e}", path.display())),
    })?;
    let seed = suite.seed.unwrap_or(config.seed);
    let corpus = generate_pseudoword_suite(&suite, seed).map_err(|e| RunError::config(e.to_string()))?;
    out.add("corpus.tsv", |b| write_corpus(&corpus, b))?;
    out.add("targets.txt", |b| write_targets(&suite.targets(), b))?;
    let counts: Vec<String> = suite
        .words
        .iter()
        .map(|w| format!("{} ({})", w.pseudoword, w.counts.iter().sum::<usize>()))
        .collect();
    out.messages.push(format!(
        "generated {} with seed {seed}",
        counts.join(", ")
    ));
    Ok(())
}
