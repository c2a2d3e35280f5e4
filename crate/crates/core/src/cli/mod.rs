//! Reproducible runs driven by a [`RunConfig`]: load inputs, run one
//! experiment, write its CSV reports and a `run.meta` file from which the
//! run can be replayed.
//!
//! Exit statuses: 0 on success, 2 for a bad configuration, 3 when an input
//! file cannot be parsed, 4 when nothing could be evaluated, 1 for any
//! other failure. Outputs are only written once the whole run succeeded.

mod run;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::classifiers::{ClassifierKind, PriorMode};
use crate::criteria::{parse_grid_config, ContentMode, Criterion, FeatureSpec, WordFilter};

pub use run::{run, RunOutput};

/// Experiments available from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcommand {
    Stats,
    Evaluate,
    Grid,
    Evidence,
    Ablation,
    Selection,
    Shift,
    Adjacency,
    Pseudoword,
}

impl Subcommand {
    pub const ALL: [Subcommand; 9] = [
        Subcommand::Stats,
        Subcommand::Evaluate,
        Subcommand::Grid,
        Subcommand::Evidence,
        Subcommand::Ablation,
        Subcommand::Selection,
        Subcommand::Shift,
        Subcommand::Adjacency,
        Subcommand::Pseudoword,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Subcommand::Stats => "stats",
            Subcommand::Evaluate => "evaluate",
            Subcommand::Grid => "grid",
            Subcommand::Evidence => "evidence",
            Subcommand::Ablation => "ablation",
            Subcommand::Selection => "selection",
            Subcommand::Shift => "shift",
            Subcommand::Adjacency => "adjacency",
            Subcommand::Pseudoword => "pseudoword",
        }
    }

    /// Classifier used when the configuration names none.
    pub fn default_classifier(self) -> ClassifierKind {
        match self {
            Subcommand::Evidence | Subcommand::Ablation => ClassifierKind::DecisionList,
            _ => ClassifierKind::NaiveBayes,
        }
    }

    /// Criterion used when the configuration names none.
    pub fn default_criterion(self) -> Option<&'static str> {
        match self {
            Subcommand::Evidence => Some("[1gr|mform|ordered|all]@8"),
            Subcommand::Selection | Subcommand::Shift => Some("[1gr|mform|ordered|all]@3"),
            _ => None,
        }
    }

    fn needs_corpus(self) -> bool {
        self != Subcommand::Pseudoword
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Subcommand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown subcommand {s:?}"))
    }
}

/// Classifier ids accepted on the command line.
pub const CLASSIFIER_IDS: [&str; 2] = ["nb", "dl"];

/// Everything that determines a run. Strings are kept unparsed so that
/// [`validate_config`] can report every problem at once.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub corpus: Option<PathBuf>,
    pub targets: Option<PathBuf>,
    /// A criterion, or several joined with `+`.
    pub criterion: Option<String>,
    /// `default` or the path of a grid file.
    pub grid: String,
    pub classifier: Option<String>,
    pub m: f64,
    pub prior: String,
    /// `reindex` or `keep-gaps`.
    pub content_mode: String,
    pub k: usize,
    pub seed: u64,
    pub jobs: usize,
    pub shifts: Vec<i32>,
    /// Offsets listed per tag in the evidence summary.
    pub top: usize,
    /// Pseudo-word description file.
    pub config: Option<PathBuf>,
    pub output: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            targets: None,
            criterion: None,
            grid: "default".into(),
            classifier: None,
            m: 1.0,
            prior: PriorMode::default().as_str().into(),
            content_mode: "reindex".into(),
            k: crate::evaluation::DEFAULT_K,
            seed: crate::evaluation::DEFAULT_SEED,
            jobs: 1,
            shifts: vec![0, 1],
            top: 2,
            config: None,
            output: PathBuf::from("out"),
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),
    #[error("{}: line {line}: {message}", .path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("nothing to report: {0}")]
    Empty(String),
    #[error("{0}")]
    Failed(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Parse { .. } => 3,
            RunError::Empty(_) => 4,
            RunError::Failed(_) => 1,
        }
    }

    fn config(message: impl Into<String>) -> RunError {
        RunError::Config(vec![message.into()])
    }
}

pub fn parse_content_mode(s: &str) -> Result<ContentMode, String> {
    match s {
        "reindex" => Ok(ContentMode::Reindex),
        "keep-gaps" => Ok(ContentMode::KeepGaps),
        _ => Err(format!("unknown content mode {s:?} (valid: reindex, keep-gaps)")),
    }
}

fn parse_classifier(s: &str) -> Result<ClassifierKind, String> {
    match s {
        "nb" | "dl" => s.parse().map_err(|e| format!("{e}")),
        _ => Err(format!(
            "unknown classifier {s:?} (valid: {})",
            CLASSIFIER_IDS.join(", ")
        )),
    }
}

fn check_file(what: &str, path: &Path, out: &mut Vec<String>) {
    if !path.is_file() {
        out.push(format!("{what} file not found: {}", path.display()));
    }
}

/// Checks that do not depend on the subcommand. Every violation is listed.
pub fn validate_config(config: &RunConfig) -> Result<(), Vec<String>> {
    let mut out = Vec::new();
    if config.k < 2 {
        out.push(format!("k must be ≥ 2 (got {})", config.k));
    }
    if !(config.m >= 0.0 && config.m.is_finite()) {
        out.push(format!("m must be ≥ 0 (got {})", config.m));
    }
    if let Some(c) = &config.classifier {
        if let Err(e) = parse_classifier(c) {
            out.push(e);
        }
    }
    if config.prior.parse::<PriorMode>().is_err() {
        out.push(format!(
            "unknown prior {:?} (valid: feature-values, senses)",
            config.prior
        ));
    }
    if let Err(e) = parse_content_mode(&config.content_mode) {
        out.push(e);
    }
    if let Some(p) = &config.corpus {
        check_file("corpus", p, &mut out);
    }
    if let Some(p) = &config.targets {
        check_file("targets", p, &mut out);
    }
    if let Some(p) = &config.config {
        check_file("pseudo-word config", p, &mut out);
    }
    if let Some(c) = &config.criterion {
        let checked = c
            .parse::<FeatureSpec>()
            .and_then(|s| s.criteria().iter().try_for_each(Criterion::validate));
        if let Err(e) = checked {
            out.push(format!("bad criterion: {e}"));
        }
    }
    if config.grid != "default" {
        let path = Path::new(&config.grid);
        if !path.is_file() {
            out.push(format!("grid must be \"default\" or a grid file; not found: {}", config.grid));
        } else {
            match std::fs::read_to_string(path) {
                Ok(text) => {
                    if let Err(e) = parse_grid_config(&text) {
                        out.push(format!("bad grid file {}: {e}", config.grid));
                    }
                }
                Err(e) => out.push(format!("cannot read grid file {}: {e}", config.grid)),
            }
        }
    }
    if !config.shifts.contains(&0) {
        out.push("shifts must include 0".into());
    }
    if config.top == 0 {
        out.push("top must be ≥ 1".into());
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Subcommand-independent checks plus what `command` needs.
pub fn validate_for(command: Subcommand, config: &RunConfig) -> Result<(), Vec<String>> {
    let mut out = validate_config(config).err().unwrap_or_default();
    if command.needs_corpus() {
        if config.corpus.is_none() {
            out.push(format!("{command} needs a corpus"));
        }
        if config.targets.is_none() {
            out.push(format!("{command} needs a targets file"));
        }
    } else if config.config.is_none() {
        out.push(format!("{command} needs a pseudo-word config"));
    }

    let classifier = config
        .classifier
        .as_deref()
        .map(parse_classifier)
        .unwrap_or(Ok(command.default_classifier()));
    let criterion = effective_criterion(command, config).map(|c| c.parse::<FeatureSpec>());
    let single = match &criterion {
        Some(Ok(FeatureSpec::Single(c))) => Some(c.clone()),
        _ => None,
    };
    let combined = matches!(criterion, Some(Ok(FeatureSpec::Combined(_))));

    match command {
        Subcommand::Evaluate if criterion.is_none() => out.push("evaluate needs a criterion".into()),
        Subcommand::Evidence => {
            if classifier == Ok(ClassifierKind::NaiveBayes) {
                out.push("evidence needs the dl classifier".into());
            }
            if let Some(c) = &single {
                if c.order != 1 || c.anchored {
                    out.push(format!("evidence needs a unigram criterion, got {c}"));
                }
            }
        }
        Subcommand::Selection => {
            if let Some(c) = &single {
                if c.filter != WordFilter::All {
                    out.push(format!("selection needs a criterion with the all filter, got {c}"));
                }
            }
        }
        Subcommand::Ablation => {
            if let Ok(grid) = run::load_grid(&config.grid) {
                for f in [WordFilter::All, WordFilter::Content] {
                    if !grid.filters.contains(&f) {
                        out.push(format!("ablation needs a grid with the {f} filter"));
                    }
                }
            }
        }
        _ => {}
    }
    if combined && matches!(command, Subcommand::Evidence | Subcommand::Selection | Subcommand::Shift) {
        out.push(format!("{command} needs a single criterion"));
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn effective_criterion(command: Subcommand, config: &RunConfig) -> Option<String> {
    config
        .criterion
        .clone()
        .or_else(|| command.default_criterion().map(String::from))
}

/// Key-value description of a run; enough to replay it.
pub fn to_meta(command: Subcommand, config: &RunConfig) -> String {
    let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
    let classifier = config
        .classifier
        .clone()
        .unwrap_or_else(|| command.default_classifier().to_string());
    let shifts: Vec<String> = config.shifts.iter().map(|s| s.to_string()).collect();
    let lines = [
        ("tool", env!("CARGO_PKG_NAME").to_string()),
        ("version", env!("CARGO_PKG_VERSION").to_string()),
        ("command", command.to_string()),
        ("corpus", path(&config.corpus)),
        ("targets", path(&config.targets)),
        ("criterion", effective_criterion(command, config).unwrap_or_default()),
        ("grid", config.grid.clone()),
        ("classifier", classifier),
        ("m", config.m.to_string()),
        ("prior", config.prior.clone()),
        ("content_mode", config.content_mode.clone()),
        ("k", config.k.to_string()),
        ("seed", config.seed.to_string()),
        ("jobs", config.jobs.to_string()),
        ("shifts", shifts.join(",")),
        ("top", config.top.to_string()),
        ("config", path(&config.config)),
    ];
    lines.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

/// Reads a `run.meta` file back. The output directory is left at its
/// default; callers pick where a replay writes.
pub fn from_meta(text: &str) -> Result<(Subcommand, RunConfig), RunError> {
    let mut config = RunConfig::default();
    let mut command = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| RunError::Parse {
            path: PathBuf::from("run.meta"),
            line: line_no,
            message: "expected key=value".into(),
        })?;
        let bad = |what: &str| RunError::Parse {
            path: PathBuf::from("run.meta"),
            line: line_no,
            message: format!("bad {what} {value:?}"),
        };
        let opt_path = |v: &str| (!v.is_empty()).then(|| PathBuf::from(v));
        match key {
            "tool" | "version" => {}
            "command" => command = Some(value.parse::<Subcommand>().map_err(|_| bad("command"))?),
            "corpus" => config.corpus = opt_path(value),
            "targets" => config.targets = opt_path(value),
            "config" => config.config = opt_path(value),
            "criterion" => config.criterion = (!value.is_empty()).then(|| value.to_string()),
            "grid" => config.grid = value.to_string(),
            "classifier" => config.classifier = Some(value.to_string()),
            "m" => config.m = value.parse().map_err(|_| bad("m"))?,
            "prior" => config.prior = value.to_string(),
            "content_mode" => config.content_mode = value.to_string(),
            "k" => config.k = value.parse().map_err(|_| bad("k"))?,
            "seed" => config.seed = value.parse().map_err(|_| bad("seed"))?,
            "jobs" => config.jobs = value.parse().map_err(|_| bad("jobs"))?,
            "shifts" => config.shifts = parse_shifts(value).map_err(|_| bad("shifts"))?,
            "top" => config.top = value.parse().map_err(|_| bad("top"))?,
            _ => {
                return Err(RunError::Parse {
                    path: PathBuf::from("run.meta"),
                    line: line_no,
                    message: format!("unknown key {key:?}"),
                })
            }
        }
    }
    let command = command.ok_or_else(|| RunError::config("run.meta names no command"))?;
    Ok((command, config))
}

/// Comma-separated signed integers.
pub fn parse_shifts(text: &str) -> Result<Vec<i32>, String> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim_start_matches('+')
                .parse()
                .map_err(|_| format!("bad shift {s:?}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_every_problem() {
        let config = RunConfig {
            k: 1,
            classifier: Some("svm".into()),
            m: -1.0,
            shifts: vec![1],
            ..RunConfig::default()
        };
        let errs = validate_config(&config).unwrap_err();
        assert_eq!(errs.len(), 4, "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("k must be ≥ 2")));
        assert!(errs.iter().any(|e| e.contains("svm") && e.contains("nb, dl")));
    }

    #[test]
    fn default_config_is_valid() {
        assert!(validate_config(&RunConfig::default()).is_ok());
    }

    #[test]
    fn command_requirements() {
        let errs = validate_for(Subcommand::Evaluate, &RunConfig::default()).unwrap_err();
        assert_eq!(errs.len(), 3, "{errs:?}");
        let config = RunConfig {
            classifier: Some("nb".into()),
            criterion: Some("[2gr|mform|ordered|all]@2".into()),
            ..RunConfig::default()
        };
        let errs = validate_for(Subcommand::Evidence, &config).unwrap_err();
        assert!(errs.iter().any(|e| e.contains("dl classifier")));
        assert!(errs.iter().any(|e| e.contains("unigram")));
    }

    #[test]
    fn bad_criterion() {
        let config = RunConfig {
            criterion: Some("[1gr|lemma|ordered]@2".into()),
            ..RunConfig::default()
        };
        assert_eq!(validate_config(&config).unwrap_err().len(), 1);
        let config = RunConfig {
            criterion: Some("[1gr|lemma|ordered|all]@2anchored".into()),
            ..RunConfig::default()
        };
        assert_eq!(validate_config(&config).unwrap_err().len(), 1);
    }

    #[test]
    fn meta_round_trip() {
        let config = RunConfig {
            corpus: Some("c.tsv".into()),
            targets: Some("t.txt".into()),
            criterion: Some("[2gr|lemma|leftright|all]@4".into()),
            classifier: Some("dl".into()),
            m: 0.5,
            k: 5,
            seed: 7,
            jobs: 3,
            shifts: vec![-1, 0, 2],
            ..RunConfig::default()
        };
        let text = to_meta(Subcommand::Evaluate, &config);
        let (command, back) = from_meta(&text).unwrap();
        assert_eq!(command, Subcommand::Evaluate);
        assert_eq!(back, config);
    }

    #[test]
    fn meta_fills_defaults() {
        let text = to_meta(Subcommand::Evidence, &RunConfig::default());
        assert!(text.contains("classifier=dl\n"));
        assert!(text.contains("criterion=[1gr|mform|ordered|all]@8\n"));
    }
}
