use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand as Command};
use wsdlab::cli::{from_meta, parse_shifts, run, RunConfig, RunError, Subcommand};

#[derive(Parser)]
#[command(name = "wsdlab", version, about = "Evaluate word sense disambiguation criteria")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Command)]
enum Cmd {
    /// Frequency, senses, entropy and baseline per target word.
    Stats(Opts),
    /// Cross-validate one criterion (or a `+`-joined combination).
    Evaluate(Opts),
    /// Cross-validate every criterion of a grid.
    Grid(Opts),
    /// Part of speech and position of decision-list evidence.
    Evidence(Opts),
    /// Precision lost by dropping non-content words.
    Ablation(Opts),
    /// One criterion under the all, content and selected filters.
    Selection(Opts),
    /// One criterion with its window shifted.
    Shift(Opts),
    /// Anchored n-gram combination against plain bigrams.
    Adjacency(Opts),
    /// Generate a pseudo-word corpus and targets file.
    Pseudoword(Opts),
    /// Run again from a run.meta file.
    Replay {
        meta: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Override the worker count.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    targets: Option<PathBuf>,
    #[arg(long)]
    criterion: Option<String>,
    /// `default` or a grid file.
    #[arg(long, default_value = "default")]
    grid: String,
    /// nb or dl.
    #[arg(long)]
    classifier: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// feature-values or senses.
    #[arg(long, default_value = "feature-values")]
    prior: String,
    /// reindex or keep-gaps.
    #[arg(long, default_value = "reindex")]
    content_mode: String,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "0,1", allow_hyphen_values = true, value_parser = parse_shifts)]
    shifts: ShiftList,
    #[arg(long, default_value_t = 2)]
    top: usize,
    /// Pseudo-word description file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(short, long)]
    output: PathBuf,
}

// Parsed as one comma-separated value, not as repeated flags.
type ShiftList = Vec<i32>;

impl Opts {
    fn into_config(self) -> RunConfig {
        RunConfig {
            corpus: self.corpus,
            targets: self.targets,
            criterion: self.criterion,
            grid: self.grid,
            classifier: self.classifier,
            m: self.m,
            prior: self.prior,
            content_mode: self.content_mode,
            k: self.k,
            seed: self.seed,
            jobs: self.jobs,
            shifts: self.shifts,
            top: self.top,
            config: self.config,
            output: self.output,
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<wsdlab::cli::RunOutput, RunError> {
    let (command, config) = match cmd {
        Cmd::Stats(o) => (Subcommand::Stats, o.into_config()),
        Cmd::Evaluate(o) => (Subcommand::Evaluate, o.into_config()),
        Cmd::Grid(o) => (Subcommand::Grid, o.into_config()),
        Cmd::Evidence(o) => (Subcommand::Evidence, o.into_config()),
        Cmd::Ablation(o) => (Subcommand::Ablation, o.into_config()),
        Cmd::Selection(o) => (Subcommand::Selection, o.into_config()),
        Cmd::Shift(o) => (Subcommand::Shift, o.into_config()),
        Cmd::Adjacency(o) => (Subcommand::Adjacency, o.into_config()),
        Cmd::Pseudoword(o) => (Subcommand::Pseudoword, o.into_config()),
        Cmd::Replay { meta, output, jobs } => {
            let text = std::fs::read_to_string(&meta)
                .map_err(|e| RunError::Config(vec![format!("{}: {e}", meta.display())]))?;
            let (command, mut config) = from_meta(&text)?;
            config.output = output;
            if let Some(j) = jobs {
                config.jobs = j;
            }
            (command, config)
        }
    };
    run(command, &config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(out) => {
            for m in &out.messages {
                eprintln!("{m}");
            }
            for f in &out.files {
                println!("{}", out.directory.join(f).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
