//! Synthetic pseudo-word corpora.
//!
//! A pseudo-word merges the occurrences of several source lemmas under one
//! artificial lemma; each source lemma becomes a "sense". Collocational
//! signals are planted at chosen offsets so that experiments have a known
//! answer.
//!
//! Config files are flat `key = value` lines (`#` starts a comment):
//!
//! ```text
//! seed = 7
//! pseudoword = banaporte
//! category = noun
//! sources = banane, porte
//! counts = 200, 200
//! signal.banane = -1:mûr/ADJ
//! signal.porte = -1:ouvrir/VINF ; -2:la/DET, -1:fermer/VINF
//! noise = 0.0
//! vocabulary = 50
//! window = 4
//! filler_tags = NCOM, DET, PREP, ADJ, ADV, VCON
//! ```
//!
//! A `pseudoword` line opens a new block, so one file can describe several
//! targets. In a signal value, `;` separates alternative patterns (one is
//! drawn uniformly per occurrence) and `,` separates the placements of one
//! pattern. A placement is `offset:lemma` with an optional `/CGEMS` tag.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Category, Corpus, CorpusError, Document, Target, Token};

const DEFAULT_FILLER_TAGS: [&str; 6] = ["NCOM", "DET", "PREP", "ADJ", "ADV", "VCON"];

/// One planted context token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub offset: i32,
    pub lemma: String,
    pub cgems: String,
}

impl Placement {
    fn parse(text: &str) -> Result<Placement, String> {
        let (offset, rest) = text
            .split_once(':')
            .ok_or_else(|| format!("placement {text:?} is not offset:lemma"))?;
        let offset: i32 = offset
            .trim()
            .trim_start_matches('+')
            .parse()
            .map_err(|_| format!("bad offset in placement {text:?}"))?;
        if offset == 0 {
            return Err(format!("placement {text:?} sits on the target"));
        }
        let (lemma, cgems) = match rest.split_once('/') {
            Some((l, t)) => (l.trim(), t.trim()),
            None => (rest.trim(), "NCOM"),
        };
        if lemma.is_empty() || cgems.is_empty() {
            return Err(format!("empty lemma or tag in placement {text:?}"));
        }
        Ok(Placement {
            offset,
            lemma: lemma.to_string(),
            cgems: cgems.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PseudoWordConfig {
    pub pseudoword: String,
    pub category: Category,
    /// Source lemmas; each one is a sense of the pseudo-word.
    pub sources: Vec<String>,
    /// Occurrences generated per source.
    pub counts: Vec<usize>,
    /// Per source, the alternative patterns of planted tokens.
    pub signals: Vec<Vec<Vec<Placement>>>,
    /// Probability that an occurrence receives the pattern of a uniformly
    /// drawn source instead of its own.
    pub noise: f64,
    /// Number of distinct filler lemmas.
    pub vocabulary: usize,
    /// Filler tokens on each side of the target.
    pub window: usize,
    pub filler_tags: Vec<String>,
}

impl PseudoWordConfig {
    pub fn new(pseudoword: &str, category: Category, sources: &[&str], counts: &[usize]) -> Self {
        PseudoWordConfig {
            pseudoword: pseudoword.to_string(),
            category,
            sources: sources.iter().map(|s| s.to_string()).collect(),
            counts: counts.to_vec(),
            signals: vec![Vec::new(); sources.len()],
            noise: 0.0,
            vocabulary: 50,
            window: 4,
            filler_tags: DEFAULT_FILLER_TAGS.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Adds an alternative pattern for `source`, written as in config files
    /// (for example `"-2:pour/PREP, -1:le/DET"`).
    pub fn with_signal(mut self, source: &str, pattern: &str) -> Result<Self, CorpusError> {
        let idx = self
            .sources
            .iter()
            .position(|s| s == source)
            .ok_or_else(|| CorpusError::InvalidConfig(format!("unknown source {source:?}")))?;
        let placements = parse_pattern(pattern).map_err(CorpusError::InvalidConfig)?;
        self.signals[idx].push(placements);
        Ok(self)
    }

    pub fn with_noise(mut self, noise: f64) -> Self {
        self.noise = noise;
        self
    }

    pub fn with_vocabulary(mut self, vocabulary: usize) -> Self {
        self.vocabulary = vocabulary;
        self
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn target(&self) -> Target {
        Target::new(&self.pseudoword, self.category)
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let fail = |m: String| Err(CorpusError::InvalidConfig(m));
        if self.pseudoword.is_empty() {
            return fail("pseudo-word lemma is empty".into());
        }
        if self.sources.len() < 2 {
            return fail(format!(
                "{}: at least 2 source lemmas are required, got {}",
                self.pseudoword,
                self.sources.len()
            ));
        }
        let unique: BTreeSet<&String> = self.sources.iter().collect();
        if unique.len() != self.sources.len() {
            return fail(format!("{}: duplicate source lemmas", self.pseudoword));
        }
        if self.counts.len() != self.sources.len() {
            return fail(format!(
                "{}: {} counts for {} sources",
                self.pseudoword,
                self.counts.len(),
                self.sources.len()
            ));
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return fail(format!("{}: noise must lie in [0, 1]", self.pseudoword));
        }
        if self.vocabulary == 0 || self.filler_tags.is_empty() {
            return fail(format!(
                "{}: filler vocabulary and tags must be non-empty",
                self.pseudoword
            ));
        }
        Ok(())
    }

    fn reach(&self) -> usize {
        self.signals
            .iter()
            .flatten()
            .flatten()
            .map(|p| p.offset.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
            .max(self.window)
    }

    fn target_tag(&self) -> &'static str {
        match self.category {
            Category::Noun => "NCOM",
            Category::Adjective => "ADJ",
            Category::Verb => "VINF",
        }
    }
}

fn parse_pattern(text: &str) -> Result<Vec<Placement>, String> {
    let placements = text
        .split(',')
        .map(|p| Placement::parse(p.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let offsets: BTreeSet<i32> = placements.iter().map(|p| p.offset).collect();
    if offsets.len() != placements.len() {
        return Err(format!("pattern {text:?} places two tokens at one offset"));
    }
    Ok(placements)
}

/// Several pseudo-words generated into one corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoWordSuite {
    pub seed: Option<u64>,
    pub words: Vec<PseudoWordConfig>,
}

impl PseudoWordSuite {
    pub fn targets(&self) -> Vec<Target> {
        self.words.iter().map(PseudoWordConfig::target).collect()
    }
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn parse_pseudoword_config(text: &str) -> Result<PseudoWordSuite, CorpusError> {
    let mut suite = PseudoWordSuite {
        seed: None,
        words: Vec::new(),
    };
    // Signals are resolved once the block's sources are known.
    let mut pending: Vec<Vec<(String, String, usize)>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CorpusError::Config {
            line: line_no,
            message,
        };
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;

        match key {
            "seed" => {
                suite.seed = Some(value.parse().map_err(|_| err(format!("bad seed {value:?}")))?)
            }
            "pseudoword" => {
                suite
                    .words
                    .push(PseudoWordConfig::new(value, Category::Noun, &[], &[]));
                pending.push(Vec::new());
            }
            _ => {
                let word = suite
                    .words
                    .last_mut()
                    .ok_or_else(|| err(format!("{key:?} before any pseudoword line")))?;
                match key {
                    "category" => word.category = value.parse().map_err(|e| err(format!("{e}")))?,
                    "sources" => {
                        word.sources = split_list(value);
                        word.signals = vec![Vec::new(); word.sources.len()];
                    }
                    "counts" => {
                        word.counts = split_list(value)
                            .iter()
                            .map(|c| c.parse())
                            .collect::<Result<_, _>>()
                            .map_err(|_| err(format!("bad counts {value:?}")))?
                    }
                    "noise" => {
                        word.noise = value.parse().map_err(|_| err(format!("bad noise {value:?}")))?
                    }
                    "vocabulary" => {
                        word.vocabulary = value
                            .parse()
                            .map_err(|_| err(format!("bad vocabulary {value:?}")))?
                    }
                    "window" => {
                        word.window = value.parse().map_err(|_| err(format!("bad window {value:?}")))?
                    }
                    "filler_tags" => word.filler_tags = split_list(value),
                    _ => match key.strip_prefix("signal.") {
                        Some(source) => pending.last_mut().unwrap().push((
                            source.to_string(),
                            value.to_string(),
                            line_no,
                        )),
                        None => return Err(err(format!("unknown key {key:?}"))),
                    },
                }
            }
        }
    }

    for (word, signals) in suite.words.iter_mut().zip(pending) {
        for (source, value, line) in signals {
            let idx = word
                .sources
                .iter()
                .position(|s| *s == source)
                .ok_or_else(|| CorpusError::Config {
                    line,
                    message: format!("signal for unknown source {source:?}"),
                })?;
            for alternative in value.split(';') {
                let placements =
                    parse_pattern(alternative).map_err(|message| CorpusError::Config { line, message })?;
                word.signals[idx].push(placements);
            }
        }
        word.validate()?;
    }
    if suite.words.is_empty() {
        return Err(CorpusError::InvalidConfig("no pseudoword block".into()));
    }
    Ok(suite)
}

fn generate_into(config: &PseudoWordConfig, rng: &mut ChaCha8Rng, documents: &mut Vec<Document>) {
    let reach = config.reach();
    let mut senses: Vec<usize> = config
        .counts
        .iter()
        .enumerate()
        .flat_map(|(s, &n)| std::iter::repeat_n(s, n))
        .collect();
    senses.shuffle(rng);

    let filler = |rng: &mut ChaCha8Rng| {
        let idx = rng.gen_range(0..config.vocabulary);
        let lemma = format!("w{idx}");
        let tag = &config.filler_tags[idx % config.filler_tags.len()];
        Token::new(&lemma, &lemma, tag, tag, None)
    };

    for (i, &sense) in senses.iter().enumerate() {
        let mut tokens: Vec<Token> = (0..2 * reach + 1).map(|_| filler(rng)).collect();
        let source = &config.sources[sense];
        tokens[reach] = Token::new(
            &config.pseudoword,
            &config.pseudoword,
            config.target_tag(),
            config.target_tag(),
            Some(source),
        );

        let pattern_source = if config.noise > 0.0 && rng.gen::<f64>() < config.noise {
            rng.gen_range(0..config.sources.len())
        } else {
            sense
        };
        let alternatives = &config.signals[pattern_source];
        if !alternatives.is_empty() {
            let pattern = &alternatives[rng.gen_range(0..alternatives.len())];
            for p in pattern {
                let pos = (reach as i64 + p.offset as i64) as usize;
                tokens[pos] = Token::new(&p.lemma, &p.lemma, &p.cgems, &p.cgems, None);
            }
        }

        documents.push(Document {
            id: format!("{}-{:05}", config.pseudoword, i),
            tokens,
        });
    }
}

/// Generates the corpus for one pseudo-word. Each occurrence sits in its own
/// document, so planted signals never leak between occurrences.
pub fn generate_pseudoword_corpus(config: &PseudoWordConfig, seed: u64) -> Result<Corpus, CorpusError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut documents = Vec::new();
    generate_into(config, &mut rng, &mut documents);
    Ok(Corpus { documents })
}

/// Generates every pseudo-word of a suite into one corpus.
pub fn generate_pseudoword_suite(suite: &PseudoWordSuite, seed: u64) -> Result<Corpus, CorpusError> {
    let names: BTreeSet<&String> = suite.words.iter().map(|w| &w.pseudoword).collect();
    if names.len() != suite.words.len() {
        return Err(CorpusError::InvalidConfig("duplicate pseudoword names".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut documents = Vec::new();
    for word in &suite.words {
        word.validate()?;
        generate_into(word, &mut rng, &mut documents);
    }
    Ok(Corpus { documents })
}
