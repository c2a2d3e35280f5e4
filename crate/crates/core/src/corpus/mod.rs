//! Vertical tagged corpora: parsing, target occurrences and sense statistics.
//!
//! A corpus file holds one token per line with five tab-separated columns,
//! `mform`, `lemma`, `ems`, `cgems` and `sense`. The sense column is empty
//! for every token that is not a sense-tagged target instance. A line
//! starting with `#doc ` opens a new document whose id is the rest of the
//! line. Blank lines are ignored.

mod pseudoword;
mod stats;

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use thiserror::Error;

pub use pseudoword::{
    generate_pseudoword_corpus, generate_pseudoword_suite, parse_pseudoword_config, Placement,
    PseudoWordConfig, PseudoWordSuite,
};
pub use stats::{
    mfs_baseline, sense_distribution, sense_entropy, word_stats, CategoryAverages, SenseDistribution,
    WordStats, WordStatsReport, WordStatsRow,
};

/// Id given to tokens that appear before any `#doc ` header.
pub const IMPLICIT_DOCUMENT_ID: &str = "_";

const DOC_MARKER: &str = "#doc ";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: expected 5 tab-separated columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: empty {column} field")]
    EmptyField { line: usize, column: &'static str },
    #[error("line {line}: duplicate document id {id:?}")]
    DuplicateDocument { line: usize, id: String },
    #[error("line {line}: invalid pseudo-word config: {message}")]
    Config { line: usize, message: String },
    #[error("invalid pseudo-word config: {0}")]
    InvalidConfig(String),
    #[error("sense statistics need at least one occurrence")]
    NoOccurrences,
    #[error("unknown word category {0:?} (expected noun, adjective or verb)")]
    UnknownCategory(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CorpusError {
    /// Source line of a parse error, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            CorpusError::ColumnCount { line, .. }
            | CorpusError::EmptyField { line, .. }
            | CorpusError::DuplicateDocument { line, .. }
            | CorpusError::Config { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// Part of speech of a target word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Noun,
    Adjective,
    Verb,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Noun, Category::Adjective, Category::Verb];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Noun => "noun",
            Category::Adjective => "adjective",
            Category::Verb => "verb",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Category {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "noun" | "n" => Ok(Category::Noun),
            "adjective" | "adj" | "a" => Ok(Category::Adjective),
            "verb" | "v" => Ok(Category::Verb),
            _ => Err(CorpusError::UnknownCategory(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub mform: String,
    pub lemma: String,
    /// Fine-grained part of speech.
    pub ems: String,
    /// Coarse-grained part of speech.
    pub cgems: String,
    pub sense: Option<String>,
}

impl Token {
    pub fn new(mform: &str, lemma: &str, ems: &str, cgems: &str, sense: Option<&str>) -> Self {
        Token {
            mform: mform.to_string(),
            lemma: lemma.to_string(),
            ems: ems.to_string(),
            cgems: cgems.to_string(),
            sense: sense.filter(|s| !s.is_empty()).map(str::to_string),
        }
    }

    fn parse_line(line: &str, line_no: usize) -> Result<Token, CorpusError> {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(CorpusError::ColumnCount {
                line: line_no,
                found: cols.len(),
            });
        }
        for (value, column) in cols.iter().zip(["mform", "lemma", "ems", "cgems"]) {
            if value.is_empty() {
                return Err(CorpusError::EmptyField {
                    line: line_no,
                    column,
                });
            }
        }
        Ok(Token::new(cols[0], cols[1], cols[2], cols[3], Some(cols[4])))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn token_count(&self) -> usize {
        self.documents.iter().map(|d| d.tokens.len()).sum()
    }
}

/// Parses a corpus in the vertical five-column format.
pub fn parse_corpus<R: BufRead>(reader: R) -> Result<Corpus, CorpusError> {
    let mut documents: Vec<Document> = Vec::new();
    let mut seen = HashSet::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(id) = line.strip_prefix(DOC_MARKER) {
            let id = id.to_string();
            if !seen.insert(id.clone()) {
                return Err(CorpusError::DuplicateDocument { line: line_no, id });
            }
            documents.push(Document {
                id,
                tokens: Vec::new(),
            });
            continue;
        }
        let token = Token::parse_line(line, line_no)?;
        if documents.is_empty() {
            let id = IMPLICIT_DOCUMENT_ID.to_string();
            seen.insert(id.clone());
            documents.push(Document {
                id,
                tokens: Vec::new(),
            });
        }
        documents.last_mut().unwrap().tokens.push(token);
    }

    Ok(Corpus { documents })
}

pub fn parse_corpus_str(text: &str) -> Result<Corpus, CorpusError> {
    parse_corpus(text.as_bytes())
}

/// Writes a corpus back in the vertical format. Every document gets an
/// explicit `#doc ` header, so the output always re-parses to an equal corpus.
pub fn write_corpus<W: Write>(corpus: &Corpus, mut out: W) -> std::io::Result<()> {
    for doc in &corpus.documents {
        writeln!(out, "{}{}", DOC_MARKER, doc.id)?;
        for t in &doc.tokens {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                t.mform,
                t.lemma,
                t.ems,
                t.cgems,
                t.sense.as_deref().unwrap_or("")
            )?;
        }
    }
    Ok(())
}

/// A word to disambiguate, with its part of speech.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Target {
    pub lemma: String,
    pub category: Category,
}

impl Target {
    pub fn new(lemma: &str, category: Category) -> Self {
        Target {
            lemma: lemma.to_string(),
            category,
        }
    }
}

/// Reads a targets file: one `lemma<TAB>category` per line. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_targets<R: BufRead>(reader: R) -> Result<Vec<Target>, CorpusError> {
    let mut targets = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 2 || cols[0].is_empty() {
            return Err(CorpusError::ColumnCount {
                line: idx + 1,
                found: cols.len(),
            });
        }
        targets.push(Target {
            lemma: cols[0].to_string(),
            category: cols[1].parse()?,
        });
    }
    Ok(targets)
}

pub fn write_targets<W: Write>(targets: &[Target], mut out: W) -> std::io::Result<()> {
    for t in targets {
        writeln!(out, "{}\t{}", t.lemma, t.category)?;
    }
    Ok(())
}

/// One sense-tagged instance of a target word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    /// Index into `Corpus::documents`.
    pub document: usize,
    pub document_id: String,
    pub token_index: usize,
    pub lemma: String,
    pub category: Category,
    pub sense: String,
}

/// Every token whose lemma is `lemma` and whose sense column is filled, in
/// corpus order. Untagged instances of the lemma are left out.
pub fn extract_occurrences(corpus: &Corpus, lemma: &str, category: Category) -> Vec<Occurrence> {
    corpus
        .documents
        .iter()
        .enumerate()
        .flat_map(|(d, doc)| {
            doc.tokens.iter().enumerate().filter_map(move |(i, t)| {
                match (&t.sense, t.lemma == lemma) {
                    (Some(sense), true) => Some(Occurrence {
                        document: d,
                        document_id: doc.id.clone(),
                        token_index: i,
                        lemma: lemma.to_string(),
                        category,
                        sense: sense.clone(),
                    }),
                    _ => None,
                }
            })
        })
        .collect()
}
