//! Homogeneous disambiguation criteria.
//!
//! A criterion fixes the n-gram order, which word tag is read, how positions
//! are encoded, which context words are kept, and the context size. Its
//! canonical text form is
//!
//! ```text
//! [2gr|lemma|leftright|all]@4
//! [1gr|mform|ordered|all]@2shift+1
//! [3gr|lemma|leftright|all]@2anchored
//! ```

mod extract;
mod grid;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::Token;

pub use extract::{
    combine_features, extract_features, ContentMode, Feature, FeatureExtractor, FeatureVector,
    FilterSets,
};
pub use grid::{enumerate_grid, parse_grid_config, CriterionGrid};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("invalid criterion {text:?}: unexpected {token:?}")]
    Parse { text: String, token: String },
    #[error("invalid criterion: {0}")]
    Invalid(String),
    #[error("criterion grid has no {0}")]
    EmptyGrid(&'static str),
    #[error("grid config line {line}: {message}")]
    GridConfig { line: usize, message: String },
}

/// Which word annotation a criterion reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TagKind {
    Mform,
    Lemma,
    Ems,
    Cgems,
}

impl TagKind {
    pub const ALL: [TagKind; 4] = [TagKind::Mform, TagKind::Lemma, TagKind::Ems, TagKind::Cgems];

    pub fn as_str(self) -> &'static str {
        match self {
            TagKind::Mform => "mform",
            TagKind::Lemma => "lemma",
            TagKind::Ems => "ems",
            TagKind::Cgems => "cgems",
        }
    }

    pub fn value(self, token: &Token) -> &str {
        match self {
            TagKind::Mform => &token.mform,
            TagKind::Lemma => &token.lemma,
            TagKind::Ems => &token.ems,
            TagKind::Cgems => &token.cgems,
        }
    }
}

/// How the position of a context word enters the feature key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Positioning {
    /// Exact offset relative to the target.
    Ordered,
    /// Only the side (left or right) of the target.
    LeftRight,
    /// No position at all.
    Unordered,
}

impl Positioning {
    pub const ALL: [Positioning; 3] = [
        Positioning::Ordered,
        Positioning::LeftRight,
        Positioning::Unordered,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Positioning::Ordered => "ordered",
            Positioning::LeftRight => "leftright",
            Positioning::Unordered => "unordered",
        }
    }
}

/// Which context words a criterion keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordFilter {
    All,
    /// Open-class words only.
    Content,
    /// The part-of-speech set chosen for the target's category.
    Selected,
}

impl WordFilter {
    pub const ALL: [WordFilter; 3] = [WordFilter::All, WordFilter::Content, WordFilter::Selected];

    pub fn as_str(self) -> &'static str {
        match self {
            WordFilter::All => "all",
            WordFilter::Content => "content",
            WordFilter::Selected => "selected",
        }
    }
}

macro_rules! parse_by_name {
    ($ty:ty, $($name:literal => $variant:expr),+ $(,)?) => {
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($name => Ok($variant),)+
                    _ => Err(s.to_string()),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.pad(self.as_str())
            }
        }
    };
}

parse_by_name!(TagKind, "mform" => TagKind::Mform, "lemma" => TagKind::Lemma,
    "ems" => TagKind::Ems, "cgems" => TagKind::Cgems);
parse_by_name!(Positioning, "ordered" => Positioning::Ordered, "position" => Positioning::Ordered,
    "leftright" => Positioning::LeftRight, "unordered" => Positioning::Unordered);
parse_by_name!(WordFilter, "all" => WordFilter::All, "content" => WordFilter::Content,
    "selected" => WordFilter::Selected);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Criterion {
    pub order: usize,
    pub tag: TagKind,
    pub positioning: Positioning,
    pub filter: WordFilter,
    /// Words taken on each side of the target.
    pub size: usize,
    /// Window displacement; the window covers `[-size+shift, size+shift]`.
    pub shift: i32,
    /// Keep only n-grams that contain the target itself.
    pub anchored: bool,
}

impl Criterion {
    pub fn new(
        order: usize,
        tag: TagKind,
        positioning: Positioning,
        filter: WordFilter,
        size: usize,
    ) -> Self {
        Criterion {
            order,
            tag,
            positioning,
            filter,
            size,
            shift: 0,
            anchored: false,
        }
    }

    pub fn with_shift(mut self, shift: i32) -> Self {
        self.shift = shift;
        self
    }

    pub fn with_size(mut self, size: usize) -> Self {
        self.size = size;
        self
    }

    pub fn with_filter(mut self, filter: WordFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn anchored(mut self) -> Self {
        self.anchored = true;
        self
    }

    pub fn validate(&self) -> Result<(), CriteriaError> {
        if self.order == 0 {
            return Err(CriteriaError::Invalid("n-gram order must be at least 1".into()));
        }
        if self.size == 0 {
            return Err(CriteriaError::Invalid("context size must be at least 1".into()));
        }
        if self.anchored && self.order < 2 {
            return Err(CriteriaError::Invalid(
                "anchored criteria need an n-gram order of at least 2".into(),
            ));
        }
        Ok(())
    }

    /// Window bounds `(low, high)`, both inclusive; offset 0 is excluded
    /// from the context.
    pub fn window(&self) -> (i32, i32) {
        let s = self.size as i32;
        (self.shift - s, self.shift + s)
    }

    pub fn family(&self) -> Family {
        Family {
            order: self.order,
            tag: self.tag,
            positioning: self.positioning,
            filter: self.filter,
            shift: self.shift,
            anchored: self.anchored,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}gr|{}|{}|{}]@{}",
            self.order,
            self.tag.as_str(),
            self.positioning.as_str(),
            self.filter.as_str(),
            self.size
        )?;
        if self.shift != 0 {
            write!(f, "shift{:+}", self.shift)?;
        }
        if self.anchored {
            f.write_str("anchored")?;
        }
        Ok(())
    }
}

impl FromStr for Criterion {
    type Err = CriteriaError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |token: &str| CriteriaError::Parse {
            text: text.to_string(),
            token: token.to_string(),
        };
        let s = text.trim();
        let body = s.strip_prefix('[').ok_or_else(|| bad(s))?;
        let (params, rest) = body.split_once(']').ok_or_else(|| bad(body))?;
        let parts: Vec<&str> = params.split('|').collect();
        if parts.len() != 4 {
            return Err(bad(params));
        }
        let order = parts[0]
            .strip_suffix("gr")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| bad(parts[0]))?;
        let tag: TagKind = parts[1].parse().map_err(|t: String| bad(&t))?;
        let positioning: Positioning = parts[2].parse().map_err(|t: String| bad(&t))?;
        let filter: WordFilter = parts[3].parse().map_err(|t: String| bad(&t))?;

        let rest = rest.strip_prefix('@').ok_or_else(|| bad(rest))?;
        let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let size: usize = rest[..digits].parse().map_err(|_| bad(rest))?;
        let mut rest = &rest[digits..];

        let mut shift = 0;
        if let Some(r) = rest.strip_prefix("shift") {
            let sign_len = if r.starts_with(['+', '-']) { 1 } else { 0 };
            let end = r[sign_len..]
                .find(|c: char| !c.is_ascii_digit())
                .map_or(r.len(), |i| i + sign_len);
            shift = r[..end].parse().map_err(|_| bad(r))?;
            rest = &r[end..];
        }
        let anchored = match rest {
            "" => false,
            "anchored" => true,
            other => return Err(bad(other)),
        };

        let c = Criterion {
            order,
            tag,
            positioning,
            filter,
            size,
            shift,
            anchored,
        };
        c.validate()?;
        Ok(c)
    }
}

pub fn parse_criterion(text: &str) -> Result<Criterion, CriteriaError> {
    text.parse()
}

pub fn format_criterion(criterion: &Criterion) -> String {
    criterion.to_string()
}

/// A criterion with its context size left open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    pub order: usize,
    pub tag: TagKind,
    pub positioning: Positioning,
    pub filter: WordFilter,
    pub shift: i32,
    pub anchored: bool,
}

impl Family {
    pub fn with_size(&self, size: usize) -> Criterion {
        Criterion {
            order: self.order,
            tag: self.tag,
            positioning: self.positioning,
            filter: self.filter,
            size,
            shift: self.shift,
            anchored: self.anchored,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}gr|{}|{}|{}]",
            self.order,
            self.tag.as_str(),
            self.positioning.as_str(),
            self.filter.as_str()
        )?;
        if self.shift != 0 {
            write!(f, "shift{:+}", self.shift)?;
        }
        if self.anchored {
            f.write_str("anchored")?;
        }
        Ok(())
    }
}

/// The feature recipe applied to each occurrence: one criterion, or the
/// union of several.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FeatureSpec {
    Single(Criterion),
    Combined(Vec<Criterion>),
}

impl FeatureSpec {
    pub fn criteria(&self) -> &[Criterion] {
        match self {
            FeatureSpec::Single(c) => std::slice::from_ref(c),
            FeatureSpec::Combined(cs) => cs,
        }
    }

    /// Context size reported for this recipe: the widest member.
    pub fn size(&self) -> usize {
        self.criteria().iter().map(|c| c.size).max().unwrap_or(0)
    }
}

impl From<Criterion> for FeatureSpec {
    fn from(c: Criterion) -> Self {
        FeatureSpec::Single(c)
    }
}

impl fmt::Display for FeatureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.criteria().iter().map(Criterion::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for FeatureSpec {
    type Err = CriteriaError;

    /// Members are joined with `+`; a `+` inside `shift+1` is not a separator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut criteria = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 0..bytes.len() {
            if bytes[i] == b'+' && s[i + 1..].trim_start().starts_with('[') {
                criteria.push(s[start..i].parse()?);
                start = i + 1;
            }
        }
        criteria.push(s[start..].parse()?);
        Ok(if criteria.len() == 1 {
            FeatureSpec::Single(criteria.pop().unwrap())
        } else {
            FeatureSpec::Combined(criteria)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table2_bigram() {
        let c: Criterion = "[2gr|lemma|leftright|all]@4".parse().unwrap();
        assert_eq!(
            c,
            Criterion::new(2, TagKind::Lemma, Positioning::LeftRight, WordFilter::All, 4)
        );
    }

    #[test]
    fn parses_shift_and_anchor() {
        let c: Criterion = "[1gr|mform|ordered|all]@2shift+1".parse().unwrap();
        assert_eq!(c.shift, 1);
        assert_eq!(c.window(), (-1, 3));
        let c: Criterion = "[3gr|lemma|leftright|all]@2shift-2anchored".parse().unwrap();
        assert_eq!((c.shift, c.anchored), (-2, true));
        assert_eq!(c.to_string(), "[3gr|lemma|leftright|all]@2shift-2anchored");
    }

    #[test]
    fn position_alias() {
        let c: Criterion = "[1gr|lemma|position|all]@1".parse().unwrap();
        assert_eq!(c.positioning, Positioning::Ordered);
        assert_eq!(c.to_string(), "[1gr|lemma|ordered|all]@1");
    }

    #[test]
    fn rejects_unknown_tokens() {
        match "[9zz|lemma|x|all]@1".parse::<Criterion>() {
            Err(CriteriaError::Parse { token, .. }) => assert_eq!(token, "9zz"),
            other => panic!("{other:?}"),
        }
        match "[1gr|lemma|x|all]@1".parse::<Criterion>() {
            Err(CriteriaError::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("{other:?}"),
        }
        assert!("[1gr|lemma|ordered|all]@0".parse::<Criterion>().is_err());
        assert!("[1gr|lemma|ordered|all]@2anchored".parse::<Criterion>().is_err());
        assert!("[1gr|lemma|ordered|all]@2extra".parse::<Criterion>().is_err());
        assert!("1gr|lemma|ordered|all]@2".parse::<Criterion>().is_err());
        assert!("".parse::<Criterion>().is_err());
    }

    #[test]
    fn feature_spec_round_trip() {
        let text = "[2gr|lemma|leftright|all]@1anchored+[3gr|lemma|leftright|all]@2shift+1anchored";
        let spec: FeatureSpec = text.parse().unwrap();
        assert_eq!(spec.criteria().len(), 2);
        assert_eq!(spec.to_string(), text);
        assert_eq!(spec.size(), 2);
        let single: FeatureSpec = "[1gr|lemma|ordered|all]@2shift+1".parse().unwrap();
        assert!(matches!(single, FeatureSpec::Single(_)));
    }

    #[test]
    fn family_label() {
        let c: Criterion = "[1gr|lemma|ordered|content]@3shift+1".parse().unwrap();
        assert_eq!(c.family().to_string(), "[1gr|lemma|ordered|content]shift+1");
        assert_eq!(c.family().with_size(3), c);
    }
}
