//! Applying a criterion to one occurrence.
//!
//! Context tokens are read from the occurrence's document only. When a
//! filter is active, rejected tokens are removed first and the survivors are
//! re-numbered outward from the target (`-1, -2, ...` on the left), so the
//! window of size `S` always holds `S` kept words per side when the document
//! is long enough. [`ContentMode::KeepGaps`] keeps the original offsets
//! instead.
//!
//! Feature keys by positioning (values joined with `_`, where `_` and `\`
//! inside a value are backslash-escaped):
//!
//! | positioning | plain            | anchored          |
//! |-------------|------------------|-------------------|
//! | ordered     | `-2,-1:la_porte` | `-1,+0:la_porte`  |
//! | leftright   | `L:la_porte`     | `A1:la_porte`     |
//! | unordered   | `la_porte`       | `la_porte`        |
//!
//! In anchored leftright keys, the digit after `A` is the number of words
//! left of the target inside the span.

use std::collections::{BTreeMap, BTreeSet};

use super::{Criterion, FeatureSpec, Positioning, WordFilter};
use crate::corpus::{Category, Corpus, Occurrence, Token};

/// One piece of contextual evidence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Feature {
    pub key: String,
    /// Offsets of the underlying tokens relative to the target.
    pub offsets: Vec<i32>,
    /// Coarse part of speech of the underlying tokens.
    pub cgems: Vec<String>,
}

impl Feature {
    fn closeness(&self) -> (u32, u32) {
        let min = self.offsets.iter().map(|o| o.unsigned_abs()).min().unwrap_or(0);
        let max = self.offsets.iter().map(|o| o.unsigned_abs()).max().unwrap_or(0);
        (min, max)
    }
}

/// A set of features keyed by their identity string. When the same key is
/// produced twice, the instance nearest to the target is kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeatureVector {
    features: BTreeMap<String, Feature>,
}

impl FeatureVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, feature: Feature) {
        match self.features.get(&feature.key) {
            Some(existing) if existing.closeness() <= feature.closeness() => {}
            _ => {
                self.features.insert(feature.key.clone(), feature);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn contains_key(&self, key: &str) -> bool {
        self.features.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<&Feature> {
        self.features.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.features.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Feature> {
        self.features.values()
    }
}

impl FromIterator<Feature> for FeatureVector {
    fn from_iter<I: IntoIterator<Item = Feature>>(iter: I) -> Self {
        let mut v = FeatureVector::new();
        for f in iter {
            v.insert(f);
        }
        v
    }
}

/// Coarse part-of-speech sets used by the `content` and `selected` filters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterSets {
    pub content: BTreeSet<String>,
    pub selected: BTreeMap<Category, BTreeSet<String>>,
}

fn tag_set(tags: &[&str]) -> BTreeSet<String> {
    tags.iter().map(|t| t.to_string()).collect()
}

impl Default for FilterSets {
    fn default() -> Self {
        FilterSets {
            content: tag_set(&["NCOM", "NPRO", "ADJ", "ADV", "VCON", "VINF", "VPAR"]),
            selected: [
                (
                    Category::Noun,
                    tag_set(&["NCOM", "PREP", "ADJ", "SUB", "VINF", "NPRO", "VPAR", "PRODE"]),
                ),
                (
                    Category::Adjective,
                    tag_set(&["NCOM", "DET", "ADJ", "ADV", "VINF", "NPRO"]),
                ),
                (
                    Category::Verb,
                    tag_set(&[
                        "NCOM", "ADJ", "PROPE", "PCTFORTE", "SUB", "VINF", "NPRO", "VPAR", "PRODE",
                    ]),
                ),
            ]
            .into_iter()
            .collect(),
        }
    }
}

impl FilterSets {
    fn keeps(&self, filter: WordFilter, category: Category, token: &Token) -> bool {
        match filter {
            WordFilter::All => true,
            WordFilter::Content => self.content.contains(&token.cgems),
            WordFilter::Selected => self
                .selected
                .get(&category)
                .is_some_and(|set| set.contains(&token.cgems)),
        }
    }
}

/// How filtered-out words affect offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContentMode {
    /// Survivors are re-numbered on the filtered sequence.
    #[default]
    Reindex,
    /// Survivors keep their original offsets; the window is applied first.
    KeepGaps,
}

#[derive(Debug, Clone, Copy)]
struct Slot<'a> {
    offset: i32,
    token: &'a Token,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeatureExtractor {
    pub filters: FilterSets,
    pub content_mode: ContentMode,
}

fn escape(value: &str) -> String {
    if value.contains(['_', '\\']) {
        value.replace('\\', "\\\\").replace('_', "\\_")
    } else {
        value.to_string()
    }
}

impl FeatureExtractor {
    pub fn new(filters: FilterSets, content_mode: ContentMode) -> Self {
        FeatureExtractor {
            filters,
            content_mode,
        }
    }

    pub fn extract(&self, corpus: &Corpus, occurrence: &Occurrence, criterion: &Criterion) -> FeatureVector {
        let doc = &corpus.documents[occurrence.document];
        self.extract_from_tokens(&doc.tokens, occurrence.token_index, occurrence.category, criterion)
    }

    pub fn extract_spec(&self, corpus: &Corpus, occurrence: &Occurrence, spec: &FeatureSpec) -> FeatureVector {
        match spec {
            FeatureSpec::Single(c) => self.extract(corpus, occurrence, c),
            FeatureSpec::Combined(cs) => {
                let parts: Vec<(Criterion, FeatureVector)> = cs
                    .iter()
                    .map(|c| (c.clone(), self.extract(corpus, occurrence, c)))
                    .collect();
                combine_features(&parts)
            }
        }
    }

    /// Features of the token at `position` within one document's tokens.
    pub fn extract_from_tokens(
        &self,
        tokens: &[Token],
        position: usize,
        category: Category,
        criterion: &Criterion,
    ) -> FeatureVector {
        let (lo, hi) = criterion.window();
        let keep = |t: &Token| self.filters.keeps(criterion.filter, category, t);

        let mut left = if lo <= -1 {
            self.side(tokens, position, -1, (-hi).max(1) as usize, (-lo) as usize, &keep)
        } else {
            Vec::new()
        };
        left.reverse();
        let right = if hi >= 1 {
            self.side(tokens, position, 1, lo.max(1) as usize, hi as usize, &keep)
        } else {
            Vec::new()
        };

        let n = criterion.order;
        let mut vector = FeatureVector::new();
        if criterion.anchored {
            if lo > 0 || hi < 0 {
                return vector;
            }
            let target_index = left.len();
            let mut seq = left;
            seq.push(Slot {
                offset: 0,
                token: &tokens[position],
            });
            seq.extend(right);
            for start in target_index.saturating_sub(n - 1)..=target_index {
                if start + n > seq.len() {
                    break;
                }
                let span = &seq[start..start + n];
                let label = match criterion.positioning {
                    Positioning::Ordered => Some(offsets_label(span)),
                    Positioning::LeftRight => Some(format!("A{}", target_index - start)),
                    Positioning::Unordered => None,
                };
                vector.insert(make_feature(criterion, label, span));
            }
        } else {
            for (side, label) in [(&left, "L"), (&right, "R")] {
                for span in side.windows(n) {
                    let label = match criterion.positioning {
                        Positioning::Ordered => Some(offsets_label(span)),
                        Positioning::LeftRight => Some(label.to_string()),
                        Positioning::Unordered => None,
                    };
                    vector.insert(make_feature(criterion, label, span));
                }
            }
        }
        vector
    }

    /// Context tokens on one side, nearest first, with distances in
    /// `near..=far` (after re-numbering when filtering in reindex mode).
    fn side<'a>(
        &self,
        tokens: &'a [Token],
        position: usize,
        direction: i32,
        near: usize,
        far: usize,
        keep: &dyn Fn(&Token) -> bool,
    ) -> Vec<Slot<'a>> {
        let at = |d: usize| -> Option<&'a Token> {
            if direction < 0 {
                position.checked_sub(d).map(|i| &tokens[i])
            } else {
                tokens.get(position + d)
            }
        };
        let mut out = Vec::new();
        match self.content_mode {
            ContentMode::Reindex => {
                let mut rank = 0;
                let mut d = 1;
                while let Some(token) = at(d) {
                    d += 1;
                    if !keep(token) {
                        continue;
                    }
                    rank += 1;
                    if rank > far {
                        break;
                    }
                    if rank >= near {
                        out.push(Slot {
                            offset: direction * rank as i32,
                            token,
                        });
                    }
                }
            }
            ContentMode::KeepGaps => {
                for d in near..=far {
                    let Some(token) = at(d) else { break };
                    if keep(token) {
                        out.push(Slot {
                            offset: direction * d as i32,
                            token,
                        });
                    }
                }
            }
        }
        out
    }
}

fn offsets_label(span: &[Slot<'_>]) -> String {
    span.iter()
        .map(|s| format!("{:+}", s.offset))
        .collect::<Vec<_>>()
        .join(",")
}

fn make_feature(criterion: &Criterion, label: Option<String>, span: &[Slot<'_>]) -> Feature {
    let values = span
        .iter()
        .map(|s| escape(criterion.tag.value(s.token)))
        .collect::<Vec<_>>()
        .join("_");
    let key = match label {
        Some(l) => format!("{l}:{values}"),
        None => values,
    };
    Feature {
        key,
        offsets: span.iter().map(|s| s.offset).collect(),
        cgems: span.iter().map(|s| s.token.cgems.clone()).collect(),
    }
}

/// Features of one occurrence under a criterion, with the default filter
/// sets and re-numbering.
pub fn extract_features(corpus: &Corpus, occurrence: &Occurrence, criterion: &Criterion) -> FeatureVector {
    FeatureExtractor::default().extract(corpus, occurrence, criterion)
}

/// Union of the vectors several criteria produced for one occurrence. Keys
/// are prefixed with the producing criterion (`<criterion>#<key>`) so equal
/// keys from different criteria stay distinct. A single vector is returned
/// unchanged.
pub fn combine_features(parts: &[(Criterion, FeatureVector)]) -> FeatureVector {
    if let [(_, only)] = parts {
        return only.clone();
    }
    parts
        .iter()
        .flat_map(|(c, v)| {
            let prefix = c.to_string();
            v.iter().map(move |f| Feature {
                key: format!("{prefix}#{}", f.key),
                ..f.clone()
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{extract_occurrences, parse_corpus_str};
    use crate::criteria::{Positioning as P, TagKind, WordFilter as F};

    const TABLE1: &str = "mettre\tmettre\tVINF\tVINF\t1.12.7\n\
fin\tfin\tNCFS\tNCOM\t\n\
à\tà\tPREP\tPREP\t\n\
la\tle\tDETDFS\tDET\t\n\
pratique\tpratique\tNCFS\tNCOM\t\n\
des\tde\tDETDPIG\tDET\t\n\
détentions\tdétention\tNCFP\tNCOM\t1\n";

    fn detention() -> (Corpus, Occurrence) {
        let c = parse_corpus_str(TABLE1).unwrap();
        let o = extract_occurrences(&c, "détention", Category::Noun).remove(0);
        (c, o)
    }

    fn keys(v: &FeatureVector) -> Vec<&str> {
        v.keys().collect()
    }

    fn crit(text: &str) -> Criterion {
        text.parse().unwrap()
    }

    #[test]
    fn ordered_unigrams_at_document_end() {
        let (c, o) = detention();
        let v = extract_features(&c, &o, &crit("[1gr|lemma|ordered|all]@2"));
        assert_eq!(keys(&v), vec!["-1:de", "-2:pratique"]);
        assert_eq!(v.get("-2:pratique").unwrap().offsets, vec![-2]);
        assert_eq!(v.get("-1:de").unwrap().cgems, vec!["DET"]);
    }

    #[test]
    fn leftright_bigram() {
        let (c, o) = detention();
        let v = extract_features(&c, &o, &crit("[2gr|lemma|leftright|all]@2"));
        assert_eq!(keys(&v), vec!["L:pratique_de"]);
        assert_eq!(v.get("L:pratique_de").unwrap().offsets, vec![-2, -1]);
    }

    #[test]
    fn content_filter_reindexes() {
        let (c, o) = detention();
        let v = extract_features(&c, &o, &crit("[1gr|lemma|ordered|content]@1"));
        assert_eq!(keys(&v), vec!["-1:pratique"]);
        let v = extract_features(&c, &o, &crit("[1gr|lemma|ordered|content]@3"));
        assert_eq!(keys(&v), vec!["-1:pratique", "-2:fin", "-3:mettre"]);
    }

    #[test]
    fn keep_gaps_mode_keeps_offsets() {
        let (c, o) = detention();
        let ex = FeatureExtractor::new(FilterSets::default(), ContentMode::KeepGaps);
        let v = ex.extract(&c, &o, &crit("[1gr|lemma|ordered|content]@1"));
        assert!(v.is_empty());
        let v = ex.extract(&c, &o, &crit("[1gr|lemma|ordered|content]@2"));
        assert_eq!(keys(&v), vec!["-2:pratique"]);
        let v = ex.extract(&c, &o, &crit("[2gr|lemma|ordered|content]@5"));
        assert_eq!(keys(&v), vec!["-5,-2:fin_pratique"]);
    }

    #[test]
    fn selected_filter_follows_category() {
        let (c, mut o) = detention();
        // Nouns drop DET; adjectives keep it.
        let v = extract_features(&c, &o, &crit("[1gr|lemma|ordered|selected]@1"));
        assert_eq!(keys(&v), vec!["-1:pratique"]);
        o.category = Category::Adjective;
        let v = extract_features(&c, &o, &crit("[1gr|lemma|ordered|selected]@1"));
        assert_eq!(keys(&v), vec!["-1:de"]);
    }

    #[test]
    fn unordered_collapses_sides() {
        let c = parse_corpus_str("a\ta\tN\tNCOM\t\nt\tt\tN\tNCOM\ts\na\ta\tN\tNCOM\t\n").unwrap();
        let o = extract_occurrences(&c, "t", Category::Noun).remove(0);
        let v = extract_features(&c, &o, &crit("[1gr|lemma|unordered|all]@1"));
        assert_eq!(keys(&v), vec!["a"]);
        // tie on distance keeps the left instance
        assert_eq!(v.get("a").unwrap().offsets, vec![-1]);
        let v = extract_features(&c, &o, &crit("[1gr|lemma|leftright|all]@1"));
        assert_eq!(keys(&v), vec!["L:a", "R:a"]);
    }

    #[test]
    fn shifted_window() {
        let text: String = (0..7)
            .map(|i| {
                let s = if i == 3 { "s" } else { "" };
                format!("w{i}\tw{i}\tN\tNCOM\t{s}\n")
            })
            .collect();
        let c = parse_corpus_str(&text).unwrap();
        let o = extract_occurrences(&c, "w3", Category::Verb).remove(0);
        let v = extract_features(&c, &o, &crit("[1gr|lemma|ordered|all]@1shift+1"));
        assert_eq!(keys(&v), vec!["+1:w4", "+2:w5"]);
        let v = extract_features(&c, &o, &crit("[1gr|lemma|ordered|all]@2shift-1"));
        assert_eq!(keys(&v), vec!["+1:w4", "-1:w2", "-2:w1", "-3:w0"]);
    }

    #[test]
    fn anchored_spans_contain_target() {
        let text: String = (0..7)
            .map(|i| {
                let s = if i == 3 { "s" } else { "" };
                format!("w{i}\tw{i}\tN\tNCOM\t{s}\n")
            })
            .collect();
        let c = parse_corpus_str(&text).unwrap();
        let o = extract_occurrences(&c, "w3", Category::Noun).remove(0);
        let v = extract_features(&c, &o, &crit("[2gr|lemma|leftright|all]@1anchored"));
        assert_eq!(keys(&v), vec!["A0:w3_w4", "A1:w2_w3"]);
        let v = extract_features(&c, &o, &crit("[3gr|lemma|ordered|all]@2anchored"));
        assert_eq!(
            keys(&v),
            vec!["+0,+1,+2:w3_w4_w5", "-1,+0,+1:w2_w3_w4", "-2,-1,+0:w1_w2_w3"]
        );
        for f in v.iter() {
            assert!(f.offsets.contains(&0));
        }
    }

    #[test]
    fn keys_escape_separator() {
        let c = parse_corpus_str("a_b\ta_b\tN\tNCOM\t\nc\tc\tN\tNCOM\t\nt\tt\tN\tNCOM\ts\n").unwrap();
        let o = extract_occurrences(&c, "t", Category::Noun).remove(0);
        let v = extract_features(&c, &o, &crit("[2gr|lemma|leftright|all]@2"));
        assert_eq!(keys(&v), vec!["L:a\\_b_c"]);
    }

    #[test]
    fn combine_namespaces_keys() {
        let (c, o) = detention();
        let a = crit("[1gr|lemma|ordered|all]@2");
        let b = crit("[1gr|cgems|ordered|all]@1");
        let va = extract_features(&c, &o, &a);
        let vb = extract_features(&c, &o, &b);
        assert_eq!(combine_features(&[(a.clone(), va.clone())]), va);
        let all = combine_features(&[(a, va), (b, vb)]);
        assert_eq!(all.len(), 3);
        assert!(all.contains_key("[1gr|cgems|ordered|all]@1#-1:DET"));
    }

    #[test]
    fn every_criterion_kind_extracts() {
        let (c, o) = detention();
        for n in 1..=3 {
            for tag in TagKind::ALL {
                for p in P::ALL {
                    for f in [F::All, F::Content, F::Selected] {
                        let cr = Criterion::new(n, tag, p, f, 3);
                        let v = extract_features(&c, &o, &cr);
                        for feat in v.iter() {
                            assert_eq!(feat.offsets.len(), n);
                            assert!(feat.offsets.iter().all(|&x| (-3..=-1).contains(&x)));
                        }
                    }
                }
            }
        }
    }
}
