use std::collections::BTreeMap;

use super::{extract_occurrences, Category, Corpus, CorpusError, Occurrence, Target};

/// Sense label to relative frequency.
pub type SenseDistribution = BTreeMap<String, f64>;

fn sense_counts(occurrences: &[Occurrence]) -> BTreeMap<&str, usize> {
    let mut counts = BTreeMap::new();
    for o in occurrences {
        *counts.entry(o.sense.as_str()).or_insert(0) += 1;
    }
    counts
}

pub fn sense_distribution(occurrences: &[Occurrence]) -> Result<SenseDistribution, CorpusError> {
    if occurrences.is_empty() {
        return Err(CorpusError::NoOccurrences);
    }
    let n = occurrences.len() as f64;
    Ok(sense_counts(occurrences)
        .into_iter()
        .map(|(s, c)| (s.to_string(), c as f64 / n))
        .collect())
}

/// Shannon entropy of a sense distribution, in bits.
pub fn sense_entropy(distribution: &SenseDistribution) -> f64 {
    distribution
        .values()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Accuracy of always answering the most frequent sense.
pub fn mfs_baseline(occurrences: &[Occurrence]) -> Result<f64, CorpusError> {
    let max = sense_counts(occurrences)
        .into_values()
        .max()
        .ok_or(CorpusError::NoOccurrences)?;
    Ok(max as f64 / occurrences.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordStats {
    pub frequency: usize,
    /// Distinct senses observed for the word.
    pub senses: usize,
    pub entropy: f64,
    pub mfs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordStatsRow {
    pub target: Target,
    pub frequency: usize,
    /// `None` when the word never occurs sense-tagged.
    pub stats: Option<WordStats>,
}

/// Unweighted means over the words of one category that have statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryAverages {
    pub words: usize,
    pub frequency: f64,
    pub senses: f64,
    pub entropy: f64,
    pub mfs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordStatsReport {
    pub rows: Vec<WordStatsRow>,
    pub averages: BTreeMap<Category, CategoryAverages>,
}

pub fn word_stats(corpus: &Corpus, targets: &[Target]) -> WordStatsReport {
    let rows: Vec<WordStatsRow> = targets
        .iter()
        .map(|t| {
            let occ = extract_occurrences(corpus, &t.lemma, t.category);
            let stats = sense_distribution(&occ).ok().map(|dist| WordStats {
                frequency: occ.len(),
                senses: dist.len(),
                entropy: sense_entropy(&dist),
                mfs: dist.values().cloned().fold(0.0, f64::max),
            });
            WordStatsRow {
                target: t.clone(),
                frequency: occ.len(),
                stats,
            }
        })
        .collect();

    let mut averages = BTreeMap::new();
    for cat in Category::ALL {
        let stats: Vec<&WordStats> = rows
            .iter()
            .filter(|r| r.target.category == cat)
            .filter_map(|r| r.stats.as_ref())
            .collect();
        if stats.is_empty() {
            continue;
        }
        let n = stats.len() as f64;
        let mean = |f: &dyn Fn(&WordStats) -> f64| stats.iter().map(|s| f(s)).sum::<f64>() / n;
        averages.insert(
            cat,
            CategoryAverages {
                words: stats.len(),
                frequency: mean(&|s| s.frequency as f64),
                senses: mean(&|s| s.senses as f64),
                entropy: mean(&|s| s.entropy),
                mfs: mean(&|s| s.mfs),
            },
        );
    }
    WordStatsReport { rows, averages }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Document, Token};

    fn occs(counts: &[(&str, usize)]) -> Vec<Occurrence> {
        counts
            .iter()
            .flat_map(|&(s, n)| {
                (0..n).map(move |i| Occurrence {
                    document: 0,
                    document_id: "d".into(),
                    token_index: i,
                    lemma: "w".into(),
                    category: Category::Noun,
                    sense: s.into(),
                })
            })
            .collect()
    }

    fn corpus_with(lemma: &str, counts: &[(&str, usize)]) -> Corpus {
        let tokens = counts
            .iter()
            .flat_map(|&(s, n)| (0..n).map(move |_| Token::new(lemma, lemma, "NC", "NCOM", Some(s))))
            .collect();
        Corpus {
            documents: vec![Document {
                id: "d".into(),
                tokens,
            }],
        }
    }

    #[test]
    fn distribution_ratios() {
        let d = sense_distribution(&occs(&[("A", 723), ("B", 277)])).unwrap();
        assert!((d["A"] - 0.723).abs() < 1e-12);
        assert!((d["B"] - 0.277).abs() < 1e-12);
        assert_eq!(sense_distribution(&occs(&[("A", 5)])).unwrap()["A"], 1.0);
        let four = sense_distribution(&occs(&[("a", 1), ("b", 1), ("c", 1), ("d", 1)])).unwrap();
        assert!(four.values().all(|&p| p == 0.25));
        assert!(matches!(
            sense_distribution(&[]),
            Err(CorpusError::NoOccurrences)
        ));
    }

    #[test]
    fn entropy_values() {
        let d: SenseDistribution = [("A".to_string(), 0.723), ("B".to_string(), 0.277)].into();
        // -0.723 log2 0.723 - 0.277 log2 0.277
        assert!((sense_entropy(&d) - 0.8513).abs() < 1e-3);
        let single: SenseDistribution = [("A".to_string(), 1.0)].into();
        assert_eq!(sense_entropy(&single), 0.0);
        let uniform: SenseDistribution = ["a", "b", "c", "d"]
            .iter()
            .map(|s| (s.to_string(), 0.25))
            .collect();
        assert!((sense_entropy(&uniform) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn mfs_values() {
        assert_eq!(mfs_baseline(&occs(&[("A", 7), ("B", 3)])).unwrap(), 0.7);
        assert_eq!(mfs_baseline(&occs(&[("A", 4), ("B", 4)])).unwrap(), 0.5);
        assert_eq!(
            mfs_baseline(&occs(&[("a", 933), ("b", 40), ("c", 20), ("d", 7)])).unwrap(),
            0.933
        );
        assert!(mfs_baseline(&[]).is_err());
    }

    #[test]
    fn word_stats_row_and_average() {
        let c = corpus_with("w", &[("A", 70), ("B", 30)]);
        let report = word_stats(
            &c,
            &[Target::new("w", Category::Noun), Target::new("z", Category::Noun)],
        );
        let s = report.rows[0].stats.as_ref().unwrap();
        assert_eq!((s.frequency, s.senses), (100, 2));
        assert!((s.entropy - 0.881_290_9).abs() < 1e-6);
        assert!((s.mfs - 0.7).abs() < 1e-12);
        assert_eq!(report.rows[1].frequency, 0);
        assert!(report.rows[1].stats.is_none());
        assert_eq!(report.averages[&Category::Noun].words, 1);
    }

    #[test]
    fn category_average_is_macro() {
        let mut c = corpus_with("a", &[("x", 761), ("y", 239)]);
        c.documents
            .extend(corpus_with("b", &[("x", 760), ("y", 240)]).documents.into_iter().map(
                |mut d| {
                    d.id = "e".into();
                    d
                },
            ));
        let r = word_stats(
            &c,
            &[Target::new("a", Category::Noun), Target::new("b", Category::Noun)],
        );
        assert!((r.averages[&Category::Noun].mfs - 0.7605).abs() < 1e-12);
    }
}
