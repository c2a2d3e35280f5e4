use std::collections::BTreeMap;
use std::io::Write;

use super::{fmt_opt, AnalysisError};
use crate::classifiers::ClassifierKind;
use crate::corpus::{Category, Corpus, Target};
use crate::criteria::{Criterion, FeatureSpec};
use crate::evaluation::{
    evaluate_specs, prepare_words, DecisionRecord, EvalSettings, SkippedWord, WordResult,
};

pub const EVIDENCE_PROFILE_HEADER: [&str; 6] =
    ["category", "cgems", "uses", "correct", "precision_pct", "usage_pct"];
pub const EVIDENCE_SPACE_HEADER: [&str; 5] = ["category", "cgems", "offset", "uses", "correct"];
pub const EVIDENCE_SUMMARY_HEADER: [&str; 5] = ["category", "cgems", "rank", "offset", "uses"];

/// Pseudo-tag under which fallback decisions are listed in the profile CSV.
pub const FALLBACK_TAG: &str = "(fallback)";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OffsetCount {
    pub uses: usize,
    pub correct: usize,
}

/// Decisions attributed to one coarse part of speech.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TagEvidence {
    pub uses: usize,
    pub correct: usize,
    pub offsets: BTreeMap<i32, OffsetCount>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvidenceProfile {
    pub tags: BTreeMap<String, TagEvidence>,
    /// Decisions taken by the most-frequent-sense fallback.
    pub fallback_total: usize,
    pub fallback_correct: usize,
}

impl EvidenceProfile {
    /// Decisions backed by a piece of evidence.
    pub fn total_uses(&self) -> usize {
        self.tags.values().map(|t| t.uses).sum()
    }

    /// Precision of decisions taken on evidence of `tag`, in percent.
    pub fn precision_pct(&self, tag: &str) -> Option<f64> {
        let t = self.tags.get(tag)?;
        (t.uses > 0).then(|| 100.0 * t.correct as f64 / t.uses as f64)
    }

    /// Share of evidence-backed decisions taken on `tag`, in percent.
    pub fn usage_pct(&self, tag: &str) -> Option<f64> {
        let t = self.tags.get(tag)?;
        let total = self.total_uses();
        (total > 0).then(|| 100.0 * t.uses as f64 / total as f64)
    }

    /// Overall precision, fallback decisions included.
    pub fn overall_precision(&self) -> Option<f64> {
        let correct: usize = self.tags.values().map(|t| t.correct).sum::<usize>() + self.fallback_correct;
        let total = self.total_uses() + self.fallback_total;
        (total > 0).then(|| correct as f64 / total as f64)
    }

    fn add(&mut self, record: &DecisionRecord) -> Result<(), AnalysisError> {
        let ok = usize::from(record.is_correct());
        if record.used_fallback {
            self.fallback_total += 1;
            self.fallback_correct += ok;
            return Ok(());
        }
        let (Some(offsets), Some(cgems)) = (&record.evidence_offsets, &record.evidence_cgems) else {
            return Err(AnalysisError::MissingEvidence {
                occurrence: record.occurrence,
            });
        };
        if offsets.len() != 1 || cgems.len() != 1 {
            return Err(AnalysisError::MultiTokenEvidence {
                occurrence: record.occurrence,
                tokens: offsets.len(),
            });
        }
        let tag = self.tags.entry(cgems[0].clone()).or_default();
        tag.uses += 1;
        tag.correct += ok;
        let slot = tag.offsets.entry(offsets[0]).or_default();
        slot.uses += 1;
        slot.correct += ok;
        Ok(())
    }
}

/// Attributes every evidence-backed decision to the part of speech and
/// offset of its deciding token.
pub fn evidence_profile(records: &[DecisionRecord]) -> Result<EvidenceProfile, AnalysisError> {
    let mut profile = EvidenceProfile::default();
    for r in records {
        profile.add(r)?;
    }
    Ok(profile)
}

/// Per tag, the `top` offsets with the most uses. Ties go to the smaller
/// distance, then to the left side.
pub fn space_distribution_summary(profile: &EvidenceProfile, top: usize) -> BTreeMap<String, Vec<i32>> {
    profile
        .tags
        .iter()
        .map(|(tag, t)| {
            let mut offsets: Vec<(i32, usize)> = t.offsets.iter().map(|(&o, c)| (o, c.uses)).collect();
            offsets.sort_by_key(|&(o, uses)| (std::cmp::Reverse(uses), o.unsigned_abs(), o));
            (tag.clone(), offsets.into_iter().take(top).map(|(o, _)| o).collect())
        })
        .collect()
}

/// Decision-list run over a set of targets with its evidence profile per
/// word category.
#[derive(Debug, Clone)]
pub struct EvidenceStudy {
    pub criterion: Criterion,
    pub results: Vec<WordResult>,
    pub skipped: Vec<SkippedWord>,
    pub profiles: BTreeMap<Category, EvidenceProfile>,
}

pub fn evidence_study(
    corpus: &Corpus,
    targets: &[Target],
    criterion: &Criterion,
    settings: &EvalSettings,
) -> Result<EvidenceStudy, AnalysisError> {
    if settings.classifier != ClassifierKind::DecisionList {
        return Err(AnalysisError::WrongClassifier(settings.classifier.to_string()));
    }
    if criterion.order != 1 || criterion.anchored {
        return Err(AnalysisError::NotUnigram(criterion.to_string()));
    }
    let (words, skipped) = prepare_words(corpus, targets, settings.k, settings.seed)?;
    if words.is_empty() {
        return Err(AnalysisError::NoWords);
    }
    let spec = FeatureSpec::Single(criterion.clone());
    let results = evaluate_specs(corpus, &words, std::slice::from_ref(&spec), settings, true)?;
    let mut profiles: BTreeMap<Category, EvidenceProfile> = BTreeMap::new();
    for r in &results {
        let profile = profiles.entry(r.target.category).or_default();
        for record in &r.records {
            profile.add(record)?;
        }
    }
    Ok(EvidenceStudy {
        criterion: criterion.clone(),
        results,
        skipped,
        profiles,
    })
}

/// One row per (category, tag), tags in byte order, then a fallback row.
pub fn write_evidence_profile_csv<W: Write>(
    profiles: &BTreeMap<Category, EvidenceProfile>,
    out: W,
) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EVIDENCE_PROFILE_HEADER)?;
    for (category, p) in profiles {
        for (tag, t) in &p.tags {
            w.write_record([
                category.to_string(),
                tag.clone(),
                t.uses.to_string(),
                t.correct.to_string(),
                fmt_opt(p.precision_pct(tag)),
                fmt_opt(p.usage_pct(tag)),
            ])?;
        }
        let fallback_precision =
            (p.fallback_total > 0).then(|| 100.0 * p.fallback_correct as f64 / p.fallback_total as f64);
        w.write_record([
            category.to_string(),
            FALLBACK_TAG.to_string(),
            p.fallback_total.to_string(),
            p.fallback_correct.to_string(),
            fmt_opt(fallback_precision),
            String::new(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Offset histogram per (category, tag).
pub fn write_evidence_space_csv<W: Write>(
    profiles: &BTreeMap<Category, EvidenceProfile>,
    out: W,
) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EVIDENCE_SPACE_HEADER)?;
    for (category, p) in profiles {
        for (tag, t) in &p.tags {
            for (offset, c) in &t.offsets {
                w.write_record([
                    category.to_string(),
                    tag.clone(),
                    offset.to_string(),
                    c.uses.to_string(),
                    c.correct.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Dominant offsets per (category, tag), ranked from 1.
pub fn write_evidence_summary_csv<W: Write>(
    profiles: &BTreeMap<Category, EvidenceProfile>,
    top: usize,
    out: W,
) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EVIDENCE_SUMMARY_HEADER)?;
    for (category, p) in profiles {
        for (tag, offsets) in space_distribution_summary(p, top) {
            for (rank, offset) in offsets.iter().enumerate() {
                w.write_record([
                    category.to_string(),
                    tag.clone(),
                    (rank + 1).to_string(),
                    offset.to_string(),
                    p.tags[&tag].offsets[offset].uses.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(i: usize, tag: &str, offset: i32, correct: bool) -> DecisionRecord {
        DecisionRecord {
            occurrence: i,
            document_id: "d".into(),
            token_index: i,
            fold: 0,
            gold: "a".into(),
            predicted: if correct { "a" } else { "b" }.into(),
            used_fallback: false,
            evidence_offsets: Some(vec![offset]),
            evidence_cgems: Some(vec![tag.into()]),
        }
    }

    fn fallback(i: usize, correct: bool) -> DecisionRecord {
        DecisionRecord {
            used_fallback: true,
            evidence_offsets: None,
            evidence_cgems: None,
            ..rec(i, "X", 0, correct)
        }
    }

    #[test]
    fn counts_noun_evidence() {
        let records: Vec<_> = (0..10).map(|i| rec(i, "NCOM", -1, i != 0)).collect();
        let p = evidence_profile(&records).unwrap();
        assert_eq!(p.precision_pct("NCOM"), Some(90.0));
        assert_eq!(p.usage_pct("NCOM"), Some(100.0));
    }

    #[test]
    fn empty_and_fallback_only() {
        let p = evidence_profile(&[]).unwrap();
        assert_eq!(p.total_uses(), 0);
        assert!(p.tags.is_empty());
        let p = evidence_profile(&[fallback(0, true), fallback(1, false)]).unwrap();
        assert_eq!(p.total_uses(), 0);
        assert_eq!(p.overall_precision(), Some(0.5));
    }

    #[test]
    fn missing_evidence_is_an_error() {
        let mut r = rec(3, "NCOM", 1, true);
        r.evidence_offsets = None;
        r.evidence_cgems = None;
        assert!(matches!(
            evidence_profile(&[r]),
            Err(AnalysisError::MissingEvidence { occurrence: 3 })
        ));
        let mut r = rec(4, "NCOM", 1, true);
        r.evidence_offsets = Some(vec![1, 2]);
        r.evidence_cgems = Some(vec!["NCOM".into(), "DET".into()]);
        assert!(matches!(evidence_profile(&[r]), Err(AnalysisError::MultiTokenEvidence { .. })));
    }

    #[test]
    fn dominant_offsets() {
        let mut records = Vec::new();
        for (offset, n) in [(-2, 5), (2, 5), (-1, 2), (3, 1)] {
            for _ in 0..n {
                records.push(rec(records.len(), "NCOM", offset, true));
            }
        }
        for offset in [-3, 3, 1, -1] {
            records.push(rec(records.len(), "DET", offset, true));
        }
        records.push(rec(records.len(), "ADV", 4, true));
        let p = evidence_profile(&records).unwrap();
        let s = space_distribution_summary(&p, 2);
        assert_eq!(s["NCOM"], vec![-2, 2]);
        assert_eq!(s["DET"], vec![-1, 1]);
        assert_eq!(s["ADV"], vec![4]);
    }

    #[test]
    fn usage_sums_to_hundred() {
        let records = vec![
            rec(0, "NCOM", 1, true),
            rec(1, "DET", -1, false),
            rec(2, "PREP", 2, true),
            fallback(3, true),
        ];
        let p = evidence_profile(&records).unwrap();
        let sum: f64 = p.tags.keys().map(|t| p.usage_pct(t).unwrap()).sum();
        assert!((sum - 100.0).abs() < 1e-9);
        assert_eq!(p.overall_precision(), Some(0.75));
    }
}
