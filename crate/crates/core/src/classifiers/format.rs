//! Line-oriented text format for trained models.
//!
//! Every line is a tab-separated record whose first field names it. The
//! first line is the header `wsdlab-model<TAB>{nb|dl}<TAB>1`.
//!
//! Naive Bayes:
//!
//! ```text
//! wsdlab-model    nb    1
//! m               <m>
//! prior           feature-values | senses
//! sense           <label>   <instances>   <feature total>     (one per sense, sorted)
//! feature         <key>     <count for sense 1>  ...          (sorted by key)
//! ```
//!
//! Decision list:
//!
//! ```text
//! wsdlab-model    dl    1
//! m               <m>
//! fallback        <label>
//! entry           <key>   <sense>   <strength>   <count>      (list order)
//! ```
//!
//! Reals are written in the shortest form that reads back to the same value.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::{ClassifierError, DlEntry, DlModel, NbModel, SmoothingParams, TrainedModel};

const MAGIC: &str = "wsdlab-model";
const VERSION: &str = "1";

pub fn write_model<W: Write>(model: &TrainedModel, mut out: W) -> std::io::Result<()> {
    match model {
        TrainedModel::NaiveBayes(m) => {
            writeln!(out, "{MAGIC}\tnb\t{VERSION}")?;
            writeln!(out, "m\t{}", m.smoothing.m)?;
            writeln!(out, "prior\t{}", m.smoothing.prior.as_str())?;
            for (i, s) in m.senses.iter().enumerate() {
                writeln!(out, "sense\t{}\t{}\t{}", s, m.sense_counts[i], m.feature_totals[i])?;
            }
            let mut keys: Vec<&String> = m.counts.keys().collect();
            keys.sort();
            for k in keys {
                let counts: Vec<String> = m.counts[k].iter().map(u64::to_string).collect();
                writeln!(out, "feature\t{}\t{}", k, counts.join("\t"))?;
            }
        }
        TrainedModel::DecisionList(m) => {
            writeln!(out, "{MAGIC}\tdl\t{VERSION}")?;
            writeln!(out, "m\t{}", m.m)?;
            writeln!(out, "fallback\t{}", m.fallback)?;
            for e in &m.entries {
                writeln!(out, "entry\t{}\t{}\t{}\t{}", e.key, e.sense, e.strength, e.count)?;
            }
        }
        TrainedModel::MostFrequentSense(s) => {
            writeln!(out, "{MAGIC}\tmfs\t{VERSION}")?;
            writeln!(out, "fallback\t{s}")?;
        }
    }
    Ok(())
}

fn num<T: std::str::FromStr>(field: &str, line: usize) -> Result<T, ClassifierError> {
    field.parse().map_err(|_| ClassifierError::Format {
        line,
        message: format!("bad number {field:?}"),
    })
}

pub fn read_model<R: BufRead>(reader: R) -> Result<TrainedModel, ClassifierError> {
    let io_err = |e: std::io::Error| ClassifierError::Format {
        line: 0,
        message: e.to_string(),
    };
    let lines: Vec<String> = reader.lines().collect::<Result<_, _>>().map_err(io_err)?;
    let fail = |line: usize, message: &str| ClassifierError::Format {
        line,
        message: message.to_string(),
    };

    let header: Vec<&str> = lines.first().map(|l| l.split('\t').collect()).unwrap_or_default();
    if header.len() != 3 || header[0] != MAGIC {
        return Err(fail(1, "missing model header"));
    }
    if header[2] != VERSION {
        return Err(fail(1, "unsupported model version"));
    }
    let kind = header[1];

    let mut smoothing = SmoothingParams::default();
    let mut fallback = None;
    let mut senses = Vec::new();
    let mut sense_counts = Vec::new();
    let mut feature_totals = Vec::new();
    let mut counts = HashMap::new();
    let mut entries = Vec::new();

    for (i, line) in lines.iter().enumerate().skip(1) {
        let n = i + 1;
        let f: Vec<&str> = line.split('\t').collect();
        match (kind, f.as_slice()) {
            (_, ["m", v]) => smoothing.m = num(v, n)?,
            ("nb", ["prior", v]) => smoothing.prior = v.parse()?,
            ("nb", ["sense", label, instances, total]) => {
                senses.push(label.to_string());
                sense_counts.push(num(instances, n)?);
                feature_totals.push(num(total, n)?);
            }
            ("nb", ["feature", key, rest @ ..]) => {
                if rest.len() != senses.len() {
                    return Err(fail(n, "feature counts do not match the sense list"));
                }
                let c: Vec<u64> = rest.iter().map(|v| num(v, n)).collect::<Result<_, _>>()?;
                counts.insert(key.to_string(), c);
            }
            ("dl" | "mfs", ["fallback", label]) => fallback = Some(label.to_string()),
            ("dl", ["entry", key, sense, strength, count]) => entries.push(DlEntry {
                key: key.to_string(),
                sense: sense.to_string(),
                strength: num(strength, n)?,
                count: num(count, n)?,
            }),
            _ => return Err(fail(n, "unexpected record")),
        }
    }

    match kind {
        "nb" => {
            if senses.is_empty() {
                return Err(fail(lines.len(), "model has no senses"));
            }
            Ok(TrainedModel::NaiveBayes(NbModel {
                senses,
                sense_counts,
                counts,
                feature_totals,
                smoothing,
            }))
        }
        "dl" => Ok(TrainedModel::DecisionList(DlModel::new(
            entries,
            fallback.ok_or_else(|| fail(lines.len(), "missing fallback"))?,
            smoothing.m,
        ))),
        "mfs" => Ok(TrainedModel::MostFrequentSense(
            fallback.ok_or_else(|| fail(lines.len(), "missing fallback"))?,
        )),
        _ => Err(fail(1, "unknown model kind")),
    }
}
