use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use wsdlab::classifiers::{
    classify_dl, classify_nb, train_dl, train_nb, ClassifierKind, PriorMode, SmoothingParams,
};
use wsdlab::corpus::{
    extract_occurrences, mfs_baseline, parse_corpus_str, sense_distribution, sense_entropy,
    write_corpus, Category, Corpus, Document, Token,
};
use wsdlab::criteria::{
    enumerate_grid, Criterion, CriterionGrid, Feature, FeatureExtractor, FeatureVector, Positioning,
    TagKind, WordFilter,
};
use wsdlab::evaluation::{cross_validate, kfold_split, EvalSettings};

const WORDS: [(&str, &str, &str); 8] = [
    ("la", "DETDFS", "DET"),
    ("de", "PREP", "PREP"),
    ("porte", "NCFS", "NCOM"),
    ("ouvert", "ADJMS", "ADJ"),
    ("tenir", "VINF", "VINF"),
    ("vite", "ADV", "ADV"),
    ("et", "COO", "COO"),
    ("maison", "NCFS", "NCOM"),
];

fn token(i: usize, sense: Option<&str>) -> Token {
    let (lemma, ems, cgems) = WORDS[i % WORDS.len()];
    Token::new(lemma, lemma, ems, cgems, sense)
}

/// One document with a sense-tagged `pivot` in the middle of `left` and
/// `right` context words.
fn centred(left: &[usize], right: &[usize]) -> Corpus {
    let mut tokens: Vec<Token> = left.iter().map(|&i| token(i, None)).collect();
    tokens.push(Token::new("pivot", "pivot", "NCMS", "NCOM", Some("1")));
    tokens.extend(right.iter().map(|&i| token(i, None)));
    Corpus {
        documents: vec![Document { id: "d".into(), tokens }],
    }
}

fn labelled(senses: &[usize]) -> Corpus {
    Corpus {
        documents: vec![Document {
            id: "d".into(),
            tokens: senses
                .iter()
                .map(|s| Token::new("pivot", "pivot", "NCMS", "NCOM", Some(&format!("s{s}"))))
                .collect(),
        }],
    }
}

fn criterion() -> impl Strategy<Value = Criterion> {
    (
        1usize..=3,
        prop::sample::select(TagKind::ALL.to_vec()),
        prop::sample::select(Positioning::ALL.to_vec()),
        prop::sample::select(vec![WordFilter::All, WordFilter::Content]),
        1usize..=6,
        -2i32..=2,
    )
        .prop_map(|(n, t, p, f, s, shift)| Criterion::new(n, t, p, f, s).with_shift(shift))
}

fn keys(v: &FeatureVector) -> BTreeSet<String> {
    v.keys().map(String::from).collect()
}

fn vector(keys: &[usize]) -> FeatureVector {
    let mut v = FeatureVector::new();
    for k in keys {
        v.insert(Feature {
            key: format!("k{k}"),
            offsets: vec![-1],
            cgems: vec!["NCOM".into()],
        });
    }
    v
}

fn examples(v: &[(FeatureVector, String)]) -> Vec<(&FeatureVector, &str)> {
    v.iter().map(|(f, s)| (f, s.as_str())).collect()
}

/// Training examples: feature key indices and a sense label.
fn training() -> impl Strategy<Value = Vec<(Vec<usize>, String)>> {
    prop::collection::vec(
        (prop::collection::vec(0usize..8, 0..5), prop::sample::select(vec!["a", "b", "c"]).prop_map(String::from)),
        1..20,
    )
}

proptest! {
    #[test]
    fn corpus_round_trips(docs in prop::collection::vec(prop::collection::vec((0usize..8, prop::option::of(1u8..4)), 1..15), 1..4)) {
        let corpus = Corpus {
            documents: docs
                .iter()
                .enumerate()
                .map(|(d, toks)| Document {
                    id: format!("doc{d}"),
                    tokens: toks.iter().map(|&(i, s)| token(i, s.map(|s| s.to_string()).as_deref())).collect(),
                })
                .collect(),
        };
        let mut buf = Vec::new();
        write_corpus(&corpus, &mut buf).unwrap();
        let back = parse_corpus_str(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back, corpus);
    }

    #[test]
    fn distribution_laws(senses in prop::collection::vec(0usize..4, 1..60)) {
        let corpus = labelled(&senses);
        let occ = extract_occurrences(&corpus, "pivot", Category::Noun);
        let dist = sense_distribution(&occ).unwrap();
        let s = dist.len() as f64;
        prop_assert!((dist.values().sum::<f64>() - 1.0).abs() <= 1e-9);
        let h = sense_entropy(&dist);
        prop_assert!(h >= 0.0 && h <= s.log2() + 1e-12);
        let uniform = dist.values().all(|&p| (p - 1.0 / s).abs() < 1e-12);
        prop_assert_eq!(uniform, (h - s.log2()).abs() < 1e-9);
        let mfs = mfs_baseline(&occ).unwrap();
        prop_assert!(mfs >= 1.0 / s - 1e-12);
        prop_assert_eq!(mfs == 1.0, dist.len() == 1);
    }

    #[test]
    fn grid_size_is_the_product(orders in 1usize..4, tags in 1usize..5, pos in 1usize..4, filters in 1usize..4, sizes in 1usize..9) {
        let grid = CriterionGrid {
            orders: (1..=orders).collect(),
            tags: TagKind::ALL[..tags].to_vec(),
            positionings: Positioning::ALL[..pos].to_vec(),
            filters: WordFilter::ALL[..filters].to_vec(),
            sizes: (1..=sizes).collect(),
        };
        prop_assert_eq!(enumerate_grid(&grid).unwrap().len(), orders * tags * pos * filters * sizes);
    }

    #[test]
    fn criterion_text_round_trips(c in criterion()) {
        let text = c.to_string();
        prop_assert_eq!(text.parse::<Criterion>().unwrap(), c);
    }

    #[test]
    fn features_stay_in_window(c in criterion(), left in prop::collection::vec(0usize..8, 0..12), right in prop::collection::vec(0usize..8, 0..12)) {
        let corpus = centred(&left, &right);
        let occ = &extract_occurrences(&corpus, "pivot", Category::Noun)[0];
        let (lo, hi) = c.window();
        for f in FeatureExtractor::default().extract(&corpus, occ, &c).iter() {
            prop_assert_eq!(f.offsets.len(), c.order);
            prop_assert!(f.offsets.windows(2).all(|w| w[1] > w[0]));
            prop_assert!(!f.offsets.contains(&0));
            if c.filter == WordFilter::All {
                prop_assert!(f.offsets.iter().all(|o| (lo..=hi).contains(o)), "{:?} outside {:?}", f.offsets, (lo, hi));
                prop_assert!(f.offsets.windows(2).all(|w| w[1] - w[0] == 1 || (w[0] == -1 && w[1] == 1)));
            }
        }
    }

    #[test]
    fn wider_windows_keep_features(c in criterion(), left in prop::collection::vec(0usize..8, 0..12), right in prop::collection::vec(0usize..8, 0..12)) {
        let corpus = centred(&left, &right);
        let occ = &extract_occurrences(&corpus, "pivot", Category::Noun)[0];
        let ex = FeatureExtractor::default();
        let narrow = keys(&ex.extract(&corpus, occ, &c));
        let wide = keys(&ex.extract(&corpus, occ, &c.clone().with_size(c.size + 1)));
        prop_assert!(narrow.is_subset(&wide));
    }

    #[test]
    fn models_ignore_training_order(data in training(), m in prop::sample::select(vec![0.1, 1.0, 10.0]), seed in any::<u64>()) {
        let vectors: Vec<(FeatureVector, String)> = data.iter().map(|(k, s)| (vector(k), s.clone())).collect();
        let mut shuffled = vectors.clone();
        let rot = (seed as usize) % shuffled.len();
        shuffled.rotate_left(rot);
        shuffled.reverse();
        let smoothing = SmoothingParams { m, prior: PriorMode::FeatureValues };
        prop_assert_eq!(train_nb(&examples(&vectors), &smoothing).unwrap(), train_nb(&examples(&shuffled), &smoothing).unwrap());
        prop_assert_eq!(train_dl(&examples(&vectors), &smoothing).unwrap(), train_dl(&examples(&shuffled), &smoothing).unwrap());
    }

    #[test]
    fn classifiers_always_answer(data in training(), test in prop::collection::vec(0usize..10, 0..6)) {
        let vectors: Vec<(FeatureVector, String)> = data.iter().map(|(k, s)| (vector(k), s.clone())).collect();
        let examples = examples(&vectors);
        let smoothing = SmoothingParams::default();
        let senses: BTreeSet<&str> = data.iter().map(|(_, s)| s.as_str()).collect();

        let nb = train_nb(&examples, &smoothing).unwrap();
        prop_assert!((nb.priors().iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        let v = vector(&test);
        let mut doubled = test.clone();
        doubled.extend(&test);
        let p = classify_nb(&nb, &v);
        prop_assert!(senses.contains(p.sense.as_str()));
        prop_assert_eq!(&p, &classify_nb(&nb, &vector(&doubled)));

        let dl = train_dl(&examples, &smoothing).unwrap();
        prop_assert!(dl.entries.iter().all(|e| e.strength.is_finite()));
        let p = classify_dl(&dl, &v);
        prop_assert!(senses.contains(p.sense.as_str()));
        prop_assert_eq!(p.evidence.is_some(), !p.used_fallback);
        for e in dl.entries.iter().filter(|e| v.contains_key(&e.key)) {
            prop_assert!(p.score >= e.strength);
        }
    }

    #[test]
    fn folds_partition_and_stratify(senses in prop::collection::vec(0usize..3, 10..120), k in 2usize..11, seed in any::<u64>()) {
        let corpus = labelled(&senses);
        let occ = extract_occurrences(&corpus, "pivot", Category::Noun);
        let plan = kfold_split(&occ, k, seed).unwrap();
        let mut seen = vec![0; occ.len()];
        let mut per_sense: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for fold in 0..k {
            for i in plan.members(fold) {
                seen[i] += 1;
                per_sense.entry(occ[i].sense.as_str()).or_insert_with(|| vec![0; k])[fold] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&s| s == 1));
        let sizes = plan.fold_sizes();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        for counts in per_sense.values() {
            prop_assert!(counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1);
        }
        prop_assert_eq!(kfold_split(&occ, k, seed).unwrap(), plan);
    }

    #[test]
    fn every_occurrence_is_classified_once(senses in prop::collection::vec(0usize..3, 10..60), seed in any::<u64>()) {
        let corpus = labelled(&senses);
        let occ = extract_occurrences(&corpus, "pivot", Category::Noun);
        let plan = kfold_split(&occ, 5, seed).unwrap();
        let spec = "[1gr|lemma|ordered|all]@2".parse().unwrap();
        for kind in [ClassifierKind::NaiveBayes, ClassifierKind::DecisionList, ClassifierKind::MostFrequentSense] {
            let r = cross_validate(&corpus, &occ, &spec, &EvalSettings::new(kind), &plan).unwrap();
            let mut ids: Vec<usize> = r.records.iter().map(|d| d.occurrence).collect();
            ids.sort_unstable();
            prop_assert_eq!(ids, (0..occ.len()).collect::<Vec<_>>());
            prop_assert_eq!(r.total, occ.len());
        }
    }
}
