//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::collections::{BTreeMap, HashMap, HashSet};

use structkit::align::{
    apply_alignment, build_cooccurrence_alignment, load_alignment, save_alignment, AlignEntry,
    AlignKind, SchemaAlignment,
};
use structkit::backend::{
    default_decode_config, generate, run_batch, BackendError, DecodeConfig, GenerationBackend,
    HttpBackend, HttpBackendConfig, OracleBackend,
};
use structkit::codec::{encode_record, EncodeMode, EncodedExample};
use structkit::corpus::{
    filter_leakage, mix_examples, normalize_test_set, FamilySpec, MixComponent, MixStrategy,
    MixtureSpec, PretrainExample, PretrainFamily,
};
use structkit::eval::{evaluate_dataset, EvalConfig, EvalInput};
use structkit::fixtures::{fixture_records, format_reference_cases, span_of};
use structkit::grounding::{ground_surfaces, GroundingConfig};
use structkit::metrics::{b_cubed, ceaf_phi4, muc, Prf};
use structkit::record::{Gold, PredictionUnit, TaskKind, TaskRecord, TypedSpan, ALL_TASK_KINDS};
use structkit::registry::{DatasetEntry, DatasetRegistry};
use structkit::triple::{parse_triples, serialize_triples, Triple};

mod support;
use support::EchoServer;

fn without_whitespace(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn decode_config_for(example: &EncodedExample) -> DecodeConfig {
    let task = example.hints.task.expect("downstream example");
    default_decode_config(task, example.hints.unit, &example.hints.dataset).unwrap_or(
        DecodeConfig {
            length_penalty: 0.8,
            min_target_length: 0,
            max_target_length: 512,
            trim_to_first_triple: false,
        },
    )
}

fn oracle_inputs(examples: Vec<EncodedExample>) -> Vec<EvalInput> {
    let oracle = OracleBackend::from_examples(examples.iter());
    examples
        .into_iter()
        .map(|example| {
            let generation = generate(&example, decode_config_for(&example), &oracle).unwrap();
            EvalInput {
                example,
                generation,
            }
        })
        .collect()
}

// Criterion 1: encode_record reproduces the reference input prefix and gold
// triple string for every dataset's reference case, up to whitespace.
#[test]
fn criterion_1_format_fidelity() {
    let registry = DatasetRegistry::builtin();
    for case in format_reference_cases() {
        let examples =
            encode_record(&case.record, EncodeMode::multi_task(), &registry, 0)
                .unwrap_or_else(|e| panic!("{}: {e}", case.name));
        for example in &examples {
            assert_eq!(
                without_whitespace(&example.input),
                without_whitespace(case.expected_input),
                "input mismatch for {}",
                case.name
            );
        }
        let combined = examples
            .iter()
            .map(|e| e.gold_output.clone())
            .collect::<Vec<_>>()
            .join(" ");
        assert_eq!(
            without_whitespace(&combined),
            without_whitespace(case.expected_output),
            "output mismatch for {}",
            case.name
        );
    }
    println!("[PASS] criterion 1: format fidelity on all 25 dataset reference cases");
}

// Criterion 2: encode -> oracle generate -> parse -> decode -> metric == 1.0
// for all 11 task kinds, in both encode modes.
#[test]
fn criterion_2_oracle_closure() {
    let registry = DatasetRegistry::builtin();
    let metric_keys: fn(TaskKind) -> Vec<&'static str> = |task| match task {
        TaskKind::Ner | TaskKind::Srl | TaskKind::EventTrigger | TaskKind::EventArgument => {
            vec!["identification_f1", "classification_f1"]
        }
        TaskKind::JointEntityRelation => vec!["entity_f1", "relation_f1"],
        TaskKind::RelationClassification | TaskKind::Oie | TaskKind::IntentDetection => {
            vec!["f1"]
        }
        TaskKind::Coreference => vec!["muc", "b_cubed", "ceaf_phi4", "avg_f1"],
        TaskKind::DialogueStateTracking => vec!["joint_accuracy"],
        TaskKind::FactualProbe => vec!["p_at_1"],
    };

    for task in ALL_TASK_KINDS {
        for mode in [EncodeMode::ZeroShot, EncodeMode::multi_task()] {
            let records = fixture_records(task, 24);
            assert!(records.len() >= 20);
            let mut examples = Vec::new();
            for (i, record) in records.iter().enumerate() {
                examples.extend(encode_record(record, mode, &registry, i).unwrap());
            }
            let inputs = oracle_inputs(examples);
            let report = evaluate_dataset(&inputs, &EvalConfig::default()).unwrap();
            for key in metric_keys(task) {
                let value = report
                    .metric(key)
                    .unwrap_or_else(|| panic!("{task:?} missing metric {key}"))
                    .headline();
                assert_eq!(value, 1.0, "{task:?} {mode:?} {key} = {value}");
            }
            assert_eq!(report.counts.dropped_ungrounded, 0, "{task:?}");
        }
    }
    println!("[PASS] criterion 2: oracle closure = 1.0 on all 11 task kinds, both modes");
}

// Independent brute-force coreference oracles.
mod coref_oracle {
    use std::collections::HashSet;

    type Clusters = Vec<Vec<u32>>;

    /// MUC via explicit link graphs and breadth-first reachability.
    pub fn muc(pred: &Clusters, gold: &Clusters) -> (f64, f64, f64) {
        fn side(key: &Clusters, response: &Clusters) -> (f64, f64) {
            let mut links: HashSet<(u32, u32)> = HashSet::new();
            for cluster in response {
                for i in 0..cluster.len() {
                    for j in i + 1..cluster.len() {
                        links.insert((cluster[i], cluster[j]));
                        links.insert((cluster[j], cluster[i]));
                    }
                }
            }
            let mut num = 0.0;
            let mut den = 0.0;
            for cluster in key {
                let mut remaining: Vec<u32> = cluster.clone();
                let mut components = 0usize;
                while let Some(start) = remaining.pop() {
                    components += 1;
                    let mut frontier = vec![start];
                    while let Some(node) = frontier.pop() {
                        let (linked, rest): (Vec<u32>, Vec<u32>) = remaining
                            .iter()
                            .partition(|m| links.contains(&(node, **m)));
                        remaining = rest;
                        frontier.extend(linked);
                    }
                }
                num += (cluster.len() - components) as f64;
                den += (cluster.len() - 1) as f64;
            }
            (num, den)
        }
        let (rn, rd) = side(gold, pred);
        let (pn, pd) = side(pred, gold);
        finish(pn, pd, rn, rd)
    }

    /// B3 by literally walking every mention.
    pub fn b_cubed(pred: &Clusters, gold: &Clusters) -> (f64, f64, f64) {
        fn side(key: &Clusters, response: &Clusters) -> (f64, f64) {
            let mut total = 0.0;
            let mut count = 0usize;
            for cluster in key {
                for mention in cluster {
                    let response_cluster: Vec<u32> = response
                        .iter()
                        .find(|c| c.contains(mention))
                        .cloned()
                        .unwrap_or_default();
                    let overlap = cluster
                        .iter()
                        .filter(|m| response_cluster.contains(m))
                        .count();
                    total += overlap as f64 / cluster.len() as f64;
                    count += 1;
                }
            }
            (total, count as f64)
        }
        let (rn, rd) = side(gold, pred);
        let (pn, pd) = side(pred, gold);
        finish(pn, pd, rn, rd)
    }

    /// CEAF-phi4 by exhaustive search over all injective cluster assignments.
    pub fn ceaf_phi4(pred: &Clusters, gold: &Clusters) -> (f64, f64, f64) {
        fn phi4(a: &[u32], b: &[u32]) -> f64 {
            let overlap = a.iter().filter(|m| b.contains(m)).count();
            2.0 * overlap as f64 / (a.len() + b.len()) as f64
        }
        fn search(pred: &Clusters, gold: &Clusters, i: usize, used: &mut Vec<bool>) -> f64 {
            if i == pred.len() {
                return 0.0;
            }
            let mut best = search(pred, gold, i + 1, used); // pred[i] unmatched
            for j in 0..gold.len() {
                if !used[j] {
                    used[j] = true;
                    let v = phi4(&pred[i], &gold[j]) + search(pred, gold, i + 1, used);
                    used[j] = false;
                    best = best.max(v);
                }
            }
            best
        }
        if pred.is_empty() || gold.is_empty() {
            return (0.0, 0.0, 0.0);
        }
        let total = search(pred, gold, 0, &mut vec![false; gold.len()]);
        finish(total, pred.len() as f64, total, gold.len() as f64)
    }

    fn finish(pn: f64, pd: f64, rn: f64, rd: f64) -> (f64, f64, f64) {
        let p = if pd > 0.0 { pn / pd } else { 0.0 };
        let r = if rd > 0.0 { rn / rd } else { 0.0 };
        let f1_den = pn * rd + rn * pd;
        let f1 = if p + r > 0.0 && f1_den > 0.0 {
            2.0 * pn * rn / f1_den
        } else {
            0.0
        };
        (p, r, f1)
    }
}

fn random_clustering(rng: &mut ChaCha20Rng, mentions: &[u32]) -> Vec<Vec<u32>> {
    let k = rng.gen_range(1..=mentions.len());
    let mut clusters: Vec<Vec<u32>> = vec![Vec::new(); k];
    for mention in mentions {
        let c = rng.gen_range(0..k);
        clusters[c].push(*mention);
    }
    clusters.retain(|c| !c.is_empty());
    clusters
}

// Criterion 3: MUC, B3, CEAF-phi4 agree with brute force on 200 random
// clusterings of up to 6 mentions, to 1e-12; the four-mention MUC partition
// case returns F1 = 0.8 exactly.
#[test]
fn criterion_3_metric_oracles() {
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    for case in 0..200 {
        let n = rng.gen_range(1..=6usize);
        let mentions: Vec<u32> = (0..n as u32).collect();
        let pred = random_clustering(&mut rng, &mentions);
        let gold = random_clustering(&mut rng, &mentions);

        let checks: [(&str, Prf, (f64, f64, f64)); 3] = [
            ("muc", muc(&pred, &gold), coref_oracle::muc(&pred, &gold)),
            (
                "b_cubed",
                b_cubed(&pred, &gold),
                coref_oracle::b_cubed(&pred, &gold),
            ),
            (
                "ceaf_phi4",
                ceaf_phi4(&pred, &gold),
                coref_oracle::ceaf_phi4(&pred, &gold),
            ),
        ];
        for (name, ours, (p, r, f1)) in checks {
            assert!(
                (ours.precision - p).abs() <= 1e-12
                    && (ours.recall - r).abs() <= 1e-12
                    && (ours.f1 - f1).abs() <= 1e-12,
                "case {case} {name}: ours=({}, {}, {}), oracle=({p}, {r}, {f1}) \
                 pred={pred:?} gold={gold:?}",
                ours.precision,
                ours.recall,
                ours.f1
            );
        }
    }

    let pred = vec![vec![1u32, 2], vec![3, 4]];
    let gold = vec![vec![1u32, 2, 3, 4]];
    let prf = muc(&pred, &gold);
    assert_eq!(prf.f1, 0.8, "four-mention MUC case must be exactly 0.8");
    assert_eq!(prf.precision, 1.0);

    println!("[PASS] criterion 3: coreference metrics match brute force on 200 cases (<= 1e-12)");
}

// Criterion 4: the parser survives a 10K-case fuzz corpus of mutated valid
// serializations with no panics, and diagnostics soundness holds on each.
#[test]
fn criterion_4_parser_robustness() {
    let mut rng = ChaCha20Rng::seed_from_u64(77);
    let field_chars: Vec<char> = "ab c;()\\[]<>éü1".chars().collect();
    let mutation_chars: Vec<char> = "();\\<>ab .".chars().collect();

    for case in 0..10_000 {
        let triple_count = rng.gen_range(1..=4usize);
        let triples: Vec<Triple> = (0..triple_count)
            .map(|_| {
                let field = |rng: &mut ChaCha20Rng| -> String {
                    loop {
                        let len = rng.gen_range(1..=6usize);
                        let s: String = (0..len)
                            .map(|_| field_chars[rng.gen_range(0..field_chars.len())])
                            .collect();
                        if !s.trim().is_empty() {
                            return s;
                        }
                    }
                };
                Triple::new(field(&mut rng), field(&mut rng), field(&mut rng)).unwrap()
            })
            .collect();
        let mut text = serialize_triples(&triples).unwrap();

        for _ in 0..rng.gen_range(0..=8usize) {
            let chars: Vec<char> = text.chars().collect();
            match rng.gen_range(0..3) {
                0 if !chars.is_empty() => {
                    // delete
                    let at = rng.gen_range(0..chars.len());
                    text = chars
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != at)
                        .map(|(_, c)| *c)
                        .collect();
                }
                1 => {
                    // insert
                    let at = rng.gen_range(0..=chars.len());
                    let c = mutation_chars[rng.gen_range(0..mutation_chars.len())];
                    let mut out: String = chars[..at].iter().collect();
                    out.push(c);
                    out.extend(&chars[at..]);
                    text = out;
                }
                _ if !chars.is_empty() => {
                    // replace
                    let at = rng.gen_range(0..chars.len());
                    let c = mutation_chars[rng.gen_range(0..mutation_chars.len())];
                    text = chars
                        .iter()
                        .enumerate()
                        .map(|(i, ch)| if i == at { c } else { *ch })
                        .collect();
                }
                _ => {}
            }
        }

        let parsed = std::panic::catch_unwind(|| parse_triples(&text));
        let (triples, diags) = parsed.unwrap_or_else(|_| panic!("panic on case {case}: {text:?}"));

        // Soundness: removing every skipped fragment and reparsing yields the
        // identical triple list.
        let mut keep = vec![true; text.len()];
        for (range, _) in &diags.skipped_fragments {
            assert!(range.start <= range.end && range.end <= text.len());
            for flag in &mut keep[range.clone()] {
                *flag = false;
            }
        }
        let cleaned: String = text
            .char_indices()
            .filter(|(i, _)| keep[*i])
            .map(|(_, c)| c)
            .collect();
        let (reparsed, _) = parse_triples(&cleaned);
        assert_eq!(reparsed, triples, "diagnostics unsound on case {case}: {text:?}");
    }

    // Totality at size: a 1 MiB adversarial string parses within the test.
    let mut big = String::with_capacity(1 << 20);
    let alphabet: Vec<char> = "(); \\ab<>".chars().collect();
    while big.len() < (1 << 20) {
        big.push(alphabet[rng.gen_range(0..alphabet.len())]);
    }
    let (_, diags) = parse_triples(&big);
    for (range, _) in &diags.skipped_fragments {
        assert!(range.end <= big.len());
    }
    println!("[PASS] criterion 4: 10K-case fuzz corpus + 1 MiB input, zero panics, diagnostics sound");
}

// Criterion 5: capped proportional mixing matches (1/3, 2/3) on sizes
// (5K, 50K) with cap 10K over 100K draws (chi-squared p > 0.01), and the same
// seed yields a byte-identical stream.
#[test]
fn criterion_5_mixing_law() {
    let spec = MixtureSpec {
        components: vec![
            MixComponent {
                dataset: "small".into(),
                count: 5_000,
                path: None,
            },
            MixComponent {
                dataset: "large".into(),
                count: 50_000,
                path: None,
            },
        ],
        strategy: MixStrategy::ExampleProportional { cap: 10_000 },
        seed: 20_240_601,
        total: Some(100_000),
    };
    let mut sources: BTreeMap<String, Vec<String>> = BTreeMap::new();
    sources.insert(
        "small".into(),
        (0..5_000).map(|i| format!("s{i}")).collect(),
    );
    sources.insert(
        "large".into(),
        (0..50_000).map(|i| format!("l{i}")).collect(),
    );

    let stream = mix_examples(&spec, &sources).unwrap();
    assert_eq!(stream.len(), 100_000);
    let small_draws = stream.iter().filter(|x| x.starts_with('s')).count() as f64;
    let large_draws = stream.len() as f64 - small_draws;

    let expected_small = 100_000.0 / 3.0;
    let expected_large = 2.0 * expected_small;
    let chi2 = (small_draws - expected_small).powi(2) / expected_small
        + (large_draws - expected_large).powi(2) / expected_large;
    // 1 degree of freedom: p > 0.01 iff chi2 < 6.635.
    assert!(
        chi2 < 6.635,
        "chi-squared {chi2} too large (small={small_draws}, large={large_draws})"
    );

    let again = mix_examples(&spec, &sources).unwrap();
    assert_eq!(
        stream.join("\n").into_bytes(),
        again.join("\n").into_bytes(),
        "identical seed must give a byte-identical stream"
    );
    println!(
        "[PASS] criterion 5: mixing chi-squared {chi2:.3} < 6.635 at 100K draws; seed-stable"
    );
}

// Criterion 6: the planted-overlap fixture removes exactly the planted set.
#[test]
fn criterion_6_leakage_filter() {
    let mut examples = Vec::new();
    let mut planted = Vec::new();
    for i in 0..1000usize {
        let text = format!("pretraining sentence {i} mentions item {}", i % 13);
        if planted.len() < 37 && i % 27 == 0 {
            planted.push(text.clone());
        }
        examples.push(PretrainExample {
            text,
            triples: vec![Triple::new("a", "instance of", "b").unwrap()],
            source: "t-rex".into(),
            family: FamilySpec::One(PretrainFamily::Entity),
        });
    }
    assert_eq!(planted.len(), 37);
    let test_set = normalize_test_set(planted.iter().map(|s| s.as_str()));
    let (kept, removed) = filter_leakage(examples, &test_set);
    assert_eq!(removed, 37);
    assert_eq!(kept.len(), 963);
    println!("[PASS] criterion 6: leakage filter removed exactly 37 of 1000");
}

// Criterion 7: nested-mention grounding and strict left-to-right assignment
// of duplicated surfaces.
#[test]
fn criterion_7_span_grounding() {
    let text = "BEGALA Dr . Palmisano , again , thanks for staying with us through the break .";
    let surfaces: Vec<String> = ["Dr", "Dr . Palmisano", "us"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let (grounded, dropped) = ground_surfaces(&surfaces, text, &GroundingConfig::default());
    assert!(dropped.is_empty());
    assert_eq!(grounded.len(), 3);
    assert_eq!(grounded[0].span, span_of(text, "Dr", 0));
    assert_eq!(grounded[1].span, span_of(text, "Dr . Palmisano", 0));
    assert_eq!(grounded[2].span, span_of(text, "us", 0));

    let dup_text = "the summit in Oslo preceded the summit in Kyoto and the summit in Quito";
    let dups: Vec<String> = vec!["summit".into(), "summit".into(), "summit".into()];
    let (grounded, dropped) = ground_surfaces(&dups, dup_text, &GroundingConfig::default());
    assert!(dropped.is_empty());
    for (k, g) in grounded.iter().enumerate() {
        assert_eq!(g.occurrence_index, k);
        assert_eq!(g.span, span_of(dup_text, "summit", k));
    }
    assert!(grounded.windows(2).all(|w| w[0].span.start < w[1].span.start));
    println!("[PASS] criterion 7: nested fixture grounds 3 mentions; duplicates go left to right");
}

// Criterion 8: the decode-config defaults equal the checked-in table exactly.
#[test]
fn criterion_8_decode_config_table() {
    use PredictionUnit as U;
    use TaskKind as T;
    // (task, unit, dataset, length penalty, trim to first triple)
    let table: &[(T, U, &str, f64, bool)] = &[
        (T::Ner, U::Entity, "conll03", 0.8, false),
        (T::Ner, U::Entity, "ontonotes", 0.8, false),
        (T::Ner, U::Entity, "genia", 0.8, false),
        (T::Ner, U::Entity, "ace2005", 0.8, false),
        (T::Srl, U::Entity, "conll05", 0.8, false),
        (T::Srl, U::Entity, "conll12", 0.8, false),
        (T::EventTrigger, U::Entity, "ace2005", 0.8, false),
        (T::EventArgument, U::Entity, "ace2005", 0.8, false),
        (T::Coreference, U::Entity, "conll12", 0.8, false),
        (T::JointEntityRelation, U::Entity, "conll04", 0.8, false),
        (T::JointEntityRelation, U::Entity, "ade", 0.8, false),
        (T::JointEntityRelation, U::Entity, "nyt", 0.8, false),
        (T::JointEntityRelation, U::Entity, "ace2005", 0.8, false),
        (T::JointEntityRelation, U::Relation, "conll04", 0.3, false),
        (T::JointEntityRelation, U::Relation, "ade", 0.3, false),
        (T::JointEntityRelation, U::Relation, "nyt", 0.3, false),
        (T::JointEntityRelation, U::Relation, "ace2005", 0.3, false),
        (T::Oie, U::Triple, "oie2016", 0.8, false),
        (T::Oie, U::Triple, "web", 0.5, true),
        (T::Oie, U::Triple, "nyt", 0.5, true),
        (T::Oie, U::Triple, "penn", 0.5, true),
        (T::RelationClassification, U::Relation, "tacred", 0.5, true),
        (T::RelationClassification, U::Relation, "fewrel", 0.5, true),
    ];
    for (task, unit, dataset, lp, trim) in table {
        let config = default_decode_config(*task, *unit, dataset).unwrap();
        assert_eq!(config.length_penalty, *lp, "{task:?}/{dataset} lp");
        assert_eq!(config.trim_to_first_triple, *trim, "{task:?}/{dataset} trim");
        assert_eq!(config.min_target_length, 0, "{task:?}/{dataset} min");
        assert_eq!(config.max_target_length, 512, "{task:?}/{dataset} max");
    }
    println!("[PASS] criterion 8: decode-config defaults equal the checked-in table");
}

// Criterion 9: zero-shot schema alignment end to end. Co-occurrence forces a
// known argmax, a curated entry fills a second mapping, a third label stays
// unmapped; recall equals the mapped-label fraction exactly.
#[test]
fn criterion_9_zero_shot_alignment_path() {
    let mut registry = DatasetRegistry::builtin();
    registry
        .register(DatasetEntry {
            task: TaskKind::Ner,
            dataset: "toy".into(),
            tag: "ner toy".into(),
            entity_labels: vec!["alpha".into(), "beta".into(), "gamma".into()],
            relation_labels: vec![],
            slots: vec![],
        })
        .unwrap();

    let people = ["Anna", "Boris", "Clara", "Denis", "Elena"];
    let orgs = ["Initech", "Globex", "Hooli", "Vandelay", "Duff"];
    let places = ["Oslo", "Kyoto", "Quito", "Lagos", "Perth"];

    // Downstream records: alpha = person, beta = org, gamma = place.
    let records: Vec<TaskRecord> = (0..20)
        .map(|i| {
            let (p, o, l) = (people[i % 5], orgs[i % 5], places[i % 5]);
            let text = format!("{p} visited {o} near {l} .");
            TaskRecord {
                task: TaskKind::Ner,
                dataset: "toy".into(),
                text: text.clone(),
                gold: Gold::TypedSpans {
                    spans: vec![
                        TypedSpan::new(span_of(&text, p, 0).start, span_of(&text, p, 0).end, "alpha"),
                        TypedSpan::new(span_of(&text, o, 0).start, span_of(&text, o, 0).end, "beta"),
                        TypedSpan::new(span_of(&text, l, 0).start, span_of(&text, l, 0).end, "gamma"),
                    ],
                },
                marked_span: None,
            }
        })
        .collect();

    // Pretraining side: wd_alpha co-occurs with alpha mentions only; wd_gamma
    // heads never match a downstream mention; wd_beta never appears at all.
    let mut pretrain = Vec::new();
    for i in 0..20 {
        pretrain.push((
            format!("{} works", people[i % 5]),
            vec![Triple::new(people[i % 5], "instance of", "wd_alpha").unwrap()],
        ));
        pretrain.push((
            "Zorp floats".to_string(),
            vec![Triple::new("Zorp", "instance of", "wd_gamma").unwrap()],
        ));
    }
    let built = build_cooccurrence_alignment(&pretrain, &records, "toy").unwrap();
    assert_eq!(built.get(AlignKind::Entity, "wd_alpha").unwrap().target, "alpha");
    assert!(built.get(AlignKind::Entity, "wd_beta").is_none());
    assert!(built.get(AlignKind::Entity, "wd_gamma").is_none());

    // Curated overlay, exercised through the save/load/merge path.
    let dir = std::env::temp_dir().join("structkit-acceptance-align");
    std::fs::create_dir_all(&dir).unwrap();
    let computed_path = dir.join("computed.tsv");
    let curated_path = dir.join("curated.tsv");
    save_alignment(&built, &computed_path).unwrap();
    let mut curated = SchemaAlignment::new("toy");
    curated.insert(
        AlignKind::Entity,
        "wd_beta",
        AlignEntry {
            target: "beta".into(),
            score: 0.0,
            curated: true,
        },
    );
    save_alignment(&curated, &curated_path).unwrap();

    let mut alignment = load_alignment(&computed_path).unwrap();
    alignment.merge(&load_alignment(&curated_path).unwrap());
    assert_eq!(alignment.len(), 2);

    // Sanity: applying the merged alignment maps the two known labels and
    // drops the third.
    assert!(apply_alignment(
        &Triple::new("x", "instance of", "wd_alpha").unwrap(),
        &alignment
    )
    .is_some());
    assert!(apply_alignment(
        &Triple::new("x", "instance of", "wd_gamma").unwrap(),
        &alignment
    )
    .is_none());

    // Zero-shot evaluation: the "model" emits pretraining-schema labels.
    let mut inputs = Vec::new();
    for (i, record) in records.iter().enumerate() {
        let examples = encode_record(record, EncodeMode::ZeroShot, &registry, i).unwrap();
        let (p, o, l) = (people[i % 5], orgs[i % 5], places[i % 5]);
        let generation = format!(
            "( {p}; instance of; wd_alpha ) ( {o}; instance of; wd_beta ) ( {l}; instance of; wd_gamma )"
        );
        for example in examples {
            inputs.push(EvalInput {
                example,
                generation: generation.clone(),
            });
        }
    }
    let config = EvalConfig {
        alignment: Some(alignment),
        ..EvalConfig::default()
    };
    let report = evaluate_dataset(&inputs, &config).unwrap();
    let prf = report
        .metric("classification_f1")
        .unwrap()
        .as_prf()
        .unwrap();
    assert_eq!(prf.recall, 2.0 / 3.0, "recall must equal the mapped-label fraction");
    assert_eq!(prf.precision, 1.0);
    assert_eq!(report.counts.dropped_unmapped_label, 20);
    println!("[PASS] criterion 9: alignment build/merge/apply gives recall exactly 2/3");
}

// Criterion 10: loopback echo server. 100 concurrent requests re-associate by
// id; induced 503s trigger bounded retries and then BackendUnavailable.
#[test]
fn criterion_10_http_backend() {
    // Part 1: echo server, 100 concurrent requests.
    let server = EchoServer::spawn(0);
    let mut config = HttpBackendConfig::new(server.url());
    config.max_retries = 2;
    let backend = HttpBackend::new(config).unwrap();

    let decode = DecodeConfig {
        length_penalty: 0.8,
        min_target_length: 0,
        max_target_length: 512,
        trim_to_first_triple: false,
    };
    let jobs: Vec<(EncodedExample, DecodeConfig)> = (0..100)
        .map(|i| {
            let record = TaskRecord {
                task: TaskKind::IntentDetection,
                dataset: "atis".into(),
                text: format!("request number {i} about flights ."),
                gold: Gold::Intent {
                    label: "flight".into(),
                },
                marked_span: None,
            };
            let examples =
                encode_record(&record, EncodeMode::multi_task(), &DatasetRegistry::builtin(), i)
                    .unwrap();
            (examples.into_iter().next().unwrap(), decode)
        })
        .collect();

    let results = run_batch(&jobs, &backend, 16);
    assert_eq!(results.len(), 100);
    for ((example, _), (id, result)) in jobs.iter().zip(&results) {
        assert_eq!(&example.id, id, "results must stay aligned with examples");
        let output = result.as_ref().expect("echo request succeeds");
        assert_eq!(output, &format!("echo: {}", example.input));
    }
    assert_eq!(server.hits(), 100);

    // Part 2: a permanently failing server triggers bounded retries and then
    // BackendUnavailable.
    let failing = EchoServer::spawn(usize::MAX);
    let mut config = HttpBackendConfig::new(failing.url());
    config.max_retries = 3;
    config.backoff_base = std::time::Duration::from_millis(1);
    let backend = HttpBackend::new(config).unwrap();
    let (example, _) = &jobs[0];
    let request = structkit::backend::GenerationRequest {
        id: example.id.clone(),
        input: example.input.clone(),
        config: decode,
    };
    match backend.generate(&request) {
        Err(BackendError::Unavailable { .. }) => {}
        other => panic!("expected BackendUnavailable, got {other:?}"),
    }
    assert_eq!(failing.hits(), 4, "1 attempt + 3 bounded retries");
    println!("[PASS] criterion 10: 100 concurrent echo requests re-associated; 503s retry then fail");
}

// The whole suite doubles as the round-trip witness for the JSONL interfaces:
// records written and reread stay identical.
#[test]
fn canonical_jsonl_round_trip() {
    for task in ALL_TASK_KINDS {
        for record in fixture_records(task, 6) {
            let line = serde_json::to_string(&record).unwrap();
            let back: TaskRecord = serde_json::from_str(&line).unwrap();
            assert_eq!(back, record);
        }
    }

    // And generation ids survive a JSONL round trip keyed by id.
    let registry = DatasetRegistry::builtin();
    let records = fixture_records(TaskKind::Ner, 5);
    let mut examples = Vec::new();
    for (i, record) in records.iter().enumerate() {
        examples.extend(encode_record(record, EncodeMode::multi_task(), &registry, i).unwrap());
    }
    let ids: HashSet<String> = examples.iter().map(|e| e.id.clone()).collect();
    assert_eq!(ids.len(), examples.len());
    let generations: HashMap<String, String> = examples
        .iter()
        .map(|e| (e.id.clone(), e.gold_output.clone()))
        .collect();
    let joined = structkit::eval::join_generations(examples, &generations).unwrap();
    assert_eq!(joined.len(), 5);
}
