//! Deterministic synthetic corpora for every task kind, plus one reference
//! format case per supported dataset. Used by the round-trip test suites and
//! the demo data command; no external data required.

use crate::grounding::Span;
use crate::record::{Gold, PredicateFrame, SpanRelation, TaskKind, TaskRecord, TypedSpan};
use std::collections::BTreeMap;

/// Char span of the nth occurrence of `surface` in `text`. Panics if absent;
/// fixtures are static data, so a miss is a bug in the fixture itself.
pub fn span_of(text: &str, surface: &str, occurrence: usize) -> Span {
    let byte_start = text
        .match_indices(surface)
        .nth(occurrence)
        .map(|(i, _)| i)
        .unwrap_or_else(|| panic!("surface `{surface}` (occurrence {occurrence}) not in `{text}`"));
    let start = text[..byte_start].chars().count();
    Span::new(start, start + surface.chars().count())
}

fn typed(text: &str, surface: &str, label: &str) -> TypedSpan {
    let span = span_of(text, surface, 0);
    TypedSpan::new(span.start, span.end, label)
}

const PEOPLE: [&str; 8] = [
    "Ada Lovelace",
    "Grace Hopper",
    "Alan Turing",
    "Edsger Dijkstra",
    "Barbara Liskov",
    "Emmy Noether",
    "John McCarthy",
    "Kurt Goedel",
];
const ORGS: [&str; 6] = [
    "Initech",
    "Globex",
    "Hooli",
    "Acme Corp",
    "Tyrell Corp",
    "Wayne Enterprises",
];
const PLACES: [&str; 8] = [
    "Jerusalem",
    "Brussels",
    "Tbilisi",
    "Vienna",
    "Fairbanks",
    "Ottawa",
    "Kyoto",
    "Oslo",
];
const EVENTS: [&str; 4] = ["World Cup", "Asian Cup", "Winter Games", "Expo 2000"];
const DAYS: [&str; 5] = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday"];

/// The builtin dataset each task's fixture corpus registers under.
pub fn fixture_dataset(task: TaskKind) -> &'static str {
    match task {
        TaskKind::Oie => "oie2016",
        TaskKind::RelationClassification => "tacred",
        TaskKind::FactualProbe => "t-rex",
        TaskKind::JointEntityRelation => "conll04",
        TaskKind::Ner => "conll03",
        TaskKind::Srl => "conll05",
        TaskKind::EventTrigger | TaskKind::EventArgument => "ace2005",
        TaskKind::Coreference => "conll12",
        TaskKind::DialogueStateTracking => "multiwoz",
        TaskKind::IntentDetection => "atis",
    }
}

/// Builds `count` synthetic records for one task. Deterministic: the same
/// (task, count) always yields the same corpus. Every record round-trips
/// exactly through encode -> parse -> decode.
pub fn fixture_records(task: TaskKind, count: usize) -> Vec<TaskRecord> {
    (0..count).map(|i| fixture_record(task, i)).collect()
}

fn fixture_record(task: TaskKind, i: usize) -> TaskRecord {
    let dataset = fixture_dataset(task).to_string();
    let person = PEOPLE[i % PEOPLE.len()];
    let person2 = PEOPLE[(i + 3) % PEOPLE.len()];
    let org = ORGS[i % ORGS.len()];
    let place = PLACES[i % PLACES.len()];
    let place2 = PLACES[(i + 2) % PLACES.len()];
    let event = EVENTS[i % EVENTS.len()];
    let day = DAYS[i % DAYS.len()];

    match task {
        TaskKind::Ner => {
            if i % 7 == 3 {
                // Some sentences have nothing to extract.
                return TaskRecord {
                    task,
                    dataset,
                    text: format!("nothing notable happened on day {i} ."),
                    gold: Gold::TypedSpans { spans: vec![] },
                    marked_span: None,
                };
            }
            let text =
                format!("yesterday {person} of {org} arrived in {place} for the {event} final .");
            let mut spans = vec![
                typed(&text, person, "person"),
                typed(&text, org, "organization"),
                typed(&text, place, "location"),
            ];
            if i.is_multiple_of(2) {
                spans.push(typed(&text, event, "miscellaneous"));
            }
            spans.sort_by_key(|s| s.start);
            TaskRecord {
                task,
                dataset,
                text,
                gold: Gold::TypedSpans { spans },
                marked_span: None,
            }
        }
        TaskKind::JointEntityRelation => {
            let text = format!("{person} of {org} settled in {place} last spring .");
            let entities = vec![
                typed(&text, person, "person"),
                typed(&text, org, "organization"),
                typed(&text, place, "location"),
            ];
            let mut relations = vec![SpanRelation {
                head: span_of(&text, person, 0),
                label: "work for".into(),
                tail: span_of(&text, org, 0),
            }];
            if i.is_multiple_of(2) {
                relations.push(SpanRelation {
                    head: span_of(&text, person, 0),
                    label: "live in".into(),
                    tail: span_of(&text, place, 0),
                });
            }
            TaskRecord {
                task,
                dataset,
                text,
                gold: Gold::EntitiesRelations {
                    entities,
                    relations,
                },
                marked_span: None,
            }
        }
        TaskKind::RelationClassification => {
            let (text, label, head, tail) = match i % 3 {
                0 => (
                    format!("{person} works as an engineer at {org} ."),
                    "employee of",
                    person,
                    org,
                ),
                1 => (
                    format!("{person} joined {org} as a voting fellow ."),
                    "member of",
                    person,
                    org,
                ),
                _ => (
                    format!("{person} has lived in {place} since 1990 ."),
                    "lives in",
                    person,
                    place,
                ),
            };
            TaskRecord {
                task,
                dataset,
                text: text.clone(),
                gold: Gold::Relation {
                    head: span_of(&text, head, 0),
                    label: label.into(),
                    tail: span_of(&text, tail, 0),
                },
                marked_span: None,
            }
        }
        TaskKind::Oie => {
            let text = format!("{org} bought a studio in {place} and hired {person} .");
            let mut tuples = vec![vec![
                org.to_string(),
                "bought".to_string(),
                "a studio".to_string(),
            ]];
            if i.is_multiple_of(2) {
                tuples.push(vec![
                    org.to_string(),
                    "hired".to_string(),
                    person.to_string(),
                ]);
            }
            TaskRecord {
                task,
                dataset,
                text,
                gold: Gold::OpenTuples { tuples },
                marked_span: None,
            }
        }
        TaskKind::Srl => {
            let verb1 = ["accept", "reject", "praise"][i % 3];
            let verb2 = ["bought", "sold", "kept"][i % 3];
            if i.is_multiple_of(2) {
                let text = format!("{person} did not {verb1} the decision .");
                let frame = PredicateFrame {
                    predicate: span_of(&text, verb1, 0),
                    arguments: vec![
                        typed(&text, person, "first argument"),
                        typed(&text, "not", "negation"),
                        typed(&text, "the decision", "second argument"),
                    ],
                };
                TaskRecord {
                    task,
                    dataset,
                    text,
                    gold: Gold::Frames {
                        frames: vec![frame],
                    },
                    marked_span: None,
                }
            } else {
                // Multi-predicate sentence, duplicated at encode time.
                let text =
                    format!("{person} did not {verb1} the decision and {person2} {verb2} the offer .");
                let frames = vec![
                    PredicateFrame {
                        predicate: span_of(&text, verb1, 0),
                        arguments: vec![
                            typed(&text, person, "first argument"),
                            typed(&text, "not", "negation"),
                            typed(&text, "the decision", "second argument"),
                        ],
                    },
                    PredicateFrame {
                        predicate: span_of(&text, verb2, 0),
                        arguments: vec![
                            typed(&text, person2, "first argument"),
                            typed(&text, "the offer", "second argument"),
                        ],
                    },
                ];
                TaskRecord {
                    task,
                    dataset,
                    text,
                    gold: Gold::Frames { frames },
                    marked_span: None,
                }
            }
        }
        TaskKind::EventTrigger => {
            let (word, kind) = [
                ("summit", "meet"),
                ("election", "elect"),
                ("wedding", "marry"),
                ("protest", "demonstrate"),
                ("merger", "merge organization"),
            ][i % 5];
            let text = format!("the {word} in {place} ended quietly on {day} .");
            TaskRecord {
                task,
                dataset,
                text: text.clone(),
                gold: Gold::TypedSpans {
                    spans: vec![typed(&text, word, kind)],
                },
                marked_span: None,
            }
        }
        TaskKind::EventArgument => {
            let (word1, word2) = [("summit", "protest"), ("election", "wedding")][i % 2];
            match i % 3 {
                0 => {
                    let text = format!("the {word1} in {place} drew crowds on {day} .");
                    let frames = vec![PredicateFrame {
                        predicate: span_of(&text, word1, 0),
                        arguments: vec![
                            typed(&text, place, "place"),
                            typed(&text, day, "time"),
                        ],
                    }];
                    TaskRecord {
                        task,
                        dataset,
                        text,
                        gold: Gold::Frames { frames },
                        marked_span: None,
                    }
                }
                1 => {
                    let text = format!(
                        "the {word1} in {place} preceded the {word2} near {place2} ."
                    );
                    let frames = vec![
                        PredicateFrame {
                            predicate: span_of(&text, word1, 0),
                            arguments: vec![typed(&text, place, "place")],
                        },
                        PredicateFrame {
                            predicate: span_of(&text, word2, 0),
                            arguments: vec![typed(&text, place2, "place")],
                        },
                    ];
                    TaskRecord {
                        task,
                        dataset,
                        text,
                        gold: Gold::Frames { frames },
                        marked_span: None,
                    }
                }
                _ => {
                    // A trigger with no arguments at all.
                    let text = format!("the {word1} ended without incident .");
                    let frames = vec![PredicateFrame {
                        predicate: span_of(&text, word1, 0),
                        arguments: vec![],
                    }];
                    TaskRecord {
                        task,
                        dataset,
                        text,
                        gold: Gold::Frames { frames },
                        marked_span: None,
                    }
                }
            }
        }
        TaskKind::Coreference => {
            let text = format!(
                "{person} met {person2} at the station . afterwards she thanked him warmly ."
            );
            let mut clusters = vec![vec![span_of(&text, person, 0), span_of(&text, "she", 0)]];
            if i.is_multiple_of(2) {
                clusters.push(vec![span_of(&text, person2, 0), span_of(&text, "him", 0)]);
            }
            TaskRecord {
                task,
                dataset,
                text,
                gold: Gold::Clusters { clusters },
                marked_span: None,
            }
        }
        TaskKind::DialogueStateTracking => {
            let mut values = BTreeMap::new();
            values.insert("taxi arrive by".to_string(), "not given".to_string());
            values.insert(
                "taxi departure".to_string(),
                if i % 5 == 4 { "not given".into() } else { place.to_string() },
            );
            values.insert(
                "taxi destination".to_string(),
                if i % 5 == 4 { "not given".into() } else { place2.to_string() },
            );
            values.insert(
                "taxi leave at".to_string(),
                if i % 5 == 4 {
                    "not given".into()
                } else {
                    format!("{:02}:15", 7 + (i % 12))
                },
            );
            let text = format!(
                "[User]: I need a taxi from {place} to {place2} . [Agent]: When do you want to leave ? [User]: around {:02}:15 please .",
                7 + (i % 12)
            );
            TaskRecord {
                task,
                dataset,
                text,
                gold: Gold::Slots { values },
                marked_span: None,
            }
        }
        TaskKind::IntentDetection => {
            let (text, label) = match i % 4 {
                0 => (
                    format!("Please list flights from {place} to {place2} on {day} ."),
                    "flight",
                ),
                1 => (
                    format!("How much does a ticket from {place} to {place2} cost ?"),
                    "airfare",
                ),
                2 => (
                    format!("Show flights and prices from {place} to {place2} ."),
                    "flight and airfare",
                ),
                _ => (
                    format!("What ground transport is there in {place} ?"),
                    "ground service",
                ),
            };
            TaskRecord {
                task,
                dataset,
                text,
                gold: Gold::Intent {
                    label: label.into(),
                },
                marked_span: None,
            }
        }
        TaskKind::FactualProbe => {
            let (relation, object) = match i % 2 {
                0 => ("place of birth", place),
                _ => ("member of", org),
            };
            let context = vec![
                format!("{person} was born in {place} and studied mathematics ."),
                format!("Colleagues at {org} recall {person} fondly ."),
            ];
            TaskRecord {
                task,
                dataset,
                text: context.join(" "),
                gold: Gold::FactualQuery {
                    subject: person.to_string(),
                    relation: relation.to_string(),
                    object: object.to_string(),
                    context,
                },
                marked_span: None,
            }
        }
    }
}

/// A reference format case: a record plus the exact input and output strings
/// its multi-task encoding must reproduce (whitespace-insensitively). For
/// tasks that fan out into several examples, `expected_output` is the
/// concatenation of the per-unit gold outputs.
pub struct FormatCase {
    pub name: &'static str,
    pub record: TaskRecord,
    pub expected_input: &'static str,
    pub expected_output: &'static str,
}

/// One canonical case per supported dataset, pinning the exact surface
/// format.
pub fn format_reference_cases() -> Vec<FormatCase> {
    let mut cases = Vec::new();

    // Open information extraction.
    {
        let text = "But for now, at least, Americans are far better at making PCs and the software that runs them.";
        cases.push(FormatCase {
            name: "oie2016",
            record: TaskRecord {
                task: TaskKind::Oie,
                dataset: "oie2016".into(),
                text: text.into(),
                gold: Gold::OpenTuples {
                    tuples: vec![
                        vec![
                            "Americans".into(),
                            "making".into(),
                            "PCs and the software that runs them".into(),
                        ],
                        vec!["PCs".into(), "runs".into(), "software".into()],
                    ],
                },
                marked_span: None,
            },
            expected_input: "oie oie2016: But for now, at least, Americans are far better at making PCs and the software that runs them.",
            expected_output: "(Americans; making; PCs and the software that runs them) (PCs; runs; software)",
        });
    }
    {
        let text = "Finally google bought youtube.";
        cases.push(FormatCase {
            name: "oie web",
            record: TaskRecord {
                task: TaskKind::Oie,
                dataset: "web".into(),
                text: text.into(),
                gold: Gold::OpenTuples {
                    tuples: vec![vec!["google".into(), "bought".into(), "youtube".into()]],
                },
                marked_span: None,
            },
            expected_input: "oie web: Finally google bought youtube.",
            expected_output: "(google; bought; youtube)",
        });
    }
    {
        let text = "Now in its 58th final, the United States is pursuing a 30th cup title.";
        cases.push(FormatCase {
            name: "oie nyt",
            record: TaskRecord {
                task: TaskKind::Oie,
                dataset: "nyt".into(),
                text: text.into(),
                gold: Gold::OpenTuples {
                    tuples: vec![vec![
                        "United States".into(),
                        "pursuing".into(),
                        "cup".into(),
                    ]],
                },
                marked_span: None,
            },
            expected_input: "oie nyt: Now in its 58th final, the United States is pursuing a 30th cup title.",
            expected_output: "(United States; pursuing; cup)",
        });
    }
    {
        let text = "Samsung already owns korea first advertising co., that country's largest agency.";
        cases.push(FormatCase {
            name: "oie penn",
            record: TaskRecord {
                task: TaskKind::Oie,
                dataset: "penn".into(),
                text: text.into(),
                gold: Gold::OpenTuples {
                    tuples: vec![vec![
                        "Samsung".into(),
                        "owns".into(),
                        "korea first advertising co.".into(),
                    ]],
                },
                marked_span: None,
            },
            expected_input: "oie penn: Samsung already owns korea first advertising co., that country's largest agency.",
            expected_output: "( Samsung; owns; korea first advertising co. )",
        });
    }

    // Relation classification.
    {
        let text = "Donald Wildmon , the founder and head of the American Family Association , is asking its members to petition Congress to end all funding for PBS .";
        cases.push(FormatCase {
            name: "rc tacred",
            record: TaskRecord {
                task: TaskKind::RelationClassification,
                dataset: "tacred".into(),
                text: text.into(),
                gold: Gold::Relation {
                    head: span_of(text, "Donald Wildmon", 0),
                    label: "employee of".into(),
                    tail: span_of(text, "American Family Association", 0),
                },
                marked_span: None,
            },
            expected_input: "rc tacred: Donald Wildmon , the founder and head of the American Family Association , is asking its members to petition Congress to end all funding for PBS . The relationship between Donald Wildmon and American Family Association is",
            expected_output: "( Donald Wildmon; employee of; American Family Association )",
        });
    }
    {
        let text = "Boott was elected an Associate Fellow of the American Academy of Arts and Sciences in 1835 .";
        cases.push(FormatCase {
            name: "rc fewrel",
            record: TaskRecord {
                task: TaskKind::RelationClassification,
                dataset: "fewrel".into(),
                text: text.into(),
                gold: Gold::Relation {
                    head: span_of(text, "Boott", 0),
                    label: "member of".into(),
                    tail: span_of(text, "American Academy", 0),
                },
                marked_span: None,
            },
            expected_input: "rc fewrel: Boott was elected an Associate Fellow of the American Academy of Arts and Sciences in 1835 . The relationship between Boott and American Academy is",
            expected_output: "( Boott; member of; American Academy )",
        });
    }

    // Factual probe.
    {
        let context = "Eldon Coombe (born c 1941) is a Canadian curler from Ottawa, Canada.";
        cases.push(FormatCase {
            name: "fp google-re",
            record: TaskRecord {
                task: TaskKind::FactualProbe,
                dataset: "google-re".into(),
                text: context.into(),
                gold: Gold::FactualQuery {
                    subject: "Eldon Coombe".into(),
                    relation: "date of birth".into(),
                    object: "1941".into(),
                    context: vec![context.into()],
                },
                marked_span: None,
            },
            expected_input: "fp google-re: Eldon Coombe (born c 1941) is a Canadian curler from Ottawa, Canada.",
            expected_output: "(Eldon Coombe; date of birth; 1941)",
        });
    }
    {
        let context = "Kurt Schwertsik (born 25 June 1935, Vienna) is an Austrian contemporary composer.";
        cases.push(FormatCase {
            name: "fp t-rex",
            record: TaskRecord {
                task: TaskKind::FactualProbe,
                dataset: "t-rex".into(),
                text: context.into(),
                gold: Gold::FactualQuery {
                    subject: "Kurt Schwertsik".into(),
                    relation: "place of birth".into(),
                    object: "Vienna".into(),
                    context: vec![context.into()],
                },
                marked_span: None,
            },
            expected_input: "fp t-rex: Kurt Schwertsik (born 25 June 1935, Vienna) is an Austrian contemporary composer.",
            expected_output: "(Kurt Schwertsik; place of birth; Vienna)",
        });
    }

    // Joint entity and relation extraction.
    {
        let text = "An art exhibit at the Hakawati Theatre in Arab east Jerusalem was a series of portraits of Palestinians killed in the rebellion .";
        cases.push(FormatCase {
            name: "jer conll04",
            record: TaskRecord {
                task: TaskKind::JointEntityRelation,
                dataset: "conll04".into(),
                text: text.into(),
                gold: Gold::EntitiesRelations {
                    entities: vec![
                        typed(text, "Hakawati Theatre", "organization"),
                        typed(text, "Arab", "other"),
                        typed(text, "Jerusalem", "location"),
                        typed(text, "Palestinians", "other"),
                    ],
                    relations: vec![SpanRelation {
                        head: span_of(text, "Hakawati Theatre", 0),
                        label: "organization based in".into(),
                        tail: span_of(text, "Jerusalem", 0),
                    }],
                },
                marked_span: None,
            },
            expected_input: "jer conll04: An art exhibit at the Hakawati Theatre in Arab east Jerusalem was a series of portraits of Palestinians killed in the rebellion .",
            expected_output: "( Hakawati Theatre; instance of; organization ) ( Arab; instance of; other ) ( Jerusalem; instance of; location ) ( Palestinians; instance of; other ) ( Hakawati Theatre; organization based in; Jerusalem )",
        });
    }
    {
        let text = "Lethal anuria complicating high dose ifosfamide chemotherapy in a breast cancer patient with an impaired renal function .";
        cases.push(FormatCase {
            name: "jer ade",
            record: TaskRecord {
                task: TaskKind::JointEntityRelation,
                dataset: "ade".into(),
                text: text.into(),
                gold: Gold::EntitiesRelations {
                    entities: vec![
                        typed(text, "Lethal anuria", "disease"),
                        typed(text, "ifosfamide", "drug"),
                    ],
                    relations: vec![SpanRelation {
                        head: span_of(text, "Lethal anuria", 0),
                        label: "effect".into(),
                        tail: span_of(text, "ifosfamide", 0),
                    }],
                },
                marked_span: None,
            },
            expected_input: "jer ade: Lethal anuria complicating high dose ifosfamide chemotherapy in a breast cancer patient with an impaired renal function .",
            expected_output: "( Lethal anuria; instance of; disease ) ( ifosfamide; instance of; drug ) ( Lethal anuria; effect; ifosfamide )",
        });
    }
    {
        let text = "Mary L. Schapiro , who earlier this year became the new head of NASD , was more amenable to fashioning a deal to the New York Exchange 's liking than her predecessor , Robert R. Glauber .";
        cases.push(FormatCase {
            name: "jer nyt",
            record: TaskRecord {
                task: TaskKind::JointEntityRelation,
                dataset: "nyt".into(),
                text: text.into(),
                gold: Gold::EntitiesRelations {
                    entities: vec![
                        typed(text, "NASD", "organization"),
                        typed(text, "Robert R. Glauber", "human"),
                    ],
                    relations: vec![SpanRelation {
                        head: span_of(text, "Robert R. Glauber", 0),
                        label: "company".into(),
                        tail: span_of(text, "NASD", 0),
                    }],
                },
                marked_span: None,
            },
            expected_input: "jer nyt: Mary L. Schapiro , who earlier this year became the new head of NASD , was more amenable to fashioning a deal to the New York Exchange 's liking than her predecessor , Robert R. Glauber .",
            expected_output: "( NASD; instance of; organization ) ( Robert R. Glauber; instance of; human ) ( Robert R. Glauber; company; NASD )",
        });
    }
    {
        let text = "The Davao Medical Center , a regional government hospital , recorded 19 deaths with 50 wounded .";
        cases.push(FormatCase {
            name: "jer ace2005",
            record: TaskRecord {
                task: TaskKind::JointEntityRelation,
                dataset: "ace2005".into(),
                text: text.into(),
                gold: Gold::EntitiesRelations {
                    entities: vec![
                        typed(text, "Davao Medical Center", "organization"),
                        typed(text, "government", "geographical entity"),
                        typed(text, "hospital", "organization"),
                        typed(text, "50", "human"),
                    ],
                    relations: vec![SpanRelation {
                        head: span_of(text, "hospital", 0),
                        label: "part of".into(),
                        tail: span_of(text, "government", 0),
                    }],
                },
                marked_span: None,
            },
            expected_input: "jer ace2005: The Davao Medical Center , a regional government hospital , recorded 19 deaths with 50 wounded .",
            expected_output: "( Davao Medical Center; instance of; organization ) ( government; instance of; geographical entity ) ( hospital; instance of; organization ) ( 50; instance of; human ) ( hospital; part of; government )",
        });
    }

    // Named entity recognition.
    {
        let text = "Japan began the defence of their Asian Cup title with a lucky 2-1 win against Syria in a Group C championship match on Friday .";
        cases.push(FormatCase {
            name: "ner conll03",
            record: TaskRecord {
                task: TaskKind::Ner,
                dataset: "conll03".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![
                        typed(text, "Japan", "location"),
                        typed(text, "Asian Cup", "miscellaneous"),
                        typed(text, "Syria", "location"),
                    ],
                },
                marked_span: None,
            },
            expected_input: "ner conll03: Japan began the defence of their Asian Cup title with a lucky 2-1 win against Syria in a Group C championship match on Friday .",
            expected_output: "( Japan; instance of; location ) ( Asian Cup; instance of; miscellaneous ) ( Syria; instance of; location )",
        });
    }
    {
        let text = "Relevant departments from Beijing Municipality promptly activated emergency contingency plans .";
        cases.push(FormatCase {
            name: "ner ontonotes",
            record: TaskRecord {
                task: TaskKind::Ner,
                dataset: "ontonotes".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![typed(text, "Beijing Municipality", "country city state")],
                },
                marked_span: None,
            },
            expected_input: "ner ontonotes: Relevant departments from Beijing Municipality promptly activated emergency contingency plans .",
            expected_output: "( Beijing Municipality; instance of; country city state )",
        });
    }
    {
        let text = "Human T and B lymphocytes demonstrate an early and transient hyperpolarization after ligand binding .";
        cases.push(FormatCase {
            name: "ner genia",
            record: TaskRecord {
                task: TaskKind::Ner,
                dataset: "genia".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![typed(text, "Human T and B lymphocytes", "cell type")],
                },
                marked_span: None,
            },
            expected_input: "ner genia: Human T and B lymphocytes demonstrate an early and transient hyperpolarization after ligand binding .",
            expected_output: "( Human T and B lymphocytes; instance of; cell type )",
        });
    }
    {
        let text = "BEGALA Dr . Palmisano , again , thanks for staying with us through the break .";
        cases.push(FormatCase {
            name: "ner ace2005",
            record: TaskRecord {
                task: TaskKind::Ner,
                dataset: "ace2005".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![
                        typed(text, "Dr", "human"),
                        typed(text, "Dr . Palmisano", "human"),
                        typed(text, "us", "human"),
                    ],
                },
                marked_span: None,
            },
            expected_input: "ner ace2005: BEGALA Dr . Palmisano , again , thanks for staying with us through the break .",
            expected_output: "( Dr; instance of; human ) ( Dr . Palmisano; instance of; human ) ( us; instance of; human )",
        });
    }

    // Semantic role labeling.
    {
        let text = "But while the New York Stock Exchange did n't fall apart Friday as the Dow Jones Industrial Average plunged 190.58 points -- most of it in the final hour -- it barely managed to stay this side of chaos .";
        cases.push(FormatCase {
            name: "srl conll05 wsj",
            record: TaskRecord {
                task: TaskKind::Srl,
                dataset: "conll05".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![
                        typed(text, "the New York Stock Exchange", "second argument"),
                        typed(text, "n't", "negation"),
                    ],
                },
                marked_span: Some(span_of(text, "fall", 0)),
            },
            expected_input: "srl conll05: But while the New York Stock Exchange did n't [ fall ] apart Friday as the Dow Jones Industrial Average plunged 190.58 points -- most of it in the final hour -- it barely managed to stay this side of chaos .",
            expected_output: "( the New York Stock Exchange; instance of; second argument ) ( n't; instance of; negation )",
        });
    }
    {
        let text = "His father tried to make the food a topic .";
        cases.push(FormatCase {
            name: "srl conll05 brown",
            record: TaskRecord {
                task: TaskKind::Srl,
                dataset: "conll05".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![
                        typed(text, "His father", "first argument"),
                        typed(text, "to make the food a topic", "second argument"),
                    ],
                },
                marked_span: Some(span_of(text, "tried", 0)),
            },
            expected_input: "srl conll05: His father [ tried ] to make the food a topic .",
            expected_output: "( His father; instance of; first argument ) ( to make the food a topic; instance of; second argument )",
        });
    }
    {
        let text = "Dear viewers , the China News program will end here .";
        cases.push(FormatCase {
            name: "srl conll12",
            record: TaskRecord {
                task: TaskKind::Srl,
                dataset: "conll12".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![
                        typed(text, "the China News program", "second argument"),
                        typed(text, "will", "modal"),
                        typed(text, "here", "location"),
                    ],
                },
                marked_span: Some(span_of(text, "end", 0)),
            },
            expected_input: "srl conll12: Dear viewers , the China News program will [ end ] here .",
            expected_output: "( the China News program; instance of; second argument ) ( will; instance of; modal ) ( here; instance of; location )",
        });
    }

    // Event extraction.
    {
        let text = "The European Union held a summit in Brussels.";
        cases.push(FormatCase {
            name: "ee ace2005 trg",
            record: TaskRecord {
                task: TaskKind::EventTrigger,
                dataset: "ace2005".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![typed(text, "summit", "meet")],
                },
                marked_span: None,
            },
            expected_input: "ee ace2005 trg: The European Union held a summit in Brussels.",
            expected_output: "( summit; instance of; meet )",
        });
        cases.push(FormatCase {
            name: "ee ace2005 arg",
            record: TaskRecord {
                task: TaskKind::EventArgument,
                dataset: "ace2005".into(),
                text: text.into(),
                gold: Gold::TypedSpans {
                    spans: vec![typed(text, "Brussels", "place")],
                },
                marked_span: Some(span_of(text, "summit", 0)),
            },
            expected_input: "ee ace2005 arg: The European Union held a [ summit ] in Brussels.",
            expected_output: "( Brussels; instance of; place )",
        });
    }

    // Coreference resolution.
    {
        let text = "And deterrents does n't work terribly well when an enemy values your death more than his life .";
        cases.push(FormatCase {
            name: "cr conll12",
            record: TaskRecord {
                task: TaskKind::Coreference,
                dataset: "conll12".into(),
                text: text.into(),
                gold: Gold::Clusters {
                    clusters: vec![vec![
                        span_of(text, "an enemy", 0),
                        span_of(text, "his", 0),
                    ]],
                },
                marked_span: None,
            },
            expected_input: "cr conll12: And deterrents does n't work terribly well when an enemy values your death more than his life .",
            expected_output: "( an enemy; refer to; his )",
        });
    }

    // Dialogue state tracking.
    {
        let text = "[User]: I am looking for a place to to stay that has cheap price range it should be in a type of hotel. [Agent]: Okay , do you have a specific area you want to stay in? [User]: No , I just need to make sure it s cheap. Oh, and I need parking. [Agent]: I found 1 cheap hotel for you that include parking. Do you like me to book it? [User]: Yes, please. 6 people 3 nights starting on Tuesday.";
        let mut values = BTreeMap::new();
        for (slot, value) in [
            ("hotel area", "not given"),
            ("hotel book day", "Tuesday"),
            ("hotel book people", "6"),
            ("hotel book stay", "3"),
            ("hotel internet", "not given"),
            ("hotel name", "not given"),
            ("hotel parking", "yes"),
            ("hotel price range", "cheap"),
            ("hotel stars", "not given"),
            ("hotel type", "hotel"),
        ] {
            values.insert(slot.to_string(), value.to_string());
        }
        cases.push(FormatCase {
            name: "dst multiwoz",
            record: TaskRecord {
                task: TaskKind::DialogueStateTracking,
                dataset: "multiwoz".into(),
                text: text.into(),
                gold: Gold::Slots { values },
                marked_span: None,
            },
            expected_input: "dst multiwoz: [User]: I am looking for a place to to stay that has cheap price range it should be in a type of hotel. [Agent]: Okay , do you have a specific area you want to stay in? [User]: No , I just need to make sure it s cheap. Oh, and I need parking. [Agent]: I found 1 cheap hotel for you that include parking. Do you like me to book it? [User]: Yes, please. 6 people 3 nights starting on Tuesday.",
            expected_output: "([User]; hotel area; not given) ([User]; hotel book day; Tuesday) ([User]; hotel book people; 6) ([User]; hotel book stay; 3) ([User]; hotel internet; not given) ([User]; hotel name; not given) ([User]; hotel parking; yes) ([User]; hotel price range; cheap) ([User]; hotel stars; not given) ([User]; hotel type; hotel)",
        });
    }

    // Intent detection.
    {
        let text = "Please give me a list of all the flights between Dallas and Baltimore and their cost.";
        cases.push(FormatCase {
            name: "id atis",
            record: TaskRecord {
                task: TaskKind::IntentDetection,
                dataset: "atis".into(),
                text: text.into(),
                gold: Gold::Intent {
                    label: "flight and airfare".into(),
                },
                marked_span: None,
            },
            expected_input: "id atis: Please give me a list of all the flights between Dallas and Baltimore and their cost.",
            expected_output: "(intent; is; flight and airfare)",
        });
    }
    {
        let text = "Play the song little robin redbreast.";
        cases.push(FormatCase {
            name: "id snips",
            record: TaskRecord {
                task: TaskKind::IntentDetection,
                dataset: "snips".into(),
                text: text.into(),
                gold: Gold::Intent {
                    label: "play music".into(),
                },
                marked_span: None,
            },
            expected_input: "id snips: Play the song little robin redbreast.",
            expected_output: "(intent; is; play music)",
        });
    }

    cases
}
