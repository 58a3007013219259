//! Deterministic synthetic corpora.
//!
//! Sarcastic items under the sentiment-shift mechanism pair a positive
//! opener with a negative situation ("i love delayed flights"); the
//! non-sarcastic items keep both halves on the same side. A situation is an
//! adjective and a noun, optionally negated ("no sunny weekends" is a
//! negative situation), so whether an item is sarcastic depends on how its
//! words combine rather than on any single token. Sarcasm corpora draw
//! adjectives with a Zipf skew, leaving a long tail that a small corpus
//! barely covers; the auxiliary sentiment corpus draws them uniformly and
//! annotates mixed-polarity sentences as neutral.
//! Auxiliary sentiment, emotion and personality corpora reuse the topic
//! nouns so that models trained on them transfer.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model_zoo::config::{
    ModelName, EMOTION_CLASSES, PERSONALITY_CLASSES, SARCASM_CLASSES, SENTIMENT_CLASSES,
};
use crate::text::Record;

pub const POSITIVE_OPENERS: &[&str] = &[
    "i love",
    "i just love",
    "i adore",
    "gotta love",
    "so happy about",
    "really enjoying",
    "thrilled about",
    "nothing beats",
    "i really like",
    "so glad about",
    "loving",
    "excited for",
    "grateful for",
    "yay for",
    "hooray for",
    "i enjoy",
    "delighted by",
    "so pleased with",
    "huge fan of",
    "blessed with",
    "living for",
    "obsessed with",
    "cheers to",
    "proud of",
    "happy with",
    "fond of",
    "crazy about",
    "keen on",
    "i appreciate",
    "celebrating",
];

pub const NEGATIVE_OPENERS: &[&str] = &[
    "i hate",
    "i really hate",
    "i despise",
    "cannot stand",
    "so annoyed by",
    "sick of",
    "tired of",
    "fed up with",
    "i dread",
    "so upset about",
    "angry about",
    "worried about",
    "i resent",
    "i really dislike",
    "frustrated by",
    "disappointed by",
    "bored of",
    "furious about",
    "done with",
    "ugh",
    "hate dealing with",
    "irritated by",
    "mad about",
    "stressed about",
    "sad about",
    "cannot bear",
    "gutted about",
    "miserable about",
    "i loathe",
    "complaining about",
];

pub const POSITIVE_ADJECTIVES: &[&str] = &[
    "sunny",
    "relaxing",
    "delicious",
    "free",
    "amazing",
    "quiet",
    "fresh",
    "warm",
    "fast",
    "cozy",
    "lovely",
    "great",
    "peaceful",
    "tasty",
    "fun",
    "beautiful",
    "perfect",
    "sweet",
    "comfy",
    "bright",
    "friendly",
    "smooth",
    "cheerful",
    "wonderful",
    "brilliant",
    "awesome",
    "pleasant",
    "gorgeous",
    "splendid",
    "tidy",
    "spacious",
    "clean",
    "punctual",
    "generous",
    "helpful",
    "calm",
    "refreshing",
    "stunning",
    "fantastic",
    "excellent",
    "charming",
    "elegant",
    "flawless",
    "magnificent",
    "marvelous",
    "neat",
    "nice",
    "outstanding",
    "pristine",
    "quick",
    "reliable",
    "rewarding",
    "scenic",
    "serene",
    "sleek",
    "soothing",
    "sparkling",
    "spotless",
    "superb",
    "terrific",
    "thoughtful",
    "tranquil",
    "uplifting",
    "vibrant",
    "welcoming",
    "wholesome",
    "lively",
    "crisp",
    "affordable",
    "dazzling",
    "fabulous",
    "heavenly",
    "idyllic",
    "impressive",
    "inviting",
    "luxurious",
    "majestic",
    "mellow",
];

pub const NEGATIVE_ADJECTIVES: &[&str] = &[
    "broken",
    "delayed",
    "cold",
    "awful",
    "endless",
    "boring",
    "painful",
    "noisy",
    "cancelled",
    "terrible",
    "crowded",
    "late",
    "rainy",
    "overpriced",
    "stale",
    "slow",
    "failed",
    "leaking",
    "burnt",
    "lost",
    "dirty",
    "rude",
    "soggy",
    "smelly",
    "horrible",
    "dreadful",
    "cramped",
    "freezing",
    "useless",
    "buggy",
    "expensive",
    "messy",
    "tedious",
    "lousy",
    "gloomy",
    "awkward",
    "grumpy",
    "faulty",
    "sticky",
    "dull",
    "chaotic",
    "clumsy",
    "cluttered",
    "creaky",
    "damp",
    "defective",
    "dismal",
    "dusty",
    "filthy",
    "flimsy",
    "greasy",
    "grimy",
    "hectic",
    "humid",
    "mouldy",
    "muddy",
    "nasty",
    "overcooked",
    "pathetic",
    "pointless",
    "rotten",
    "rusty",
    "scratched",
    "shabby",
    "shoddy",
    "sluggish",
    "sour",
    "stained",
    "stuffy",
    "tasteless",
    "tiresome",
    "unreliable",
    "unbearable",
    "uncomfortable",
    "unfair",
    "unpaid",
    "wobbly",
    "wretched",
];

/// Share of non-sarcastic sentiment-shift items that are positive
/// throughout (the rest are negative throughout).
const CONSISTENT_POSITIVE: f64 = 0.75;

/// Quantifiers that flip the polarity of the situation they precede.
pub const NEGATORS: &[&str] = &["no", "zero", "hardly any", "never any", "barely any"];

const NEUTRAL_OPENERS: &[&str] = &[
    "heading to",
    "looking at",
    "talking about",
    "thinking about",
    "writing about",
    "checking",
    "reading about",
    "asking about",
    "walking past",
    "scheduled",
    "counting",
    "listing",
];

const PREFIXES: &[&str] = &["wow", "honestly", "well", "oh", "so", "man"];

const FILLERS: &[&str] = &[
    "today",
    "again",
    "this morning",
    "lol",
    "seriously",
    "right now",
    "as always",
    "every time",
    "this week",
    "tonight",
    "!",
    ".",
    "...",
    "for real",
];

const MARKERS: &[&str] = &["yeah right", ":P", "totally", "sure thing", ";)"];

/// Topic inventory: name and neutral nouns.
pub const TOPICS: &[(&str, &[&str])] = &[
    (
        "travel",
        &[
            "flights", "trains", "airports", "buses", "hotels", "layovers", "taxis", "cruises",
        ],
    ),
    (
        "work",
        &[
            "meetings",
            "deadlines",
            "emails",
            "shifts",
            "reports",
            "offices",
            "bosses",
            "interviews",
        ],
    ),
    (
        "school",
        &[
            "exams",
            "lectures",
            "homework",
            "classes",
            "textbooks",
            "quizzes",
            "essays",
            "labs",
        ],
    ),
    (
        "food",
        &[
            "pizza",
            "coffee",
            "burgers",
            "salads",
            "sandwiches",
            "noodles",
            "pancakes",
            "soup",
        ],
    ),
    (
        "tech",
        &[
            "updates",
            "laptops",
            "wifi",
            "phones",
            "printers",
            "chargers",
            "apps",
            "keyboards",
        ],
    ),
    (
        "home",
        &[
            "neighbors",
            "apartments",
            "kitchens",
            "showers",
            "roommates",
            "chores",
            "gardens",
            "couches",
        ],
    ),
    (
        "sports",
        &[
            "matches",
            "referees",
            "stadiums",
            "practices",
            "tournaments",
            "coaches",
            "workouts",
            "marathons",
        ],
    ),
    (
        "seasons",
        &[
            "mornings",
            "weekends",
            "summers",
            "winters",
            "holidays",
            "evenings",
            "nights",
            "afternoons",
        ],
    ),
    (
        "shopping",
        &[
            "malls",
            "queues",
            "sales",
            "deliveries",
            "stores",
            "receipts",
            "parcels",
            "checkouts",
        ],
    ),
    (
        "entertainment",
        &[
            "movies",
            "concerts",
            "shows",
            "games",
            "podcasts",
            "festivals",
            "songs",
            "sequels",
        ],
    ),
];

const EMOTION_WORDS: [&[&str]; 6] = [
    &[
        "furious", "angry", "enraged", "livid", "irate", "fuming", "outraged", "seething",
    ],
    &[
        "disgusted",
        "grossed out",
        "revolted",
        "sickened",
        "repulsed",
        "nauseated",
        "appalled",
        "yuck",
    ],
    &[
        "surprised",
        "shocked",
        "amazed",
        "astonished",
        "stunned",
        "startled",
        "speechless",
        "whoa",
    ],
    &[
        "sad",
        "unhappy",
        "heartbroken",
        "down",
        "crying",
        "lonely",
        "tearful",
        "blue",
    ],
    &[
        "happy",
        "joyful",
        "delighted",
        "ecstatic",
        "glad",
        "elated",
        "overjoyed",
        "content",
    ],
    &[
        "scared",
        "afraid",
        "terrified",
        "nervous",
        "anxious",
        "frightened",
        "panicked",
        "spooked",
    ],
];

const EMOTION_FRAMES: &[&str] = &[
    "i feel {w} about the {n}",
    "so {w} after the {n}",
    "{w} by the {n}",
    "the {n} left me {w}",
];

/// (present markers, absent markers) per trait, in O, C, E, A, N order.
const TRAIT_WORDS: [(&[&str], &[&str]); 5] = [
    (
        &[
            "curious",
            "creative",
            "imaginative",
            "artistic",
            "adventurous",
            "novel",
            "poetic",
            "philosophical",
        ],
        &[
            "routine",
            "traditional",
            "familiar",
            "usual",
            "conventional",
            "predictable",
            "standard",
            "habitual",
        ],
    ),
    (
        &[
            "organized",
            "planned",
            "careful",
            "punctual",
            "tidy",
            "scheduled",
            "thorough",
            "disciplined",
        ],
        &[
            "messy",
            "improvised",
            "careless",
            "forgotten",
            "chaotic",
            "rushed",
            "sloppy",
            "random",
        ],
    ),
    (
        &[
            "party",
            "crowd",
            "friends",
            "loud",
            "social",
            "dancing",
            "talkative",
            "outgoing",
        ],
        &[
            "alone",
            "silent",
            "solitary",
            "private",
            "reserved",
            "withdrawn",
            "shy",
            "hermit",
        ],
    ),
    (
        &[
            "kind", "helpful", "warm", "gentle", "caring", "generous", "patient", "trusting",
        ],
        &[
            "harsh",
            "rude",
            "cold",
            "stubborn",
            "critical",
            "selfish",
            "hostile",
            "suspicious",
        ],
    ),
    (
        &[
            "anxious", "worried", "tense", "moody", "stressed", "insecure", "nervous", "upset",
        ],
        &[
            "relaxed",
            "stable",
            "calm",
            "steady",
            "secure",
            "composed",
            "easygoing",
            "serene",
        ],
    ),
];

const TRAIT_FRAMES: &[&str] = &[
    "i am always {w} about {n}",
    "my {n} are {w}",
    "feeling {w} with {n}",
    "{w} as usual with {n}",
];

/// How sarcastic items are realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanism {
    /// Positive opener about a negative situation.
    SentimentShift,
    /// An explicit marker phrase ("yeah right", ":P", ...) on otherwise
    /// ordinary sentences.
    LexicalMarker,
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mechanism::SentimentShift => "sentiment-shift",
            Mechanism::LexicalMarker => "lexical-marker",
        })
    }
}

impl FromStr for Mechanism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sentiment-shift" => Ok(Mechanism::SentimentShift),
            "lexical-marker" => Ok(Mechanism::LexicalMarker),
            other => Err(Error::config(format!(
                "unknown sarcasm mechanism {other:?}"
            ))),
        }
    }
}

/// What corpus to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    Sarcasm(Mechanism),
    /// Labelled for one of the auxiliary models.
    Auxiliary(ModelName),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub size: usize,
    pub kind: CorpusKind,
    /// Seeds every random choice of the generator.
    pub topic_seed: u64,
    /// Fraction of sarcastic items (sarcasm corpora only).
    pub balance: f64,
    /// Topic names drawn from [`TOPICS`]; empty means all topics.
    pub topics: Vec<String>,
    /// Fraction of the opener and adjective lists in use (prefixes of each
    /// list, so narrower lexicons are subsets of broader ones).
    pub lexicon_share: f64,
    /// Fraction of situations carrying a negator.
    pub negation_share: f64,
    /// Zipf exponent of adjective choice; 0 draws uniformly.
    pub skew: f64,
}

impl SynthSpec {
    pub fn sarcasm(size: usize, mechanism: Mechanism, topic_seed: u64) -> Self {
        Self {
            size,
            kind: CorpusKind::Sarcasm(mechanism),
            topic_seed,
            balance: 0.5,
            topics: Vec::new(),
            lexicon_share: 1.0,
            negation_share: 0.5,
            skew: 1.0,
        }
    }

    pub fn auxiliary(size: usize, model: ModelName, topic_seed: u64) -> Self {
        Self {
            size,
            kind: CorpusKind::Auxiliary(model),
            topic_seed,
            balance: 0.5,
            topics: Vec::new(),
            lexicon_share: 1.0,
            negation_share: 0.5,
            skew: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.size < 2 {
            return Err(Error::config(format!(
                "corpus size must be at least 2, got {}",
                self.size
            )));
        }
        if !(self.balance > 0.0 && self.balance < 1.0) {
            return Err(Error::config(format!(
                "balance must lie in (0, 1), got {}",
                self.balance
            )));
        }
        if !(self.lexicon_share > 0.0 && self.lexicon_share <= 1.0) {
            return Err(Error::config(format!(
                "lexicon share must lie in (0, 1], got {}",
                self.lexicon_share
            )));
        }
        if !(0.0..=1.0).contains(&self.negation_share) {
            return Err(Error::config(format!(
                "negation share must lie in [0, 1], got {}",
                self.negation_share
            )));
        }
        if !(self.skew >= 0.0 && self.skew.is_finite()) {
            return Err(Error::config(format!(
                "skew must be non-negative, got {}",
                self.skew
            )));
        }
        Ok(())
    }

    fn nouns(&self) -> Result<Vec<&'static str>> {
        if self.topics.is_empty() {
            return Ok(TOPICS.iter().flat_map(|(_, n)| n.iter().copied()).collect());
        }
        let mut out = Vec::new();
        for name in &self.topics {
            let (_, nouns) = TOPICS
                .iter()
                .find(|(t, _)| t == name)
                .ok_or_else(|| Error::config(format!("unknown topic {name:?}")))?;
            out.extend_from_slice(nouns);
        }
        Ok(out)
    }
}

fn share<'a>(list: &'a [&'a str], fraction: f64) -> &'a [&'a str] {
    let n = ((list.len() as f64 * fraction).ceil() as usize).clamp(1, list.len());
    &list[..n]
}

/// A word list with its sampling weights.
struct Weighted<'a> {
    words: &'a [&'a str],
    dist: WeightedIndex<f64>,
}

impl<'a> Weighted<'a> {
    fn new(words: &'a [&'a str], skew: f64) -> Self {
        let weights = (1..=words.len()).map(|r| (r as f64).powf(-skew));
        Self {
            words,
            dist: WeightedIndex::new(weights).expect("non-empty list with positive weights"),
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> &'a str {
        self.words[self.dist.sample(rng)]
    }
}

struct Lexicon<'a> {
    pos_open: &'a [&'a str],
    neg_open: &'a [&'a str],
    pos_adj: Weighted<'a>,
    neg_adj: Weighted<'a>,
    negation_share: f64,
    nouns: Vec<&'static str>,
}

impl Lexicon<'_> {
    fn pick<'b, R: Rng>(rng: &mut R, list: &'b [&'b str]) -> &'b str {
        list.choose(rng).expect("non-empty list")
    }

    fn noun<R: Rng>(&self, rng: &mut R) -> &'static str {
        self.nouns.choose(rng).expect("non-empty list")
    }

    /// `[negator] adjective noun` of the requested polarity.
    fn situation<R: Rng>(&self, rng: &mut R, positive: bool) -> String {
        let negated = rng.gen_bool(self.negation_share);
        let adj = if positive != negated {
            &self.pos_adj
        } else {
            &self.neg_adj
        }
        .sample(rng);
        let noun = self.noun(rng);
        if negated {
            format!("{} {adj} {noun}", Self::pick(rng, NEGATORS))
        } else {
            format!("{adj} {noun}")
        }
    }

    /// `[prefix] opener [the] adjective noun [filler]`
    fn sentence<R: Rng>(
        &self,
        rng: &mut R,
        positive_opener: bool,
        positive_situation: bool,
    ) -> String {
        let mut parts: Vec<&str> = Vec::with_capacity(7);
        if rng.gen_bool(0.25) {
            parts.push(Self::pick(rng, PREFIXES));
        }
        parts.push(Self::pick(
            rng,
            if positive_opener {
                self.pos_open
            } else {
                self.neg_open
            },
        ));
        let situation = self.situation(rng, positive_situation);
        if rng.gen_bool(0.3) && !NEGATORS.iter().any(|n| situation.starts_with(n)) {
            parts.push("the");
        }
        parts.push(&situation);
        if rng.gen_bool(0.5) {
            parts.push(Self::pick(rng, FILLERS));
        }
        parts.join(" ")
    }
}

/// Generates the corpus described by `spec`. Output order is shuffled but
/// fully determined by the spec.
pub fn generate(spec: &SynthSpec) -> Result<Vec<Record>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.topic_seed);
    let lex = Lexicon {
        pos_open: share(POSITIVE_OPENERS, spec.lexicon_share),
        neg_open: share(NEGATIVE_OPENERS, spec.lexicon_share),
        pos_adj: Weighted::new(share(POSITIVE_ADJECTIVES, spec.lexicon_share), spec.skew),
        neg_adj: Weighted::new(share(NEGATIVE_ADJECTIVES, spec.lexicon_share), spec.skew),
        negation_share: spec.negation_share,
        nouns: spec.nouns()?,
    };
    let mut items: Vec<(&str, String)> = match spec.kind {
        CorpusKind::Sarcasm(mechanism) => {
            let sarcastic = ((spec.size as f64) * spec.balance).round() as usize;
            let sarcastic = sarcastic.clamp(1, spec.size - 1);
            let mut items = Vec::with_capacity(spec.size);
            for i in 0..spec.size {
                let is_sarcastic = i < sarcastic;
                let text = match mechanism {
                    Mechanism::SentimentShift => {
                        if is_sarcastic {
                            lex.sentence(&mut rng, true, false)
                        } else {
                            let polarity = rng.gen_bool(CONSISTENT_POSITIVE);
                            lex.sentence(&mut rng, polarity, polarity)
                        }
                    }
                    Mechanism::LexicalMarker => {
                        let (o, s) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
                        let base = lex.sentence(&mut rng, o, s);
                        if is_sarcastic {
                            format!("{base} {}", Lexicon::pick(&mut rng, MARKERS))
                        } else {
                            base
                        }
                    }
                };
                items.push((SARCASM_CLASSES[usize::from(is_sarcastic)], text));
            }
            items
        }
        CorpusKind::Auxiliary(ModelName::Sentiment) => (0..spec.size)
            .map(|i| {
                let class = i % 3;
                let text = match class {
                    0 | 2 => {
                        let positive = class == 2;
                        match rng.gen_range(0..3) {
                            0 => lex.sentence(&mut rng, positive, positive),
                            1 => {
                                let lead = if rng.gen_bool(0.5) {
                                    "another day of"
                                } else {
                                    "so"
                                };
                                format!("{lead} {}", lex.situation(&mut rng, positive))
                            }
                            _ => format!(
                                "{} the {}",
                                Lexicon::pick(
                                    &mut rng,
                                    if positive { lex.pos_open } else { lex.neg_open }
                                ),
                                lex.noun(&mut rng)
                            ),
                        }
                    }
                    _ if rng.gen_bool(0.75) => {
                        let opener = rng.gen_bool(0.5);
                        lex.sentence(&mut rng, opener, !opener)
                    }
                    _ => format!(
                        "{} the {} {}",
                        Lexicon::pick(&mut rng, NEUTRAL_OPENERS),
                        lex.noun(&mut rng),
                        Lexicon::pick(&mut rng, FILLERS)
                    ),
                };
                (SENTIMENT_CLASSES[class], text)
            })
            .collect(),
        CorpusKind::Auxiliary(ModelName::Emotion) => (0..spec.size)
            .map(|i| {
                let class = i % EMOTION_CLASSES.len();
                let frame = Lexicon::pick(&mut rng, EMOTION_FRAMES);
                let text = frame
                    .replace("{w}", Lexicon::pick(&mut rng, EMOTION_WORDS[class]))
                    .replace("{n}", lex.noun(&mut rng));
                (EMOTION_CLASSES[class], text)
            })
            .collect(),
        CorpusKind::Auxiliary(ModelName::Personality(t)) => {
            let (present, absent) = TRAIT_WORDS[crate::model_zoo::OCEAN
                .iter()
                .position(|&x| x == t)
                .expect("trait listed")];
            (0..spec.size)
                .map(|i| {
                    let class = i % 2;
                    let frame = Lexicon::pick(&mut rng, TRAIT_FRAMES);
                    let words = if class == 1 { present } else { absent };
                    let text = frame
                        .replace("{w}", Lexicon::pick(&mut rng, words))
                        .replace("{n}", lex.noun(&mut rng));
                    (PERSONALITY_CLASSES[class], text)
                })
                .collect()
        }
        CorpusKind::Auxiliary(ModelName::Baseline) => {
            return Err(Error::config(
                "the baseline corpus is a sarcasm corpus; pick a mechanism instead",
            ))
        }
    };
    items.shuffle(&mut rng);
    Ok(items
        .into_iter()
        .enumerate()
        .map(|(i, (label, text))| Record {
            line: i + 1,
            label: label.to_string(),
            text,
        })
        .collect())
}
