//! Lexicon and rule based sentence sentiment, attributed to brands per sentence.
//!
//! Scoring uses a reduced VADER rule set: negation flips and damps a word's
//! valence, intensifiers push it away from zero, trailing exclamation marks
//! amplify the sentence, and the sum is squashed by `s / sqrt(s^2 + 15)`.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::preprocess::Preprocessor;

const VADER_LEXICON: &str = include_str!("../data/vader_lexicon.txt");

pub const NEGATION_SCALAR: f64 = -0.74;
pub const EXCLAMATION_BOOST: f64 = 0.292;
pub const MAX_EXCLAMATIONS: usize = 3;
pub const NORMALIZATION_ALPHA: f64 = 15.0;
/// How many preceding tokens negators and intensifiers reach.
pub const LOOKBACK: usize = 3;

const BOOST: f64 = 0.293;
const DAMP: f64 = -0.293;

const NEGATORS: &[&str] = &[
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt", "ain't", "aren't",
    "can't", "couldn't", "daren't", "didn't", "doesn't", "dont", "hadnt", "hasnt", "havent",
    "isnt", "mightnt", "mustnt", "neither", "don't", "hadn't", "hasn't", "haven't", "isn't",
    "mightn't", "mustn't", "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent", "oughtn't", "shan't",
    "shouldn't", "uh-uh", "wasn't", "weren't", "without", "wont", "wouldnt", "won't", "wouldn't",
    "rarely", "seldom", "despite",
];

const INTENSIFIERS: &[(&str, f64)] = &[
    ("absolutely", BOOST), ("amazingly", BOOST), ("awfully", BOOST), ("completely", BOOST),
    ("considerable", BOOST), ("considerably", BOOST), ("decidedly", BOOST), ("deeply", BOOST),
    ("effing", BOOST), ("enormous", BOOST), ("enormously", BOOST), ("entirely", BOOST),
    ("especially", BOOST), ("exceptional", BOOST), ("exceptionally", BOOST), ("extreme", BOOST),
    ("extremely", BOOST), ("fabulously", BOOST), ("flipping", BOOST), ("flippin", BOOST),
    ("frackin", BOOST), ("fracking", BOOST), ("fricking", BOOST), ("frickin", BOOST),
    ("frigging", BOOST), ("friggin", BOOST), ("fully", BOOST), ("fuckin", BOOST),
    ("fucking", BOOST), ("fuggin", BOOST), ("fugging", BOOST), ("greatly", BOOST),
    ("hella", BOOST), ("highly", BOOST), ("hugely", BOOST), ("incredible", BOOST),
    ("incredibly", BOOST), ("intensely", BOOST), ("major", BOOST), ("majorly", BOOST),
    ("more", BOOST), ("most", BOOST), ("particularly", BOOST), ("purely", BOOST),
    ("quite", BOOST), ("really", BOOST), ("remarkably", BOOST), ("so", BOOST),
    ("substantially", BOOST), ("thoroughly", BOOST), ("total", BOOST), ("totally", BOOST),
    ("tremendous", BOOST), ("tremendously", BOOST), ("uber", BOOST), ("unbelievably", BOOST),
    ("unusually", BOOST), ("utter", BOOST), ("utterly", BOOST), ("very", BOOST),
    ("almost", DAMP), ("barely", DAMP), ("hardly", DAMP), ("kinda", DAMP), ("kindof", DAMP),
    ("kind-of", DAMP), ("less", DAMP), ("little", DAMP), ("marginal", DAMP),
    ("marginally", DAMP), ("occasional", DAMP), ("occasionally", DAMP), ("partly", DAMP),
    ("scarce", DAMP), ("scarcely", DAMP), ("slight", DAMP), ("slightly", DAMP),
    ("somewhat", DAMP), ("sorta", DAMP), ("sortof", DAMP), ("sort-of", DAMP),
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentimentLexicon {
    pub valence: HashMap<String, f64>,
    pub negators: HashSet<String>,
    pub intensifiers: HashMap<String, f64>,
}

impl SentimentLexicon {
    /// Reads VADER's tab-separated format (`token<TAB>valence<TAB>...`); only the
    /// first two columns are used. Negators and intensifiers are the English defaults.
    pub fn parse_vader(text: &str) -> Result<Self> {
        let mut valence = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let mut cols = line.split('\t');
            let token = cols.next().unwrap_or("").trim();
            let raw = cols.next().ok_or_else(|| Error::Lexicon {
                line: n + 1,
                message: "expected token<TAB>valence".into(),
            })?;
            let value: f64 = raw.trim().parse().map_err(|_| Error::Lexicon {
                line: n + 1,
                message: format!("bad valence {raw:?}"),
            })?;
            if token.is_empty() {
                return Err(Error::Lexicon {
                    line: n + 1,
                    message: "empty token".into(),
                });
            }
            valence.insert(token.to_lowercase(), value.clamp(-4.0, 4.0));
        }
        Ok(Self::with_english_rules(valence))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_vader(&text)
    }

    /// The full VADER lexicon shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse_vader(VADER_LEXICON).expect("bundled lexicon parses")
    }

    pub fn with_english_rules(valence: HashMap<String, f64>) -> Self {
        SentimentLexicon {
            valence,
            negators: NEGATORS.iter().map(|s| s.to_string()).collect(),
            intensifiers: INTENSIFIERS.iter().map(|&(w, v)| (w.to_string(), v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrandSentiment {
    pub interval: String,
    pub brand: String,
    pub score: f64,
    pub sentence_count: usize,
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Splits on `.`, `!` or `?` followed by whitespace or the end of text. The
/// terminators stay with their sentence, so "Mr. Smith" is split after "Mr.".
pub fn split_sentences(raw: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut chars = raw.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if !is_terminator(c) {
            continue;
        }
        let boundary = match chars.peek() {
            None => true,
            Some(&(_, next)) => next.is_whitespace(),
        };
        if boundary {
            let end = i + c.len_utf8();
            let sentence = raw[start..end].trim();
            if !sentence.is_empty() {
                out.push(sentence.to_string());
            }
            start = end;
        }
    }
    let rest = raw[start..].trim();
    if !rest.is_empty() {
        out.push(rest.to_string());
    }
    out
}

fn sentiment_tokens(sentence: &str) -> Vec<String> {
    sentence
        .split_whitespace()
        .map(|word| {
            let lower = word.to_lowercase();
            let stripped = lower.trim_matches(|c: char| !c.is_alphanumeric());
            // keep emoticons such as ":)" whole
            if stripped.is_empty() {
                lower
            } else {
                stripped.to_string()
            }
        })
        .collect()
}

fn trailing_exclamations(sentence: &str) -> usize {
    sentence
        .trim_end()
        .chars()
        .rev()
        .take_while(|&c| c == '!')
        .count()
}

/// Sentiment of one sentence in (-1, 1).
pub fn score_sentence(sentence: &str, lexicon: &SentimentLexicon) -> f64 {
    let tokens = sentiment_tokens(sentence);
    let mut total = 0.0;
    for (i, token) in tokens.iter().enumerate() {
        if lexicon.intensifiers.contains_key(token) {
            continue;
        }
        let Some(&base) = lexicon.valence.get(token) else {
            continue;
        };
        let window = &tokens[i.saturating_sub(LOOKBACK)..i];
        let mut v = base;
        if window.iter().any(|w| lexicon.negators.contains(w)) {
            v *= NEGATION_SCALAR;
        }
        for w in window {
            if let Some(&inc) = lexicon.intensifiers.get(w) {
                v = v.signum() * (v.abs() + inc);
            }
        }
        total += v;
    }
    if total != 0.0 {
        let bangs = trailing_exclamations(sentence).min(MAX_EXCLAMATIONS);
        total += total.signum() * EXCLAMATION_BOOST * bangs as f64;
    }
    total / (total * total + NORMALIZATION_ALPHA).sqrt()
}

/// Sentences of `doc` whose normalized tokens contain the brand.
pub fn brand_sentences(doc: &Document, brand: &str, pre: &Preprocessor) -> Vec<String> {
    split_sentences(&doc.text)
        .into_iter()
        .filter(|s| pre.normalize(s).iter().any(|t| t == brand))
        .collect()
}

/// Document-weighted mean sentence score for each brand over `docs`.
///
/// Each sentence is normalized once and credited to every brand it mentions.
/// Zero-weight documents are ignored.
pub fn bucket_sentiment(
    docs: &[Document],
    brands: &[&str],
    lexicon: &SentimentLexicon,
    pre: &Preprocessor,
) -> Vec<BrandSentiment> {
    let mut weighted = vec![0.0; brands.len()];
    let mut weights = vec![0.0; brands.len()];
    let mut counts = vec![0usize; brands.len()];
    for doc in docs.iter().filter(|d| d.weight > 0.0) {
        for sentence in split_sentences(&doc.text) {
            let tokens = pre.normalize(&sentence);
            let mentioned: Vec<usize> = (0..brands.len())
                .filter(|&b| tokens.iter().any(|t| t == brands[b]))
                .collect();
            if mentioned.is_empty() {
                continue;
            }
            let score = score_sentence(&sentence, lexicon);
            for b in mentioned {
                weighted[b] += doc.weight * score;
                weights[b] += doc.weight;
                counts[b] += 1;
            }
        }
    }
    brands
        .iter()
        .enumerate()
        .map(|(b, &brand)| BrandSentiment {
            interval: String::new(),
            brand: brand.to_string(),
            score: if weights[b] > 0.0 { weighted[b] / weights[b] } else { 0.0 },
            sentence_count: counts[b],
        })
        .collect()
}

pub fn brand_sentiment(
    docs: &[Document],
    brand: &str,
    lexicon: &SentimentLexicon,
    pre: &Preprocessor,
) -> BrandSentiment {
    bucket_sentiment(docs, &[brand], lexicon, pre)
        .pop()
        .expect("one brand in, one result out")
}
