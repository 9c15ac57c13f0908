//! Text cleaning, tokenization, stemming and brand alias collapse.

use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use rust_stemmers::Stemmer;
use serde::Serialize;

use crate::config::{AnalysisConfig, BrandSpec, Language};
use crate::corpus::{truncated_len, Document};
use crate::error::{Error, Result};

const ENGLISH_STOPWORDS: &str = include_str!("../data/stopwords/english.txt");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TokenStream {
    pub doc_id: String,
    pub tokens: Vec<String>,
    pub weight: f64,
}

/// Stopword set for one language. Lookup is case-insensitive.
#[derive(Debug, Clone)]
pub struct StopwordList {
    pub language: Language,
    words: HashSet<String>,
}

impl StopwordList {
    /// Parses one word per line; `#` starts a comment.
    pub fn parse(language: Language, text: &str) -> Self {
        let words = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|w| !w.is_empty())
            .map(str::to_lowercase)
            .collect();
        StopwordList { language, words }
    }

    pub fn load(language: Language, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(language, &text))
    }

    /// The list shipped with the crate. Only English is bundled; other languages
    /// need an explicit stopword file.
    pub fn bundled(language: Language) -> Result<Self> {
        match language {
            Language::English => Ok(Self::parse(language, ENGLISH_STOPWORDS)),
            other => Err(Error::config(format!(
                "no bundled stopword list for {other:?}; set `stopwords` in the config"
            ))),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        if self.words.contains(word) {
            return true;
        }
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn url_pattern() -> &'static Regex {
    static URL: OnceLock<Regex> = OnceLock::new();
    URL.get_or_init(|| {
        Regex::new(r"(?i)(?:\b[a-z][a-z0-9+.\-]*://|\bwww\.)\S*").expect("valid url regex")
    })
}

/// Removes URLs, replaces punctuation and special characters by spaces and
/// collapses whitespace. Digits and letter case are kept.
pub fn clean_text(raw: &str) -> String {
    let without_urls = url_pattern().replace_all(raw, " ");
    let spaced: String = without_urls
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect();
    spaced.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Lowercases, drops stopwords (checked on the surface form) and stems what is left.
pub fn tokenize_and_normalize(clean: &str, stopwords: &StopwordList, language: Language) -> Vec<String> {
    let stemmer = Stemmer::create(language.stemmer_algorithm());
    normalize_with(clean, stopwords, &stemmer)
}

fn normalize_with(clean: &str, stopwords: &StopwordList, stemmer: &Stemmer) -> Vec<String> {
    clean
        .split_whitespace()
        .filter_map(|word| {
            let lower: String = word
                .to_lowercase()
                .chars()
                .filter(|c| c.is_alphanumeric())
                .collect();
            if lower.is_empty() || stopwords.contains(&lower) {
                return None;
            }
            let stem = stemmer.stem(&lower).into_owned();
            // "wills" stems to the stopword "will"
            (!stem.is_empty() && !stopwords.contains(&stem)).then_some(stem)
        })
        .collect()
}

/// Normalized alias n-grams mapped to brand canonical ids.
#[derive(Debug, Clone, Default)]
pub struct AliasTable {
    aliases: HashMap<Vec<String>, String>,
    longest: usize,
}

impl AliasTable {
    /// Runs every alias through the same normalization as document text.
    ///
    /// Fails when an alias normalizes to nothing or when two brands end up
    /// sharing a normalized alias.
    pub fn compile(brands: &[BrandSpec], stopwords: &StopwordList, language: Language) -> Result<Self> {
        let stemmer = Stemmer::create(language.stemmer_algorithm());
        let mut table = AliasTable::default();
        for brand in brands {
            for alias in &brand.aliases {
                let tokens = normalize_with(&clean_text(alias), stopwords, &stemmer);
                if tokens.is_empty() {
                    return Err(Error::config(format!(
                        "alias {alias:?} of brand {:?} is empty after normalization",
                        brand.canonical_id
                    )));
                }
                match table.aliases.get(&tokens) {
                    Some(owner) if owner != &brand.canonical_id => {
                        return Err(Error::config(format!(
                            "alias {alias:?} collides between brands {owner:?} and {:?}",
                            brand.canonical_id
                        )));
                    }
                    Some(_) => {}
                    None => {
                        table.longest = table.longest.max(tokens.len());
                        table.aliases.insert(tokens, brand.canonical_id.clone());
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn is_empty(&self) -> bool {
        self.aliases.is_empty()
    }
}

/// Replaces alias n-grams with their canonical brand token, scanning left to
/// right and preferring the longest alias at each position.
pub fn collapse_brand_aliases(tokens: &[String], table: &AliasTable) -> Vec<String> {
    let mut out = Vec::with_capacity(tokens.len());
    let mut i = 0;
    'scan: while i < tokens.len() {
        let max_len = table.longest.min(tokens.len() - i);
        for len in (1..=max_len).rev() {
            if let Some(id) = table.aliases.get(&tokens[i..i + len]) {
                out.push(id.clone());
                i += len;
                continue 'scan;
            }
        }
        out.push(tokens[i].clone());
        i += 1;
    }
    out
}

/// The configured text pipeline, built once and shared across documents.
pub struct Preprocessor {
    stopwords: StopwordList,
    stemmer: Stemmer,
    aliases: AliasTable,
    text_fraction: f64,
}

impl Preprocessor {
    pub fn new(config: &AnalysisConfig, stopwords: StopwordList) -> Result<Self> {
        if stopwords.language != config.language {
            return Err(Error::config(format!(
                "stopword list is for {:?} but analysis language is {:?}",
                stopwords.language, config.language
            )));
        }
        let aliases = AliasTable::compile(&config.brands, &stopwords, config.language)?;
        Ok(Preprocessor {
            stemmer: Stemmer::create(config.language.stemmer_algorithm()),
            stopwords,
            aliases,
            text_fraction: config.text_fraction,
        })
    }

    /// clean, tokenize and collapse aliases, without truncation.
    pub fn normalize(&self, raw: &str) -> Vec<String> {
        let tokens = normalize_with(&clean_text(raw), &self.stopwords, &self.stemmer);
        collapse_brand_aliases(&tokens, &self.aliases)
    }

    pub fn preprocess_document(&self, doc: &Document) -> TokenStream {
        let mut tokens = self.normalize(&doc.text);
        tokens.truncate(truncated_len(tokens.len(), self.text_fraction));
        TokenStream {
            doc_id: doc.id.clone(),
            tokens,
            weight: doc.weight,
        }
    }
}
