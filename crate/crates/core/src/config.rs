//! Analysis configuration and the declarative run-file schema.
//!
//! A run file is TOML. Relative paths inside it resolve against the directory
//! containing the file, so a config and its corpus can travel together.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rust_stemmers::Algorithm;
use serde::{Deserialize, Serialize};

use crate::corpus::{parse_timestamp, TimeInterval};
use crate::error::{Error, Result};

/// Language tag selecting the stopword list and Snowball stemmer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Arabic,
    Danish,
    Dutch,
    English,
    Finnish,
    French,
    German,
    Greek,
    Hungarian,
    Italian,
    Norwegian,
    Portuguese,
    Romanian,
    Russian,
    Spanish,
    Swedish,
    Tamil,
    Turkish,
}

impl Language {
    pub fn stemmer_algorithm(self) -> Algorithm {
        match self {
            Language::Arabic => Algorithm::Arabic,
            Language::Danish => Algorithm::Danish,
            Language::Dutch => Algorithm::Dutch,
            Language::English => Algorithm::English,
            Language::Finnish => Algorithm::Finnish,
            Language::French => Algorithm::French,
            Language::German => Algorithm::German,
            Language::Greek => Algorithm::Greek,
            Language::Hungarian => Algorithm::Hungarian,
            Language::Italian => Algorithm::Italian,
            Language::Norwegian => Algorithm::Norwegian,
            Language::Portuguese => Algorithm::Portuguese,
            Language::Romanian => Algorithm::Romanian,
            Language::Russian => Algorithm::Russian,
            Language::Spanish => Algorithm::Spanish,
            Language::Swedish => Algorithm::Swedish,
            Language::Tamil => Algorithm::Tamil,
            Language::Turkish => Algorithm::Turkish,
        }
    }
}

/// How each raw measure is standardized over all nodes of a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Standardization {
    ZScore,
    MinMax,
    MedianIqr,
}

/// A brand: the node name used in networks plus the surface forms that map onto it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrandSpec {
    #[serde(rename = "id")]
    pub canonical_id: String,
    pub aliases: Vec<String>,
}

impl BrandSpec {
    pub fn new(canonical_id: impl Into<String>, aliases: &[&str]) -> Self {
        BrandSpec {
            canonical_id: canonical_id.into(),
            aliases: aliases.iter().map(|a| a.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub language: Language,
    pub intervals: Vec<TimeInterval>,
    pub cooc_range: usize,
    pub min_cooc: f64,
    pub text_fraction: f64,
    pub standardization: Standardization,
    pub brands: Vec<BrandSpec>,
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cooc_range < 1 {
            return Err(Error::config("cooc_range must be at least 1"));
        }
        if !(self.text_fraction > 0.0 && self.text_fraction <= 1.0) {
            return Err(Error::config("text_fraction must lie in (0, 1]"));
        }
        if !(self.min_cooc >= 0.0 && self.min_cooc.is_finite()) {
            return Err(Error::config("min_cooc must be a nonnegative number"));
        }
        if self.intervals.is_empty() {
            return Err(Error::config("at least one interval is required"));
        }
        for iv in &self.intervals {
            if iv.start >= iv.end {
                return Err(Error::config(format!("interval {} is empty", iv.label())));
            }
        }
        for pair in self.intervals.windows(2) {
            if pair[1].start < pair[0].end {
                return Err(Error::config(format!(
                    "intervals {} and {} overlap or are out of order",
                    pair[0].label(),
                    pair[1].label()
                )));
            }
            // labels are start dates and name output files
            if pair[0].label() == pair[1].label() {
                return Err(Error::config(format!(
                    "two intervals start on {}; labels must be unique",
                    pair[0].label()
                )));
            }
        }
        if self.brands.is_empty() {
            return Err(Error::config("at least one brand is required"));
        }
        let mut seen = HashSet::new();
        for brand in &self.brands {
            let id = &brand.canonical_id;
            if id.is_empty() || !id.chars().all(|c| c.is_alphanumeric() && !c.is_uppercase()) {
                return Err(Error::config(format!(
                    "brand id {id:?} must be nonempty lowercase alphanumeric"
                )));
            }
            if !seen.insert(id.as_str()) {
                return Err(Error::config(format!("duplicate brand id {id:?}")));
            }
            if brand.aliases.is_empty() {
                return Err(Error::config(format!("brand {id:?} has no aliases")));
            }
        }
        Ok(())
    }
}

/// Knobs for the association, topic and target-word analytics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InsightOptions {
    pub top_words: usize,
    pub associations: usize,
    pub unique_window: usize,
    pub topic_top_k: usize,
    /// Edge weight below which links are dropped before clustering; defaults to `min_cooc`.
    pub prune_threshold: Option<f64>,
    pub target_budget: usize,
    pub candidate_pool: usize,
}

impl Default for InsightOptions {
    fn default() -> Self {
        InsightOptions {
            top_words: 20,
            associations: 10,
            unique_window: 25,
            topic_top_k: 10,
            prune_threshold: None,
            target_budget: 3,
            candidate_pool: 30,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalFile {
    start: String,
    end: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    corpus: PathBuf,
    #[serde(default = "default_output_dir")]
    output_dir: PathBuf,
    lexicon: Option<PathBuf>,
    stopwords: Option<PathBuf>,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_workers")]
    workers: usize,
    language: Language,
    intervals: Vec<IntervalFile>,
    cooc_range: usize,
    #[serde(default)]
    min_cooc: f64,
    #[serde(default = "default_text_fraction")]
    text_fraction: f64,
    #[serde(default = "default_standardization")]
    standardization: Standardization,
    brands: Vec<BrandSpec>,
    #[serde(default)]
    insights: InsightOptions,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_workers() -> usize {
    1
}

fn default_text_fraction() -> f64 {
    1.0
}

fn default_standardization() -> Standardization {
    Standardization::ZScore
}

/// Everything a pipeline run needs, with paths already resolved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub output_dir: PathBuf,
    pub lexicon: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub seed: u64,
    pub workers: usize,
    pub analysis: AnalysisConfig,
    pub insights: InsightOptions,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        Self::from_toml(&text, base)
    }

    pub fn from_toml(text: &str, base: &Path) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::config(e.to_string()))?;

        let mut intervals = Vec::with_capacity(file.intervals.len());
        for iv in &file.intervals {
            let start = parse_timestamp(&iv.start)
                .ok_or_else(|| Error::config(format!("bad interval start {:?}", iv.start)))?;
            let end = parse_timestamp(&iv.end)
                .ok_or_else(|| Error::config(format!("bad interval end {:?}", iv.end)))?;
            intervals.push(TimeInterval { start, end });
        }

        let analysis = AnalysisConfig {
            language: file.language,
            intervals,
            cooc_range: file.cooc_range,
            min_cooc: file.min_cooc,
            text_fraction: file.text_fraction,
            standardization: file.standardization,
            brands: file.brands,
        };
        analysis.validate()?;

        if file.workers == 0 {
            return Err(Error::config("workers must be at least 1"));
        }
        let ins = &file.insights;
        if ins.top_words == 0
            || ins.associations == 0
            || ins.unique_window == 0
            || ins.topic_top_k == 0
            || ins.target_budget == 0
            || ins.candidate_pool == 0
        {
            return Err(Error::config("insight counts must be positive"));
        }
        if let Some(t) = ins.prune_threshold {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::config("prune_threshold must be a nonnegative number"));
            }
        }

        let resolve = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };
        Ok(RunConfig {
            corpus: resolve(file.corpus),
            output_dir: resolve(file.output_dir),
            lexicon: file.lexicon.map(resolve),
            stopwords: file.stopwords.map(resolve),
            seed: file.seed,
            workers: file.workers,
            analysis,
            insights: file.insights,
        })
    }

    pub fn prune_threshold(&self) -> f64 {
        self.insights.prune_threshold.unwrap_or(self.analysis.min_cooc)
    }
}
