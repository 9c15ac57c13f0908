//! End-to-end run: ingest, preprocess, per-interval networks, SBS, sentiment,
//! insights, then ordered emission of every artifact.

use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{AnalysisConfig, InsightOptions, RunConfig};
use crate::cooc::{build_network, filter_network, CoocNetwork};
use crate::corpus::{bucket_documents, read_corpus, Diagnostics, TimeInterval};
use crate::error::{Error, Result, Stage, StageExt};
use crate::insights::{
    brand_associations, brand_similarity, extract_topics, target_words, top_words, topic_summaries,
    unique_associations, word_importance, AssociationProfile, Embedding2D, TargetWord, TopicModel,
};
use crate::metrics::{compute_sbs_from_scores, proportional_sbs, NodeScores, SbsResult, Triple};
use crate::preprocess::{Preprocessor, StopwordList, TokenStream};
use crate::report::{emit_report, result_rows, rescale_0_100, to_json, write_results, ChartData};
use crate::sentiment::{bucket_sentiment, BrandSentiment, SentimentLexicon};

/// Per-interval interpretation aids.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalInsights {
    pub top_words: Vec<(String, f64)>,
    pub top_associations: Vec<(String, Vec<(String, f64)>)>,
    pub unique: Vec<(String, Vec<String>)>,
    pub similarity: Vec<Vec<f64>>,
    pub embedding: Embedding2D,
    pub topics: TopicModel,
    pub targets: Vec<(String, Vec<TargetWord>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalAnalysis {
    pub label: String,
    pub interval: TimeInterval,
    pub documents: usize,
    /// Network after the `min_cooc` filter.
    pub network: CoocNetwork,
    /// Empty when the network has no nodes.
    pub results: Vec<SbsResult>,
    /// Brand triples rescaled to [0, 100], parallel to `results`.
    pub stacked: Vec<Triple>,
    pub sentiment: Vec<BrandSentiment>,
    pub insights: Option<IntervalInsights>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub brands: Vec<String>,
    pub intervals: Vec<IntervalAnalysis>,
    pub diagnostics: Diagnostics,
    pub corpus_digest: String,
    /// Wall-clock seconds per stage, in pipeline order.
    pub timings: Vec<(Stage, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalCount {
    pub label: String,
    pub documents: usize,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

/// Provenance of one run. Only `timings` varies between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub version: String,
    pub seed: u64,
    pub corpus_sha256: String,
    pub config: RunConfig,
    pub diagnostics: Diagnostics,
    pub intervals: Vec<IntervalCount>,
    pub timings: Vec<StageTiming>,
}

struct Stopwatch {
    last: Instant,
    laps: Vec<(Stage, f64)>,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            last: Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, stage: Stage) {
        let now = Instant::now();
        // a stage always does some work; keep the reading strictly positive
        let secs = (now - self.last).as_secs_f64().max(1e-9);
        self.laps.push((stage, secs));
        self.last = now;
    }
}

fn load_stopwords(config: &RunConfig) -> Result<StopwordList> {
    match &config.stopwords {
        Some(path) => StopwordList::load(config.analysis.language, path),
        None => StopwordList::bundled(config.analysis.language),
    }
}

fn load_lexicon(config: &RunConfig) -> Result<SentimentLexicon> {
    match &config.lexicon {
        Some(path) => SentimentLexicon::load(path),
        None => Ok(SentimentLexicon::bundled()),
    }
}

fn worker_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::config(format!("cannot start {workers} workers: {e}")))
}

fn interval_streams(pre: &Preprocessor, docs: &[crate::corpus::Document]) -> Vec<TokenStream> {
    docs.iter().map(|d| pre.preprocess_document(d)).collect()
}

fn interval_insights(
    net: &CoocNetwork,
    analysis: &AnalysisConfig,
    options: &InsightOptions,
    prune_threshold: f64,
    seed: u64,
) -> IntervalInsights {
    let brands: Vec<&str> = analysis.brands.iter().map(|b| b.canonical_id.as_str()).collect();
    let profiles: Vec<AssociationProfile> = brands
        .iter()
        .map(|b| AssociationProfile::from_network(net, b))
        .collect();
    let similarity = brand_similarity(&profiles);
    let brand_ids: Vec<String> = brands.iter().map(|b| b.to_string()).collect();

    let mut topics = extract_topics(net, prune_threshold, seed);
    let pruned = crate::insights::prune_network(net, prune_threshold);
    word_importance(&pruned, &mut topics);
    topic_summaries(&pruned, &mut topics, &brands, options.topic_top_k);

    let targets = brands
        .iter()
        .map(|&brand| {
            let forbidden: HashSet<&str> = brands.iter().copied().filter(|b| *b != brand).collect();
            let words = target_words(net, brand, options.target_budget, &forbidden, options.candidate_pool);
            (brand.to_string(), words)
        })
        .collect();

    IntervalInsights {
        top_words: top_words(net, options.top_words),
        top_associations: brands
            .iter()
            .map(|&b| (b.to_string(), brand_associations(net, b, options.associations)))
            .collect(),
        unique: unique_associations(&profiles, options.unique_window),
        embedding: Embedding2D::from_similarity(&brand_ids, &similarity),
        similarity,
        topics,
        targets,
    }
}

/// Runs every analysis stage and keeps the results in memory.
pub fn analyze(config: &RunConfig) -> Result<Analysis> {
    worker_pool(config.workers)?.install(|| analyze_in_pool(config))
}

fn analyze_in_pool(config: &RunConfig) -> Result<Analysis> {
    let analysis = &config.analysis;
    let mut clock = Stopwatch::start();

    let bytes = fs::read(&config.corpus)
        .map_err(|e| Error::io(&config.corpus, e))
        .stage(Stage::Ingest)?;
    let corpus_digest = hex::encode(Sha256::digest(&bytes));
    let docs = read_corpus(bytes.as_slice(), analysis).stage(Stage::Ingest)?;
    let (buckets, diagnostics) = bucket_documents(&docs, &analysis.intervals);
    clock.lap(Stage::Ingest);

    let pre = load_stopwords(config)
        .and_then(|sw| Preprocessor::new(analysis, sw))
        .stage(Stage::Preprocess)?;
    let streams: Vec<Vec<TokenStream>> = buckets
        .par_iter()
        .map(|b| interval_streams(&pre, &b.documents))
        .collect();
    clock.lap(Stage::Preprocess);

    let networks: Vec<CoocNetwork> = streams
        .par_iter()
        .map(|s| filter_network(&build_network(s, analysis.cooc_range), analysis.min_cooc))
        .collect();
    clock.lap(Stage::Network);

    let labels: Vec<String> = buckets.iter().map(|b| b.interval.label()).collect();
    let scored: Vec<Option<(Vec<SbsResult>, Vec<Triple>)>> = networks
        .par_iter()
        .zip(&labels)
        .map(|(net, label)| {
            if net.is_empty() {
                return Ok(None);
            }
            let scores = NodeScores::compute(net);
            let mut results = compute_sbs_from_scores(net, &scores, &analysis.brands, analysis.standardization)?;
            for r in &mut results {
                r.interval = label.clone();
            }
            proportional_sbs(&mut results);
            let raw: Vec<Triple> = results.iter().map(|r| r.raw).collect();
            Ok(Some((results, rescale_0_100(&raw, &scores))))
        })
        .collect::<Result<_>>()
        .stage(Stage::Metrics)?;
    clock.lap(Stage::Metrics);

    let lexicon = load_lexicon(config).stage(Stage::Sentiment)?;
    let brand_ids: Vec<&str> = analysis.brands.iter().map(|b| b.canonical_id.as_str()).collect();
    let sentiment: Vec<Vec<BrandSentiment>> = buckets
        .par_iter()
        .zip(&networks)
        .zip(&labels)
        .map(|((bucket, net), label)| {
            if net.is_empty() {
                return Vec::new();
            }
            let mut out = bucket_sentiment(&bucket.documents, &brand_ids, &lexicon, &pre);
            for s in &mut out {
                s.interval = label.clone();
            }
            out
        })
        .collect();
    clock.lap(Stage::Sentiment);

    let prune = config.prune_threshold();
    let insights: Vec<Option<IntervalInsights>> = networks
        .par_iter()
        .map(|net| (!net.is_empty()).then(|| interval_insights(net, analysis, &config.insights, prune, config.seed)))
        .collect();
    clock.lap(Stage::Insights);

    let intervals = buckets
        .into_iter()
        .zip(networks)
        .zip(scored)
        .zip(sentiment)
        .zip(insights)
        .zip(labels)
        .map(|(((((bucket, network), scored), sentiment), insights), label)| {
            let (results, stacked) = scored.unwrap_or_default();
            IntervalAnalysis {
                label,
                interval: bucket.interval,
                documents: bucket.documents.len(),
                network,
                results,
                stacked,
                sentiment,
                insights,
            }
        })
        .collect();

    Ok(Analysis {
        brands: brand_ids.iter().map(|b| b.to_string()).collect(),
        intervals,
        diagnostics,
        corpus_digest,
        timings: clock.laps,
    })
}

/// Runs the whole pipeline and writes every artifact into `config.output_dir`.
pub fn run_pipeline(config: &RunConfig) -> Result<RunManifest> {
    let analysis = analyze(config)?;
    let start = Instant::now();
    let dir = &config.output_dir;
    let rows = result_rows(&analysis);

    let emitted = (|| {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_results(&analysis, &rows, dir)?;
        emit_report(&ChartData::build(&analysis, &rows), dir)
    })();
    emitted.stage(Stage::Emit)?;

    let mut timings = analysis.timings.clone();
    timings.push((Stage::Emit, start.elapsed().as_secs_f64().max(1e-9)));
    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
        corpus_sha256: analysis.corpus_digest.clone(),
        config: config.clone(),
        diagnostics: analysis.diagnostics,
        intervals: analysis
            .intervals
            .iter()
            .map(|iv| IntervalCount {
                label: iv.label.clone(),
                documents: iv.documents,
                rows: iv.results.len(),
            })
            .collect(),
        timings: timings
            .into_iter()
            .map(|(stage, seconds)| StageTiming {
                stage: stage.to_string(),
                seconds,
            })
            .collect(),
    };
    let path = dir.join("manifest.json");
    fs::write(&path, to_json(&manifest)?)
        .map_err(|e| Error::io(&path, e))
        .stage(Stage::Emit)?;
    Ok(manifest)
}

/// Loads `path` and runs the pipeline with its settings.
pub fn run_pipeline_from_path(path: &Path) -> Result<RunManifest> {
    let config = RunConfig::load(path).stage(Stage::Config)?;
    run_pipeline(&config)
}

/// Filtered network of the interval whose label is `label`.
pub fn interval_network(config: &RunConfig, label: &str) -> Result<CoocNetwork> {
    let analysis = &config.analysis;
    let interval = analysis
        .intervals
        .iter()
        .find(|iv| iv.label() == label)
        .copied()
        .ok_or_else(|| Error::config(format!("no interval labelled {label:?}")))
        .stage(Stage::Config)?;
    let docs = crate::corpus::parse_corpus(&config.corpus, analysis).stage(Stage::Ingest)?;
    let (buckets, _) = bucket_documents(&docs, &[interval]);
    let pre = load_stopwords(config)
        .and_then(|sw| Preprocessor::new(analysis, sw))
        .stage(Stage::Preprocess)?;
    let streams = interval_streams(&pre, &buckets[0].documents);
    Ok(filter_network(&build_network(&streams, analysis.cooc_range), analysis.min_cooc))
}
