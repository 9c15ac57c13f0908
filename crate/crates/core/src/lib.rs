//! Semantic Brand Score analytics over a timestamped text corpus.
//!
//! The usual entry point is [`run_pipeline`] with a [`RunConfig`] loaded from
//! TOML. Every stage is also usable on its own.

pub mod config;
pub mod cooc;
pub mod corpus;
pub mod error;
pub mod insights;
pub mod metrics;
pub mod pajek;
pub mod pipeline;
pub mod preprocess;
pub mod report;
pub mod sentiment;

pub use config::{AnalysisConfig, BrandSpec, InsightOptions, Language, RunConfig, Standardization};
pub use cooc::{build_network, filter_network, CoocNetwork};
pub use corpus::{Diagnostics, Document, TimeBucket, TimeInterval};
pub use error::{Error, Result, Stage};
pub use insights::{AssociationProfile, Embedding2D, TargetWord, TopicModel};
pub use metrics::{NodeScores, SbsResult, Triple};
pub use pipeline::{analyze, interval_network, run_pipeline, run_pipeline_from_path, Analysis, RunManifest};
pub use preprocess::{Preprocessor, StopwordList, TokenStream};
pub use report::{ChartData, ResultRow};
pub use sentiment::{BrandSentiment, SentimentLexicon};
