//! Interpretation aids built on top of an interval's network: brand
//! associations, brand similarity, topics and link suggestions.

mod associations;
mod similarity;
mod targets;
mod topics;

pub use associations::{brand_associations, top_words, unique_associations, AssociationProfile};
pub use similarity::{brand_similarity, cosine, mds_embed, Embedding2D};
pub use targets::{target_words, TargetWord};
pub use topics::{
    extract_topics, iw, louvain, modularity, prune_network, topic_summaries, word_importance, Topic, TopicModel,
};
