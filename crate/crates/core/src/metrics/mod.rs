//! Semantic Brand Score: prevalence, diversity and connectivity of brand nodes,
//! standardized over every word in the network.

mod centrality;
mod standardize;

pub use centrality::{betweenness_all, connectivity, diversity, diversity_all, prevalence};
pub use standardize::{standardize, Standardizer};


use serde::{Deserialize, Serialize};

use crate::config::{BrandSpec, Standardization};
use crate::cooc::CoocNetwork;
use crate::error::{Error, Result};

/// One value per SBS dimension.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Triple {
    pub prevalence: f64,
    pub diversity: f64,
    pub connectivity: f64,
}

impl Triple {
    pub fn sum(&self) -> f64 {
        self.prevalence + self.diversity + self.connectivity
    }

    fn map(&self, mut f: impl FnMut(Dimension, f64) -> f64) -> Triple {
        Triple {
            prevalence: f(Dimension::Prevalence, self.prevalence),
            diversity: f(Dimension::Diversity, self.diversity),
            connectivity: f(Dimension::Connectivity, self.connectivity),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dimension {
    Prevalence,
    Diversity,
    Connectivity,
}

/// Raw measures for every node, indexed like the network's nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeScores {
    pub prevalence: Vec<f64>,
    pub diversity: Vec<f64>,
    pub connectivity: Vec<f64>,
}

impl NodeScores {
    pub fn compute(net: &CoocNetwork) -> Self {
        NodeScores {
            prevalence: net.freqs().to_vec(),
            diversity: diversity_all(net),
            connectivity: betweenness_all(net),
        }
    }

    fn column(&self, d: Dimension) -> &[f64] {
        match d {
            Dimension::Prevalence => &self.prevalence,
            Dimension::Diversity => &self.diversity,
            Dimension::Connectivity => &self.connectivity,
        }
    }

    pub fn raw(&self, i: usize) -> Triple {
        Triple {
            prevalence: self.prevalence[i],
            diversity: self.diversity[i],
            connectivity: self.connectivity[i],
        }
    }
}

/// SBS of one brand in one interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbsResult {
    pub interval: String,
    pub brand: String,
    pub raw: Triple,
    pub standardized: Triple,
    /// Each measure min-max rescaled to [0, 1] over all nodes.
    pub rescaled: Triple,
    pub sbs: f64,
    pub proportional_sbs: f64,
}

/// SBS for each brand from precomputed node scores.
///
/// Brands missing from the network get raw zeros, pushed through the same
/// fitted standardizers as every other node.
pub fn compute_sbs_from_scores(
    net: &CoocNetwork,
    scores: &NodeScores,
    brands: &[BrandSpec],
    method: Standardization,
) -> Result<Vec<SbsResult>> {
    if net.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    let fitted = |d: Dimension| Standardizer::fit(scores.column(d), method);
    let std_fit = [
        fitted(Dimension::Prevalence),
        fitted(Dimension::Diversity),
        fitted(Dimension::Connectivity),
    ];
    let unit_fit = [
        Standardizer::fit(scores.column(Dimension::Prevalence), Standardization::MinMax),
        Standardizer::fit(scores.column(Dimension::Diversity), Standardization::MinMax),
        Standardizer::fit(scores.column(Dimension::Connectivity), Standardization::MinMax),
    ];
    let slot = |d: Dimension| d as usize;

    Ok(brands
        .iter()
        .map(|brand| {
            let raw = net
                .index_of(&brand.canonical_id)
                .map_or(Triple::default(), |i| scores.raw(i));
            let standardized = raw.map(|d, x| std_fit[slot(d)].apply(x));
            // an absent brand sits below the smallest observed frequency
            let rescaled = raw.map(|d, x| unit_fit[slot(d)].apply(x).clamp(0.0, 1.0));
            SbsResult {
                interval: String::new(),
                brand: brand.canonical_id.clone(),
                raw,
                standardized,
                rescaled,
                sbs: standardized.sum(),
                proportional_sbs: 0.0,
            }
        })
        .collect())
}

pub fn compute_sbs(net: &CoocNetwork, brands: &[BrandSpec], method: Standardization) -> Result<Vec<SbsResult>> {
    if net.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    compute_sbs_from_scores(net, &NodeScores::compute(net), brands, method)
}

/// Fills each brand's share of the summed [0, 1]-rescaled scores in one interval.
/// Uniform shares when every brand rescales to zero.
pub fn proportional_sbs(results: &mut [SbsResult]) {
    if results.is_empty() {
        return;
    }
    let total: f64 = results.iter().map(|r| r.rescaled.sum()).sum();
    let uniform = 1.0 / results.len() as f64;
    for r in results.iter_mut() {
        r.proportional_sbs = if total > 0.0 {
            r.rescaled.sum() / total
        } else {
            uniform
        };
    }
}
