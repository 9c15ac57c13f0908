use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::cooc::CoocNetwork;

/// A brand's network row: every neighbor with its co-occurrence weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssociationProfile {
    pub brand: String,
    pub associations: BTreeMap<String, f64>,
}

impl AssociationProfile {
    /// Empty when the brand is not in the network.
    pub fn from_network(net: &CoocNetwork, brand: &str) -> Self {
        let associations = net
            .index_of(brand)
            .map(|b| {
                net.neighbors(b)
                    .iter()
                    .map(|&(j, w)| (net.label(j).to_string(), w))
                    .collect()
            })
            .unwrap_or_default();
        AssociationProfile {
            brand: brand.to_string(),
            associations,
        }
    }

    /// Strongest `n` associations, skipping `excluded` words.
    pub fn top(&self, n: usize, excluded: &HashSet<&str>) -> Vec<(String, f64)> {
        let mut ranked: Vec<(String, f64)> = self
            .associations
            .iter()
            .filter(|(w, _)| !excluded.contains(w.as_str()))
            .map(|(w, &v)| (w.clone(), v))
            .collect();
        ranked.sort_by(by_value_then_label);
        ranked.truncate(n);
        ranked
    }
}

fn by_value_then_label(a: &(String, f64), b: &(String, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0))
}

/// The `n` most frequent words, descending, ties in lexical order.
pub fn top_words(net: &CoocNetwork, n: usize) -> Vec<(String, f64)> {
    let mut ranked: Vec<(String, f64)> = net
        .labels()
        .iter()
        .zip(net.freqs())
        .map(|(l, &f)| (l.clone(), f))
        .collect();
    ranked.sort_by(by_value_then_label);
    ranked.truncate(n);
    ranked
}

/// The brand's `n` strongest neighbors; empty when the brand is absent or isolated.
pub fn brand_associations(net: &CoocNetwork, brand: &str, n: usize) -> Vec<(String, f64)> {
    AssociationProfile::from_network(net, brand).top(n, &HashSet::new())
}

/// For each brand, the words of its top-`n` list found in no other brand's
/// top-`n` list, in rank order. Brand ids never count as associations here.
pub fn unique_associations(profiles: &[AssociationProfile], n: usize) -> Vec<(String, Vec<String>)> {
    let brand_ids: HashSet<&str> = profiles.iter().map(|p| p.brand.as_str()).collect();
    let tops: Vec<Vec<String>> = profiles
        .iter()
        .map(|p| p.top(n, &brand_ids).into_iter().map(|(w, _)| w).collect())
        .collect();
    profiles
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let unique = tops[i]
                .iter()
                .filter(|w| {
                    tops.iter()
                        .enumerate()
                        .all(|(k, other)| k == i || !other.contains(w))
                })
                .cloned()
                .collect();
            (p.brand.clone(), unique)
        })
        .collect()
}
