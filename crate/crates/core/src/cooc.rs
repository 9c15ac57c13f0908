//! Weighted undirected word co-occurrence networks.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::preprocess::TokenStream;

/// Word co-occurrence graph for one time bucket.
///
/// Nodes are kept in lexicographic order so node indices do not depend on the
/// order documents were read in. Edges are stored once with `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoocNetwork {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    freq: Vec<f64>,
    edges: BTreeMap<(usize, usize), f64>,
    adjacency: Vec<Vec<(usize, f64)>>,
    synthetic_freq: bool,
}

impl CoocNetwork {
    /// Builds a network from labelled parts. Labels are sorted; duplicate labels
    /// keep the last frequency and edge weights between the same pair are summed.
    pub fn from_parts<S: AsRef<str>>(nodes: &[(S, f64)], edges: &[(S, S, f64)]) -> Self {
        let mut freq_by_label: BTreeMap<String, f64> = BTreeMap::new();
        for (label, f) in nodes {
            freq_by_label.insert(label.as_ref().to_string(), *f);
        }
        for (a, b, _) in edges {
            for l in [a.as_ref(), b.as_ref()] {
                freq_by_label.entry(l.to_string()).or_insert(0.0);
            }
        }
        let (labels, freq): (Vec<String>, Vec<f64>) = freq_by_label.into_iter().unzip();
        let index: HashMap<String, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut edge_map = BTreeMap::new();
        for (a, b, w) in edges {
            let (i, j) = (index[a.as_ref()], index[b.as_ref()]);
            if i == j {
                continue;
            }
            *edge_map.entry((i.min(j), i.max(j))).or_insert(0.0) += *w;
        }
        Self::assemble(labels, freq, edge_map, false)
    }

    fn assemble(
        nodes: Vec<String>,
        freq: Vec<f64>,
        edges: BTreeMap<(usize, usize), f64>,
        synthetic_freq: bool,
    ) -> Self {
        let index = nodes.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (&(i, j), &w) in &edges {
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        for row in &mut adjacency {
            row.sort_by_key(|&(j, _)| j);
        }
        CoocNetwork {
            nodes,
            index,
            freq,
            edges,
            adjacency,
            synthetic_freq,
        }
    }

    pub fn empty() -> Self {
        Self::assemble(Vec::new(), Vec::new(), BTreeMap::new(), false)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.nodes
    }

    pub fn label(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn freq(&self, i: usize) -> f64 {
        self.freq[i]
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freq
    }

    /// Whether frequencies were reconstructed from edge weights (Pajek import).
    pub fn has_synthetic_freq(&self) -> bool {
        self.synthetic_freq
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Sum of incident edge weights.
    pub fn strength(&self, i: usize) -> f64 {
        self.adjacency[i].iter().map(|&(_, w)| w).sum()
    }

    /// Neighbors of `i` with edge weights, ordered by neighbor index.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(0.0)
    }

    /// Edges as `((i, j), w)` with `i < j`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.edges.iter().map(|(&k, &w)| (k, w))
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.values().sum()
    }

    /// Median edge weight, averaging the middle pair for even counts. `None` without edges.
    pub fn median_edge_weight(&self) -> Option<f64> {
        let mut w: Vec<f64> = self.edges.values().copied().collect();
        if w.is_empty() {
            return None;
        }
        w.sort_by(f64::total_cmp);
        let n = w.len();
        Some(if n % 2 == 1 {
            w[n / 2]
        } else {
            (w[n / 2 - 1] + w[n / 2]) / 2.0
        })
    }

    /// Copy of the network with edge `i`–`j` set to `w` (added if absent).
    pub fn with_edge(&self, i: usize, j: usize, w: f64) -> Self {
        assert_ne!(i, j, "self-loops are not allowed");
        let mut edges = self.edges.clone();
        edges.insert((i.min(j), i.max(j)), w);
        Self::assemble(self.nodes.clone(), self.freq.clone(), edges, self.synthetic_freq)
    }

    /// Copy keeping only the nodes for which `keep` is true, and the edges among them.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        let mut freq = Vec::new();
        for (i, slot) in remap.iter_mut().enumerate() {
            if keep(i) {
                *slot = nodes.len();
                nodes.push(self.nodes[i].clone());
                freq.push(self.freq[i]);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(&(i, j), _)| remap[i] != usize::MAX && remap[j] != usize::MAX)
            .map(|(&(i, j), &w)| ((remap[i], remap[j]), w))
            .collect();
        Self::assemble(nodes, freq, edges, self.synthetic_freq)
    }

    pub fn to_adjacency_list(&self) -> AdjacencyList {
        AdjacencyList {
            nodes: (0..self.nodes.len())
                .map(|i| AdjacencyNode {
                    label: self.nodes[i].clone(),
                    freq: self.freq[i],
                    neighbors: self.adjacency[i]
                        .iter()
                        .map(|&(j, w)| (self.nodes[j].clone(), w))
                        .collect(),
                })
                .collect(),
        }
    }

    pub(crate) fn from_raw(
        nodes: Vec<String>,
        freq: Vec<f64>,
        edges: BTreeMap<(usize, usize), f64>,
        synthetic_freq: bool,
    ) -> Self {
        Self::assemble(nodes, freq, edges, synthetic_freq)
    }
}

/// JSON-friendly adjacency list view of a network.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjacencyList {
    pub nodes: Vec<AdjacencyNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjacencyNode {
    pub label: String,
    pub freq: f64,
    pub neighbors: Vec<(String, f64)>,
}

/// Accumulates co-occurrences within `cooc_range` tokens, never across documents.
///
/// Every in-range pair of unequal tokens in a stream with weight ω adds ω to
/// their edge; every occurrence adds ω to the token's frequency. Zero-weight
/// streams are skipped entirely.
pub fn build_network(streams: &[TokenStream], cooc_range: usize) -> CoocNetwork {
    assert!(cooc_range >= 1, "cooc_range must be at least 1");
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<&str> = Vec::new();
    let mut freq: Vec<f64> = Vec::new();
    let mut weights: HashMap<(usize, usize), f64> = HashMap::new();

    for stream in streams.iter().filter(|s| s.weight > 0.0) {
        let omega = stream.weight;
        let local: Vec<usize> = stream
            .tokens
            .iter()
            .map(|t| {
                *ids.entry(t.as_str()).or_insert_with(|| {
                    labels.push(t.as_str());
                    freq.push(0.0);
                    labels.len() - 1
                })
            })
            .collect();
        for (p, &a) in local.iter().enumerate() {
            freq[a] += omega;
            for &b in local.iter().skip(p + 1).take(cooc_range) {
                if a != b {
                    *weights.entry((a.min(b), a.max(b))).or_insert(0.0) += omega;
                }
            }
        }
    }

    // relabel into lexicographic order
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&x, &y| labels[x].cmp(labels[y]));
    let mut rank = vec![0; labels.len()];
    for (r, &old) in order.iter().enumerate() {
        rank[old] = r;
    }
    let nodes = order.iter().map(|&i| labels[i].to_string()).collect();
    let sorted_freq = order.iter().map(|&i| freq[i]).collect();
    let edges = weights
        .into_iter()
        .map(|((a, b), w)| {
            let (i, j) = (rank[a], rank[b]);
            ((i.min(j), i.max(j)), w)
        })
        .collect();
    CoocNetwork::assemble(nodes, sorted_freq, edges, false)
}

/// Drops edges lighter than `min_cooc`. Nodes (and their frequencies) are all kept.
pub fn filter_network(net: &CoocNetwork, min_cooc: f64) -> CoocNetwork {
    let edges = net
        .edges
        .iter()
        .filter(|(_, &w)| w >= min_cooc)
        .map(|(&k, &w)| (k, w))
        .collect();
    CoocNetwork::assemble(net.nodes.clone(), net.freq.clone(), edges, net.synthetic_freq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn stream(tokens: &[&str], weight: f64) -> TokenStream {
        TokenStream {
            doc_id: String::new(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            weight,
        }
    }

    fn w(net: &CoocNetwork, a: &str, b: &str) -> f64 {
        net.weight(net.index_of(a).unwrap(), net.index_of(b).unwrap())
    }

    #[test]
    fn hand_enumerated_range_two() {
        let net = build_network(&[stream(&["a", "b", "c", "a"], 1.0)], 2);
        assert_eq!(net.edge_count(), 3);
        assert_eq!(w(&net, "a", "b"), 2.0);
        assert_eq!(w(&net, "a", "c"), 2.0);
        assert_eq!(w(&net, "b", "c"), 1.0);
        assert_eq!(net.freq(net.index_of("a").unwrap()), 2.0);

        let doubled = build_network(&[stream(&["a", "b", "c", "a"], 2.0)], 2);
        assert_eq!(w(&doubled, "a", "b"), 4.0);
        assert_eq!(w(&doubled, "a", "c"), 4.0);
        assert_eq!(w(&doubled, "b", "c"), 2.0);
    }

    #[test]
    fn windows_stop_at_document_boundaries() {
        let net = build_network(&[stream(&["a", "b"], 1.0), stream(&["b", "a"], 1.0)], 1);
        assert_eq!(net.edge_count(), 1);
        assert_eq!(w(&net, "a", "b"), 2.0);

        let split = build_network(&[stream(&["a"], 1.0), stream(&["b"], 1.0)], 5);
        assert_eq!(split.edge_count(), 0);
        assert_eq!(split.node_count(), 2);
    }

    #[test]
    fn zero_weight_streams_contribute_nothing() {
        let net = build_network(&[stream(&["a", "b"], 0.0), stream(&["c", "d"], 1.0)], 2);
        assert_eq!(net.labels(), &["c".to_string(), "d".to_string()]);
    }

    #[test]
    fn filter_examples() {
        let net = CoocNetwork::from_parts(
            &[("a", 1.0), ("b", 1.0), ("c", 1.0)],
            &[("a", "b", 2.0), ("b", "c", 1.0)],
        );
        let f = filter_network(&net, 2.0);
        assert_eq!(f.edge_count(), 1);
        assert_eq!(w(&f, "a", "b"), 2.0);
        let c = f.index_of("c").unwrap();
        assert_eq!(f.degree(c), 0);
        assert_eq!(f.freq(c), 1.0);
        assert_eq!(filter_network(&net, 0.0), net);
    }

    #[test]
    fn filter_compares_weighted_sums() {
        // three half-weight documents sum to 1.5 on a-b
        let streams: Vec<_> = (0..3).map(|_| stream(&["a", "b"], 0.5)).collect();
        let net = build_network(&streams, 1);
        assert_eq!(w(&net, "a", "b"), 1.5);
        assert_eq!(filter_network(&net, 2.0).edge_count(), 0);
        assert_eq!(filter_network(&net, 1.5).edge_count(), 1);
    }

    #[test]
    fn median_and_with_edge() {
        let net = CoocNetwork::from_parts(
            &[("a", 1.0), ("b", 1.0), ("c", 1.0)],
            &[("a", "b", 2.0), ("b", "c", 1.0)],
        );
        assert_eq!(net.median_edge_weight(), Some(1.5));
        let more = net.with_edge(0, 2, 4.0);
        assert_eq!(more.edge_count(), 3);
        assert_eq!(more.degree(0), 2);
        assert_eq!(net.degree(0), 1);
        assert_eq!(CoocNetwork::empty().median_edge_weight(), None);
    }

    fn brute_force_pairs(tokens: &[String], range: usize) -> usize {
        let mut count = 0;
        for p in 0..tokens.len() {
            for q in 0..tokens.len() {
                if p < q && q - p <= range && tokens[p] != tokens[q] {
                    count += 1;
                }
            }
        }
        count
    }

    fn corpus_strategy() -> impl Strategy<Value = Vec<TokenStream>> {
        proptest::collection::vec(
            (
                proptest::collection::vec(prop_oneof!["a", "b", "c", "d", "e", "f"], 0..15),
                1u32..5,
            ),
            0..8,
        )
        .prop_map(|docs| {
            docs.into_iter()
                .map(|(tokens, w)| TokenStream {
                    doc_id: String::new(),
                    tokens,
                    weight: w as f64,
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn total_weight_matches_pair_count(streams in corpus_strategy(), range in 1usize..5) {
            let net = build_network(&streams, range);
            let expected: f64 = streams
                .iter()
                .map(|s| s.weight * brute_force_pairs(&s.tokens, range) as f64)
                .sum();
            prop_assert_eq!(net.total_weight(), expected);
            prop_assert!(net.freqs().iter().all(|&f| f > 0.0));
            for ((i, j), wt) in net.edges() {
                prop_assert!(i < j);
                prop_assert!(wt > 0.0);
            }
        }

        #[test]
        fn weights_scale_linearly(streams in corpus_strategy(), range in 1usize..4, c in 1u32..9) {
            let base = build_network(&streams, range);
            let scaled_streams: Vec<_> = streams
                .iter()
                .map(|s| TokenStream { weight: s.weight * c as f64, ..s.clone() })
                .collect();
            let scaled = build_network(&scaled_streams, range);
            prop_assert_eq!(base.labels(), scaled.labels());
            for ((i, j), wt) in base.edges() {
                prop_assert_eq!(scaled.weight(i, j), wt * c as f64);
            }
            for i in 0..base.node_count() {
                prop_assert_eq!(scaled.freq(i), base.freq(i) * c as f64);
            }
        }

        #[test]
        fn filters_compose_as_max(streams in corpus_strategy(), t1 in 0u32..8, t2 in 0u32..8) {
            let net = build_network(&streams, 2);
            let (t1, t2) = (t1 as f64, t2 as f64);
            prop_assert_eq!(
                filter_network(&filter_network(&net, t1), t2),
                filter_network(&net, t1.max(t2))
            );
        }
    }
}
