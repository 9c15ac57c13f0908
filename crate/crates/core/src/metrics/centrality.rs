//! Per-node prevalence, diversity and connectivity.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::cooc::CoocNetwork;

/// Weighted occurrence count of `node`; 0 when absent.
pub fn prevalence(net: &CoocNetwork, node: &str) -> f64 {
    net.index_of(node).map_or(0.0, |i| net.freq(i))
}

/// Distinctiveness-adjusted degree: Σ over neighbors j of log10((N − 1) / g_j).
pub fn diversity(net: &CoocNetwork, node: usize) -> f64 {
    let n = net.node_count();
    if n < 2 {
        return 0.0;
    }
    let others = (n - 1) as f64;
    net.neighbors(node)
        .iter()
        .map(|&(j, _)| (others / net.degree(j) as f64).log10())
        .sum()
}

pub fn diversity_all(net: &CoocNetwork) -> Vec<f64> {
    (0..net.node_count()).map(|i| diversity(net, i)).collect()
}

/// Weighted betweenness of `node` (see [`betweenness_all`]); 0 when absent.
pub fn connectivity(net: &CoocNetwork, node: &str) -> f64 {
    net.index_of(node)
        .map_or(0.0, |i| betweenness_all(net)[i])
}

/// Relative tolerance under which two path lengths count as equal.
pub(crate) const PATH_TIE_TOLERANCE: f64 = 1e-10;

pub(crate) fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= PATH_TIE_TOLERANCE * a.abs().max(b.abs())
}

#[derive(PartialEq)]
struct Frontier {
    dist: f64,
    node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source pass of Brandes' algorithm with Dijkstra; returns the
/// dependency of `source` on every node.
fn source_dependencies(net: &CoocNetwork, source: usize) -> Vec<f64> {
    let n = net.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0_f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut settled = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();

    dist[source] = 0.0;
    sigma[source] = 1.0;
    heap.push(Frontier { dist: 0.0, node: source });
    while let Some(Frontier { dist: d, node: v }) = heap.pop() {
        if settled[v] || d > dist[v] {
            continue;
        }
        settled[v] = true;
        order.push(v);
        for &(w, weight) in net.neighbors(v) {
            if settled[w] {
                continue;
            }
            let alt = dist[v] + 1.0 / weight;
            if dist[w].is_infinite() || (alt < dist[w] && !same_length(alt, dist[w])) {
                dist[w] = alt;
                sigma[w] = sigma[v];
                preds[w].clear();
                preds[w].push(v);
                heap.push(Frontier { dist: alt, node: w });
            } else if same_length(alt, dist[w]) {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }

    let mut delta = vec![0.0; n];
    for &w in order.iter().rev() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
    }
    delta[source] = 0.0;
    delta
}

/// Weighted betweenness centrality of every node.
///
/// Edge length is `1 / w`, so strong co-occurrences are short. Each unordered
/// pair `{s, t}` not containing `v` contributes `σ_st(v) / σ_st`; the sum is
/// divided by `(N − 1)(N − 2) / 2`. Path lengths within a relative 1e-10 of
/// each other count as ties.
pub fn betweenness_all(net: &CoocNetwork) -> Vec<f64> {
    let n = net.node_count();
    if n < 3 {
        return vec![0.0; n];
    }
    let per_source: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| source_dependencies(net, s))
        .collect();
    // summed in source order so the result does not depend on thread scheduling
    let mut total = vec![0.0; n];
    for deps in &per_source {
        for (t, d) in total.iter_mut().zip(deps) {
            *t += d;
        }
    }
    // every unordered pair was visited from both ends
    let norm = ((n - 1) * (n - 2)) as f64;
    total.iter().map(|&b| b / norm).collect()
}
