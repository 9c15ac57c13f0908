//! Topic extraction by Louvain clustering of the co-occurrence network, and
//! ranking of each topic's representative words.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cooc::CoocNetwork;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Topic {
    pub id: usize,
    pub importance: f64,
    pub size: usize,
    /// Highest-IW non-brand words with their IW.
    pub top_words: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TopicModel {
    pub seed: u64,
    pub modularity: f64,
    /// Cluster of every node that survived pruning.
    pub assignment: BTreeMap<String, usize>,
    /// IW of each node within its own cluster.
    pub word_importance: BTreeMap<String, f64>,
    /// Intra-cluster edge weight, indexed by cluster id.
    pub topic_importance: Vec<f64>,
    /// Brand → summed edge weight into each cluster.
    pub brand_links: BTreeMap<String, Vec<f64>>,
    pub topics: Vec<Topic>,
}

impl TopicModel {
    pub fn cluster_count(&self) -> usize {
        self.assignment.values().max().map_or(0, |&k| k + 1)
    }
}

/// Drops edges lighter than `threshold`, then nodes left without edges.
pub fn prune_network(net: &CoocNetwork, threshold: f64) -> CoocNetwork {
    let filtered = crate::cooc::filter_network(net, threshold);
    filtered.induced(|i| filtered.degree(i) > 0)
}

/// Newman modularity (resolution 1) of `communities` on `net`.
pub fn modularity(net: &CoocNetwork, communities: &[usize]) -> f64 {
    let m2: f64 = 2.0 * net.total_weight();
    if m2 == 0.0 {
        return 0.0;
    }
    let k = communities.iter().copied().max().map_or(0, |c| c + 1);
    let mut inside = vec![0.0; k];
    let mut total = vec![0.0; k];
    for ((i, j), w) in net.edges() {
        total[communities[i]] += w;
        total[communities[j]] += w;
        if communities[i] == communities[j] {
            inside[communities[i]] += 2.0 * w;
        }
    }
    (0..k)
        .map(|c| inside[c] / m2 - (total[c] / m2).powi(2))
        .sum()
}

/// Working graph of one Louvain level. Loops hold the weight of edges already
/// collapsed inside a super-node.
struct Level {
    adjacency: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
}

impl Level {
    fn strength(&self, i: usize) -> f64 {
        self.adjacency[i].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.loops[i]
    }

    /// Local moving phase. Returns the community of each node and whether any node moved.
    fn move_nodes(&self, m2: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
        let n = self.adjacency.len();
        let strength: Vec<f64> = (0..n).map(|i| self.strength(i)).collect();
        let mut community: Vec<usize> = (0..n).collect();
        let mut total = strength.clone();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let eps = 1e-12 * m2;

        let mut links = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut any_move = false;
        loop {
            let mut moved = false;
            for &i in &order {
                let home = community[i];
                touched.clear();
                for &(j, w) in &self.adjacency[i] {
                    let c = community[j];
                    if links[c] == 0.0 {
                        touched.push(c);
                    }
                    links[c] += w;
                }
                total[home] -= strength[i];
                let gain = |c: usize, links: &[f64]| links[c] - total[c] * strength[i] / m2;
                let mut best = home;
                let mut best_gain = gain(home, &links);
                touched.sort_unstable();
                for &c in &touched {
                    let g = gain(c, &links);
                    if g > best_gain + eps {
                        best = c;
                        best_gain = g;
                    }
                }
                total[best] += strength[i];
                community[i] = best;
                if best != home {
                    moved = true;
                    any_move = true;
                }
                for &c in &touched {
                    links[c] = 0.0;
                }
            }
            if !moved {
                break;
            }
        }
        (community, any_move)
    }

    /// Collapses each community into one node. `community` must be dense.
    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut loops = vec![0.0; count];
        let mut between: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (i, row) in self.adjacency.iter().enumerate() {
            let ci = community[i];
            loops[ci] += self.loops[i];
            for &(j, w) in row {
                if j <= i {
                    continue;
                }
                let cj = community[j];
                if ci == cj {
                    loops[ci] += w;
                } else {
                    *between.entry((ci.min(cj), ci.max(cj))).or_insert(0.0) += w;
                }
            }
        }
        let mut adjacency = vec![Vec::new(); count];
        for ((a, b), w) in between {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        Level { adjacency, loops }
    }
}

/// Renumbers labels densely in order of first appearance.
fn densify(labels: &mut [usize]) -> usize {
    let mut map = HashMap::new();
    for l in labels.iter_mut() {
        let next = map.len();
        *l = *map.entry(*l).or_insert(next);
    }
    map.len()
}

/// Weighted Louvain modularity maximization.
///
/// Node visiting order is shuffled with `seed` at every level; levels repeat
/// until a local moving phase changes nothing. Communities are numbered by
/// their first member in node order.
pub fn louvain(net: &CoocNetwork, seed: u64) -> Vec<usize> {
    let n = net.node_count();
    let m2 = 2.0 * net.total_weight();
    let mut membership: Vec<usize> = (0..n).collect();
    if n == 0 || m2 == 0.0 {
        return membership;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = Level {
        adjacency: (0..n).map(|i| net.neighbors(i).to_vec()).collect(),
        loops: vec![0.0; n],
    };
    loop {
        let (mut community, moved) = level.move_nodes(m2, &mut rng);
        if !moved {
            break;
        }
        let count = densify(&mut community);
        for m in membership.iter_mut() {
            *m = community[*m];
        }
        level = level.aggregate(&community, count);
    }
    densify(&mut membership);
    membership
}

/// Prunes negligible links and isolates, then clusters what is left.
pub fn extract_topics(net: &CoocNetwork, prune_threshold: f64, seed: u64) -> TopicModel {
    let pruned = prune_network(net, prune_threshold);
    let membership = louvain(&pruned, seed);
    TopicModel {
        seed,
        modularity: modularity(&pruned, &membership),
        assignment: pruned
            .labels()
            .iter()
            .cloned()
            .zip(membership)
            .collect(),
        ..TopicModel::default()
    }
}

/// IW of node `i` in cluster `k`: (Σ_{j∈K, j≠i} w_ij)² / Σ_{j≠i} w_ij.
pub fn iw(net: &CoocNetwork, i: usize, in_cluster: impl Fn(usize) -> bool) -> f64 {
    let mut inside = 0.0;
    let mut all = 0.0;
    for &(j, w) in net.neighbors(i) {
        all += w;
        if in_cluster(j) {
            inside += w;
        }
    }
    if all > 0.0 {
        inside * inside / all
    } else {
        0.0
    }
}

/// Fills the IW of every assigned node within its own cluster.
pub fn word_importance(net: &CoocNetwork, model: &mut TopicModel) {
    let cluster_of: Vec<Option<usize>> = net
        .labels()
        .iter()
        .map(|l| model.assignment.get(l).copied())
        .collect();
    model.word_importance = model
        .assignment
        .iter()
        .map(|(label, &k)| {
            let value = net
                .index_of(label)
                .map_or(0.0, |i| iw(net, i, |j| cluster_of[j] == Some(k)));
            (label.clone(), value)
        })
        .collect();
}

/// Fills topic importance, brand-to-topic link weights and the top-k words per topic.
pub fn topic_summaries(net: &CoocNetwork, model: &mut TopicModel, brands: &[&str], top_k: usize) {
    let k = model.cluster_count();
    let cluster_of: Vec<Option<usize>> = net
        .labels()
        .iter()
        .map(|l| model.assignment.get(l).copied())
        .collect();

    let mut importance = vec![0.0; k];
    for ((i, j), w) in net.edges() {
        if let (Some(a), Some(b)) = (cluster_of[i], cluster_of[j]) {
            if a == b {
                importance[a] += w;
            }
        }
    }

    model.brand_links = brands
        .iter()
        .map(|&brand| {
            let mut links = vec![0.0; k];
            if let Some(b) = net.index_of(brand) {
                for &(j, w) in net.neighbors(b) {
                    if let Some(c) = cluster_of[j] {
                        links[c] += w;
                    }
                }
            }
            (brand.to_string(), links)
        })
        .collect();

    let brand_set: HashSet<&str> = brands.iter().copied().collect();
    let mut words: Vec<Vec<(String, f64)>> = vec![Vec::new(); k];
    let mut sizes = vec![0usize; k];
    for (label, &c) in &model.assignment {
        sizes[c] += 1;
        if brand_set.contains(label.as_str()) {
            continue;
        }
        let value = model.word_importance.get(label).copied().unwrap_or(0.0);
        words[c].push((label.clone(), value));
    }
    model.topics = words
        .into_iter()
        .enumerate()
        .map(|(id, mut list)| {
            list.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            list.truncate(top_k);
            Topic {
                id,
                importance: importance[id],
                size: sizes[id],
                top_words: list,
            }
        })
        .collect();
    model.topic_importance = importance;
}
