//! Brute-force oracles and random inputs shared by the integration tests.
//! Nothing here calls into the algorithms under test except to build inputs.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sbs_core::CoocNetwork;

/// Dense weighted graph; `w[i][j] == 0.0` means no edge.
#[derive(Debug, Clone)]
pub struct Dense {
    pub labels: Vec<String>,
    pub freq: Vec<f64>,
    pub w: Vec<Vec<f64>>,
}

impl Dense {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&j| j != i && self.w[i][j] > 0.0)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn to_network(&self) -> CoocNetwork {
        let nodes: Vec<(String, f64)> = self.labels.iter().cloned().zip(self.freq.iter().copied()).collect();
        let mut edges = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.w[i][j] > 0.0 {
                    edges.push((self.labels[i].clone(), self.labels[j].clone(), self.w[i][j]));
                }
            }
        }
        CoocNetwork::from_parts(&nodes, &edges)
    }

    pub fn with_edge(&self, i: usize, j: usize, w: f64) -> Dense {
        let mut out = self.clone();
        out.w[i][j] = w;
        out.w[j][i] = w;
        out
    }

    pub fn edge_weights(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.w[i][j] > 0.0 {
                    out.push(self.w[i][j]);
                }
            }
        }
        out
    }
}

pub fn label(i: usize) -> String {
    format!("n{i:02}")
}

fn empty_dense(n: usize, rng: &mut ChaCha8Rng) -> Dense {
    Dense {
        labels: (0..n).map(label).collect(),
        freq: (0..n).map(|_| rng.gen_range(1..20) as f64).collect(),
        w: vec![vec![0.0; n]; n],
    }
}

fn draw_weight(rng: &mut ChaCha8Rng, integer: bool) -> f64 {
    if integer {
        // small integers make equal-length paths common
        rng.gen_range(1..=4) as f64
    } else {
        rng.gen_range(0.25..4.0)
    }
}

/// Random connected graph: a random spanning tree plus extra edges with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64, integer: bool) -> Dense {
    let mut g = empty_dense(n, rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let w = draw_weight(rng, integer);
        g.w[i][j] = w;
        g.w[j][i] = w;
    }
    for i in 0..n {
        for j in i + 1..n {
            if g.w[i][j] == 0.0 && rng.gen_bool(p) {
                let w = draw_weight(rng, integer);
                g.w[i][j] = w;
                g.w[j][i] = w;
            }
        }
    }
    g
}

/// Erdős–Rényi graph, possibly disconnected and with isolates.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Dense {
    let mut g = empty_dense(n, rng);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                let integer = rng.gen_bool(0.5);
                let w = draw_weight(rng, integer);
                g.w[i][j] = w;
                g.w[j][i] = w;
            }
        }
    }
    g
}

/// Planted-partition graph with `k` groups; returns the graph and the group of each node.
pub fn random_clustered(rng: &mut ChaCha8Rng, n: usize, k: usize) -> (Dense, Vec<usize>) {
    let groups: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let mut g = empty_dense(n, rng);
    for i in 0..n {
        for j in i + 1..n {
            let p = if groups[i] == groups[j] { 0.6 } else { 0.1 };
            if rng.gen_bool(p) {
                let w = draw_weight(rng, false);
                g.w[i][j] = w;
                g.w[j][i] = w;
            }
        }
    }
    (g, groups)
}

/// Every simple s–t path, pruned once longer than the best found so far.
fn shortest_paths(g: &Dense, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(
        g: &Dense,
        t: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        len: f64,
        best: &mut f64,
        found: &mut Vec<(f64, Vec<usize>)>,
    ) {
        if len > *best * (1.0 + 1e-10) {
            return;
        }
        let here = *path.last().unwrap();
        if here == t {
            *best = best.min(len);
            found.push((len, path.clone()));
            return;
        }
        for j in 0..g.n() {
            if on_path[j] || g.w[here][j] == 0.0 {
                continue;
            }
            on_path[j] = true;
            path.push(j);
            walk(g, t, path, on_path, len + 1.0 / g.w[here][j], best, found);
            path.pop();
            on_path[j] = false;
        }
    }
    let mut on_path = vec![false; g.n()];
    on_path[s] = true;
    let mut best = f64::INFINITY;
    let mut found = Vec::new();
    walk(g, t, &mut vec![s], &mut on_path, 0.0, &mut best, &mut found);
    found
        .into_iter()
        .filter(|(len, _)| (len - best).abs() <= 1e-10 * len.max(best))
        .map(|(_, p)| p)
        .collect()
}

/// Normalized weighted betweenness by enumerating all shortest paths of every pair.
pub fn betweenness_oracle(g: &Dense) -> Vec<f64> {
    let n = g.n();
    let mut bc = vec![0.0; n];
    if n < 3 {
        return bc;
    }
    for s in 0..n {
        for t in s + 1..n {
            let paths = shortest_paths(g, s, t);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count() as f64;
                bc[v] += through / total;
            }
        }
    }
    let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
    bc.iter().map(|b| b / pairs).collect()
}

/// Σ over neighbors j of log10((N − 1) / g_j), neighbors in index order.
pub fn diversity_oracle(g: &Dense, i: usize) -> f64 {
    let n = g.n();
    if n < 2 {
        return 0.0;
    }
    let mut sum = 0.0;
    for j in 0..n {
        if j != i && g.w[i][j] > 0.0 {
            sum += ((n - 1) as f64 / g.degree(j) as f64).log10();
        }
    }
    sum
}

/// (Σ_{j∈K, j≠i} w_ij)² / Σ_{j≠i} w_ij.
pub fn iw_oracle(g: &Dense, cluster: &[usize], i: usize) -> f64 {
    let mut inside = 0.0;
    let mut all = 0.0;
    for j in 0..g.n() {
        if j == i || g.w[i][j] == 0.0 {
            continue;
        }
        all += g.w[i][j];
        if cluster[j] == cluster[i] {
            inside += g.w[i][j];
        }
    }
    if all == 0.0 {
        0.0
    } else {
        inside * inside / all
    }
}

/// Q = (1 / 2m) Σ_ij [A_ij − k_i k_j / 2m] δ(c_i, c_j).
pub fn modularity_oracle(g: &Dense, c: &[usize]) -> f64 {
    let n = g.n();
    let k: Vec<f64> = (0..n).map(|i| g.w[i].iter().sum()).collect();
    let m2: f64 = k.iter().sum();
    if m2 == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if c[i] == c[j] {
                q += g.w[i][j] - k[i] * k[j] / m2;
            }
        }
    }
    q / m2
}

/// Every set partition of `n` items as a restricted growth string.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for c in 0..=max + 1 {
            prefix.push(c);
            grow(prefix, n, max.max(c), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    grow(&mut vec![0], n, 0, &mut out);
    out
}

/// Best modularity over every partition, with the first partition reaching it.
pub fn best_partition(g: &Dense) -> (f64, Vec<usize>) {
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for p in all_partitions(g.n()) {
        let q = modularity_oracle(g, &p);
        if q > best.0 + 1e-12 {
            best = (q, p);
        }
    }
    best
}

/// Two partitions are the same grouping, whatever the cluster numbers.
pub fn same_grouping(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

pub fn median(values: &[f64]) -> Option<f64> {
    let mut v = values.to_vec();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / 2.0 })
}

/// Exhaustive single-step target choice: the candidate whose added link gives
/// the brand the highest oracle betweenness, lexically first among ties.
pub fn best_single_target(g: &Dense, brand: usize, forbidden: &HashSet<usize>, pool: usize) -> Option<(String, f64)> {
    let mut ranked: Vec<usize> = (0..g.n())
        .filter(|&c| c != brand && !forbidden.contains(&c) && g.w[brand][c] == 0.0)
        .collect();
    ranked.sort_by(|&a, &b| g.freq[b].total_cmp(&g.freq[a]).then(g.labels[a].cmp(&g.labels[b])));
    ranked.truncate(pool);
    let trial = median(&g.edge_weights()).unwrap_or(1.0);
    let scored: Vec<(String, f64)> = ranked
        .iter()
        .map(|&c| (g.labels[c].clone(), betweenness_oracle(&g.with_edge(brand, c, trial))[brand]))
        .collect();
    let top = scored.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    scored
        .into_iter()
        .filter(|s| s.1 >= top - 1e-9)
        .min_by(|a, b| a.0.cmp(&b.0))
}

/// Edge weights and frequencies by counting every in-range pair directly.
pub fn count_pairs(streams: &[(Vec<String>, f64)], range: usize) -> (BTreeMap<(String, String), f64>, BTreeMap<String, f64>) {
    let mut edges = BTreeMap::new();
    let mut freq = BTreeMap::new();
    for (tokens, w) in streams {
        if *w == 0.0 {
            continue;
        }
        for p in 0..tokens.len() {
            *freq.entry(tokens[p].clone()).or_insert(0.0) += w;
            for q in p + 1..tokens.len() {
                if q - p > range || tokens[p] == tokens[q] {
                    continue;
                }
                let key = if tokens[p] < tokens[q] {
                    (tokens[p].clone(), tokens[q].clone())
                } else {
                    (tokens[q].clone(), tokens[p].clone())
                };
                *edges.entry(key).or_insert(0.0) += w;
            }
        }
    }
    (edges, freq)
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/brands")
}

/// Fixture config with its output redirected into `out`.
pub fn fixture_config(out: &Path) -> sbs_core::RunConfig {
    let mut cfg = sbs_core::RunConfig::load(&fixture_dir().join("config.toml")).expect("fixture config");
    cfg.output_dir = out.to_path_buf();
    cfg
}

/// Parses the pinned results table into rows.
pub fn read_results(path: &Path) -> Vec<sbs_core::ResultRow> {
    let mut reader = csv::Reader::from_path(path).expect("results file");
    reader.deserialize().map(|r| r.expect("result row")).collect()
}
