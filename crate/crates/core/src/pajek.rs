//! Pajek `.net` reader and writer for co-occurrence networks.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::cooc::CoocNetwork;
use crate::error::{Error, Result};

/// Renders `*Vertices` with 1-based quoted labels and `*Edges` as `i j w`.
///
/// Weights use the shortest representation that parses back to the same f64.
pub fn to_pajek_string(net: &CoocNetwork) -> String {
    let mut out = String::new();
    writeln!(out, "*Vertices {}", net.node_count()).unwrap();
    for (i, label) in net.labels().iter().enumerate() {
        writeln!(out, "{} \"{}\"", i + 1, label).unwrap();
    }
    out.push_str("*Edges\n");
    for ((i, j), w) in net.edges() {
        writeln!(out, "{} {} {}", i + 1, j + 1, w).unwrap();
    }
    out
}

pub fn export_pajek(net: &CoocNetwork, path: &Path) -> Result<()> {
    std::fs::write(path, to_pajek_string(net)).map_err(|e| Error::io(path, e))
}

pub fn import_pajek(path: &Path) -> Result<CoocNetwork> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pajek(&text)
}

enum Section {
    Preamble,
    Vertices,
    Edges,
}

fn split_vertex_line(line: &str) -> Option<(&str, String)> {
    let line = line.trim_start();
    let split = line.find(char::is_whitespace)?;
    let (idx, rest) = line.split_at(split);
    let rest = rest.trim_start();
    let label = if let Some(quoted) = rest.strip_prefix('"') {
        let end = quoted.find('"')?;
        quoted[..end].to_string()
    } else {
        rest.split_whitespace().next()?.to_string()
    };
    Some((idx, label))
}

/// Parses Pajek text. Section keywords are case-insensitive, blank lines and
/// `%` comments are skipped, and any run of spaces or tabs separates fields.
///
/// Pajek carries no word frequencies, so each node's frequency is set to its
/// strength and the network is flagged as having synthetic frequencies.
pub fn parse_pajek(text: &str) -> Result<CoocNetwork> {
    let mut section = Section::Preamble;
    let mut declared: Option<usize> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut raw_edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut saw_edges = false;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |message: String| Error::Pajek {
            line: line_no,
            message,
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(header) = line.strip_prefix('*') {
            let mut parts = header.split_whitespace();
            let keyword = parts.next().unwrap_or("").to_ascii_lowercase();
            match keyword.as_str() {
                "vertices" => {
                    if declared.is_some() {
                        return Err(err("repeated *Vertices section".into()));
                    }
                    let count = parts
                        .next()
                        .and_then(|c| c.parse::<usize>().ok())
                        .ok_or_else(|| err("*Vertices needs a node count".into()))?;
                    declared = Some(count);
                    labels = vec![None; count];
                    section = Section::Vertices;
                }
                "edges" => {
                    if declared.is_none() {
                        return Err(err("*Edges before *Vertices".into()));
                    }
                    saw_edges = true;
                    section = Section::Edges;
                }
                "network" => {}
                "arcs" | "arcslist" | "edgeslist" | "matrix" => {
                    return Err(err(format!("unsupported section *{keyword}")));
                }
                _ => return Err(err(format!("unknown section *{keyword}"))),
            }
            continue;
        }
        match section {
            Section::Preamble => return Err(err("data before *Vertices".into())),
            Section::Vertices => {
                let (idx, label) =
                    split_vertex_line(line).ok_or_else(|| err("expected `index \"label\"`".into()))?;
                let idx: usize = idx
                    .parse()
                    .map_err(|_| err(format!("bad vertex index {idx:?}")))?;
                if idx == 0 || idx > labels.len() {
                    return Err(err(format!("vertex index {idx} out of range")));
                }
                if labels[idx - 1].replace(label).is_some() {
                    return Err(err(format!("vertex {idx} defined twice")));
                }
            }
            Section::Edges => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() < 2 {
                    return Err(err("expected `i j w`".into()));
                }
                let parse_idx = |s: &str| -> Result<usize> {
                    let v: usize = s.parse().map_err(|_| err(format!("bad vertex index {s:?}")))?;
                    if v == 0 || v > labels.len() {
                        return Err(err(format!("vertex index {v} out of range")));
                    }
                    Ok(v - 1)
                };
                let (i, j) = (parse_idx(fields[0])?, parse_idx(fields[1])?);
                if i == j {
                    return Err(err("self-loop".into()));
                }
                let w = match fields.get(2) {
                    Some(s) => s.parse::<f64>().map_err(|_| err(format!("bad weight {s:?}")))?,
                    None => 1.0,
                };
                if !(w > 0.0 && w.is_finite()) {
                    return Err(err(format!("edge weight must be positive, got {w}")));
                }
                raw_edges.push((i, j, w));
            }
        }
    }

    let last_line = text.lines().count();
    if declared.is_none() {
        return Err(Error::Pajek {
            line: last_line,
            message: "missing *Vertices section".into(),
        });
    }
    if !saw_edges {
        return Err(Error::Pajek {
            line: last_line,
            message: "missing *Edges section".into(),
        });
    }
    let labels: Vec<String> = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| Error::Pajek {
                line: last_line,
                message: format!("vertex {} never defined", i + 1),
            })
        })
        .collect::<Result<_>>()?;

    // sort labels to match the network's node order invariant
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut rank = vec![0; labels.len()];
    for (r, &old) in order.iter().enumerate() {
        rank[old] = r;
    }
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(prev) = seen.insert(l, i) {
            return Err(Error::Pajek {
                line: last_line,
                message: format!("vertices {} and {} share label {l:?}", prev + 1, i + 1),
            });
        }
    }
    let mut edges: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (a, b, w) in raw_edges {
        let (i, j) = (rank[a], rank[b]);
        *edges.entry((i.min(j), i.max(j))).or_insert(0.0) += w;
    }
    let mut strength = vec![0.0; labels.len()];
    for (&(i, j), &w) in &edges {
        strength[i] += w;
        strength[j] += w;
    }
    let nodes = order.iter().map(|&i| labels[i].clone()).collect();
    Ok(CoocNetwork::from_raw(nodes, strength, edges, true))
}
