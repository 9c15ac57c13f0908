//! Result files, chart payload and the static HTML report.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Standardization;
use crate::error::{Error, Result};
use crate::insights::{Embedding2D, TargetWord, TopicModel};
use crate::metrics::{NodeScores, Standardizer, Triple};
use crate::pipeline::{Analysis, IntervalAnalysis};

/// One line of `results.csv` / `results.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub interval: String,
    pub brand: String,
    pub prev_raw: f64,
    pub div_raw: f64,
    pub conn_raw: f64,
    pub prev_std: f64,
    pub div_std: f64,
    pub conn_std: f64,
    pub sbs: f64,
    pub prop_sbs: f64,
    pub sentiment: f64,
    pub sentences: usize,
}

/// Rows for every brand of every nonempty interval, in interval then brand order.
pub fn result_rows(analysis: &Analysis) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for iv in &analysis.intervals {
        for (r, s) in iv.results.iter().zip(&iv.sentiment) {
            rows.push(ResultRow {
                interval: iv.label.clone(),
                brand: r.brand.clone(),
                prev_raw: r.raw.prevalence,
                div_raw: r.raw.diversity,
                conn_raw: r.raw.connectivity,
                prev_std: r.standardized.prevalence,
                div_std: r.standardized.diversity,
                conn_std: r.standardized.connectivity,
                sbs: r.sbs,
                prop_sbs: r.proportional_sbs,
                sentiment: s.score,
                sentences: s.sentence_count,
            });
        }
    }
    rows
}

/// Each brand's raw triple min-max rescaled to [0, 100] against all nodes.
/// A dimension with no spread maps to 0.
pub fn rescale_0_100(raw: &[Triple], scores: &NodeScores) -> Vec<Triple> {
    let fit = |v: &[f64]| Standardizer::fit(v, Standardization::MinMax);
    let (p, d, c) = (fit(&scores.prevalence), fit(&scores.diversity), fit(&scores.connectivity));
    let scale = |f: &Standardizer, x: f64| (100.0 * f.apply(x)).clamp(0.0, 100.0);
    raw.iter()
        .map(|t| Triple {
            prevalence: scale(&p, t.prevalence),
            diversity: scale(&d, t.diversity),
            connectivity: scale(&c, t.connectivity),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendSeries {
    pub brand: String,
    /// One entry per interval; `None` where the interval had no data.
    pub sbs: Vec<Option<f64>>,
    pub proportional: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionPoint {
    pub interval: String,
    pub brand: String,
    pub sentiment: f64,
    pub sbs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StackedBar {
    pub brand: String,
    pub prevalence: f64,
    pub diversity: f64,
    pub connectivity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrandAssociations {
    pub brand: String,
    pub top: Vec<(String, f64)>,
    pub unique: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalAssociations {
    pub interval: String,
    pub top_words: Vec<(String, f64)>,
    pub brands: Vec<BrandAssociations>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSimilarity {
    pub interval: String,
    pub brands: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub embedding: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicCluster {
    pub id: usize,
    pub importance: f64,
    pub size: usize,
    pub words: Vec<(String, f64)>,
    /// Brand → link weight into this cluster.
    pub brand_links: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalTopics {
    pub interval: String,
    pub seed: u64,
    pub modularity: f64,
    pub clusters: Vec<TopicCluster>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrandTargets {
    pub brand: String,
    /// (word, brand connectivity after committing it)
    pub words: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalTargets {
    pub interval: String,
    pub brands: Vec<BrandTargets>,
}

/// Everything the report draws. Per-interval payloads are listed only for
/// intervals that had data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartData {
    pub intervals: Vec<String>,
    pub brands: Vec<String>,
    pub time_trends: Vec<TrendSeries>,
    pub positioning: Vec<PositionPoint>,
    /// Mean over nonempty intervals of each brand's [0, 100] triple.
    pub stacked: Vec<StackedBar>,
    pub associations: Vec<IntervalAssociations>,
    pub similarity: Vec<IntervalSimilarity>,
    pub topics: Vec<IntervalTopics>,
    pub targets: Vec<IntervalTargets>,
}

impl ChartData {
    /// Builds the payload; every SBS and sentiment value is copied from `rows`.
    pub fn build(analysis: &Analysis, rows: &[ResultRow]) -> Self {
        let intervals: Vec<String> = analysis.intervals.iter().map(|iv| iv.label.clone()).collect();
        let brands = analysis.brands.clone();
        let find = |interval: &str, brand: &str| rows.iter().find(|r| r.interval == interval && r.brand == brand);

        let time_trends = brands
            .iter()
            .map(|b| TrendSeries {
                brand: b.clone(),
                sbs: intervals.iter().map(|iv| find(iv, b).map(|r| r.sbs)).collect(),
                proportional: intervals.iter().map(|iv| find(iv, b).map(|r| r.prop_sbs)).collect(),
            })
            .collect();

        let positioning = rows
            .iter()
            .map(|r| PositionPoint {
                interval: r.interval.clone(),
                brand: r.brand.clone(),
                sentiment: r.sentiment,
                sbs: r.sbs,
            })
            .collect();

        let filled: Vec<&IntervalAnalysis> = analysis.intervals.iter().filter(|iv| !iv.results.is_empty()).collect();
        let stacked = brands
            .iter()
            .enumerate()
            .map(|(b, brand)| {
                let n = filled.len().max(1) as f64;
                let sum = |f: fn(&Triple) -> f64| filled.iter().map(|iv| f(&iv.stacked[b])).sum::<f64>() / n;
                StackedBar {
                    brand: brand.clone(),
                    prevalence: sum(|t| t.prevalence),
                    diversity: sum(|t| t.diversity),
                    connectivity: sum(|t| t.connectivity),
                }
            })
            .collect();

        let mut associations = Vec::new();
        let mut similarity = Vec::new();
        let mut topics = Vec::new();
        let mut targets = Vec::new();
        for iv in &analysis.intervals {
            let Some(ins) = &iv.insights else { continue };
            associations.push(IntervalAssociations {
                interval: iv.label.clone(),
                top_words: ins.top_words.clone(),
                brands: ins
                    .top_associations
                    .iter()
                    .zip(&ins.unique)
                    .map(|((brand, top), (_, unique))| BrandAssociations {
                        brand: brand.clone(),
                        top: top.clone(),
                        unique: unique.clone(),
                    })
                    .collect(),
            });
            similarity.push(IntervalSimilarity {
                interval: iv.label.clone(),
                brands: ins.embedding.brands.clone(),
                matrix: ins.similarity.clone(),
                embedding: ins.embedding.coords.clone(),
            });
            topics.push(topic_payload(&iv.label, &ins.topics));
            targets.push(IntervalTargets {
                interval: iv.label.clone(),
                brands: ins
                    .targets
                    .iter()
                    .map(|(brand, words)| BrandTargets {
                        brand: brand.clone(),
                        words: words.iter().map(|t| (t.word.clone(), t.after)).collect(),
                    })
                    .collect(),
            });
        }

        ChartData {
            intervals,
            brands,
            time_trends,
            positioning,
            stacked,
            associations,
            similarity,
            topics,
            targets,
        }
    }
}

fn topic_payload(label: &str, model: &TopicModel) -> IntervalTopics {
    IntervalTopics {
        interval: label.to_string(),
        seed: model.seed,
        modularity: model.modularity,
        clusters: model
            .topics
            .iter()
            .map(|t| TopicCluster {
                id: t.id,
                importance: t.importance,
                size: t.size,
                words: t.top_words.clone(),
                brand_links: model
                    .brand_links
                    .iter()
                    .map(|(b, links)| (b.clone(), links[t.id]))
                    .collect(),
            })
            .collect(),
    }
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Writes the tabular results and every per-interval artifact into `dir`.
pub fn write_results(analysis: &Analysis, rows: &[ResultRow], dir: &Path) -> Result<()> {
    let mut w = csv_writer(&dir.join("results.csv"))?;
    if rows.is_empty() {
        w.write_record([
            "interval", "brand", "prev_raw", "div_raw", "conn_raw", "prev_std", "div_std", "conn_std", "sbs",
            "prop_sbs", "sentiment", "sentences",
        ])?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io(dir.join("results.csv"), e))?;
    write_file(&dir.join("results.json"), to_json(&rows)?)?;
    write_file(&dir.join("diagnostics.json"), to_json(&analysis.diagnostics)?)?;

    for iv in &analysis.intervals {
        let label = &iv.label;
        write_file(
            &dir.join(format!("network_{label}.net")),
            crate::pajek::to_pajek_string(&iv.network),
        )?;
        write_file(
            &dir.join(format!("network_{label}.json")),
            to_json(&iv.network.to_adjacency_list())?,
        )?;
        let Some(ins) = &iv.insights else { continue };

        let path = dir.join(format!("top_words_{label}.csv"));
        let mut w = csv_writer(&path)?;
        w.write_record(["rank", "word", "freq"])?;
        for (rank, (word, freq)) in ins.top_words.iter().enumerate() {
            w.write_record([(rank + 1).to_string(), word.clone(), freq.to_string()])?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;

        let path = dir.join(format!("associations_{label}.csv"));
        let mut w = csv_writer(&path)?;
        w.write_record(["brand", "rank", "word", "weight", "unique"])?;
        for ((brand, top), (_, unique)) in ins.top_associations.iter().zip(&ins.unique) {
            for (rank, (word, weight)) in top.iter().enumerate() {
                w.write_record([
                    brand.clone(),
                    (rank + 1).to_string(),
                    word.clone(),
                    weight.to_string(),
                    unique.contains(word).to_string(),
                ])?;
            }
        }
        w.flush().map_err(|e| Error::io(&path, e))?;

        let path = dir.join(format!("similarity_{label}.csv"));
        let mut w = csv_writer(&path)?;
        let mut header = vec!["brand".to_string()];
        header.extend(ins.embedding.brands.iter().cloned());
        w.write_record(&header)?;
        for (brand, row) in ins.embedding.brands.iter().zip(&ins.similarity) {
            let mut record = vec![brand.clone()];
            record.extend(row.iter().map(f64::to_string));
            w.write_record(&record)?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;

        write_embedding(&ins.embedding, &dir.join(format!("embedding_{label}.csv")))?;
        write_file(
            &dir.join(format!("topics_{label}.json")),
            to_json(&topic_payload(label, &ins.topics))?,
        )?;
        write_targets(&ins.targets, &dir.join(format!("targets_{label}.csv")))?;
    }
    Ok(())
}

fn write_embedding(embedding: &Embedding2D, path: &Path) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["brand", "x", "y"])?;
    for (brand, [x, y]) in embedding.brands.iter().zip(&embedding.coords) {
        w.write_record([brand.clone(), x.to_string(), y.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_targets(targets: &[(String, Vec<TargetWord>)], path: &Path) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["brand", "rank", "word", "connectivity"])?;
    for (brand, words) in targets {
        for (rank, t) in words.iter().enumerate() {
            w.write_record([brand.clone(), (rank + 1).to_string(), t.word.clone(), t.after.to_string()])?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes `charts.json` and a self-contained `report.html` into `dir`.
pub fn emit_report(chart: &ChartData, dir: &Path) -> Result<()> {
    write_file(&dir.join("charts.json"), to_json(chart)?)?;
    write_file(&dir.join("report.html"), render_html(chart))
}

pub const REPORT_SECTIONS: [&str; 8] = [
    "trends",
    "positioning",
    "stacked",
    "common-words",
    "associations",
    "similarity",
    "targets",
    "topics",
];

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const NO_DATA: &str = "<p class=\"empty\">no data</p>\n";

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(c),
        }
    }
    out
}

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

/// Maps `v` from [lo, hi] onto [a, b]; the midpoint when the range is empty.
fn project(v: f64, lo: f64, hi: f64, a: f64, b: f64) -> f64 {
    if hi > lo {
        a + (v - lo) / (hi - lo) * (b - a)
    } else {
        (a + b) / 2.0
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn legend(brands: &[String]) -> String {
    let mut s = String::from("<p class=\"legend\">");
    for (i, b) in brands.iter().enumerate() {
        let _ = write!(s, "<span style=\"color:{}\">&#9632; {}</span> ", color(i), escape(b));
    }
    s.push_str("</p>\n");
    s
}

fn open_section(html: &mut String, id: &str, title: &str) {
    let _ = writeln!(html, "<section id=\"{id}\">\n<h2>{}</h2>", escape(title));
}

fn render_trends(html: &mut String, chart: &ChartData) {
    open_section(html, "trends", "SBS over time");
    if chart.positioning.is_empty() {
        html.push_str(NO_DATA);
    } else {
        let (w, h, pad) = (640.0, 260.0, 30.0);
        let (lo, hi) = bounds(chart.time_trends.iter().flat_map(|t| t.sbs.iter().flatten().copied()));
        let n = chart.intervals.len();
        let x = |k: usize| if n > 1 { project(k as f64, 0.0, (n - 1) as f64, pad, w - pad) } else { w / 2.0 };
        let _ = writeln!(html, "<svg width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">");
        let _ = writeln!(
            html,
            "<line x1=\"{pad}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\"/>",
            h - pad,
            w - pad,
            h - pad
        );
        for (b, series) in chart.time_trends.iter().enumerate() {
            let points: Vec<String> = series
                .sbs
                .iter()
                .enumerate()
                .filter_map(|(k, v)| v.map(|v| format!("{:.2},{:.2}", x(k), project(v, lo, hi, h - pad, pad))))
                .collect();
            let _ = writeln!(
                html,
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>",
                color(b),
                points.join(" ")
            );
            for p in &points {
                let (cx, cy) = p.split_once(',').unwrap_or(("0", "0"));
                let _ = writeln!(html, "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"3\" fill=\"{}\"/>", color(b));
            }
        }
        html.push_str("</svg>\n");
        html.push_str(&legend(&chart.brands));
        html.push_str("<table>\n<tr><th>brand</th>");
        for iv in &chart.intervals {
            let _ = write!(html, "<th>{}</th>", escape(iv));
        }
        html.push_str("</tr>\n");
        for series in &chart.time_trends {
            let _ = write!(html, "<tr><td>{}</td>", escape(&series.brand));
            for (s, p) in series.sbs.iter().zip(&series.proportional) {
                match (s, p) {
                    (Some(s), Some(p)) => {
                        let _ = write!(html, "<td>{s:.3} ({:.1}%)</td>", 100.0 * p);
                    }
                    _ => html.push_str("<td>&ndash;</td>"),
                }
            }
            html.push_str("</tr>\n");
        }
        html.push_str("</table>\n");
    }
    html.push_str("</section>\n");
}

fn render_positioning(html: &mut String, chart: &ChartData) {
    open_section(html, "positioning", "Brand positioning: sentiment vs SBS");
    if chart.positioning.is_empty() {
        html.push_str(NO_DATA);
    } else {
        let (w, h, pad) = (480.0, 320.0, 30.0);
        let (lo, hi) = bounds(chart.positioning.iter().map(|p| p.sbs));
        let _ = writeln!(html, "<svg width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">");
        let mid = w / 2.0;
        let _ = writeln!(html, "<line x1=\"{mid}\" y1=\"{pad}\" x2=\"{mid}\" y2=\"{}\" stroke=\"#999\"/>", h - pad);
        for p in &chart.positioning {
            let b = chart.brands.iter().position(|x| x == &p.brand).unwrap_or(0);
            let cx = project(p.sentiment, -1.0, 1.0, pad, w - pad);
            let cy = project(p.sbs, lo, hi, h - pad, pad);
            let _ = writeln!(
                html,
                "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"5\" fill=\"{}\"><title>{} {}: sentiment {:.3}, SBS {:.3}</title></circle>",
                color(b),
                escape(&p.brand),
                escape(&p.interval),
                p.sentiment,
                p.sbs
            );
        }
        html.push_str("</svg>\n");
        html.push_str(&legend(&chart.brands));
    }
    html.push_str("</section>\n");
}

fn render_stacked(html: &mut String, chart: &ChartData) {
    open_section(html, "stacked", "Average SBS contributions (each measure rescaled to 0-100)");
    if chart.positioning.is_empty() {
        html.push_str(NO_DATA);
    } else {
        let row_h = 24.0;
        let h = row_h * chart.stacked.len() as f64 + 10.0;
        let _ = writeln!(html, "<svg width=\"720\" height=\"{h}\" viewBox=\"0 0 720 {h}\">");
        for (k, bar) in chart.stacked.iter().enumerate() {
            let y = 5.0 + row_h * k as f64;
            let _ = writeln!(
                html,
                "<text x=\"0\" y=\"{:.1}\" font-size=\"12\">{}</text>",
                y + 14.0,
                escape(&bar.brand)
            );
            let mut x = 100.0;
            for (value, fill) in [
                (bar.prevalence, "#4e79a7"),
                (bar.diversity, "#f28e2b"),
                (bar.connectivity, "#59a14f"),
            ] {
                let width = value * 2.0;
                let _ = writeln!(
                    html,
                    "<rect x=\"{x:.2}\" y=\"{y:.1}\" width=\"{width:.2}\" height=\"{:.1}\" fill=\"{fill}\"/>",
                    row_h - 6.0
                );
                x += width;
            }
        }
        html.push_str("</svg>\n");
        html.push_str(
            "<p class=\"legend\"><span style=\"color:#4e79a7\">&#9632; prevalence</span> \
             <span style=\"color:#f28e2b\">&#9632; diversity</span> \
             <span style=\"color:#59a14f\">&#9632; connectivity</span></p>\n",
        );
        html.push_str("<table>\n<tr><th>brand</th><th>prevalence</th><th>diversity</th><th>connectivity</th></tr>\n");
        for bar in &chart.stacked {
            let _ = writeln!(
                html,
                "<tr><td>{}</td><td>{:.1}</td><td>{:.1}</td><td>{:.1}</td></tr>",
                escape(&bar.brand),
                bar.prevalence,
                bar.diversity,
                bar.connectivity
            );
        }
        html.push_str("</table>\n");
    }
    html.push_str("</section>\n");
}

/// Runs `body` for each interval with data, and prints a placeholder for the rest.
fn per_interval<T>(
    html: &mut String,
    chart: &ChartData,
    items: &[T],
    label: impl Fn(&T) -> &str,
    mut body: impl FnMut(&mut String, &T),
) {
    for iv in &chart.intervals {
        let _ = writeln!(html, "<h3>{}</h3>", escape(iv));
        match items.iter().find(|t| label(t) == iv) {
            Some(item) => body(html, item),
            None => html.push_str(NO_DATA),
        }
    }
    if chart.intervals.is_empty() {
        html.push_str(NO_DATA);
    }
}

fn word_list(words: &[(String, f64)]) -> String {
    words
        .iter()
        .map(|(w, v)| format!("{} ({})", escape(w), trim_float(*v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn trim_float(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn render_common_words(html: &mut String, chart: &ChartData) {
    open_section(html, "common-words", "Most common words");
    per_interval(html, chart, &chart.associations, |a| &a.interval, |html, a| {
        if a.top_words.is_empty() {
            html.push_str(NO_DATA);
            return;
        }
        html.push_str("<table>\n<tr><th>#</th><th>word</th><th>frequency</th></tr>\n");
        for (k, (w, f)) in a.top_words.iter().enumerate() {
            let _ = writeln!(html, "<tr><td>{}</td><td>{}</td><td>{}</td></tr>", k + 1, escape(w), trim_float(*f));
        }
        html.push_str("</table>\n");
    });
    html.push_str("</section>\n");
}

fn render_associations(html: &mut String, chart: &ChartData) {
    open_section(html, "associations", "Brand associations");
    per_interval(html, chart, &chart.associations, |a| &a.interval, |html, a| {
        html.push_str("<table>\n<tr><th>brand</th><th>top associations</th><th>unique</th></tr>\n");
        for b in &a.brands {
            let unique: Vec<String> = b.unique.iter().map(|w| escape(w)).collect();
            let _ = writeln!(
                html,
                "<tr><td>{}</td><td>{}</td><td>{}</td></tr>",
                escape(&b.brand),
                word_list(&b.top),
                unique.join(", ")
            );
        }
        html.push_str("</table>\n");
    });
    html.push_str("</section>\n");
}

fn render_similarity(html: &mut String, chart: &ChartData) {
    open_section(html, "similarity", "Brand image similarity");
    per_interval(html, chart, &chart.similarity, |s| &s.interval, |html, s| {
        let (w, pad) = (320.0, 30.0);
        let extent = s
            .embedding
            .iter()
            .flat_map(|p| [p[0].abs(), p[1].abs()])
            .fold(0.0_f64, f64::max);
        let _ = writeln!(html, "<svg width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">");
        for (k, (brand, p)) in s.brands.iter().zip(&s.embedding).enumerate() {
            let cx = project(p[0], -extent, extent, pad, w - pad);
            let cy = project(p[1], -extent, extent, w - pad, pad);
            let _ = writeln!(
                html,
                "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"5\" fill=\"{}\"/><text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>",
                color(k),
                cx + 7.0,
                cy + 4.0,
                escape(brand)
            );
        }
        html.push_str("</svg>\n<table>\n<tr><th></th>");
        for b in &s.brands {
            let _ = write!(html, "<th>{}</th>", escape(b));
        }
        html.push_str("</tr>\n");
        for (b, row) in s.brands.iter().zip(&s.matrix) {
            let _ = write!(html, "<tr><td>{}</td>", escape(b));
            for v in row {
                let _ = write!(html, "<td>{v:.3}</td>");
            }
            html.push_str("</tr>\n");
        }
        html.push_str("</table>\n");
    });
    html.push_str("</section>\n");
}

fn render_targets(html: &mut String, chart: &ChartData) {
    open_section(html, "targets", "Target words");
    per_interval(html, chart, &chart.targets, |t| &t.interval, |html, t| {
        html.push_str("<table>\n<tr><th>brand</th><th>suggested links (connectivity after)</th></tr>\n");
        for b in &t.brands {
            let words: Vec<String> = b
                .words
                .iter()
                .map(|(w, c)| format!("{} ({c:.4})", escape(w)))
                .collect();
            let _ = writeln!(html, "<tr><td>{}</td><td>{}</td></tr>", escape(&b.brand), words.join(", "));
        }
        html.push_str("</table>\n");
    });
    html.push_str("</section>\n");
}

fn render_topics(html: &mut String, chart: &ChartData) {
    open_section(html, "topics", "Topics");
    per_interval(html, chart, &chart.topics, |t| &t.interval, |html, t| {
        if t.clusters.is_empty() {
            html.push_str(NO_DATA);
            return;
        }
        let _ = writeln!(html, "<p>modularity {:.4}, seed {}</p>", t.modularity, t.seed);
        html.push_str("<table>\n<tr><th>topic</th><th>importance</th><th>size</th><th>words (IW)</th><th>brand links</th></tr>\n");
        for c in &t.clusters {
            let _ = writeln!(
                html,
                "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>",
                c.id,
                trim_float(c.importance),
                c.size,
                word_list(&c.words),
                word_list(&c.brand_links)
            );
        }
        html.push_str("</table>\n");
    });
    html.push_str("</section>\n");
}

pub fn render_html(chart: &ChartData) -> String {
    let mut html = String::from(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>Semantic Brand Score report</title>\n\
         <style>\nbody{font-family:sans-serif;max-width:960px;margin:2em auto;color:#222}\n\
         table{border-collapse:collapse;margin:.5em 0}\ntd,th{border:1px solid #ccc;padding:2px 6px;font-size:13px}\n\
         .empty{color:#888;font-style:italic}\nsection{margin-bottom:2em}\n</style>\n</head>\n<body>\n\
         <h1>Semantic Brand Score report</h1>\n",
    );
    render_trends(&mut html, chart);
    render_positioning(&mut html, chart);
    render_stacked(&mut html, chart);
    render_common_words(&mut html, chart);
    render_associations(&mut html, chart);
    render_similarity(&mut html, chart);
    render_targets(&mut html, chart);
    render_topics(&mut html, chart);
    html.push_str("</body>\n</html>\n");
    html
}
