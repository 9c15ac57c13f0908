//! Corpus ingestion: CSV parsing, token truncation and time bucketing.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use chrono::{DateTime, NaiveDate, NaiveDateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::config::AnalysisConfig;
use crate::error::{Error, Result};

/// One timestamped, weighted text unit of the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub timestamp: DateTime<Utc>,
    pub source: String,
    pub weight: f64,
    pub text: String,
    /// Set by [`parse_corpus`] when the timestamp falls in no configured interval.
    #[serde(skip)]
    pub outside_intervals: bool,
}

impl Document {
    pub fn new(id: impl Into<String>, timestamp: DateTime<Utc>, weight: f64, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            timestamp,
            source: String::new(),
            weight,
            text: text.into(),
            outside_intervals: false,
        }
    }
}

/// Half-open time range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TimeInterval {
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
}

impl TimeInterval {
    pub fn contains(&self, t: DateTime<Utc>) -> bool {
        self.start <= t && t < self.end
    }

    /// Output label: the start date in ISO 8601.
    pub fn label(&self) -> String {
        self.start.format("%Y-%m-%d").to_string()
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start.to_rfc3339(), self.end.to_rfc3339())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeBucket {
    pub interval: TimeInterval,
    pub documents: Vec<Document>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub dropped: usize,
    pub parsed: usize,
}

/// Parses an ISO 8601 date or date-time. Naive values are taken as UTC.
pub fn parse_timestamp(s: &str) -> Option<DateTime<Utc>> {
    let s = s.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Some(dt.with_timezone(&Utc));
    }
    for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f", "%Y-%m-%dT%H:%M"] {
        if let Ok(naive) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(naive.and_utc());
        }
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .map(|d| d.and_hms_opt(0, 0, 0).expect("midnight is valid").and_utc())
}

/// Reads the corpus CSV at `path`. See [`read_corpus`].
pub fn parse_corpus(path: &Path, config: &AnalysisConfig) -> Result<Vec<Document>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_corpus(file, config)
}

/// Parses `id,date,source,weight,text` rows (the weight column may be omitted).
///
/// Row numbers in errors count data rows from 1. Documents whose timestamp lies
/// in no configured interval are kept with `outside_intervals` set.
pub fn read_corpus<R: Read>(reader: R, config: &AnalysisConfig) -> Result<Vec<Document>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);

    let headers = rdr.headers().map_err(|e| Error::Corpus {
        row: 0,
        message: format!("unreadable header: {e}"),
    })?;
    let names: Vec<String> = headers.iter().map(|h| h.trim().to_ascii_lowercase()).collect();
    let has_weight = match names.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["id", "date", "source", "weight", "text"] => true,
        ["id", "date", "source", "text"] => false,
        _ => {
            return Err(Error::Corpus {
                row: 0,
                message: format!(
                    "expected header id,date,source,weight,text; got {}",
                    names.join(",")
                ),
            })
        }
    };

    let mut docs = Vec::new();
    let mut ids = HashSet::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::Corpus {
            row,
            message: format!("malformed row: {e}"),
        })?;
        let bad = |message: String| Error::Corpus { row, message };

        let id = record[0].trim().to_string();
        if id.is_empty() {
            return Err(bad("empty id".into()));
        }
        let timestamp =
            parse_timestamp(&record[1]).ok_or_else(|| bad(format!("bad date {:?}", &record[1])))?;
        let source = record[2].trim().to_string();
        let (weight, text) = if has_weight {
            let raw = record[3].trim();
            let weight = if raw.is_empty() {
                1.0
            } else {
                raw.parse::<f64>()
                    .map_err(|_| bad(format!("bad weight {raw:?}")))?
            };
            (weight, record[4].to_string())
        } else {
            (1.0, record[3].to_string())
        };
        if weight < 0.0 {
            return Err(bad("negative weight".into()));
        }
        if !weight.is_finite() {
            return Err(bad(format!("bad weight {weight}")));
        }
        if !ids.insert(id.clone()) {
            return Err(bad(format!("duplicate id {id:?}")));
        }
        let outside_intervals = !config.intervals.iter().any(|iv| iv.contains(timestamp));
        docs.push(Document {
            id,
            timestamp,
            source,
            weight,
            text,
            outside_intervals,
        });
    }
    Ok(docs)
}

/// Writes documents in the five-column corpus format.
pub fn write_corpus<W: Write>(docs: &[Document], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["id", "date", "source", "weight", "text"])?;
    for d in docs {
        wtr.write_record([
            d.id.as_str(),
            &d.timestamp.to_rfc3339(),
            &d.source,
            &d.weight.to_string(),
            &d.text,
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<corpus writer>", e))?;
    Ok(())
}

/// Keeps the first `ceil(fraction * len)` tokens.
pub fn truncate_text<T: Clone>(tokens: &[T], fraction: f64) -> Vec<T> {
    tokens[..truncated_len(tokens.len(), fraction)].to_vec()
}

pub(crate) fn truncated_len(len: usize, fraction: f64) -> usize {
    if fraction >= 1.0 {
        return len;
    }
    let exact = fraction * len as f64;
    let mut keep = exact.ceil();
    // 0.7 * 10 evaluates to 7.000000000000001; don't let that round up to 8
    if keep - 1.0 >= exact - exact * 1e-12 {
        keep -= 1.0;
    }
    (keep.max(0.0) as usize).min(len)
}

/// Places every document in the unique interval containing it.
///
/// Buckets follow interval order; documents outside all intervals are counted
/// as dropped.
pub fn bucket_documents(docs: &[Document], intervals: &[TimeInterval]) -> (Vec<TimeBucket>, Diagnostics) {
    let mut buckets: Vec<TimeBucket> = intervals
        .iter()
        .map(|&interval| TimeBucket {
            interval,
            documents: Vec::new(),
        })
        .collect();
    let mut dropped = 0;
    for doc in docs {
        match intervals.iter().position(|iv| iv.contains(doc.timestamp)) {
            Some(i) => buckets[i].documents.push(doc.clone()),
            None => dropped += 1,
        }
    }
    let diagnostics = Diagnostics {
        dropped,
        parsed: docs.len(),
    };
    (buckets, diagnostics)
}
