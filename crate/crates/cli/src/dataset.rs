//! Experiment files: CSV with a fixed header, or a JSON array with the same
//! field names.
//!
//! CSV comment lines of the form `# label: citation` attach a source to the
//! record with that label.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use qdt_core::Experiment;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const HEADER: [&str; 5] = ["label", "p0", "p1", "q0", "observed_pk"];

/// Condition weight used for blank `q0` cells.
pub const DEFAULT_Q0: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub experiment: Experiment,
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentFile {
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// Row as written on disk. `q0` may be blank.
#[derive(Debug, Serialize, Deserialize)]
struct RawRow {
    label: String,
    p0: f64,
    p1: f64,
    q0: Option<f64>,
    observed_pk: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

/// How `q0` is resolved: blank cells take `q0.unwrap_or(DEFAULT_Q0)`, and
/// an explicit `q0` replaces every value in the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    pub q0: Option<f64>,
}

impl ExperimentFile {
    pub fn get(&self, label: &str) -> Result<&Record> {
        self.records
            .iter()
            .find(|r| r.experiment.label == label)
            .ok_or_else(|| CliError::UnknownLabel(label.to_string()))
    }

    pub fn experiments(&self) -> Vec<Experiment> {
        self.records.iter().map(|r| r.experiment.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            if let Some(src) = &r.source {
                out.push_str(&format!("# {}: {}\n", r.experiment.label, src));
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(HEADER).expect("in-memory write");
        for r in &self.records {
            let e = &r.experiment;
            let observed = e.observed_pk.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([
                e.label.clone(),
                e.p0.to_string(),
                e.p1.to_string(),
                e.q0.to_string(),
                observed,
            ])
            .expect("in-memory write");
        }
        out.push_str(
            &String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input"),
        );
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<RawRow> = self
            .records
            .iter()
            .map(|r| RawRow {
                label: r.experiment.label.clone(),
                p0: r.experiment.p0,
                p1: r.experiment.p1,
                q0: Some(r.experiment.q0),
                observed_pk: r.experiment.observed_pk,
                source: r.source.clone(),
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn load(path: &Path, opts: LoadOptions) -> Result<ExperimentFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let name = path.display().to_string();
    match Format::from_path(path) {
        Format::Csv => parse_csv(&text, &name, opts),
        Format::Json => parse_json(&text, &name, opts),
    }
}

pub fn parse_csv(text: &str, name: &str, opts: LoadOptions) -> Result<ExperimentFile> {
    let mut sources = BTreeMap::new();
    for line in text.lines() {
        if let Some(rest) = line.trim_start().strip_prefix('#') {
            if let Some((label, src)) = rest.split_once(':') {
                sources.insert(label.trim().to_string(), src.trim().to_string());
            }
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let parse_err = |message: String| CliError::Parse {
        path: name.to_string(),
        message,
    };
    let headers = reader
        .headers()
        .map_err(|e| parse_err(e.to_string()))?
        .clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Ok(ExperimentFile::default());
    }
    if headers.iter().ne(HEADER) {
        return Err(parse_err(format!(
            "header must be `{}`, found `{}`",
            HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut located = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| parse_err(describe_csv_error(&e, None)))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let mut row: RawRow = record
            .deserialize(Some(&headers))
            .map_err(|e| parse_err(describe_csv_error(&e, Some(line))))?;
        if row.source.is_none() {
            row.source = sources.get(&row.label).cloned();
        }
        located.push((format!("line {line}"), row));
    }
    build(located, name, opts)
}

pub fn parse_json(text: &str, name: &str, opts: LoadOptions) -> Result<ExperimentFile> {
    if text.trim().is_empty() {
        return Ok(ExperimentFile::default());
    }
    let rows: Vec<RawRow> = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: name.to_string(),
        message: e.to_string(),
    })?;
    let located = rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| (format!("record {}", i + 1), row))
        .collect();
    build(located, name, opts)
}

fn build(rows: Vec<(String, RawRow)>, name: &str, opts: LoadOptions) -> Result<ExperimentFile> {
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    let mut records = Vec::with_capacity(rows.len());
    for (at, row) in rows {
        if let Some(first) = seen.get(&row.label) {
            return Err(CliError::DuplicateLabel {
                path: name.to_string(),
                label: row.label,
                first: first.clone(),
                second: at,
            });
        }
        let q0 = opts.q0.or(row.q0).unwrap_or(DEFAULT_Q0);
        let invalid = |source| CliError::Invalid {
            path: name.to_string(),
            label: row.label.clone(),
            at: at.clone(),
            source,
        };
        let mut experiment =
            Experiment::new(row.label.clone(), row.p0, row.p1, q0).map_err(invalid)?;
        if let Some(pk) = row.observed_pk {
            experiment = experiment.with_observed(pk).map_err(invalid)?;
        }
        seen.insert(row.label.clone(), at);
        records.push(Record {
            experiment,
            source: row.source,
        });
    }
    Ok(ExperimentFile { records })
}

fn describe_csv_error(e: &csv::Error, line: Option<u64>) -> String {
    let line = e
        .position()
        .map(|p| p.line())
        .or(line)
        .map(|l| format!("line {l}"));
    match e.kind() {
        csv::ErrorKind::Deserialize { err, .. } => {
            let field = err
                .field()
                .and_then(|i| HEADER.get(i as usize))
                .map(|f| format!("field `{f}`"));
            let loc = [line, field]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join(", ");
            format!("{loc}: {}", err.kind())
        }
        _ => match line {
            Some(l) => format!("{l}: {e}"),
            None => e.to_string(),
        },
    }
}
