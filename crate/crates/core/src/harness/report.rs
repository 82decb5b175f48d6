//! CSV and JSON-lines report files.
//!
//! CSV: one row per run with the columns in [`CSV_FIXED_COLUMNS`] followed by
//! `x_1..x_d`, then a row with `run_index = "summary"` holding the master
//! seed, the best feasible objective, the number of feasible runs (in the
//! `feasible` column), the total evaluation count and the best vector. A
//! failed run has empty objective and violation cells.
//!
//! JSON lines: one `{"kind": "run", ...}` object per run, then one
//! `{"kind": "summary", ...}` object carrying the aggregate and wall time.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{aggregate, Aggregate, RunRecord, RunReport};
use crate::error::{Error, Result};

pub const CSV_FIXED_COLUMNS: [&str; 8] = [
    "problem",
    "algorithm",
    "run_index",
    "seed",
    "best_objective",
    "feasible",
    "total_violation",
    "evaluations",
];

const FAILED_RUN: &str = "run failed (see the JSON-lines report for the message)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Jsonl,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "jsonl" | "json-lines" => Ok(Self::Jsonl),
            other => Err(Error::InvalidConfig(format!(
                "unknown report format '{other}' (csv or jsonl)"
            ))),
        }
    }
}

pub fn emit_report(report: &RunReport, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = match format {
        ReportFormat::Csv => to_csv_string(report)?,
        ReportFormat::Jsonl => to_jsonl_string(report)?,
    };
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    out.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

fn num(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv_string(report: &RunReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Report(e.to_string());
    let mut header: Vec<String> = CSV_FIXED_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend((1..=report.dimension).map(|k| format!("x_{k}")));
    w.write_record(&header).map_err(csv_err)?;
    let pad = |position: &[f64]| -> Vec<String> {
        (0..report.dimension)
            .map(|k| position.get(k).map(|x| x.to_string()).unwrap_or_default())
            .collect()
    };
    for r in &report.runs {
        let mut row = vec![
            report.problem.clone(),
            report.algorithm.clone(),
            r.run_index.to_string(),
            r.seed.to_string(),
            num(r.best_objective),
            r.feasible.to_string(),
            num(r.total_violation),
            r.evaluations.to_string(),
        ];
        row.extend(pad(&r.position));
        w.write_record(&row).map_err(csv_err)?;
    }
    let a = &report.aggregate;
    let mut row = vec![
        report.problem.clone(),
        report.algorithm.clone(),
        "summary".to_string(),
        report.master_seed.to_string(),
        num(a.statistics.as_ref().map(|s| s.best)),
        a.feasible_runs.to_string(),
        String::new(),
        report.runs.iter().map(|r| r.evaluations).sum::<usize>().to_string(),
    ];
    row.extend(pad(a.best_position.as_deref().unwrap_or(&[])));
    w.write_record(&row).map_err(csv_err)?;
    let bytes = w.into_inner().map_err(|e| Error::Report(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Report(e.to_string()))
}

/// Contents of a CSV report.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvReport {
    pub problem: String,
    pub algorithm: String,
    pub dimension: usize,
    pub master_seed: u64,
    pub runs: Vec<RunRecord>,
    /// Recomputed from the run rows.
    pub aggregate: Aggregate,
    pub summary_best: Option<f64>,
    pub summary_feasible_runs: usize,
}

fn parse<T: FromStr>(cell: &str, what: &str, line: usize) -> Result<T> {
    cell.parse()
        .map_err(|_| Error::Report(format!("line {line}: cannot parse {what} from '{cell}'")))
}

fn parse_opt(cell: &str, what: &str, line: usize) -> Result<Option<f64>> {
    if cell.is_empty() {
        Ok(None)
    } else {
        parse(cell, what, line).map(Some)
    }
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<CsvReport> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::Report(format!("{}: {e}", path.display())))?;
    let header = reader.headers().map_err(|e| Error::Report(e.to_string()))?.clone();
    if header.len() < CSV_FIXED_COLUMNS.len() || header.iter().zip(CSV_FIXED_COLUMNS).any(|(a, b)| a != b) {
        return Err(Error::Report(format!("{}: unexpected CSV header", path.display())));
    }
    let dimension = header.len() - CSV_FIXED_COLUMNS.len();
    let mut runs = Vec::new();
    let mut summary = None;
    let (mut problem, mut algorithm) = (String::new(), String::new());
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Report(e.to_string()))?;
        problem = row[0].to_string();
        algorithm = row[1].to_string();
        let position: Vec<f64> = (0..dimension)
            .filter_map(|k| {
                let cell = &row[CSV_FIXED_COLUMNS.len() + k];
                (!cell.is_empty()).then(|| parse(cell, "coordinate", line))
            })
            .collect::<Result<_>>()?;
        if &row[2] == "summary" {
            summary = Some((
                parse::<u64>(&row[3], "seed", line)?,
                parse_opt(&row[4], "best objective", line)?,
                parse::<usize>(&row[5], "feasible count", line)?,
            ));
            continue;
        }
        let best_objective = parse_opt(&row[4], "best objective", line)?;
        runs.push(RunRecord {
            run_index: parse(&row[2], "run index", line)?,
            seed: parse(&row[3], "seed", line)?,
            best_objective,
            feasible: parse(&row[5], "feasible flag", line)?,
            total_violation: parse_opt(&row[6], "total violation", line)?,
            evaluations: parse(&row[7], "evaluations", line)?,
            position,
            error: best_objective.is_none().then(|| FAILED_RUN.to_string()),
        });
    }
    let (master_seed, summary_best, summary_feasible_runs) =
        summary.ok_or_else(|| Error::Report(format!("{}: no summary row", path.display())))?;
    Ok(CsvReport {
        problem,
        algorithm,
        dimension,
        master_seed,
        aggregate: aggregate(&runs)?,
        runs,
        summary_best,
        summary_feasible_runs,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Line {
    Run {
        problem: String,
        algorithm: String,
        #[serde(flatten)]
        record: RunRecord,
    },
    Summary(Summary),
}

#[derive(Serialize, Deserialize)]
struct Summary {
    problem: String,
    algorithm: String,
    dimension: usize,
    master_seed: u64,
    population: usize,
    evaluations_per_run: usize,
    partial: bool,
    aggregate: Aggregate,
    wall_time_seconds: f64,
}

pub fn to_jsonl_string(report: &RunReport) -> Result<String> {
    let mut out = String::new();
    let json_err = |e: serde_json::Error| Error::Report(e.to_string());
    for r in &report.runs {
        let line = Line::Run {
            problem: report.problem.clone(),
            algorithm: report.algorithm.clone(),
            record: r.clone(),
        };
        out.push_str(&serde_json::to_string(&line).map_err(json_err)?);
        out.push('\n');
    }
    let summary = Line::Summary(Summary {
        problem: report.problem.clone(),
        algorithm: report.algorithm.clone(),
        dimension: report.dimension,
        master_seed: report.master_seed,
        population: report.population,
        evaluations_per_run: report.evaluations_per_run,
        partial: report.partial,
        aggregate: report.aggregate.clone(),
        wall_time_seconds: report.wall_time_seconds,
    });
    out.push_str(&serde_json::to_string(&summary).map_err(json_err)?);
    out.push('\n');
    Ok(out)
}

pub fn read_jsonl(path: impl AsRef<Path>) -> Result<RunReport> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut runs = Vec::new();
    let mut summary = None;
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line).map_err(|e| Error::Report(format!("line {}: {e}", i + 1)))? {
            Line::Run { record, .. } => runs.push(record),
            Line::Summary(s) => summary = Some(s),
        }
    }
    let s = summary.ok_or_else(|| Error::Report(format!("{}: no summary line", path.display())))?;
    Ok(RunReport {
        problem: s.problem,
        algorithm: s.algorithm,
        dimension: s.dimension,
        master_seed: s.master_seed,
        population: s.population,
        evaluations_per_run: s.evaluations_per_run,
        runs,
        aggregate: s.aggregate,
        partial: s.partial,
        wall_time_seconds: s.wall_time_seconds,
    })
}
