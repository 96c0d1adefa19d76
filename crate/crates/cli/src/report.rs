//! Report envelope and the three output formats.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use ratekit::verify::{summarize, CaseReport, Summary};
use ratekit::{EvalResult, IntegralSpec, Method, MethodTag, Variant};

use crate::fmt::{g17, short};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridParameter {
    B,
    Beta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub parameter: GridParameter,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Grid {
    /// Parse `start:stop:count`.
    pub fn parse(parameter: GridParameter, text: &str, log: bool) -> Result<Grid, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("grid must look like start:stop:count, got '{text}'"));
        };
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("bad grid bound '{s}'"));
        let (start, stop) = (num(start)?, num(stop)?);
        let count: usize = count.trim().parse().map_err(|_| format!("bad grid count '{count}'"))?;
        if count == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(format!("grid needs finite bounds and a positive count, got '{text}'"));
        }
        if log && !(start > 0.0 && stop > 0.0) {
            return Err("--log-grid needs positive bounds".into());
        }
        Ok(Grid {
            parameter,
            start,
            stop,
            count,
            log,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let (lo, hi) = if self.log {
            (self.start.ln(), self.stop.ln())
        } else {
            (self.start, self.stop)
        };
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    return self.stop;
                }
                let x = lo + (hi - lo) * i as f64 / last;
                if self.log {
                    x.exp()
                } else {
                    x
                }
            })
            .collect()
    }
}

/// Everything that determines the output of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spec: Option<IntegralSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rel_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid: Option<Grid>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: &str, format: Format) -> Self {
        RunConfig {
            command: command.to_string(),
            spec: None,
            method: None,
            rel_tol: None,
            seed: None,
            grid: None,
            format,
        }
    }

    pub fn with_spec(self, spec: IntegralSpec) -> Self {
        RunConfig {
            spec: Some(spec),
            ..self
        }
    }

    pub fn with_method(self, method: Method, rel_tol: f64) -> Self {
        RunConfig {
            method: Some(method),
            rel_tol: Some(rel_tol),
            ..self
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        RunConfig {
            seed: Some(seed),
            ..self
        }
    }

    pub fn with_grid(self, grid: Grid) -> Self {
        RunConfig {
            grid: Some(grid),
            ..self
        }
    }
}

/// One evaluated point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub variant: Variant,
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub rho: f64,
    pub beta: Option<f64>,
    pub cutoff: Option<f64>,
    pub value: f64,
    pub error_estimate: f64,
    pub method: MethodTag,
    pub work: u64,
}

impl TableRow {
    pub fn new(spec: &IntegralSpec, r: &EvalResult) -> Self {
        TableRow {
            variant: spec.variant,
            alpha: spec.alpha,
            a: spec.a,
            b: spec.b,
            delta: spec.delta,
            rho: spec.rho,
            beta: spec.beta,
            cutoff: spec.effective_cutoff(),
            value: r.value,
            error_estimate: r.abs_error_estimate,
            method: r.method,
            work: r.work,
        }
    }
}

/// A verification case; `null` metric and threshold mean the check raised an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseOut {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub metric: Option<f64>,
    pub threshold: Option<f64>,
    pub detail: String,
}

impl From<CaseReport> for CaseOut {
    fn from(c: CaseReport) -> Self {
        let finite = |v: f64| if v.is_nan() { None } else { Some(v) };
        CaseOut {
            suite: c.suite,
            name: c.name,
            passed: c.passed,
            metric: finite(c.metric),
            threshold: finite(c.threshold),
            detail: c.detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<C> {
    pub command: String,
    pub config: RunConfig,
    pub cases: Vec<C>,
    pub summary: Summary,
}

impl Report<TableRow> {
    pub fn rows(config: RunConfig, rows: Vec<TableRow>) -> Self {
        let n = rows.len();
        Report {
            command: config.command.clone(),
            config,
            cases: rows,
            summary: Summary {
                total: n,
                passed: n,
                failed: 0,
            },
        }
    }
}

impl Report<CaseOut> {
    pub fn checks(config: RunConfig, cases: Vec<CaseReport>) -> Self {
        let summary = summarize(&cases);
        Report {
            command: config.command.clone(),
            config,
            cases: cases.into_iter().map(CaseOut::from).collect(),
            summary,
        }
    }
}

fn json<W: Write, C: Serialize>(out: &mut W, report: &Report<C>) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, report)?;
    writeln!(out)
}

fn opt(v: Option<f64>) -> String {
    v.map(g17).unwrap_or_default()
}

pub fn write_rows<W: Write>(out: &mut W, report: &Report<TableRow>) -> io::Result<()> {
    match report.config.format {
        Format::Json => json(out, report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "variant",
                "alpha",
                "a",
                "b",
                "delta",
                "rho",
                "beta",
                "cutoff",
                "value",
                "error_estimate",
                "method",
                "work",
            ])?;
            for r in &report.cases {
                w.write_record([
                    r.variant.as_str().to_string(),
                    g17(r.alpha),
                    g17(r.a),
                    g17(r.b),
                    g17(r.delta),
                    g17(r.rho),
                    opt(r.beta),
                    opt(r.cutoff),
                    g17(r.value),
                    g17(r.error_estimate),
                    r.method.as_str().to_string(),
                    r.work.to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Human => {
            for r in &report.cases {
                let mut params = format!(
                    "{} alpha={} a={} b={} delta={} rho={}",
                    r.variant.as_str(),
                    r.alpha,
                    r.a,
                    r.b,
                    r.delta,
                    r.rho
                );
                if let Some(beta) = r.beta {
                    params += &format!(" beta={beta}");
                }
                if let Some(d) = r.cutoff {
                    params += &format!(" cutoff={d}");
                }
                writeln!(
                    out,
                    "{params}: {:.16e} ± {} ({}, work {})",
                    r.value,
                    short(r.error_estimate),
                    r.method.as_str(),
                    r.work
                )?;
            }
            Ok(())
        }
    }
}

pub fn write_cases<W: Write>(out: &mut W, report: &Report<CaseOut>) -> io::Result<()> {
    match report.config.format {
        Format::Json => json(out, report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["suite", "name", "passed", "metric", "threshold", "detail"])?;
            for c in &report.cases {
                w.write_record([
                    c.suite.clone(),
                    c.name.clone(),
                    c.passed.to_string(),
                    opt(c.metric),
                    opt(c.threshold),
                    c.detail.clone(),
                ])?;
            }
            w.flush()
        }
        Format::Human => {
            for c in &report.cases {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let metric = c.metric.map(short).unwrap_or_else(|| "n/a".into());
                let threshold = c.threshold.map(short).unwrap_or_else(|| "n/a".into());
                writeln!(
                    out,
                    "{mark} [{}] {}: {metric} vs {threshold}  {}",
                    c.suite, c.name, c.detail
                )?;
            }
            let s = report.summary;
            writeln!(
                out,
                "{}: {}/{} passed, {} failed",
                report.command, s.passed, s.total, s.failed
            )
        }
    }
}
