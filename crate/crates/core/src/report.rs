//! Certificate records and their CSV / manifest serialisation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative slack for non-strict comparisons; absorbs rounding when a bound is
/// attained with equality.
pub const COMPARISON_SLACK: f64 = 1e-12;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Le,
    Lt,
    Ge,
    Gt,
    /// Recorded, not checked.
    Info,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Le => "<=",
            Comparison::Lt => "<",
            Comparison::Ge => ">=",
            Comparison::Gt => ">",
            Comparison::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub comparison: Comparison,
}

impl Quantity {
    /// `None` for informational rows.
    pub fn holds(&self) -> Option<bool> {
        let b = match (self.comparison, self.bound) {
            (Comparison::Info, _) | (_, None) => return None,
            (_, Some(b)) => b,
        };
        let v = self.value;
        if v.is_nan() || b.is_nan() {
            return Some(false);
        }
        let slack = COMPARISON_SLACK * b.abs().max(1.0);
        Some(match self.comparison {
            Comparison::Le => v <= b + slack,
            Comparison::Ge => v >= b - slack,
            Comparison::Lt => v < b,
            Comparison::Gt => v > b,
            Comparison::Info => unreachable!(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one verification: inputs, measured quantities and their bounds.
///
/// The verdict is the conjunction of every checked quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub name: String,
    pub inputs: Vec<(String, String)>,
    pub quantities: Vec<Quantity>,
    pub runtime: Duration,
}

impl CertificateReport {
    pub fn new(name: impl Into<String>) -> Self {
        CertificateReport {
            name: name.into(),
            inputs: Vec::new(),
            quantities: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.inputs.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64, bound: Option<f64>, comparison: Comparison) -> &mut Self {
        self.quantities.push(Quantity {
            name: name.into(),
            value,
            bound,
            comparison,
        });
        self
    }

    pub fn info(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.push(name, value, None, Comparison::Info)
    }

    pub fn le(&mut self, name: impl Into<String>, value: f64, bound: f64) -> &mut Self {
        self.push(name, value, Some(bound), Comparison::Le)
    }

    pub fn ge(&mut self, name: impl Into<String>, value: f64, bound: f64) -> &mut Self {
        self.push(name, value, Some(bound), Comparison::Ge)
    }

    pub fn lt(&mut self, name: impl Into<String>, value: f64, bound: f64) -> &mut Self {
        self.push(name, value, Some(bound), Comparison::Lt)
    }

    pub fn gt(&mut self, name: impl Into<String>, value: f64, bound: f64) -> &mut Self {
        self.push(name, value, Some(bound), Comparison::Gt)
    }

    pub fn finish(&mut self, started: Instant) -> &mut Self {
        self.runtime = started.elapsed();
        self
    }

    pub fn verdict(&self) -> Verdict {
        if self.quantities.iter().all(|q| q.holds() != Some(false)) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    /// First quantity with the given name.
    pub fn get(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|q| q.name == name).map(|q| q.value)
    }

    /// Quantities that failed their comparison.
    pub fn failures(&self) -> impl Iterator<Item = &Quantity> + '_ {
        self.quantities.iter().filter(|q| q.holds() == Some(false))
    }

    /// Appends another report's inputs and quantities under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: CertificateReport) {
        for (k, v) in other.inputs {
            self.inputs.push((format!("{prefix}.{k}"), v));
        }
        for mut q in other.quantities {
            q.name = format!("{prefix}.{}", q.name);
            self.quantities.push(q);
        }
        self.runtime += other.runtime;
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("quantity,value,bound,comparison,verdict\n");
        for q in &self.quantities {
            let verdict = match q.holds() {
                None => "info",
                Some(true) => "pass",
                Some(false) => "fail",
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&q.name),
                fmt_real(q.value),
                q.bound.map(fmt_real).unwrap_or_default(),
                q.comparison.symbol(),
                verdict
            ));
        }
        out
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, self.verdict())?;
        for q in &self.quantities {
            match q.bound {
                Some(b) => writeln!(f, "  {} = {} {} {}", q.name, fmt_real(q.value), q.comparison.symbol(), fmt_real(b))?,
                None => writeln!(f, "  {} = {}", q.name, fmt_real(q.value))?,
            }
        }
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Formats a real with 12 significant digits, `.` as decimal separator.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // The exponent is taken after rounding so 9.99999999999995 lands in the next decade.
    let sci = format!("{:.11e}", x);
    let (mantissa, e) = sci.split_once('e').expect("scientific format");
    let e: i32 = e.parse().expect("exponent");
    if (-5..12).contains(&e) {
        let decimals = (11 - e).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), e)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Record of one command invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub tool_version: String,
    pub wall_time_secs: f64,
    pub outputs: Vec<String>,
    pub verdict: Option<Verdict>,
}

impl RunManifest {
    pub fn from_report(report: &CertificateReport) -> Self {
        RunManifest {
            command_line: vec![report.name.clone()],
            parameters: report.inputs.iter().cloned().collect(),
            seed: report
                .inputs
                .iter()
                .find(|(k, _)| k == "seed")
                .and_then(|(_, v)| v.parse().ok()),
            tolerances: BTreeMap::new(),
            tool_version: TOOL_VERSION.to_string(),
            wall_time_secs: report.runtime.as_secs_f64(),
            outputs: Vec::new(),
            verdict: Some(report.verdict()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serialises");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Manifest,
}

pub fn write_report(report: &CertificateReport, path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Manifest => RunManifest::from_report(report).to_text(),
    };
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
