//! Experiment harness: regenerate the benchmark score and runtime tables.
//!
//! A plan names a table (kinds, sample size, noise), the seeds to average
//! over, and how many timing repetitions to run. Scores are deterministic
//! functions of the plan; only the wall-clock columns vary between runs, and
//! those are always measured in the sequential scoring mode with generation
//! and serialization excluded.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::baselines::{pearson, spearman};
use crate::data::Dataset;
use crate::datagen::{generate, NoiseSpec, RelationshipKind};
use crate::error::{Error, Result};
use crate::mic::mic;
use crate::umic::umic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    Mic,
    Umic,
    Pearson,
    Spearman,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Mic,
        Measure::Umic,
        Measure::Pearson,
        Measure::Spearman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Mic => "MIC",
            Measure::Umic => "U-MIC",
            Measure::Pearson => "Pearson",
            Measure::Spearman => "Spearman",
        }
    }

    /// Score one dataset, strictly sequentially.
    pub fn score(self, d: &Dataset<f64>) -> Result<f64> {
        match self {
            Measure::Mic => Ok(mic(d, 0.6)?.score),
            Measure::Umic => Ok(umic(d, 0.6)?.score),
            Measure::Pearson => pearson(d),
            Measure::Spearman => spearman(d),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mic" => Ok(Measure::Mic),
            "umic" | "u-mic" => Ok(Measure::Umic),
            "pearson" => Ok(Measure::Pearson),
            "spearman" => Ok(Measure::Spearman),
            _ => Err(Error::UnknownKind(format!("measure '{s}'"))),
        }
    }
}

/// The seven benchmark tables: functional scores at n=200 and n=5000,
/// functional runtimes, non-functional scores and runtimes, and the noisy
/// non-functional runtimes and scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
        TableId::T7,
    ];

    pub fn kinds(self) -> Vec<RelationshipKind> {
        match self {
            TableId::T1 | TableId::T2 | TableId::T3 => RelationshipKind::FUNCTIONAL.to_vec(),
            TableId::T4 | TableId::T5 => RelationshipKind::NON_FUNCTIONAL.to_vec(),
            TableId::T6 | TableId::T7 => RelationshipKind::NOISY.to_vec(),
        }
    }

    pub fn sample_size(self) -> usize {
        match self {
            TableId::T2 => 5000,
            _ => 200,
        }
    }

    pub fn noise(self) -> NoiseSpec {
        match self {
            TableId::T6 | TableId::T7 => NoiseSpec::Uniform { half_width: 0.05 },
            _ => NoiseSpec::None,
        }
    }

    /// True for the runtime tables, which need timing repetitions.
    pub fn is_timing(self) -> bool {
        matches!(self, TableId::T3 | TableId::T5 | TableId::T6)
    }

    /// Required MIC/U-MIC runtime ratio for the timing tables.
    pub fn speedup_threshold(self) -> Option<f64> {
        match self {
            TableId::T3 => Some(10.0),
            TableId::T5 | TableId::T6 => Some(50.0),
            _ => None,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", *self as usize + 1)
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_ascii_uppercase();
        TableId::ALL
            .into_iter()
            .find(|t| t.to_string() == upper)
            .ok_or_else(|| Error::UnknownKind(format!("table '{s}'")))
    }
}

/// What to run: kinds x measures x seeds, plus timing repetitions.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub table: TableId,
    pub kinds: Vec<RelationshipKind>,
    pub n: usize,
    pub seeds: Vec<u64>,
    pub measures: Vec<Measure>,
    pub noise: NoiseSpec,
    pub timing_reps: usize,
    /// Set when the table's standard settings were overridden.
    pub custom: bool,
}

impl ExperimentPlan {
    /// The standard plan for a table: its kinds, sample size, and noise,
    /// with MIC and U-MIC as measures and timing reps on the runtime tables.
    pub fn for_table(table: TableId, seeds: Vec<u64>) -> ExperimentPlan {
        ExperimentPlan {
            table,
            kinds: table.kinds(),
            n: table.sample_size(),
            seeds,
            measures: vec![Measure::Mic, Measure::Umic],
            noise: table.noise(),
            timing_reps: if table.is_timing() { 5 } else { 0 },
            custom: false,
        }
    }

    pub fn with_sample_size(mut self, n: usize) -> ExperimentPlan {
        self.n = n;
        self.custom = true;
        self
    }
}

/// One `(kind, measure)` cell: seed-averaged score and timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub kind: String,
    pub measure: String,
    pub mean: Option<f64>,
    pub sd: Option<f64>,
    pub median_secs: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvFingerprint {
    pub cpu: String,
    pub profile: String,
}

impl EnvFingerprint {
    pub fn current() -> EnvFingerprint {
        EnvFingerprint {
            cpu: cpu_model(),
            profile: if cfg!(debug_assertions) {
                "debug".to_string()
            } else {
                "release".to_string()
            },
        }
    }
}

fn cpu_model() -> String {
    std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|info| {
            info.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split(':').nth(1))
                .map(|s| s.trim().to_string())
        })
        .unwrap_or_else(|| "unknown".to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub table: String,
    pub n: usize,
    pub noise: String,
    pub cells: Vec<Cell>,
    pub fingerprint: EnvFingerprint,
}

impl BenchReport {
    pub fn cell(&self, kind: RelationshipKind, measure: Measure) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.kind == kind.name() && c.measure == measure.name())
    }

    pub fn has_errors(&self) -> bool {
        self.cells.iter().any(|c| c.error.is_some())
    }
}

/// Run every cell of the plan: generate per seed, score, aggregate, and (for
/// timing plans) measure the median wall clock of the scoring call alone.
/// Scoring errors are recorded per cell, never fatal to the report.
pub fn run_plan(plan: &ExperimentPlan) -> BenchReport {
    let mut cells = Vec::new();
    for &kind in &plan.kinds {
        let datasets: Vec<Result<Dataset<f64>>> = plan
            .seeds
            .iter()
            .map(|&seed| generate(kind, plan.n, seed, &plan.noise))
            .collect();
        for &measure in &plan.measures {
            cells.push(run_cell(kind, measure, &datasets, plan.timing_reps));
        }
    }
    BenchReport {
        table: plan.table.to_string(),
        n: plan.n,
        noise: plan.noise.to_string(),
        cells,
        fingerprint: EnvFingerprint::current(),
    }
}

fn run_cell(
    kind: RelationshipKind,
    measure: Measure,
    datasets: &[Result<Dataset<f64>>],
    timing_reps: usize,
) -> Cell {
    let mut scores = Vec::with_capacity(datasets.len());
    let mut error = None;
    for d in datasets {
        let outcome = d
            .as_ref()
            .map_err(|e| e.to_string())
            .and_then(|d| measure.score(d).map_err(|e| e.to_string()));
        match outcome {
            Ok(s) => scores.push(s),
            Err(e) => {
                error = Some(e);
                break;
            }
        }
    }
    if let Some(error) = error {
        return Cell {
            kind: kind.name().to_string(),
            measure: measure.name().to_string(),
            mean: None,
            sd: None,
            median_secs: None,
            error: Some(error),
        };
    }
    let mean = scores.iter().sum::<f64>() / scores.len() as f64;
    let sd = if scores.len() > 1 {
        (scores.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (scores.len() - 1) as f64)
            .sqrt()
    } else {
        0.0
    };
    let median_secs = if timing_reps > 0 {
        datasets.first().and_then(|d| d.as_ref().ok()).map(|d| {
            let mut times: Vec<f64> = (0..timing_reps)
                .map(|_| {
                    let start = Instant::now();
                    let _ = measure.score(d);
                    start.elapsed().as_secs_f64()
                })
                .collect();
            times.sort_by(|a, b| a.partial_cmp(b).unwrap());
            times[times.len() / 2]
        })
    } else {
        None
    };
    Cell {
        kind: kind.name().to_string(),
        measure: measure.name().to_string(),
        mean: Some(mean),
        sd: Some(sd),
        median_secs,
        error: None,
    }
}

/// `time(MIC) / time(U-MIC)` per kind.
pub fn speedup_summary(report: &BenchReport) -> Result<Vec<(String, f64)>> {
    let mut out = Vec::new();
    let kinds: Vec<&str> = {
        let mut seen = Vec::new();
        for c in &report.cells {
            if !seen.contains(&c.kind.as_str()) {
                seen.push(c.kind.as_str());
            }
        }
        seen
    };
    for kind in kinds {
        let time_of = |measure: Measure| -> Result<f64> {
            report
                .cells
                .iter()
                .find(|c| c.kind == kind && c.measure == measure.name())
                .and_then(|c| c.median_secs)
                .ok_or(Error::MissingMeasure(measure.name()))
        };
        let mic_time = time_of(Measure::Mic)?;
        let umic_time = time_of(Measure::Umic)?;
        out.push((kind.to_string(), mic_time / umic_time));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportFormat {
    Csv,
    Json,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(Error::UnknownKind(format!("report format '{s}'"))),
        }
    }
}

/// Deterministic serialization of a report. Markdown mirrors the benchmark
/// table layout: kinds as columns, measures as rows.
pub fn emit_report(report: &BenchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Markdown => emit_markdown(report),
    }
}

const CSV_HEADER: &str = "table,n,noise,kind,measure,mean,sd,median_secs,error,cpu,profile";

fn emit_csv(report: &BenchReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    for c in &report.cells {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            csv_field(&report.table),
            report.n,
            csv_field(&report.noise),
            csv_field(&c.kind),
            csv_field(&c.measure),
            opt(c.mean),
            opt(c.sd),
            opt(c.median_secs),
            csv_field(c.error.as_deref().unwrap_or("")),
            csv_field(&report.fingerprint.cpu),
            csv_field(&report.fingerprint.profile),
        ));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn split_csv_row(row: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut field = String::new();
    let mut chars = row.chars().peekable();
    let mut quoted = false;
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted => {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    field.push('"');
                } else {
                    quoted = false;
                }
            }
            '"' if field.is_empty() => quoted = true,
            ',' if !quoted => fields.push(std::mem::take(&mut field)),
            c => field.push(c),
        }
    }
    fields.push(field);
    fields
}

/// Parse a report emitted as CSV; inverse of [`emit_report`] for that format.
pub fn parse_report_csv(text: &str) -> Result<BenchReport> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(Error::MalformedCsv {
        line: 1,
        message: "empty report".to_string(),
    })?;
    if header != CSV_HEADER {
        return Err(Error::MalformedCsv {
            line: 1,
            message: format!("unexpected header '{header}'"),
        });
    }
    let mut report: Option<BenchReport> = None;
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let f = split_csv_row(line);
        if f.len() != 11 {
            return Err(Error::MalformedCsv {
                line: idx + 2,
                message: format!("expected 11 fields, got {}", f.len()),
            });
        }
        let num = |s: &str| -> Result<Option<f64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse::<f64>().map(Some).map_err(|_| Error::MalformedCsv {
                    line: idx + 2,
                    message: format!("non-numeric field '{s}'"),
                })
            }
        };
        let cell = Cell {
            kind: f[3].clone(),
            measure: f[4].clone(),
            mean: num(&f[5])?,
            sd: num(&f[6])?,
            median_secs: num(&f[7])?,
            error: if f[8].is_empty() {
                None
            } else {
                Some(f[8].clone())
            },
        };
        let n = f[1].parse::<usize>().map_err(|_| Error::MalformedCsv {
            line: idx + 2,
            message: format!("bad sample size '{}'", f[1]),
        })?;
        match &mut report {
            Some(r) => r.cells.push(cell),
            None => {
                report = Some(BenchReport {
                    table: f[0].clone(),
                    n,
                    noise: f[2].clone(),
                    cells: vec![cell],
                    fingerprint: EnvFingerprint {
                        cpu: f[9].clone(),
                        profile: f[10].clone(),
                    },
                });
            }
        }
    }
    report.ok_or(Error::MalformedCsv {
        line: 2,
        message: "report has no cells".to_string(),
    })
}

fn emit_markdown(report: &BenchReport) -> String {
    let mut kinds: Vec<&str> = Vec::new();
    let mut measures: Vec<&str> = Vec::new();
    for c in &report.cells {
        if !kinds.contains(&c.kind.as_str()) {
            kinds.push(&c.kind);
        }
        if !measures.contains(&c.measure.as_str()) {
            measures.push(&c.measure);
        }
    }
    let cell = |measure: &str, kind: &str| {
        report
            .cells
            .iter()
            .find(|c| c.kind == kind && c.measure == measure)
    };
    let mut out = format!(
        "## {} (n = {}, noise = {})\n\n",
        report.table, report.n, report.noise
    );
    out.push_str(&format!("| measure | {} |\n", kinds.join(" | ")));
    out.push_str(&format!("|---|{}\n", "---|".repeat(kinds.len())));
    for m in &measures {
        let row: Vec<String> = kinds
            .iter()
            .map(|k| match cell(m, k) {
                Some(Cell {
                    mean: Some(mean),
                    sd: Some(sd),
                    ..
                }) => format!("{mean:.2} ± {sd:.2}"),
                Some(Cell { error: Some(e), .. }) => format!("error: {e}"),
                _ => "—".to_string(),
            })
            .collect();
        out.push_str(&format!("| {} | {} |\n", m, row.join(" | ")));
    }
    let has_timing = report.cells.iter().any(|c| c.median_secs.is_some());
    if has_timing {
        for m in &measures {
            let row: Vec<String> = kinds
                .iter()
                .map(|k| match cell(m, k).and_then(|c| c.median_secs) {
                    Some(t) => format!("{t:.4}"),
                    None => "—".to_string(),
                })
                .collect();
            out.push_str(&format!("| {} time (s) | {} |\n", m, row.join(" | ")));
        }
    }
    out.push_str(&format!(
        "\n_{} / {}_\n",
        report.fingerprint.cpu, report.fingerprint.profile
    ));
    out
}

/// How close a score cell should land to the published value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expectation {
    Within { expected: f64, tol: f64 },
    AtMost(f64),
}

impl Expectation {
    pub fn check(&self, value: f64) -> bool {
        match *self {
            Expectation::Within { expected, tol } => (value - expected).abs() <= tol,
            Expectation::AtMost(bound) => value <= bound,
        }
    }
}

/// Published score cells with the tolerances the reproduction is held to.
/// Timing tables have no score expectations; their runtime ratio thresholds
/// come from [`TableId::speedup_threshold`].
pub fn reference_values(table: TableId) -> Vec<(RelationshipKind, Measure, Expectation)> {
    use Expectation::{AtMost, Within};
    let within = |expected: f64, tol: f64| Within { expected, tol };
    let spread = |kinds: &[RelationshipKind],
                  measure: Measure,
                  expected: &[f64],
                  tol: f64|
     -> Vec<(RelationshipKind, Measure, Expectation)> {
        kinds
            .iter()
            .zip(expected)
            .map(|(&k, &e)| (k, measure, within(e, tol)))
            .collect()
    };
    let func = &RelationshipKind::FUNCTIONAL;
    match table {
        TableId::T1 => {
            let mut v = spread(func, Measure::Mic, &[1.0; 6], 0.02);
            v.extend(spread(
                func,
                Measure::Umic,
                &[1.0, 1.0, 0.93, 0.95, 0.75, 0.91],
                0.07,
            ));
            v
        }
        TableId::T2 => {
            let mut v = spread(func, Measure::Mic, &[1.0; 6], 0.02);
            v.extend(spread(
                func,
                Measure::Umic,
                &[1.0, 1.0, 0.99, 0.99, 0.93, 0.95],
                0.05,
            ));
            v
        }
        TableId::T4 => {
            let kinds = &RelationshipKind::NON_FUNCTIONAL;
            let mut v = spread(kinds, Measure::Mic, &[0.68, 0.72, 0.71, 0.16], 0.07);
            v.extend(spread(
                &kinds[..3],
                Measure::Umic,
                &[0.64, 0.69, 0.68],
                0.07,
            ));
            v.push((RelationshipKind::Random, Measure::Umic, AtMost(0.11)));
            v
        }
        TableId::T7 => {
            let kinds = &RelationshipKind::NOISY;
            let mut v = spread(kinds, Measure::Mic, &[0.54, 0.60, 0.57], 0.08);
            v.extend(spread(kinds, Measure::Umic, &[0.52, 0.48, 0.54], 0.08));
            v
        }
        TableId::T3 | TableId::T5 | TableId::T6 => Vec::new(),
    }
}
