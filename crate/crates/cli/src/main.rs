//! Command-line front end: score files, pairwise dependency matrices,
//! dataset generation, table reproduction, and benchmark summaries.
//!
//! Exit codes: 0 success, 2 input error (unreadable/malformed files, bad
//! arguments), 3 domain error (a score is undefined for the data).
//! stdout carries only machine-parseable results; diagnostics go to stderr.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use micgrid::baselines::{pearson, spearman};
use micgrid::data::Dataset;
use micgrid::datagen::{generate, NoiseSpec, RelationshipKind};
use micgrid::denoise::{knn_smooth, SmoothingConfig};
use micgrid::experiments::{
    emit_report, reference_values, run_plan, speedup_summary, ExperimentPlan, Measure,
    ReportFormat, TableId,
};
use micgrid::io::{read_table_csv_file, read_xy_csv_file, write_xy_csv, write_xy_csv_file};
use micgrid::mic::mic_with;
use micgrid::umic::umic_with;
use micgrid::Error;

/// Environment variable holding the default for `--threads`.
const THREADS_ENV: &str = "MICGRID_THREADS";

#[derive(Parser)]
#[command(name = "micgrid", version, about = "Grid-based dependency measures")]
struct Cli {
    /// Worker threads for the grid-shape sweep. 1 = strictly sequential
    /// (the timing mode, and the default for bench/reproduce). Defaults to
    /// the MICGRID_THREADS environment variable when set.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a two-column x,y CSV file with one measure.
    Score(ScoreArgs),
    /// Pairwise score matrix over the columns of a headered CSV file.
    Matrix(MatrixArgs),
    /// Generate a synthetic dataset as a two-column CSV.
    Gen(GenArgs),
    /// Re-run a benchmark table and check each cell against its reference.
    Reproduce(ReproduceArgs),
    /// Time MIC vs U-MIC on a table's datasets and print the speedups.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ScoreArgs {
    /// Two-column x,y CSV; a non-numeric first row is treated as a header.
    file: PathBuf,
    #[arg(long, default_value = "mic", value_parser = parse_measure)]
    measure: Measure,
    /// Grid budget exponent: shapes satisfy lx*ly < n^exponent.
    #[arg(long, default_value_t = 0.6)]
    exponent: f64,
    /// Pre-smooth y with a rank window of this half-width before scoring.
    #[arg(long, value_name = "EPSILON")]
    smooth: Option<usize>,
    /// Report the winning grid shape on stderr (mic/umic only).
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct MatrixArgs {
    /// Multi-column numeric CSV with a header row.
    file: PathBuf,
    /// Scoring measure; `pearson` enters the matrix as |r| so the diagonal
    /// convention (1 = perfect association) holds for every measure.
    #[arg(long, default_value = "umic", value_parser = parse_measure)]
    measure: Measure,
    /// Comma-separated column names to include (default: all).
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
    #[arg(long, default_value_t = 0.6)]
    exponent: f64,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_parser = parse_kind)]
    kind: RelationshipKind,
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// `none`, `uniform:H` (half-width), or `gaussian:S` (std dev).
    #[arg(long, default_value = "none", value_parser = parse_noise)]
    noise: NoiseSpec,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write an `x,y` header row.
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(value_parser = parse_table)]
    table: TableId,
    /// Number of seeds (1..=N) to average scores over.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// Report file to write.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: ReportFormat,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(value_parser = parse_table)]
    table: TableId,
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    /// Timing repetitions per cell; the median is reported.
    #[arg(long, default_value_t = 5)]
    reps: usize,
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    Measure::from_str(s).map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<RelationshipKind, String> {
    RelationshipKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_noise(s: &str) -> Result<NoiseSpec, String> {
    NoiseSpec::from_str(s).map_err(|e| e.to_string())
}

fn parse_table(s: &str) -> Result<TableId, String> {
    TableId::from_str(s).map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    ReportFormat::from_str(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = resolve_threads(cli.threads, &cli.command);
    if threads > 1 {
        // Ignore the error from configuring twice (tests call main repeatedly).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let parallel = threads > 1;
    let outcome = match cli.command {
        Command::Score(args) => cmd_score(args, parallel),
        Command::Matrix(args) => cmd_matrix(args, parallel),
        Command::Gen(args) => cmd_gen(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_domain() { 3 } else { 2 })
        }
    }
}

fn resolve_threads(flag: Option<usize>, command: &Command) -> usize {
    if let Some(t) = flag {
        return t.max(1);
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(t) = v.parse::<usize>() {
            return t.max(1);
        }
    }
    match command {
        // Timing-sensitive commands default to the sequential mode.
        Command::Reproduce(_) | Command::Bench(_) => 1,
        _ => std::thread::available_parallelism().map_or(1, |p| p.get()),
    }
}

/// Score plus the winning grid shape for the grid-based measures.
fn score_dataset(
    d: &Dataset<f64>,
    measure: Measure,
    exponent: f64,
    parallel: bool,
) -> micgrid::Result<(f64, Option<(usize, usize)>)> {
    match measure {
        Measure::Mic => {
            let r = mic_with(d, exponent, parallel)?;
            Ok((r.score, Some(r.best_shape)))
        }
        Measure::Umic => {
            let r = umic_with(d, exponent, parallel)?;
            Ok((r.score, Some(r.best_shape)))
        }
        Measure::Pearson => Ok((pearson(d)?, None)),
        Measure::Spearman => Ok((spearman(d)?, None)),
    }
}

fn cmd_score(args: ScoreArgs, parallel: bool) -> micgrid::Result<()> {
    let mut d = read_xy_csv_file(&args.file)?;
    if let Some(eps) = args.smooth {
        d = knn_smooth(&d, SmoothingConfig::new(eps, d.len())?)?;
    }
    let (score, shape) = score_dataset(&d, args.measure, args.exponent, parallel)?;
    if args.verbose {
        if let Some((lx, ly)) = shape {
            eprintln!("best shape: {lx}x{ly}");
        }
    }
    println!("{score:.4}");
    Ok(())
}

fn cmd_matrix(args: MatrixArgs, parallel: bool) -> micgrid::Result<()> {
    let table = read_table_csv_file(&args.file)?;
    let names: Vec<String> = match &args.columns {
        Some(wanted) => {
            for name in wanted {
                if table.column(name).is_none() {
                    return Err(Error::MalformedCsv {
                        line: 1,
                        message: format!("no column named '{name}'"),
                    });
                }
            }
            wanted.clone()
        }
        None => table.names.clone(),
    };
    let cols: Vec<&[f64]> = names.iter().map(|n| table.column(n).unwrap()).collect();

    let mut scores = vec![vec![0.0; names.len()]; names.len()];
    for i in 0..names.len() {
        scores[i][i] = 1.0;
        for j in i + 1..names.len() {
            let pts = cols[i].iter().zip(cols[j]).map(|(&x, &y)| (x, y)).collect();
            let d = Dataset::new(pts)?;
            let (raw, _) = score_dataset(&d, args.measure, args.exponent, parallel)?;
            let s = if args.measure == Measure::Pearson {
                raw.abs()
            } else {
                raw
            };
            scores[i][j] = s;
            scores[j][i] = s;
        }
    }

    println!("column,{}", names.join(","));
    for (name, row) in names.iter().zip(&scores) {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.4}")).collect();
        println!("{name},{}", cells.join(","));
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> micgrid::Result<()> {
    let d = generate(args.kind, args.n, args.seed, &args.noise)?;
    match &args.out {
        Some(path) => write_xy_csv_file(&d, path, args.header),
        None => write_xy_csv(&d, std::io::stdout().lock(), args.header),
    }
}

fn cmd_reproduce(args: ReproduceArgs) -> micgrid::Result<()> {
    let plan = ExperimentPlan::for_table(args.table, (1..=args.seeds).collect());
    let report = run_plan(&plan);
    std::fs::write(&args.out, emit_report(&report, args.format))?;

    for (kind, measure, expectation) in reference_values(args.table) {
        let cell = report.cell(kind, measure);
        let verdict = match cell.and_then(|c| c.mean) {
            Some(mean) if expectation.check(mean) => format!("{mean:.4} pass"),
            Some(mean) => format!("{mean:.4} fail"),
            None => "missing fail".to_string(),
        };
        println!("{} {kind} {}: {verdict}", args.table, measure.name());
    }
    if let Some(threshold) = args.table.speedup_threshold() {
        for (kind, ratio) in speedup_summary(&report)? {
            let verdict = if ratio >= threshold { "pass" } else { "fail" };
            println!("{} {kind} speedup: {ratio:.1} {verdict}", args.table);
        }
    }
    let errored = report.cells.iter().filter(|c| c.error.is_some()).count();
    if errored > 0 {
        return Err(Error::ReportCellErrors { count: errored });
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> micgrid::Result<()> {
    let mut plan = ExperimentPlan::for_table(args.table, (1..=args.seeds).collect());
    plan.timing_reps = args.reps.max(1);
    let report = run_plan(&plan);

    let secs = |kind: &str, measure: Measure| {
        report
            .cells
            .iter()
            .find(|c| c.kind == kind && c.measure == measure.name())
            .and_then(|c| c.median_secs)
    };
    println!("kind,mic_secs,umic_secs,speedup");
    for (kind, ratio) in speedup_summary(&report)? {
        let m = secs(&kind, Measure::Mic).unwrap_or(f64::NAN);
        let u = secs(&kind, Measure::Umic).unwrap_or(f64::NAN);
        println!("{kind},{m:.6},{u:.6},{ratio:.1}");
    }
    eprintln!(
        "cpu: {}; profile: {}",
        report.fingerprint.cpu, report.fingerprint.profile
    );
    Ok(())
}
