mod config;
mod output;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use ahlfors_core::lens::{h_disk, h_family, lens_area, lens_length};
use ahlfors_core::search::{compute_h0, q3_closed_form, SearchOptions, SearchReport};
use ahlfors_core::verify::{run_suite, Suite, SuiteReport};
use ahlfors_core::{Configuration, SearchError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use output::{csv_row, float, normalize, num};

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_SUITE: u8 = 3;

#[derive(Parser)]
#[command(name = "ahlfors", version, about = "Extremal ratio H0 for a finite point set on the Riemann sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute H0 and the extremal boundaries for a point set.
    H0(H0Args),
    /// Tabulate the lens family over θ or the disk family over δ.
    Scan(ScanArgs),
    /// Run property suites.
    Verify(VerifyArgs),
    /// Closed form for three points.
    Q3(Q3Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct H0Args {
    /// JSON file with a "points" array.
    config: PathBuf,
    /// Grid points per curvature interval.
    #[arg(long, default_value_t = 33)]
    grid: usize,
    /// Curvature tolerance of the golden-section stage.
    #[arg(long, default_value_t = 1e-11)]
    tol: f64,
    #[arg(long, default_value_t = 2)]
    qprime_min: usize,
    #[arg(long)]
    qprime_max: Option<usize>,
    /// Also build collinear fan triangles as slit spheres.
    #[arg(long)]
    allow_degenerate: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Theta,
    Disk,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 1001)]
    grid: usize,
    /// Chord length for the θ scan.
    #[arg(long, default_value_t = FRAC_PI_2)]
    delta: f64,
    /// Area offset for the θ scan (default 4π).
    #[arg(long)]
    a0: Option<f64>,
    #[arg(long, default_value_t = 3)]
    q: usize,
    /// Points of E_q inside the disk, for the disk scan.
    #[arg(long, default_value_t = 0)]
    nbar: usize,
    /// Scan range (θ: [0, π/2], δ: [0.01, π − 0.01] by default).
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Q3Args {
    config: PathBuf,
    #[command(flatten)]
    common: Common,
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail<T>(code: u8, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure { code, msg: msg.into() })
}

fn load(path: &PathBuf) -> Result<Configuration, Failure> {
    let text = fs::read_to_string(path).or_else(|e| fail(EXIT_CONFIG, format!("{}: {e}", path.display())))?;
    config::parse_config(&text).or_else(|e| fail(EXIT_CONFIG, format!("{}: {e}", path.display())))
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(p) => fs::write(p, text).or_else(|e| fail(EXIT_NUMERIC, format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).or_else(|e| fail(EXIT_NUMERIC, e.to_string()))
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn search_failure(e: SearchError) -> Failure {
    let code = match e {
        SearchError::WrongQ(_) | SearchError::BadRange(..) => EXIT_CONFIG,
        _ => EXIT_NUMERIC,
    };
    Failure { code, msg: e.to_string() }
}

fn report_json(config: &Configuration, r: &SearchReport) -> Value {
    let winners: Vec<Value> = r
        .winners
        .iter()
        .map(|w| {
            json!({
                "vertices": w.partition.vertices,
                "theta": w.partition.thetas.iter().map(|&t| float(t)).collect::<Vec<_>>(),
                "k": float(w.k),
                "Q": w.qprime,
                "L": float(w.stats.length),
                "A": float(w.stats.area),
                "nbar": w.stats.nbar,
                "R": float(w.r),
                "value": float(w.value),
                "degmax": w.degmax.map(|d| d.value),
                "at_breakpoint": w.at_breakpoint,
            })
        })
        .collect();
    let d = &r.diagnostics;
    let anomalies = normalize(serde_json::to_value(&d.anomalies).expect("serializable"));
    json!({
        "q": config.q(),
        "H0": float(r.h0),
        "delta_eq": float(r.delta_eq),
        "upper_bound": float(r.upper_bound),
        "empty_disk_ratio": float(r.empty_disk.ratio),
        "winners": winners,
        "simplest": r.simplest,
        "diagnostics": {
            "tuples_enumerated": d.tuples_enumerated,
            "tuples_degenerate": d.tuples_degenerate,
            "tuples_infeasible": d.tuples_infeasible,
            "tuples_over_degmax": d.tuples_over_degmax,
            "breakpoints": d.breakpoints,
            "evaluations": d.evaluations,
            "anomalies": anomalies,
        },
    })
}

fn cmd_h0(a: &H0Args) -> Result<(), Failure> {
    if !(a.tol > 0.0) || a.grid < 2 {
        return fail(EXIT_CONFIG, "--tol must be positive and --grid at least 2");
    }
    let config = load(&a.config)?;
    let opts = SearchOptions {
        qprime_min: a.qprime_min,
        qprime_max: a.qprime_max,
        allow_degenerate: a.allow_degenerate,
        grid: a.grid,
        tol: a.tol,
        ..SearchOptions::default()
    };
    let r = compute_h0(&config, &opts).map_err(search_failure)?;
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&report_json(&config, &r)),
        Format::Csv => {
            let mut s = csv_row(&["winner", "vertices", "theta", "k", "Q", "L", "A", "nbar", "R", "value", "degmax"].map(String::from));
            for (i, w) in r.winners.iter().enumerate() {
                let join = |xs: Vec<String>| xs.join(" ");
                s += &csv_row(&[
                    i.to_string(),
                    join(w.partition.vertices.iter().map(|v| v.to_string()).collect()),
                    join(w.partition.thetas.iter().map(|&t| num(t)).collect()),
                    num(w.k),
                    w.qprime.to_string(),
                    num(w.stats.length),
                    num(w.stats.area),
                    w.stats.nbar.to_string(),
                    num(w.r),
                    num(w.value),
                    w.degmax.map_or(String::new(), |d| d.value.to_string()),
                ]);
            }
            s
        }
    };
    emit(&a.common, &text)
}

fn cmd_scan(a: &ScanArgs) -> Result<(), Failure> {
    if a.grid < 2 {
        return fail(EXIT_CONFIG, "--grid must be at least 2");
    }
    let (lo, hi) = match a.family {
        Family::Theta => (a.from.unwrap_or(0.0), a.to.unwrap_or(FRAC_PI_2)),
        Family::Disk => (a.from.unwrap_or(0.01), a.to.unwrap_or(PI - 0.01)),
    };
    if !(lo <= hi) {
        return fail(EXIT_CONFIG, "--from must not exceed --to");
    }
    let a0 = a.a0.unwrap_or(4.0 * PI);
    let mut rows = Vec::with_capacity(a.grid);
    for i in 0..a.grid {
        let x = if i == a.grid - 1 { hi } else { lo + (hi - lo) * i as f64 / (a.grid - 1) as f64 };
        let row = match a.family {
            Family::Theta => (|| Ok::<_, ahlfors_core::LensError>([x, lens_length(a.delta, x)?, lens_area(a.delta, x)?, h_family(a0, a.q, a.delta, x)?]))(),
            Family::Disk => (|| {
                let r = x / 2.0;
                Ok([x, 2.0 * PI * r.sin(), 2.0 * PI * (1.0 - r.cos()), h_disk(a.q, a.nbar, x)?])
            })(),
        };
        rows.push(row.or_else(|e| fail(EXIT_CONFIG, e.to_string()))?);
    }
    let name = match a.family {
        Family::Theta => "theta",
        Family::Disk => "delta",
    };
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = csv_row(&[name, "L", "A", "h"].map(String::from));
            for r in &rows {
                s += &csv_row(&r.map(num));
            }
            s
        }
        Format::Json => json_text(&Value::Array(
            rows.iter().map(|r| json!({ name: float(r[0]), "L": float(r[1]), "A": float(r[2]), "h": float(r[3]) })).collect(),
        )),
    };
    emit(&a.common, &text)
}

fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite.name(),
        "seed": r.seed,
        "passed": r.passed(),
        "properties": r.properties.iter().map(|p| json!({
            "name": p.name,
            "trials": p.trials,
            "failures": p.failures,
            "worst": float(p.worst),
            "limit": float(p.limit),
        })).collect::<Vec<_>>(),
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().or_else(|e: ahlfors_core::verify::UnknownSuite| fail(EXIT_CONFIG, e.to_string()))?]
    };
    if a.trials == 0 {
        return fail(EXIT_CONFIG, "--trials must be positive");
    }
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, a.seed, a.trials)).collect();
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&Value::Array(reports.iter().map(suite_json).collect())),
        Format::Csv => {
            let mut s = csv_row(&["suite", "property", "trials", "failures", "worst", "limit"].map(String::from));
            for r in &reports {
                for p in &r.properties {
                    s += &csv_row(&[
                        r.suite.name().to_string(),
                        p.name.clone(),
                        p.trials.to_string(),
                        p.failures.to_string(),
                        num(p.worst),
                        num(p.limit),
                    ]);
                }
            }
            s
        }
    };
    emit(&a.common, &text)?;
    if reports.iter().all(SuiteReport::passed) {
        Ok(())
    } else {
        fail(EXIT_SUITE, "property failures")
    }
}

fn cmd_q3(a: &Q3Args) -> Result<(), Failure> {
    let config = load(&a.config)?;
    let cf = q3_closed_form(&config).map_err(search_failure)?;
    let status = match cf.status {
        ahlfors_core::search::ClosedFormStatus::Exact => "exact",
        ahlfors_core::search::ClosedFormStatus::LowerBound => "lower bound",
    };
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "H0": float(cf.h0),
            "theta_star": float(cf.theta_star),
            "pair": [cf.pair.0, cf.pair.1],
            "status": status,
        })),
        Format::Csv => {
            csv_row(&["H0", "theta_star", "pair", "status"].map(String::from))
                + &csv_row(&[num(cf.h0), num(cf.theta_star), format!("{} {}", cf.pair.0, cf.pair.1), status.to_string()])
        }
    };
    emit(&a.common, &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match &cli.command {
        Command::H0(a) => cmd_h0(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Q3(a) => cmd_q3(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ahlfors: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
