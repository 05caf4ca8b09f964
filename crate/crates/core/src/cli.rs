//! Command-line front end.
//!
//! Every command writes a CSV table to `--out` (or stdout) and, where it
//! has one, a JSON summary to `<out>.json` (or stderr). `--config <file>`
//! takes a JSON object whose keys are flag names; its values override the
//! ones given on the command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::codecsim::bler::{write_sweep_csv, DEFAULT_SEED};
use crate::codecsim::{build_ebch, estimate_bler, required_snr_sim, BlerConfig, SweepConfig};
use crate::error::{Error, Result};
use crate::fblmath::{BiAwgn, CodeRate, ReliabilityTarget, Snr};
use crate::oscomplexity::{
    complexity_report, max_order, pattern_count, recommended_order, total_latency, LatencyBudget,
    OsOrder,
};
use crate::scenarios::{max_rate_curve, maximize_k, minimize_latency, ParamSource, ScenarioConfig};
use crate::tradeoff::{
    complexity_to_penalty, fit_params, params_for_blocklength, penalty_to_complexity, PenaltyPoint,
    TradeoffParams,
};

/// Environment variable holding the worker-thread count; unset or `0`
/// lets the thread pool choose.
pub const WORKERS_ENV: &str = "OSD_LATENCY_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "osd-latency",
    version,
    about = "Latency, reliability and decoder-complexity trade-offs for short packets"
)]
pub struct Cli {
    /// Write the CSV here and the JSON summary next to it as `<out>.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON object of flag overrides, e.g. {"n": 128, "eps": 1e-3}.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-approximation rate over an SNR range.
    #[command(args_override_self = true)]
    Rate(RateArgs),
    /// OSD operation counts per order, optionally against a latency budget.
    #[command(args_override_self = true)]
    Complexity(ComplexityArgs),
    /// Evaluate or fit the complexity-penalty law.
    #[command(args_override_self = true)]
    Tradeoff(TradeoffArgs),
    /// Monte Carlo BLER of an eBCH code under OSD.
    #[command(args_override_self = true)]
    Simulate(SimulateArgs),
    /// Deadline- and power-constrained parameter optimization.
    #[command(args_override_self = true)]
    Scenario(ScenarioArgs),
}

/// Inclusive `start:stop:step` grid; a single number is a one-point grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Range(pub Vec<f64>);

fn parse_range(s: &str) -> std::result::Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    match parts.as_slice() {
        [one] => Ok(Range(vec![num(one)?])),
        [a, b, c] => {
            let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
            if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0) {
                return Err("need finite bounds and a positive step".into());
            }
            if stop < start {
                return Err(format!("stop {stop} is below start {start}"));
            }
            let count = ((stop - start) / step).round() as usize + 1;
            Ok(Range((0..count).map(|i| start + i as f64 * step).collect()))
        }
        _ => Err("expected start:stop:step".into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeDims {
    pub n: usize,
    pub k: usize,
}

fn parse_code(s: &str) -> std::result::Result<CodeDims, String> {
    let (n, k) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxK, got `{s}`"))?;
    Ok(CodeDims {
        n: n.parse().map_err(|e| format!("n: {e}"))?,
        k: k.parse().map_err(|e| format!("k: {e}"))?,
    })
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub snr_db_range: Range,
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    /// Highest order tabulated; defaults to min(k, 4).
    #[arg(long)]
    pub max_order: Option<u32>,
    /// Minimum distance, for the recommended order.
    #[arg(long)]
    pub dmin: Option<u32>,
    /// Deadline in seconds; enables latency columns and the max-order solver.
    #[arg(long)]
    pub dm: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub ts: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tb: f64,
}

#[derive(Debug, Args)]
pub struct TradeoffArgs {
    /// Blocklength whose constants are used.
    #[arg(long, default_value_t = 64)]
    pub n: u64,
    /// JSON file with {n_anchor, a, b, gamma_fit}; overrides --n.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, value_parser = parse_range, default_value = "0:10:0.5")]
    pub delta_db_range: Range,
    /// Map these complexities to penalties instead.
    #[arg(long, value_parser = parse_range, conflicts_with = "fit")]
    pub complexity: Option<Range>,
    /// Fit constants to a CSV with columns delta_rho_db,c.
    #[arg(long)]
    pub fit: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["snr_db", "eps"]))]
pub struct SimulateArgs {
    /// eBCH dimensions as NxK.
    #[arg(long, value_parser = parse_code)]
    pub code: CodeDims,
    #[arg(long)]
    pub order: u32,
    /// Estimate BLER at these SNRs.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub snr_db: Option<Range>,
    /// Search for the SNR where BLER reaches this target.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub min_errors: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_trials: u64,
    #[arg(long, default_value_t = 512)]
    pub batch_size: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub start_db: Option<f64>,
    #[arg(long, default_value_t = 15.0)]
    pub span_db: f64,
    #[arg(long, default_value_t = 0.25)]
    pub grid_db: f64,
    #[arg(long, default_value_t = 1.5)]
    pub ci_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Which {
    MaxRate,
    MaxK,
    MinLatency,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// Blocklength of the max-rate curve.
    #[arg(long, required_if_eq("which", "max-rate"))]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 1e-3)]
    pub dm: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub ts: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tb: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    /// Power cap in dB; `inf` for unlimited.
    #[arg(long, allow_hyphen_values = true, required_if_eq_any([("which", "max-k"), ("which", "min-latency")]))]
    pub pm_db: Option<f64>,
    #[arg(long, required_if_eq("which", "min-latency"))]
    pub k: Option<u64>,
    #[arg(long)]
    pub n_min: Option<u64>,
    /// Defaults to the largest n that fits the deadline (1000 when unbounded).
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long, default_value_t = 0.05)]
    pub rate_step: f64,
    /// Fixed trade-off constants for every n instead of the blocklength interpolation.
    #[arg(long)]
    pub params: Option<PathBuf>,
}

/// Table plus optional JSON summary produced by one command.
pub struct Output {
    pub csv: Vec<u8>,
    pub summary: Option<Value>,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = match expand_config(args.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match worker_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = pool
        .install(|| execute(&cli.command))
        .and_then(|out| emit(&out, cli.out.as_deref(), stdout, stderr));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_IO,
        _ => EXIT_DOMAIN,
    }
}

fn worker_pool() -> std::result::Result<rayon::ThreadPool, String> {
    let workers = match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("{WORKERS_ENV}={v}: {e}"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| e.to_string())
}

/// Removes `--config <file>` from `args` and appends the file's entries
/// as `--key=value` so they take precedence.
pub fn expand_config(args: Vec<OsString>) -> std::result::Result<Vec<OsString>, String> {
    let mut out = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--" {
            out.push(arg);
            out.extend(it);
            break;
        }
        match arg.to_str() {
            Some("--config") => {
                path = Some(PathBuf::from(it.next().ok_or("--config needs a file")?));
            }
            Some(s) if s.starts_with("--config=") => {
                path = Some(PathBuf::from(&s["--config=".len()..]))
            }
            _ => out.push(arg),
        }
    }
    let Some(path) = path else {
        return Ok(out);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let Value::Object(map) = value else {
        return Err(format!("{}: expected a JSON object", path.display()));
    };
    for (key, v) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Number(num) => out.push(format!("{flag}={num}").into()),
            Value::String(s) => out.push(format!("{flag}={s}").into()),
            _ => return Err(format!("config key `{key}`: expected a scalar")),
        }
    }
    Ok(out)
}

fn emit(
    out: &Output,
    path: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let summary = out
        .summary
        .as_ref()
        .map(serde_json::to_string_pretty)
        .transpose()?
        .map(|s| s + "\n");
    match path {
        Some(p) => {
            std::fs::write(p, &out.csv)?;
            if let Some(s) = summary {
                let mut sidecar = p.as_os_str().to_owned();
                sidecar.push(".json");
                std::fs::write(sidecar, s)?;
            }
        }
        None => {
            stdout.write_all(&out.csv)?;
            if let Some(s) = summary {
                stderr.write_all(s.as_bytes())?;
            }
        }
    }
    Ok(())
}

pub fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Rate(a) => cmd_rate(a),
        Command::Complexity(a) => cmd_complexity(a),
        Command::Tradeoff(a) => cmd_tradeoff(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Scenario(a) => cmd_scenario(a),
    }
}

fn csv_writer(buf: &mut Vec<u8>) -> csv::Writer<&mut Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(buf)
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn cmd_rate(a: &RateArgs) -> Result<Output> {
    let eps = ReliabilityTarget::new(a.eps)?;
    let awgn = BiAwgn::shared();
    let rows: Vec<[f64; 4]> = a
        .snr_db_range
        .0
        .par_iter()
        .map(|&db| -> Result<[f64; 4]> {
            let rho = Snr::from_db(db)?;
            let (c, v) = awgn.capacity_and_dispersion(rho);
            Ok([db, c, v, awgn.normal_approx_rate(a.n, eps, rho)])
        })
        .collect::<Result<_>>()?;
    let mut csv = Vec::new();
    {
        let mut w = csv_writer(&mut csv);
        w.write_record(["snr_db", "capacity", "dispersion", "rate"])?;
        for r in rows {
            w.write_record(r.map(|x| x.to_string()))?;
        }
        w.flush()?;
    }
    Ok(Output { csv, summary: None })
}

pub fn cmd_complexity(a: &ComplexityArgs) -> Result<Output> {
    if a.k == 0 || a.k > a.n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n, got n = {}, k = {}",
            a.n, a.k
        )));
    }
    let top = a.max_order.unwrap_or(a.k.min(4));
    OsOrder(top).checked_for(a.k)?;
    let budget =
        a.dm.map(|dm| LatencyBudget::new(dm, a.ts, a.tb))
            .transpose()?;
    let mut csv = Vec::new();
    {
        let mut w = csv_writer(&mut csv);
        let mut header = vec!["s", "patterns", "c_exact", "c_bound", "dominant_term"];
        if budget.is_some() {
            header.push("total_latency_s");
        }
        w.write_record(&header)?;
        for s in 0..=top {
            let rep = complexity_report(a.n, a.k, OsOrder(s))?;
            let mut rec = vec![
                s.to_string(),
                pattern_count(a.k, s).to_string(),
                rep.c_exact.to_string(),
                fmt_opt(rep.c_bound),
                serde_json::to_value(rep.dominant_term)?
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
            ];
            if let Some(b) = &budget {
                rec.push(total_latency(a.n as u64, a.k as u64, rep.c_exact, b).to_string());
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
    }
    let mut summary = json!({ "n": a.n, "k": a.k });
    if let Some(d) = a.dmin {
        summary["recommended_order"] = json!(recommended_order(d, a.k).get());
    }
    if let Some(b) = &budget {
        summary["budget"] = serde_json::to_value(b)?;
        summary["max_order"] = match max_order(a.n, a.k, b) {
            Ok(m) => serde_json::to_value(m)?,
            Err(Error::Infeasible(msg)) => json!({ "infeasible": msg }),
            Err(e) => return Err(e),
        };
    }
    Ok(Output {
        csv,
        summary: Some(summary),
    })
}

pub fn cmd_tradeoff(a: &TradeoffArgs) -> Result<Output> {
    let mut csv = Vec::new();
    if let Some(path) = &a.fit {
        let mut rdr = csv::Reader::from_path(path)?;
        let points: Vec<PenaltyPoint> = rdr.deserialize().collect::<std::result::Result<_, _>>()?;
        let report = fit_params(&points, a.n)?;
        {
            let mut w = csv_writer(&mut csv);
            w.write_record(["delta_rho_db", "c", "fitted_c"])?;
            for p in &points {
                let fitted = penalty_to_complexity(p.delta_rho_db, &report.params)?;
                w.write_record([
                    p.delta_rho_db.to_string(),
                    p.c.to_string(),
                    fitted.to_string(),
                ])?;
            }
            w.flush()?;
        }
        return Ok(Output {
            csv,
            summary: Some(serde_json::to_value(report)?),
        });
    }
    let params = match &a.params {
        Some(p) => TradeoffParams::load(p)?,
        None => params_for_blocklength(a.n),
    };
    {
        let mut w = csv_writer(&mut csv);
        if let Some(cs) = &a.complexity {
            w.write_record(["c", "delta_rho_db"])?;
            for &c in &cs.0 {
                w.write_record([
                    c.to_string(),
                    complexity_to_penalty(c, &params)?.to_string(),
                ])?;
            }
        } else {
            w.write_record(["delta_rho_db", "log2_c", "c"])?;
            for &d in &a.delta_db_range.0 {
                let c = penalty_to_complexity(d, &params)?;
                w.write_record([d.to_string(), c.log2().to_string(), c.to_string()])?;
            }
        }
        w.flush()?;
    }
    Ok(Output {
        csv,
        summary: Some(
            json!({ "params": params, "complexity_ceiling": params.complexity_ceiling() }),
        ),
    })
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<Output> {
    let code = build_ebch(a.code.n, a.code.k)?;
    let s = OsOrder(a.order).checked_for(code.k() as u32)?;
    let bler_cfg = BlerConfig {
        min_errors: a.min_errors,
        max_trials: a.max_trials,
        seed: a.seed,
        batch_size: a.batch_size,
    };
    let (n, k) = (code.n() as u32, code.k() as u32);
    let c_exact = complexity_report(n, k, s)?.c_exact;
    let mut summary = json!({
        "code": { "n": n, "k": k, "d_min": code.d_min() },
        "order": s.get(),
        "seed": a.seed,
        "patterns_per_decode": pattern_count(k, s.get()).to_string(),
        "complexity_exact": c_exact,
    });
    let mut csv = Vec::new();
    if let Some(eps) = a.eps {
        let eps = ReliabilityTarget::new(eps)?;
        let sweep_cfg = SweepConfig {
            start_db: a.start_db,
            span_db: a.span_db,
            grid_db: a.grid_db,
            ci_factor: a.ci_factor,
            bler: bler_cfg,
        };
        let report = required_snr_sim(&code, s, eps, &sweep_cfg)?;
        let points: Vec<_> = report
            .sweep
            .iter()
            .map(|p| (p.snr_db, s, p.estimate))
            .collect();
        write_sweep_csv(&mut csv, &points, Some(report.required_snr_db))?;
        let na = BiAwgn::shared()
            .required_snr(
                n as u64,
                eps,
                CodeRate::from_dimensions(k as u64, n as u64)?,
            )?
            .db();
        let model = complexity_to_penalty(c_exact, &params_for_blocklength(n as u64))?;
        summary["config"] = serde_json::to_value(sweep_cfg)?;
        summary["epsilon"] = json!(eps.epsilon());
        summary["normal_approx_snr_db"] = json!(na);
        summary["required_snr_db"] = json!(report.required_snr_db);
        summary["interpolated_snr_db"] = json!(report.interpolated_snr_db);
        summary["delta_rho_db"] = json!(report.interpolated_snr_db.map(|v| v - na));
        summary["model_delta_rho_db"] = json!(model);
    } else if let Some(range) = &a.snr_db {
        let mut points = Vec::with_capacity(range.0.len());
        for &db in &range.0 {
            points.push((
                db,
                s,
                estimate_bler(&code, s, Snr::from_db(db)?, &bler_cfg)?,
            ));
        }
        write_sweep_csv(&mut csv, &points, None)?;
        summary["config"] = serde_json::to_value(bler_cfg)?;
        summary["pattern_count_mismatches"] = json!(points
            .iter()
            .map(|p| p.2.pattern_count_mismatches)
            .sum::<u64>());
    }
    Ok(Output {
        csv,
        summary: Some(summary),
    })
}

pub fn cmd_scenario(a: &ScenarioArgs) -> Result<Output> {
    let budget = LatencyBudget::new(a.dm, a.ts, a.tb)?;
    let mut cfg = ScenarioConfig::new(budget, ReliabilityTarget::new(a.eps)?);
    cfg.power_cap_db = a.pm_db;
    cfg.k_fixed = a.k;
    cfg.rate_step = a.rate_step;
    if let Some(n) = a.n_max {
        cfg.n_max = n;
    }
    cfg.n_min = a.n_min.or(a.k).unwrap_or(1);
    if let Some(p) = &a.params {
        cfg.params = ParamSource::Fixed(TradeoffParams::load(p)?);
    }
    let result = match a.which {
        Which::MaxRate => {
            let n =
                a.n.ok_or_else(|| Error::Precondition("max-rate needs --n".into()))?;
            cfg.n_min = n;
            cfg.n_max = cfg.n_max.max(n);
            max_rate_curve(n, &cfg)?
        }
        Which::MaxK => maximize_k(&cfg)?,
        Which::MinLatency => minimize_latency(&cfg)?,
    };
    let mut csv = Vec::new();
    result.write_csv(&mut csv)?;
    Ok(Output {
        csv,
        summary: Some(serde_json::to_value(result.summary(&cfg))?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(parse_range("0:10:0.5").unwrap().0.len(), 21);
        assert_eq!(parse_range("5:5:1").unwrap().0, vec![5.0]);
        assert_eq!(parse_range("-2").unwrap().0, vec![-2.0]);
        assert_eq!(parse_range("0:1:0.3").unwrap().0.len(), 4);
        assert!(parse_range("1:0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0:1").is_err());
    }

    #[test]
    fn code_dimensions() {
        assert_eq!(parse_code("64x36").unwrap(), CodeDims { n: 64, k: 36 });
        assert_eq!(parse_code("8X4").unwrap(), CodeDims { n: 8, k: 4 });
        assert!(parse_code("64-36").is_err());
    }

    #[test]
    fn config_entries_follow_command_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(
            &path,
            r#"{"n": 256, "snr_db_range": "-1:1:1", "verbose": true, "skip": false}"#,
        )
        .unwrap();
        let args: Vec<OsString> = [
            "x",
            "rate",
            "--config",
            path.to_str().unwrap(),
            "--n",
            "128",
        ]
        .iter()
        .map(OsString::from)
        .collect();
        let out = expand_config(args).unwrap();
        let out: Vec<&str> = out.iter().map(|s| s.to_str().unwrap()).collect();
        assert_eq!(
            out,
            [
                "x",
                "rate",
                "--n",
                "128",
                "--n=256",
                "--snr-db-range=-1:1:1",
                "--verbose"
            ]
        );
    }

    #[test]
    fn config_rejects_nested_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"n": [1, 2]}"#).unwrap();
        let args = vec![
            OsString::from("x"),
            OsString::from(format!("--config={}", path.display())),
        ];
        assert!(expand_config(args).is_err());
    }
}
