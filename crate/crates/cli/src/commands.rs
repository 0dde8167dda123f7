//! Subcommand implementations.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use sphere_depth::bench::{landscape, run_experiment, ExperimentConfig, ExperimentResults};
use sphere_depth::depths::exact_depth;
use sphere_depth::{approximate, ApproxConfig, RngStream};

use crate::args::{BenchmarkArgs, DepthArgs, LandscapeArgs};
use crate::config::parse_config;
use crate::io::{fmt_exact, fmt_sig, read_dataset};

/// Failure caused by the invocation rather than by the inputs.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// One-line report: depth (12 significant digits), best direction, number
/// of evaluations and wall time.
pub fn cmd_depth(args: &DepthArgs) -> anyhow::Result<String> {
    let data = read_dataset(&args.data)?;
    let z = args.point.resolve(&data)?;
    let algo = args.algo;
    let method = args
        .params
        .method(algo)
        .map_err(|flag| UsageError(format!("{flag} does not apply to algorithm {algo}")))?;
    if args.exact {
        let start = Instant::now();
        let value = exact_depth(args.notion, &z, &data)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok(format!("depth={} method=exact notion={} time_ms={}", fmt_sig(value, 12), args.notion, fmt_sig(ms, 4)));
    }
    let cfg = ApproxConfig::with_method(method, args.budget);
    let mut rng = RngStream::new(args.seed);
    let start = Instant::now();
    let res = approximate(args.notion, &z, &data, &cfg, &mut rng)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let direction: Vec<String> = res.best_direction.iter().map(|&v| fmt_sig(v, 12)).collect();
    Ok(format!(
        "depth={} method={} notion={} direction={} evals={} time_ms={}",
        fmt_sig(res.value, 12),
        algo,
        args.notion,
        direction.join(","),
        res.evals_used,
        fmt_sig(ms, 4)
    ))
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_exact).unwrap_or_default()
}

/// `raw.csv`: one row per cell, replication and algorithm.
pub fn write_raw(res: &ExperimentResults, n: usize, omit_timing: bool, out: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["distribution", "notion", "d", "n", "algo", "N", "rep", "value", "exact", "evals", "time_ms", "seed"])?;
    for r in &res.raw {
        let cell = &res.cells[r.cell];
        let time = if omit_timing || r.value.is_none() { String::new() } else { fmt_exact(r.time_ms) };
        w.write_record([
            cell.distribution.name().to_string(),
            cell.notion.name().to_string(),
            cell.d.to_string(),
            n.to_string(),
            res.labels[r.algo].clone(),
            cell.budget.to_string(),
            r.rep.to_string(),
            opt(r.value),
            opt(r.exact),
            r.evals.to_string(),
            time,
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `stats.csv`: comparison statistics per cell and algorithm.
pub fn write_stats(res: &ExperimentResults, omit_timing: bool, out: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cell", "algo", "averank", "percbest", "mae", "mre", "mean_time_ms"])?;
    for row in &res.stats.rows {
        let time = if omit_timing { String::new() } else { opt(row.mean_time_ms) };
        w.write_record([
            res.cells[row.cell].key(),
            res.labels[row.algo].clone(),
            opt(row.ave_rank),
            opt(row.perc_best),
            opt(row.mae),
            opt(row.mre),
            time,
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `flows.csv`: mean gap to the best final value at evaluation checkpoints.
pub fn write_flows(res: &ExperimentResults, out: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cell", "algo", "eval_index", "mean_gap"])?;
    for f in &res.stats.flows {
        w.write_record([
            res.cells[f.cell].key(),
            res.labels[f.algo].clone(),
            f.eval_index.to_string(),
            fmt_exact(f.mean_gap),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Runs `cfg` and writes the three tables into `dir`.
pub fn run_benchmark(
    cfg: &ExperimentConfig,
    dir: &Path,
    threads: Option<usize>,
    omit_timing: bool,
) -> anyhow::Result<ExperimentResults> {
    let res = run_experiment(cfg, threads)?;
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let create = |name: &str| {
        let path = dir.join(name);
        fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))
    };
    write_raw(&res, cfg.n, omit_timing, create("raw.csv")?)?;
    write_stats(&res, omit_timing, create("stats.csv")?)?;
    write_flows(&res, create("flows.csv")?)?;
    Ok(res)
}

pub fn cmd_benchmark(args: &BenchmarkArgs) -> anyhow::Result<String> {
    let text = fs::read_to_string(&args.config).with_context(|| format!("cannot read {}", args.config.display()))?;
    let cfg = parse_config(&text)?;
    if args.threads == Some(0) {
        return Err(UsageError("--threads must be positive".into()).into());
    }
    let res = run_benchmark(&cfg, &args.out, args.threads, args.omit_timing)?;
    Ok(format!(
        "wrote {} results for {} cells to {}",
        res.raw.len(),
        res.cells.len(),
        args.out.display()
    ))
}

/// CSV text with header `lon,lat,depth`, latitude-major.
pub fn cmd_landscape(args: &LandscapeArgs) -> anyhow::Result<String> {
    let data = read_dataset(&args.data)?;
    if data.dim() != 3 {
        bail!("landscape needs 3-dimensional data, got {} columns", data.dim());
    }
    let z = args.point.resolve(&data)?;
    let points = landscape(&z, &data, args.notion, args.resolution)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["lon", "lat", "depth"])?;
    for p in &points {
        w.write_record([fmt_exact(p.lon), fmt_exact(p.lat), fmt_exact(p.depth)])?;
    }
    let text = String::from_utf8(w.into_inner().context("csv buffer")?)?;
    match &args.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
