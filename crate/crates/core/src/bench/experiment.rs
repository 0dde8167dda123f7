//! Experiment runner: datasets, query points and all algorithms per cell and
//! replication, plus aggregation into the comparison table and flow curves.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::distributions::{generate_sample, pick_z, DistributionSpec, Family};
use super::stats::{ave_rank, error_stats, perc_best};
use crate::approx::{approximate, Algorithm, ApproxConfig, Method, TracePoint};
use crate::depths::{exact_depth, has_oracle, DepthNotion};
use crate::error::{Error, Result};
use crate::random::RngStream;

const DATA_STREAM: u64 = 1;
const QUERY_STREAM: u64 = 2;
const ALGO_STREAM: u64 = 3;

/// Algorithm with parameters and an optional display label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub method: Method,
}

impl AlgorithmEntry {
    pub fn new(method: Method) -> Self {
        Self { label: None, method }
    }

    pub fn label(&self) -> String {
        self.label.clone().unwrap_or_else(|| self.method.algorithm().label().to_string())
    }
}

fn default_n() -> usize {
    1000
}

fn default_algorithms() -> Vec<AlgorithmEntry> {
    Algorithm::ALL.into_iter().map(|a| AlgorithmEntry::new(Method::defaults(a))).collect()
}

/// Benchmark description. Cells are all combinations of distribution,
/// notion, dimension and budget, in that nesting order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub distributions: Vec<Family>,
    pub notions: Vec<DepthNotion>,
    pub dimensions: Vec<usize>,
    #[serde(default = "default_n")]
    pub n: usize,
    pub budgets: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<AlgorithmEntry>,
}

impl ExperimentConfig {
    /// All eight algorithms with default parameters.
    pub fn new(
        distributions: Vec<Family>,
        notions: Vec<DepthNotion>,
        dimensions: Vec<usize>,
        n: usize,
        budgets: Vec<usize>,
        replications: usize,
        seed: u64,
    ) -> Self {
        Self { distributions, notions, dimensions, n, budgets, replications, seed, algorithms: default_algorithms() }
    }

    /// Semantic problems as `(path, message)` pairs, paths in JSON notation.
    pub fn violations(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut need = |ok: bool, path: String, msg: &str| {
            if !ok {
                out.push((path, msg.to_string()));
            }
        };
        need(!self.distributions.is_empty(), "distributions".into(), "must not be empty");
        need(!self.notions.is_empty(), "notions".into(), "must not be empty");
        need(!self.dimensions.is_empty(), "dimensions".into(), "must not be empty");
        need(!self.budgets.is_empty(), "budgets".into(), "must not be empty");
        need(!self.algorithms.is_empty(), "algorithms".into(), "must not be empty");
        need(self.n >= 1, "n".into(), "must be positive");
        need(self.replications >= 1, "replications".into(), "must be positive");
        for (i, &d) in self.dimensions.iter().enumerate() {
            need(d >= 2, format!("dimensions[{i}]"), "must be at least 2");
        }
        for (i, &b) in self.budgets.iter().enumerate() {
            need(b >= 1, format!("budgets[{i}]"), "must be positive");
        }
        for (i, fam) in self.distributions.iter().enumerate() {
            if let Family::SkewNormal { delta: Some(delta) } = fam {
                for &d in &self.dimensions {
                    need(delta.len() == d, format!("distributions[{i}].delta"), &format!("needs {d} entries"));
                }
            }
        }
        for (i, entry) in self.algorithms.iter().enumerate() {
            for (field, msg) in entry.method.violations() {
                out.push((format!("algorithms[{i}].{field}"), msg));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some((path, msg)) => Err(Error::InvalidParameter(format!("{path}: {msg}"))),
        }
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for family in &self.distributions {
            for &notion in &self.notions {
                for &d in &self.dimensions {
                    for &budget in &self.budgets {
                        cells.push(Cell { distribution: family.clone(), notion, d, budget });
                    }
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub distribution: Family,
    pub notion: DepthNotion,
    pub d: usize,
    pub budget: usize,
}

impl Cell {
    /// Identifier used in the output tables, e.g. `normal/zonoid/d5/N1000`.
    pub fn key(&self) -> String {
        format!("{}/{}/d{}/N{}", self.distribution, self.notion, self.d, self.budget)
    }
}

/// Outcome of one algorithm on one replication of one cell. `value` is
/// `None` when the algorithm cannot run in the cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRecord {
    pub cell: usize,
    pub rep: usize,
    pub algo: usize,
    pub value: Option<f64>,
    pub exact: Option<f64>,
    pub evals: usize,
    pub time_ms: f64,
    /// Seed of the algorithm's random stream.
    pub seed: u64,
    pub trace: Vec<TracePoint<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatRow {
    pub cell: usize,
    pub algo: usize,
    pub ave_rank: Option<f64>,
    pub perc_best: Option<f64>,
    pub mae: Option<f64>,
    pub mre: Option<f64>,
    pub mean_time_ms: Option<f64>,
}

/// Mean gap between an algorithm's best-so-far value and the replication's
/// best final value over all algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowRow {
    pub cell: usize,
    pub algo: usize,
    pub eval_index: usize,
    pub mean_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatTable {
    pub rows: Vec<StatRow>,
    pub flows: Vec<FlowRow>,
}

#[derive(Debug, Clone)]
pub struct ExperimentResults {
    pub cells: Vec<Cell>,
    pub labels: Vec<String>,
    pub replications: usize,
    /// Sorted by cell, replication and algorithm.
    pub raw: Vec<RawRecord>,
    pub stats: StatTable,
}

fn is_missing(e: &Error) -> bool {
    matches!(e, Error::GridTooCoarse { .. } | Error::DataTooSmall { .. })
}

/// Runs every cell and replication. `threads = None` uses the global rayon
/// pool; the results do not depend on the thread count.
pub fn run_experiment(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<ExperimentResults> {
    cfg.validate()?;
    let cells = cfg.cells();
    let nb = cfg.budgets.len();
    // one task per (distribution, notion, dimension, replication); its cells
    // differ only in the budget and share the dataset, query point and oracle
    let mut tasks = Vec::new();
    for (fi, _) in cfg.distributions.iter().enumerate() {
        for (ni, _) in cfg.notions.iter().enumerate() {
            for (di, _) in cfg.dimensions.iter().enumerate() {
                for rep in 0..cfg.replications {
                    tasks.push((fi, ni, di, rep));
                }
            }
        }
    }
    let run_task = |&(fi, ni, di, rep): &(usize, usize, usize, usize)| -> Result<Vec<RawRecord>> {
        let family = &cfg.distributions[fi];
        let notion = cfg.notions[ni];
        let d = cfg.dimensions[di];
        let path = [fi as u64, d as u64, rep as u64];
        let spec = DistributionSpec::new(family.clone(), d);
        let mut data_rng = RngStream::derive(cfg.seed, &[DATA_STREAM, path[0], path[1], path[2]]);
        let data = generate_sample::<f64>(&spec, cfg.n, &mut data_rng)?;
        let mut query_rng = RngStream::derive(cfg.seed, &[QUERY_STREAM, path[0], path[1], path[2]]);
        let z = pick_z(&data, &mut query_rng)?;
        let exact = if has_oracle(notion, d) { exact_depth(notion, &z, &data).ok() } else { None };
        let first_cell = ((fi * cfg.notions.len() + ni) * cfg.dimensions.len() + di) * nb;
        let mut out = Vec::with_capacity(nb * cfg.algorithms.len());
        for (bi, &budget) in cfg.budgets.iter().enumerate() {
            let cell = first_cell + bi;
            for (ai, entry) in cfg.algorithms.iter().enumerate() {
                let mut rng = RngStream::derive(cfg.seed, &[ALGO_STREAM, cell as u64, rep as u64, ai as u64]);
                let seed = rng.seed();
                let approx_cfg = ApproxConfig::with_method(entry.method, budget);
                let start = Instant::now();
                let outcome = approximate(notion, &z, &data, &approx_cfg, &mut rng);
                let time_ms = start.elapsed().as_secs_f64() * 1e3;
                let record = match outcome {
                    Ok(r) => RawRecord {
                        cell,
                        rep,
                        algo: ai,
                        value: Some(r.value),
                        exact,
                        evals: r.evals_used,
                        time_ms,
                        seed,
                        trace: r.trace,
                    },
                    Err(e) if is_missing(&e) => RawRecord {
                        cell,
                        rep,
                        algo: ai,
                        value: None,
                        exact,
                        evals: 0,
                        time_ms: 0.0,
                        seed,
                        trace: Vec::new(),
                    },
                    Err(e) => return Err(e),
                };
                out.push(record);
            }
        }
        Ok(out)
    };
    let batches: Vec<Vec<RawRecord>> = match threads {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            pool.install(|| tasks.par_iter().map(run_task).collect::<Result<_>>())?
        }
        None => tasks.par_iter().map(run_task).collect::<Result<_>>()?,
    };
    let mut raw: Vec<RawRecord> = batches.into_iter().flatten().collect();
    raw.sort_by_key(|r| (r.cell, r.rep, r.algo));
    let labels = cfg.algorithms.iter().map(AlgorithmEntry::label).collect();
    let stats = StatTable::from_raw(cells.len(), cfg.algorithms.len(), cfg.replications, &raw);
    Ok(ExperimentResults { cells, labels, replications: cfg.replications, raw, stats })
}

/// Evaluation indices `1..=10`, then roughly geometric steps up to `budget`.
pub fn flow_checkpoints(budget: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 1usize;
    while k < budget {
        out.push(k);
        k = if k < 10 { k + 1 } else { k + k / 4 };
    }
    out.push(budget);
    out
}

impl StatTable {
    /// Aggregates raw records sorted by `(cell, rep, algo)` with every
    /// combination present.
    pub fn from_raw(n_cells: usize, n_algos: usize, reps: usize, raw: &[RawRecord]) -> Self {
        assert_eq!(raw.len(), n_cells * reps * n_algos, "raw results must be complete");
        let mut rows = Vec::new();
        let mut flows = Vec::new();
        for (cell, block) in raw.chunks_exact(reps * n_algos).enumerate() {
            let matrix: Vec<Vec<Option<f64>>> =
                block.chunks_exact(n_algos).map(|rep| rep.iter().map(|r| r.value).collect()).collect();
            let ranks = ave_rank(&matrix);
            let best = perc_best(&matrix);
            for algo in 0..n_algos {
                let records: Vec<&RawRecord> = block.iter().filter(|r| r.algo == algo).collect();
                let complete = records.iter().all(|r| r.value.is_some() && r.exact.is_some());
                let errors = if complete {
                    let approx: Vec<f64> = records.iter().filter_map(|r| r.value).collect();
                    let exact: Vec<f64> = records.iter().filter_map(|r| r.exact).collect();
                    error_stats(&approx, &exact).ok()
                } else {
                    None
                };
                let timed: Vec<f64> = records.iter().filter(|r| r.value.is_some()).map(|r| r.time_ms).collect();
                let mean_time_ms = (!timed.is_empty()).then(|| timed.iter().sum::<f64>() / timed.len() as f64);
                rows.push(StatRow {
                    cell,
                    algo,
                    ave_rank: ranks[algo],
                    perc_best: best[algo],
                    mae: errors.map(|e| e.0),
                    mre: errors.map(|e| e.1),
                    mean_time_ms,
                });
            }
            flows.extend(cell_flows(cell, n_algos, block));
        }
        Self { rows, flows }
    }
}

fn best_after(trace: &[TracePoint<f64>], eval: usize) -> Option<f64> {
    let idx = trace.partition_point(|t| t.eval <= eval);
    idx.checked_sub(1).map(|i| trace[i].value)
}

fn cell_flows(cell: usize, n_algos: usize, block: &[RawRecord]) -> Vec<FlowRow> {
    let budget = block.iter().map(|r| r.evals).max().unwrap_or(0);
    if budget == 0 {
        return Vec::new();
    }
    let minima: Vec<Option<f64>> = block
        .chunks_exact(n_algos)
        .map(|rep| rep.iter().filter_map(|r| r.value).reduce(f64::min))
        .collect();
    let mut out = Vec::new();
    for algo in 0..n_algos {
        for &k in &flow_checkpoints(budget) {
            let gaps: Vec<f64> = block
                .chunks_exact(n_algos)
                .zip(&minima)
                .filter_map(|(rep, min)| Some(best_after(&rep[algo].trace, k)? - (*min)?))
                .collect();
            if gaps.is_empty() {
                continue;
            }
            let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
            out.push(FlowRow { cell, algo, eval_index: k, mean_gap });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(reps: usize) -> ExperimentConfig {
        ExperimentConfig::new(vec![Family::Normal], vec![DepthNotion::Zonoid], vec![3], 60, vec![50], reps, 11)
    }

    #[test]
    fn two_replications_give_two_rows_per_algorithm() {
        let res = run_experiment(&small(2), Some(1)).unwrap();
        assert_eq!(res.raw.len(), 2 * 8);
        for a in 0..8 {
            assert_eq!(res.raw.iter().filter(|r| r.algo == a).count(), 2);
        }
        assert_eq!(res.stats.rows.len(), 8);
        let again = run_experiment(&small(2), Some(3)).unwrap();
        let strip = |r: &RawRecord| (r.cell, r.rep, r.algo, r.value, r.exact, r.evals, r.seed, r.trace.clone());
        assert_eq!(res.raw.iter().map(strip).collect::<Vec<_>>(), again.raw.iter().map(strip).collect::<Vec<_>>());
    }

    #[test]
    fn algorithms_share_dataset_and_query() {
        let res = run_experiment(&small(1), None).unwrap();
        let exact = res.raw[0].exact.unwrap();
        assert!(res.raw.iter().all(|r| r.exact == Some(exact)));
        assert!(res.raw.iter().all(|r| r.value.unwrap() >= exact - 1e-12));
    }

    #[test]
    fn coarse_grids_are_missing() {
        let mut cfg = small(2);
        cfg.dimensions = vec![15];
        cfg.n = 40;
        cfg.budgets = vec![100];
        let res = run_experiment(&cfg, None).unwrap();
        let gs = res.labels.iter().position(|l| l == "GS").unwrap();
        assert!(res.raw.iter().filter(|r| r.algo == gs).all(|r| r.value.is_none()));
        let row = &res.stats.rows[gs];
        assert_eq!((row.ave_rank, row.mae, row.mre), (None, None, None));
        let rs = &res.stats.rows[0];
        assert!(rs.ave_rank.is_some() && rs.mre.is_some());
    }

    #[test]
    fn reaggregation_is_exact() {
        let res = run_experiment(&small(3), None).unwrap();
        let again = StatTable::from_raw(res.cells.len(), res.labels.len(), 3, &res.raw);
        assert_eq!(again, res.stats);
    }

    #[test]
    fn flows_end_at_zero_for_the_winner() {
        let res = run_experiment(&small(1), None).unwrap();
        let min = res.raw.iter().filter_map(|r| r.value).fold(f64::INFINITY, f64::min);
        let winner = res.raw.iter().find(|r| r.value == Some(min)).unwrap().algo;
        let last = res.stats.flows.iter().filter(|f| f.algo == winner).last().unwrap();
        assert_eq!(last.eval_index, 50);
        assert_eq!(last.mean_gap, 0.0);
        assert!(res.stats.flows.iter().all(|f| f.mean_gap >= 0.0));
    }

    #[test]
    fn checkpoints() {
        assert_eq!(flow_checkpoints(1), vec![1]);
        assert_eq!(flow_checkpoints(12), vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12]);
        let c = flow_checkpoints(1000);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*c.last().unwrap(), 1000);
        assert!(c.len() < 40);
    }

    #[test]
    fn config_checks() {
        let mut cfg = small(0);
        cfg.dimensions = vec![1];
        let v = cfg.violations();
        let paths: Vec<&str> = v.iter().map(|(p, _)| p.as_str()).collect();
        assert_eq!(paths, vec!["replications", "dimensions[0]"]);
    }

    #[test]
    fn config_json() {
        let text = r#"{
            "distributions": [{"family": "normal"}, {"family": "skew_normal", "delta": [1, 0, 0]}],
            "notions": ["zonoid"], "dimensions": [3], "budgets": [100],
            "replications": 2, "seed": 7,
            "algorithms": [{"algorithm": "nm", "label": "NM-ec", "space": "ec"}, {"algorithm": "rs"}]
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.n, 1000);
        assert_eq!(cfg.algorithms[0].label(), "NM-ec");
        assert_eq!(cfg.algorithms[1].label(), "RS");
        assert!(cfg.violations().is_empty());
        let bad_param = text.replace(r#""space": "ec""#, r#""spaec": "ec""#);
        assert!(serde_json::from_str::<ExperimentConfig>(&bad_param).is_err());
        let bad_top = text.replace(r#""seed": 7"#, r#""seed": 7, "sede": 1"#);
        assert!(serde_json::from_str::<ExperimentConfig>(&bad_top).is_err());
        let bad_family = text.replace(r#""delta""#, r#""delat""#);
        assert!(serde_json::from_str::<ExperimentConfig>(&bad_family).is_err());
    }
}
