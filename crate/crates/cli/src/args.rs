//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sphere_depth::approx::{LineSearch, Method, Space, Start};
use sphere_depth::{Algorithm, DepthNotion};

use crate::io::PointSpec;

#[derive(Debug, Parser)]
#[command(name = "sphdepth", version, about = "Approximate data depths by minimizing projected depth over the sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth of one point w.r.t. a CSV sample.
    Depth(DepthArgs),
    /// Run a benchmark described by a JSON configuration.
    Benchmark(BenchmarkArgs),
    /// Projected depth on a longitude/latitude grid (3-dimensional data).
    Landscape(LandscapeArgs),
}

fn parse_notion(s: &str) -> Result<DepthNotion, String> {
    s.parse().map_err(|e: sphere_depth::Error| e.to_string())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: sphere_depth::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    /// CSV file, one observation per row; a non-numeric first row is a header.
    #[arg(long)]
    pub data: PathBuf,
    /// Comma-separated coordinates, or `mean`.
    #[arg(long, default_value = "mean")]
    pub point: PointSpec,
    #[arg(long, value_parser = parse_notion)]
    pub notion: DepthNotion,
    /// rs, gs, rrs, rgs, rasi, sa, cd or nm.
    #[arg(long, default_value = "nm", value_parser = parse_algorithm)]
    pub algo: Algorithm,
    /// Number of univariate depth evaluations.
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use the exact oracle instead of the approximation.
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub params: AlgorithmFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Sp,
    Ec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StartArg {
    Mn,
    Rn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LineSearchArg {
    Eq,
    Gs,
}

/// Parameter overrides; each applies to the algorithms named in its help.
#[derive(Debug, Clone, Default, Args)]
pub struct AlgorithmFlags {
    /// Refinement rounds (rrs, rgs).
    #[arg(long)]
    pub n_ref: Option<usize>,
    /// Cap shrink factor (rrs, rgs) or shrink coefficient (nm).
    #[arg(long)]
    pub shrink: Option<f64>,
    /// Dirichlet parameter (rasi).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Cooling factor (sa).
    #[arg(long)]
    pub cooling: Option<f64>,
    /// Cap radius divisor (sa, nm).
    #[arg(long)]
    pub cap_divisor: Option<f64>,
    /// Starting direction (sa, nm).
    #[arg(long, value_enum)]
    pub start: Option<StartArg>,
    /// Initial temperature (sa).
    #[arg(long)]
    pub t0: Option<f64>,
    /// Final temperature (sa).
    #[arg(long)]
    pub t_min: Option<f64>,
    /// Search space (cd, nm).
    #[arg(long, value_enum)]
    pub space: Option<SpaceArg>,
    /// Line search (cd).
    #[arg(long, value_enum)]
    pub line_search: Option<LineSearchArg>,
    /// Intervals of the equally spaced line search (cd).
    #[arg(long)]
    pub n_ls: Option<usize>,
    /// Golden-section tolerance (cd).
    #[arg(long)]
    pub golden_tol: Option<f64>,
    /// Limit great-circle moves to a quarter circle (nm).
    #[arg(long)]
    pub bound: Option<bool>,
    /// Reflection coefficient (nm).
    #[arg(long)]
    pub reflection: Option<f64>,
    /// Expansion coefficient (nm).
    #[arg(long)]
    pub expansion: Option<f64>,
    /// Contraction coefficient (nm).
    #[arg(long)]
    pub contraction: Option<f64>,
}

fn set<T: Copy>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl AlgorithmFlags {
    fn given(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut note = |present: bool, name: &'static str| {
            if present {
                out.push(name);
            }
        };
        note(self.n_ref.is_some(), "--n-ref");
        note(self.shrink.is_some(), "--shrink");
        note(self.alpha.is_some(), "--alpha");
        note(self.cooling.is_some(), "--cooling");
        note(self.cap_divisor.is_some(), "--cap-divisor");
        note(self.start.is_some(), "--start");
        note(self.t0.is_some(), "--t0");
        note(self.t_min.is_some(), "--t-min");
        note(self.space.is_some(), "--space");
        note(self.line_search.is_some(), "--line-search");
        note(self.n_ls.is_some(), "--n-ls");
        note(self.golden_tol.is_some(), "--golden-tol");
        note(self.bound.is_some(), "--bound");
        note(self.reflection.is_some(), "--reflection");
        note(self.expansion.is_some(), "--expansion");
        note(self.contraction.is_some(), "--contraction");
        out
    }

    /// Default parameters of `algorithm` with the given overrides. Fails with
    /// the name of the first flag that does not apply.
    pub fn method(&self, algorithm: Algorithm) -> Result<Method, &'static str> {
        let applicable: &[&str] = match algorithm {
            Algorithm::RandomSearch | Algorithm::GridSearch => &[],
            Algorithm::RefinedRandomSearch | Algorithm::RefinedGridSearch => &["--n-ref", "--shrink"],
            Algorithm::RandomSimplices => &["--alpha"],
            Algorithm::SimulatedAnnealing => &["--cooling", "--cap-divisor", "--start", "--t0", "--t-min"],
            Algorithm::CoordinateDescent => &["--space", "--line-search", "--n-ls", "--golden-tol"],
            Algorithm::NelderMead => &[
                "--space",
                "--start",
                "--cap-divisor",
                "--bound",
                "--reflection",
                "--expansion",
                "--contraction",
                "--shrink",
            ],
        };
        if let Some(bad) = self.given().into_iter().find(|f| !applicable.contains(f)) {
            return Err(bad);
        }
        let space = self.space.map(|s| match s {
            SpaceArg::Sp => Space::Sphere,
            SpaceArg::Ec => Space::Euclidean,
        });
        let start = self.start.map(|s| match s {
            StartArg::Mn => Start::Mean,
            StartArg::Rn => Start::Random,
        });
        let mut method = Method::defaults(algorithm);
        match &mut method {
            Method::RandomSearch | Method::GridSearch => {}
            Method::RefinedRandomSearch(p) | Method::RefinedGridSearch(p) => {
                set(&mut p.n_ref, self.n_ref);
                set(&mut p.shrink, self.shrink);
            }
            Method::RandomSimplices(p) => set(&mut p.alpha, self.alpha),
            Method::SimulatedAnnealing(p) => {
                set(&mut p.cooling, self.cooling);
                set(&mut p.cap_divisor, self.cap_divisor);
                set(&mut p.start, start);
                set(&mut p.t0, self.t0);
                set(&mut p.t_min, self.t_min);
            }
            Method::CoordinateDescent(p) => {
                set(&mut p.space, space);
                set(
                    &mut p.line_search,
                    self.line_search.map(|l| match l {
                        LineSearchArg::Eq => LineSearch::Uniform,
                        LineSearchArg::Gs => LineSearch::Golden,
                    }),
                );
                set(&mut p.n_ls, self.n_ls);
                set(&mut p.golden_tol, self.golden_tol);
            }
            Method::NelderMead(p) => {
                set(&mut p.space, space);
                set(&mut p.start, start);
                set(&mut p.cap_divisor, self.cap_divisor);
                set(&mut p.bound, self.bound);
                set(&mut p.reflection, self.reflection);
                set(&mut p.expansion, self.expansion);
                set(&mut p.contraction, self.contraction);
                set(&mut p.shrink, self.shrink);
            }
        }
        Ok(method)
    }
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    /// JSON configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory for raw.csv, stats.csv and flows.csv.
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Leave timing columns empty so that outputs are reproducible bytewise.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Debug, Args)]
pub struct LandscapeArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "mean")]
    pub point: PointSpec,
    #[arg(long, value_parser = parse_notion)]
    pub notion: DepthNotion,
    /// Number of latitude bands; the grid has `resolution × 2·resolution` cells.
    #[arg(long, default_value_t = 90)]
    pub resolution: usize,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
