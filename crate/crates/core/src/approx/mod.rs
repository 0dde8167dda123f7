//! Minimization of the projected univariate depth over the unit sphere.
//!
//! Every algorithm receives a budget of `N` univariate depth evaluations and
//! reports the smallest projected depth it saw. Because each projected depth
//! is an upper bound of the multivariate depth, the reported value is an
//! upper bound as well.

mod annealing;
mod descent;
mod search;
mod simplex;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::depths::{Dataset, DepthNotion, EvalCounter, ProjectedDepth};
use crate::error::{Error, Result};
use crate::geometry::Direction;
use crate::random::{rnd_sphere, RngStream};
use crate::scalar::Real;

pub use descent::{line_search_golden, line_search_uniform};

/// The eight approximation algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "rs")]
    RandomSearch,
    #[serde(rename = "gs")]
    GridSearch,
    #[serde(rename = "rrs")]
    RefinedRandomSearch,
    #[serde(rename = "rgs")]
    RefinedGridSearch,
    #[serde(rename = "rasi")]
    RandomSimplices,
    #[serde(rename = "sa")]
    SimulatedAnnealing,
    #[serde(rename = "cd")]
    CoordinateDescent,
    #[serde(rename = "nm")]
    NelderMead,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::RandomSearch,
        Algorithm::GridSearch,
        Algorithm::RefinedRandomSearch,
        Algorithm::RefinedGridSearch,
        Algorithm::RandomSimplices,
        Algorithm::SimulatedAnnealing,
        Algorithm::CoordinateDescent,
        Algorithm::NelderMead,
    ];

    /// Short label (`RS`, `GS`, `RRS`, `RGS`, `RaSi`, `SA`, `CD`, `NM`).
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::RandomSearch => "RS",
            Algorithm::GridSearch => "GS",
            Algorithm::RefinedRandomSearch => "RRS",
            Algorithm::RefinedGridSearch => "RGS",
            Algorithm::RandomSimplices => "RaSi",
            Algorithm::SimulatedAnnealing => "SA",
            Algorithm::CoordinateDescent => "CD",
            Algorithm::NelderMead => "NM",
        }
    }

    /// Whether the algorithm draws from its random stream.
    pub fn is_randomized(self) -> bool {
        !matches!(self, Algorithm::GridSearch | Algorithm::RefinedGridSearch)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let found = Algorithm::ALL.into_iter().find(|a| a.label().eq_ignore_ascii_case(s));
        found.ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm `{s}`")))
    }
}

/// Euclidean (`Ec`) or spherical (`Sp`) variant of CD and NM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    #[serde(rename = "ec")]
    Euclidean,
    #[serde(rename = "sp")]
    Sphere,
}

/// Starting direction of SA and NM: `z - x̄` (`Mn`) or uniform (`Rn`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Start {
    #[serde(rename = "mn")]
    Mean,
    #[serde(rename = "rn")]
    Random,
}

/// Line search of CD: equally spaced (`Eq`) or golden section (`GS`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineSearch {
    #[serde(rename = "eq")]
    Uniform,
    #[serde(rename = "gs")]
    Golden,
}

/// Parameters of the refined random and refined grid search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RefineParams {
    /// Number of refinement rounds.
    pub n_ref: usize,
    /// Factor applied to the cap radius after each round.
    pub shrink: f64,
}

impl Default for RefineParams {
    fn default() -> Self {
        Self { n_ref: 10, shrink: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimplexParams {
    /// Parameter of the symmetric Dirichlet distribution on the facet.
    pub alpha: f64,
}

impl Default for SimplexParams {
    fn default() -> Self {
        Self { alpha: 1.25 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnealParams {
    /// Geometric cooling factor.
    pub cooling: f64,
    /// Cap radius is `(π/2) / cap_divisor`.
    pub cap_divisor: f64,
    pub start: Start,
    pub t0: f64,
    pub t_min: f64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        Self { cooling: 0.95, cap_divisor: 10.0, start: Start::Mean, t0: 1.0, t_min: 0.001 }
    }
}

impl AnnealParams {
    /// Number of temperature levels `⌈ln(T0/Tmin) / ln(1/α)⌉`.
    pub fn levels(&self) -> usize {
        ((self.t0 / self.t_min).ln() / (1.0 / self.cooling).ln()).ceil().max(1.0) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DescentParams {
    pub space: Space,
    pub line_search: LineSearch,
    /// Number of intervals of the equally spaced line search.
    pub n_ls: usize,
    /// Final bracket width of the golden-section search, in radians.
    pub golden_tol: f64,
}

impl Default for DescentParams {
    fn default() -> Self {
        Self { space: Space::Sphere, line_search: LineSearch::Golden, n_ls: 10, golden_tol: 1e-3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NelderMeadParams {
    pub space: Space,
    pub start: Start,
    /// Cap radius of the starting simplex is `(π/2) / cap_divisor`.
    pub cap_divisor: f64,
    /// Limit moves along great circles to a quarter circle.
    pub bound: bool,
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
}

impl Default for NelderMeadParams {
    fn default() -> Self {
        Self {
            space: Space::Sphere,
            start: Start::Mean,
            cap_divisor: 1.0,
            bound: true,
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
        }
    }
}

/// Algorithm together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm")]
pub enum Method {
    #[serde(rename = "rs")]
    RandomSearch,
    #[serde(rename = "gs")]
    GridSearch,
    #[serde(rename = "rrs")]
    RefinedRandomSearch(RefineParams),
    #[serde(rename = "rgs")]
    RefinedGridSearch(RefineParams),
    #[serde(rename = "rasi")]
    RandomSimplices(SimplexParams),
    #[serde(rename = "sa")]
    SimulatedAnnealing(AnnealParams),
    #[serde(rename = "cd")]
    CoordinateDescent(DescentParams),
    #[serde(rename = "nm")]
    NelderMead(NelderMeadParams),
}

impl Method {
    /// Default parameters of `algorithm`.
    pub fn defaults(algorithm: Algorithm) -> Self {
        match algorithm {
            Algorithm::RandomSearch => Method::RandomSearch,
            Algorithm::GridSearch => Method::GridSearch,
            Algorithm::RefinedRandomSearch => Method::RefinedRandomSearch(RefineParams::default()),
            Algorithm::RefinedGridSearch => Method::RefinedGridSearch(RefineParams::default()),
            Algorithm::RandomSimplices => Method::RandomSimplices(SimplexParams::default()),
            Algorithm::SimulatedAnnealing => Method::SimulatedAnnealing(AnnealParams::default()),
            Algorithm::CoordinateDescent => Method::CoordinateDescent(DescentParams::default()),
            Algorithm::NelderMead => Method::NelderMead(NelderMeadParams::default()),
        }
    }

    pub fn algorithm(&self) -> Algorithm {
        match self {
            Method::RandomSearch => Algorithm::RandomSearch,
            Method::GridSearch => Algorithm::GridSearch,
            Method::RefinedRandomSearch(_) => Algorithm::RefinedRandomSearch,
            Method::RefinedGridSearch(_) => Algorithm::RefinedGridSearch,
            Method::RandomSimplices(_) => Algorithm::RandomSimplices,
            Method::SimulatedAnnealing(_) => Algorithm::SimulatedAnnealing,
            Method::CoordinateDescent(_) => Algorithm::CoordinateDescent,
            Method::NelderMead(_) => Algorithm::NelderMead,
        }
    }

    /// Checks parameter ranges; returns the first violation.
    pub fn validate(&self) -> Result<()> {
        self.violations().into_iter().next().map_or(Ok(()), |(field, msg)| {
            Err(Error::InvalidParameter(format!("{field}: {msg}")))
        })
    }

    /// All parameter range violations as `(field, message)` pairs.
    pub fn violations(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut check = |ok: bool, field: &'static str, msg: &str| {
            if !ok {
                out.push((field, msg.to_string()));
            }
        };
        match self {
            Method::RandomSearch | Method::GridSearch => {}
            Method::RefinedRandomSearch(p) | Method::RefinedGridSearch(p) => {
                check(p.n_ref >= 1, "n_ref", "must be at least 1");
                check(p.shrink > 0.0 && p.shrink < 1.0, "shrink", "must lie in (0, 1)");
            }
            Method::RandomSimplices(p) => {
                check(p.alpha > 0.0 && p.alpha.is_finite(), "alpha", "must be positive");
            }
            Method::SimulatedAnnealing(p) => {
                check(p.cooling > 0.0 && p.cooling < 1.0, "cooling", "must lie in (0, 1)");
                check(p.cap_divisor >= 1.0 && p.cap_divisor.is_finite(), "cap_divisor", "must be at least 1");
                check(p.t0 > 0.0 && p.t0.is_finite(), "t0", "must be positive");
                check(p.t_min > 0.0 && p.t_min < p.t0, "t_min", "must lie in (0, t0)");
            }
            Method::CoordinateDescent(p) => {
                check(p.n_ls >= 1, "n_ls", "must be at least 1");
                check(p.golden_tol > 0.0 && p.golden_tol.is_finite(), "golden_tol", "must be positive");
            }
            Method::NelderMead(p) => {
                check(p.cap_divisor >= 1.0 && p.cap_divisor.is_finite(), "cap_divisor", "must be at least 1");
                check(p.reflection > 0.0, "reflection", "must be positive");
                check(p.expansion > 1.0, "expansion", "must exceed 1");
                check(p.contraction > 0.0 && p.contraction < 1.0, "contraction", "must lie in (0, 1)");
                check(p.shrink > 0.0 && p.shrink < 1.0, "shrink", "must lie in (0, 1)");
            }
        }
        out
    }
}

/// Algorithm, parameters and evaluation budget of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxConfig {
    pub method: Method,
    pub budget: usize,
}

impl ApproxConfig {
    /// `algorithm` with its default parameters.
    pub fn new(algorithm: Algorithm, budget: usize) -> Self {
        Self { method: Method::defaults(algorithm), budget }
    }

    pub fn with_method(method: Method, budget: usize) -> Self {
        Self { method, budget }
    }

    pub fn algorithm(&self) -> Algorithm {
        self.method.algorithm()
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidParameter("budget must be positive".into()));
        }
        self.method.validate()
    }
}

/// Best-so-far value after evaluation number `eval` (1-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint<T> {
    pub eval: usize,
    pub value: T,
}

/// Outcome of one approximation run.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult<T> {
    /// Smallest projected depth found.
    pub value: T,
    pub best_direction: Direction<T>,
    pub evals_used: usize,
    /// One entry per strict improvement, starting with the first evaluation.
    pub trace: Vec<TracePoint<T>>,
}

impl<T: Real> ApproxResult<T> {
    /// Best value known after `eval` evaluations (the final value beyond the
    /// last evaluation, `None` before the first).
    pub fn best_after(&self, eval: usize) -> Option<T> {
        let idx = self.trace.partition_point(|t| t.eval <= eval);
        idx.checked_sub(1).map(|i| self.trace[i].value)
    }
}

/// Budgeted objective shared by all algorithms. Tracks the incumbent and the
/// improvement trace of every evaluation made through it.
pub(crate) struct Objective<'a, T> {
    depth: ProjectedDepth<'a, T>,
    counter: EvalCounter,
    best: Option<(T, Direction<T>)>,
    trace: Vec<TracePoint<T>>,
    log: Option<Vec<Direction<T>>>,
}

impl<'a, T: Real> Objective<'a, T> {
    fn new(notion: DepthNotion, z: &'a [T], data: &'a Dataset<T>, budget: usize, log: bool) -> Self {
        Self {
            depth: ProjectedDepth::new(notion, z, data),
            counter: EvalCounter::new(budget),
            best: None,
            trace: Vec::new(),
            log: log.then(Vec::new),
        }
    }

    pub fn dim(&self) -> usize {
        self.depth.data.dim()
    }

    pub fn data(&self) -> &'a Dataset<T> {
        self.depth.data
    }

    pub fn z(&self) -> &'a [T] {
        self.depth.z
    }

    pub fn exhausted(&self) -> bool {
        self.counter.is_exhausted()
    }

    pub fn budget(&self) -> usize {
        self.counter.limit()
    }

    pub fn used(&self) -> usize {
        self.counter.used()
    }

    /// Projected depth at `p`; fails with [`Error::BudgetExhausted`] once the
    /// budget is spent.
    pub fn eval(&mut self, p: &Direction<T>) -> Result<T> {
        self.counter.consume()?;
        let v = self.depth.eval(p);
        if let Some(log) = &mut self.log {
            log.push(p.clone());
        }
        if self.best.as_ref().is_none_or(|(b, _)| v < *b) {
            self.best = Some((v, p.clone()));
            self.trace.push(TracePoint { eval: self.counter.used(), value: v });
        }
        Ok(v)
    }

    /// Direction `z - x̄`, or a uniform draw when `z` is the sample mean.
    pub fn mean_start(&self, rng: &mut RngStream) -> Result<Direction<T>> {
        let mean = self.data().mean();
        let diff: Vec<T> = self.z().iter().zip(&mean).map(|(&a, &b)| a - b).collect();
        match Direction::normalize(diff) {
            Ok(p) => Ok(p),
            Err(_) => rnd_sphere(self.dim(), rng),
        }
    }

    pub fn start(&self, start: Start, rng: &mut RngStream) -> Result<Direction<T>> {
        match start {
            Start::Mean => self.mean_start(rng),
            Start::Random => rnd_sphere(self.dim(), rng),
        }
    }

    fn finish(mut self) -> Result<(ApproxResult<T>, Option<Vec<Direction<T>>>)> {
        if self.best.is_none() {
            self.eval(&Direction::basis(self.dim(), 0))?;
        }
        let (value, best_direction) = self.best.expect("at least one evaluation");
        let result = ApproxResult { value, best_direction, evals_used: self.counter.used(), trace: self.trace };
        Ok((result, self.log))
    }
}

/// Treats budget exhaustion as the normal end of a run.
pub(crate) fn until_budget(run: Result<()>) -> Result<()> {
    match run {
        Ok(()) | Err(Error::BudgetExhausted) => Ok(()),
        Err(e) => Err(e),
    }
}

fn run<T: Real>(
    notion: DepthNotion,
    z: &[T],
    data: &Dataset<T>,
    cfg: &ApproxConfig,
    rng: &mut RngStream,
    log: bool,
) -> Result<(ApproxResult<T>, Option<Vec<Direction<T>>>)> {
    cfg.validate()?;
    let d = data.dim();
    if d < 2 {
        return Err(Error::DimensionTooSmall(d, 2));
    }
    if z.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: z.len() });
    }
    let mut obj = Objective::new(notion, z, data, cfg.budget, log);
    let outcome = match &cfg.method {
        Method::RandomSearch => search::random_search(&mut obj, rng),
        Method::GridSearch => search::grid_search(&mut obj),
        Method::RefinedRandomSearch(p) => search::refined_random_search(&mut obj, p, rng),
        Method::RefinedGridSearch(p) => search::refined_grid_search(&mut obj, p),
        Method::RandomSimplices(p) => search::random_simplices(&mut obj, p, rng),
        Method::SimulatedAnnealing(p) => annealing::simulated_annealing(&mut obj, p, rng),
        Method::CoordinateDescent(p) => descent::coordinate_descent(&mut obj, p, rng),
        Method::NelderMead(p) => simplex::nelder_mead(&mut obj, p, rng),
    };
    until_budget(outcome)?;
    obj.finish()
}

/// Approximates the depth of `z` w.r.t. `data` under `notion` by minimizing
/// the projected depth with the configured algorithm.
pub fn approximate<T: Real>(
    notion: DepthNotion,
    z: &[T],
    data: &Dataset<T>,
    cfg: &ApproxConfig,
    rng: &mut RngStream,
) -> Result<ApproxResult<T>> {
    run(notion, z, data, cfg, rng, false).map(|(r, _)| r)
}

/// Like [`approximate`], additionally returning every evaluated direction in
/// evaluation order.
pub fn approximate_logged<T: Real>(
    notion: DepthNotion,
    z: &[T],
    data: &Dataset<T>,
    cfg: &ApproxConfig,
    rng: &mut RngStream,
) -> Result<(ApproxResult<T>, Vec<Direction<T>>)> {
    run(notion, z, data, cfg, rng, true).map(|(r, log)| (r, log.unwrap_or_default()))
}
