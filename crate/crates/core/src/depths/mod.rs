//! Depth notions: univariate kernels for projected data, the objective
//! `p -> D(<p, z> | <p, X>)` and exact oracles.

mod exact;
mod kernels;
pub mod lp;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use exact::{
    exact_depth, exact_halfspace_2d, exact_mahalanobis, exact_zonoid, has_oracle, mean_and_covariance,
};
pub use kernels::{apd1, hd1, md1, pd1, zd1, UnivariateSample};

use crate::error::{Error, Result};
use crate::geometry::Direction;
use crate::scalar::{dot, Real};

/// `n × d` sample, one observation per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    n: usize,
    d: usize,
    values: Vec<T>,
}

impl<T: Real> Dataset<T> {
    /// Builds a dataset from row-major `values`; every entry must be finite.
    pub fn new(n: usize, d: usize, values: Vec<T>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidData(format!("empty dataset ({n} x {d})")));
        }
        if values.len() != n * d {
            return Err(Error::InvalidData(format!(
                "{} values do not form a {n} x {d} matrix",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidData(format!(
                "non-finite entry at row {}, column {}",
                pos / d + 1,
                pos % d + 1
            )));
        }
        Ok(Self { n, d, values })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != d) {
            return Err(Error::InvalidData(format!(
                "row {} has {} columns, expected {d}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Self::new(n, d, rows.into_iter().flatten().collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.values[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[T]> + '_ {
        self.values.chunks_exact(self.d)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    /// Coordinatewise mean.
    pub fn mean(&self) -> Vec<T> {
        let mut m = vec![T::zero(); self.d];
        for row in self.rows() {
            for (a, &x) in m.iter_mut().zip(row) {
                *a = *a + x;
            }
        }
        let nf = T::from_count(self.n);
        m.iter_mut().for_each(|a| *a = *a / nf);
        m
    }

    /// Applies `x -> A x + b` to every row (`A` row-major `d × d`).
    pub fn affine_map(&self, a: &[T], b: &[T]) -> Self {
        let values = self.rows().flat_map(|row| affine_apply(a, b, row)).collect();
        Self { values, ..*self }
    }
}

/// `A x + b` for a row-major square `A`.
pub fn affine_apply<T: Real>(a: &[T], b: &[T], x: &[T]) -> Vec<T> {
    let d = x.len();
    (0..d).map(|i| dot(&a[i * d..(i + 1) * d], x) + b[i]).collect()
}

/// The five depth notions with the projection property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthNotion {
    Mahalanobis,
    Zonoid,
    Halfspace,
    Projection,
    AsymProjection,
}

impl DepthNotion {
    pub const ALL: [DepthNotion; 5] = [
        DepthNotion::Mahalanobis,
        DepthNotion::Zonoid,
        DepthNotion::Halfspace,
        DepthNotion::Projection,
        DepthNotion::AsymProjection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DepthNotion::Mahalanobis => "mahalanobis",
            DepthNotion::Zonoid => "zonoid",
            DepthNotion::Halfspace => "halfspace",
            DepthNotion::Projection => "projection",
            DepthNotion::AsymProjection => "asym_projection",
        }
    }

    /// Univariate depth of `zeta` w.r.t. `sample`.
    pub fn kernel<T: Real>(self, zeta: T, sample: &UnivariateSample<T>) -> T {
        match self {
            DepthNotion::Mahalanobis => md1(zeta, sample),
            DepthNotion::Zonoid => zd1(zeta, sample),
            DepthNotion::Halfspace => hd1(zeta, sample),
            DepthNotion::Projection => pd1(zeta, sample),
            DepthNotion::AsymProjection => apd1(zeta, sample),
        }
    }
}

impl fmt::Display for DepthNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DepthNotion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "mahalanobis" | "md" => Ok(DepthNotion::Mahalanobis),
            "zonoid" | "zd" => Ok(DepthNotion::Zonoid),
            "halfspace" | "tukey" | "hd" => Ok(DepthNotion::Halfspace),
            "projection" | "pd" => Ok(DepthNotion::Projection),
            "asym_projection" | "asymmetric_projection" | "apd" => Ok(DepthNotion::AsymProjection),
            other => Err(Error::InvalidParameter(format!("unknown depth notion `{other}`"))),
        }
    }
}

/// Evaluation budget shared by one optimization run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalCounter {
    limit: usize,
    used: usize,
}

impl EvalCounter {
    pub fn new(limit: usize) -> Self {
        Self { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Self::new(usize::MAX)
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn used(&self) -> usize {
        self.used
    }

    pub fn remaining(&self) -> usize {
        self.limit - self.used
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.limit
    }

    /// Books one evaluation.
    pub fn consume(&mut self) -> Result<()> {
        if self.used >= self.limit {
            return Err(Error::BudgetExhausted);
        }
        self.used += 1;
        Ok(())
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Projections `<p, x_i>` of every sample point.
pub fn project<T: Real>(data: &Dataset<T>, p: &Direction<T>) -> Result<UnivariateSample<T>> {
    check_dims(data.dim(), p.dim())?;
    Ok(UnivariateSample::new(data.rows().map(|row| dot(row, p)).collect()))
}

/// `<p, z>`.
pub fn project_point<T: Real>(z: &[T], p: &Direction<T>) -> Result<T> {
    check_dims(p.dim(), z.len())?;
    Ok(dot(z, p))
}

/// Univariate depth of the projected point w.r.t. the projected sample.
/// Books exactly one evaluation on `counter`.
pub fn projected_depth<T: Real>(
    notion: DepthNotion,
    z: &[T],
    data: &Dataset<T>,
    p: &Direction<T>,
    counter: &mut EvalCounter,
) -> Result<T> {
    check_dims(data.dim(), z.len())?;
    check_dims(data.dim(), p.dim())?;
    counter.consume()?;
    let sample = project(data, p)?;
    Ok(notion.kernel(dot(z, p), &sample))
}

/// Reusable evaluator of the projected depth that keeps its projection
/// buffer between calls.
#[derive(Debug)]
pub(crate) struct ProjectedDepth<'a, T> {
    pub notion: DepthNotion,
    pub z: &'a [T],
    pub data: &'a Dataset<T>,
    sample: UnivariateSample<T>,
}

impl<'a, T: Real> ProjectedDepth<'a, T> {
    pub fn new(notion: DepthNotion, z: &'a [T], data: &'a Dataset<T>) -> Self {
        Self { notion, z, data, sample: UnivariateSample::default() }
    }

    pub fn eval(&mut self, p: &[T]) -> T {
        let data = self.data;
        self.sample.refill(|v| v.extend(data.rows().map(|row| dot(row, p))));
        self.notion.kernel(dot(self.z, p), &self.sample)
    }
}
