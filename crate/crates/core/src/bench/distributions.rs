//! Benchmark sample generators and the query-point protocol.

use std::fmt;

use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::depths::Dataset;
use crate::error::{Error, Result};
use crate::random::{rnd_subset, RngStream};
use crate::scalar::Real;

/// Benchmark distribution family. Student and Cauchy samples are spherically
/// symmetric; uniform and exponential samples have independent coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family", deny_unknown_fields)]
pub enum Family {
    Normal,
    T5,
    Cauchy,
    /// Skew normal with skewness vector `delta`; `None` means `(5, 0, …, 0)`.
    SkewNormal {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<Vec<f64>>,
    },
    Uniform01,
    Exponential,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Normal => "normal",
            Family::T5 => "t5",
            Family::Cauchy => "cauchy",
            Family::SkewNormal { .. } => "skew_normal",
            Family::Uniform01 => "uniform01",
            Family::Exponential => "exponential",
        }
    }

    pub fn skew_normal() -> Self {
        Family::SkewNormal { delta: None }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSpec {
    pub family: Family,
    pub d: usize,
}

impl DistributionSpec {
    pub fn new(family: Family, d: usize) -> Self {
        Self { family, d }
    }

    /// Skewness vector of the skew-normal family, defaulted to `(5, 0, …, 0)`.
    pub fn skewness(&self) -> Option<Vec<f64>> {
        match &self.family {
            Family::SkewNormal { delta: Some(delta) } => Some(delta.clone()),
            Family::SkewNormal { delta: None } => {
                let mut delta = vec![0.0; self.d];
                delta[0] = 5.0;
                Some(delta)
            }
            _ => None,
        }
    }
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

fn fill_normal(row: &mut [f64], rng: &mut RngStream) {
    row.iter_mut().for_each(|v| *v = rng.normal());
}

/// `n` i.i.d. observations of `spec`.
pub fn generate_sample<T: Real>(spec: &DistributionSpec, n: usize, rng: &mut RngStream) -> Result<Dataset<T>> {
    let d = spec.d;
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let delta = spec.skewness();
    if let Some(delta) = &delta {
        if delta.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: delta.len() });
        }
    }
    let mut row = vec![0.0f64; d];
    let mut values = Vec::with_capacity(n * d);
    for _ in 0..n {
        match &spec.family {
            Family::Normal => fill_normal(&mut row, rng),
            Family::T5 | Family::Cauchy => {
                let dof = if spec.family == Family::T5 { 5.0 } else { 1.0 };
                fill_normal(&mut row, rng);
                let scale = (rng.chi_squared(dof) / dof).sqrt();
                row.iter_mut().for_each(|v| *v /= scale);
            }
            Family::SkewNormal { .. } => {
                fill_normal(&mut row, rng);
                let delta = delta.as_deref().expect("skewness is set for this family");
                let s: f64 = row.iter().zip(delta).map(|(a, b)| a * b).sum();
                if rng.uniform::<f64>() > normal_cdf(s) {
                    row.iter_mut().for_each(|v| *v = -*v);
                }
            }
            Family::Uniform01 => row.iter_mut().for_each(|v| *v = rng.uniform()),
            Family::Exponential => row.iter_mut().for_each(|v| *v = rng.sample(Exp1)),
        }
        values.extend(row.iter().map(|&v| T::lit(v)));
    }
    Dataset::new(n, d, values)
}

/// Average of `min(10, n)` sample points drawn without replacement.
pub fn pick_z<T: Real>(data: &Dataset<T>, rng: &mut RngStream) -> Result<Vec<T>> {
    let n = data.len();
    let k = n.min(10);
    let idx = rnd_subset(k, n, rng)?;
    let mut z = vec![T::zero(); data.dim()];
    for &i in &idx {
        for (a, &x) in z.iter_mut().zip(data.row(i)) {
            *a = *a + x;
        }
    }
    let kf = T::from_count(k);
    z.iter_mut().for_each(|a| *a = *a / kf);
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depths::{exact_zonoid, mean_and_covariance};

    fn ks_vs_normal(mut xs: Vec<f64>) -> f64 {
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = xs.len() as f64;
        xs.iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = normal_cdf(x);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.96) - 0.975_002_104_851_780_1).abs() < 1e-12);
        assert!((normal_cdf(-3.0) - 0.001_349_898_031_630_094_6).abs() < 1e-14);
    }

    #[test]
    fn unskewed_skew_normal_is_normal() {
        let spec = DistributionSpec::new(Family::SkewNormal { delta: Some(vec![0.0; 2]) }, 2);
        let x: Dataset<f64> = generate_sample(&spec, 10_000, &mut RngStream::new(5)).unwrap();
        for j in 0..2 {
            let ks = ks_vs_normal(x.rows().map(|r| r[j]).collect());
            assert!(ks < 0.02, "coordinate {j}: {ks}");
        }
    }

    #[test]
    fn default_skewness_shifts_the_first_coordinate() {
        let spec = DistributionSpec::new(Family::skew_normal(), 3);
        assert_eq!(spec.skewness().unwrap(), vec![5.0, 0.0, 0.0]);
        let x: Dataset<f64> = generate_sample(&spec, 20_000, &mut RngStream::new(6)).unwrap();
        let mean = x.mean();
        // E X_1 = sqrt(2/π) δ_1 / sqrt(1 + |δ|²)
        let expected = (2.0 / std::f64::consts::PI).sqrt() * 5.0 / 26f64.sqrt();
        assert!((mean[0] - expected).abs() < 0.02, "{}", mean[0]);
        assert!(mean[1].abs() < 0.03 && mean[2].abs() < 0.03);
    }

    #[test]
    fn uniform_support_and_exponential_positivity() {
        let u: Dataset<f64> =
            generate_sample(&DistributionSpec::new(Family::Uniform01, 4), 1000, &mut RngStream::new(1)).unwrap();
        assert!(u.as_slice().iter().all(|&v| (0.0..=1.0).contains(&v)));
        let e: Dataset<f64> =
            generate_sample(&DistributionSpec::new(Family::Exponential, 2), 20_000, &mut RngStream::new(2)).unwrap();
        assert!(e.as_slice().iter().all(|&v| v >= 0.0));
        let m = e.mean();
        assert!((m[0] - 1.0).abs() < 0.03 && (m[1] - 1.0).abs() < 0.03);
    }

    #[test]
    fn normal_covariance_is_near_identity() {
        let x: Dataset<f64> =
            generate_sample(&DistributionSpec::new(Family::Normal, 3), 100_000, &mut RngStream::new(3)).unwrap();
        let (_, cov) = mean_and_covariance(&x);
        for a in 0..3 {
            for b in 0..3 {
                let target = if a == b { 1.0 } else { 0.0 };
                assert!((cov[a * 3 + b] - target).abs() < 0.03);
            }
        }
    }

    #[test]
    fn student_samples_are_heavy_tailed() {
        let spec = DistributionSpec::new(Family::Cauchy, 2);
        let x: Dataset<f64> = generate_sample(&spec, 10_000, &mut RngStream::new(4)).unwrap();
        // P(|X_1| > 10) for a Cauchy marginal is about 0.063
        let tail = x.rows().filter(|r| r[0].abs() > 10.0).count() as f64 / 10_000.0;
        assert!((tail - 0.0635).abs() < 0.01, "{tail}");
        let t5 = DistributionSpec::new(Family::T5, 2);
        let y: Dataset<f64> = generate_sample(&t5, 50_000, &mut RngStream::new(4)).unwrap();
        // variance of t_5 is 5/3
        let (_, cov) = mean_and_covariance(&y);
        assert!((cov[0] - 5.0 / 3.0).abs() < 0.1, "{}", cov[0]);
    }

    #[test]
    fn query_point_protocol() {
        let x: Dataset<f64> =
            generate_sample(&DistributionSpec::new(Family::Normal, 3), 10, &mut RngStream::new(7)).unwrap();
        let z = pick_z(&x, &mut RngStream::new(8)).unwrap();
        for (a, b) in z.iter().zip(x.mean()) {
            assert!((a - b).abs() < 1e-14);
        }
        let y: Dataset<f64> =
            generate_sample(&DistributionSpec::new(Family::Exponential, 4), 200, &mut RngStream::new(9)).unwrap();
        let z1 = pick_z(&y, &mut RngStream::new(10)).unwrap();
        let z2 = pick_z(&y, &mut RngStream::new(10)).unwrap();
        assert_eq!(z1, z2);
        assert!(exact_zonoid(&z1, &y).unwrap() > 0.0);
    }
}
