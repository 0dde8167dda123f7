//! Exact depth oracles: closed-form Mahalanobis, LP zonoid and the
//! bivariate halfspace sweep.

use super::lp::solve_zonoid_lp;
use super::{Dataset, DepthNotion};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_point<T: Real>(z: &[T], data: &Dataset<T>) -> Result<()> {
    if z.len() != data.dim() {
        return Err(Error::DimensionMismatch { expected: data.dim(), got: z.len() });
    }
    Ok(())
}

/// Mean vector and covariance matrix with divisor `n` (row-major `d × d`).
pub fn mean_and_covariance<T: Real>(data: &Dataset<T>) -> (Vec<T>, Vec<T>) {
    let (n, d) = (data.len(), data.dim());
    let mean = data.mean();
    let mut cov = vec![T::zero(); d * d];
    for row in data.rows() {
        for a in 0..d {
            let da = row[a] - mean[a];
            for b in a..d {
                cov[a * d + b] = cov[a * d + b] + da * (row[b] - mean[b]);
            }
        }
    }
    let nf = T::from_count(n);
    for a in 0..d {
        for b in a..d {
            let v = cov[a * d + b] / nf;
            cov[a * d + b] = v;
            cov[b * d + a] = v;
        }
    }
    (mean, cov)
}

/// Lower Cholesky factor of a symmetric positive-definite matrix.
fn cholesky<T: Real>(m: &[T], d: usize) -> Result<Vec<T>> {
    let max_diag = (0..d).map(|i| m[i * d + i]).fold(T::zero(), T::max);
    let floor = max_diag * T::lit(1e-12);
    let mut l = vec![T::zero(); d * d];
    for i in 0..d {
        for j in 0..=i {
            let s: T = (0..j).map(|k| l[i * d + k] * l[j * d + k]).sum();
            if i == j {
                let v = m[i * d + i] - s;
                if !(v > floor) {
                    return Err(Error::SingularCovariance);
                }
                l[i * d + i] = v.sqrt();
            } else {
                l[i * d + j] = (m[i * d + j] - s) / l[j * d + j];
            }
        }
    }
    Ok(l)
}

/// `(1 + (z - x̄)' S^{-1} (z - x̄))^{-1}` with the divisor-`n` covariance.
pub fn exact_mahalanobis<T: Real>(z: &[T], data: &Dataset<T>) -> Result<T> {
    check_point(z, data)?;
    let d = data.dim();
    let (mean, cov) = mean_and_covariance(data);
    let l = cholesky(&cov, d)?;
    // forward substitution L w = z - x̄; quadratic form is |w|^2
    let mut w = vec![T::zero(); d];
    for i in 0..d {
        let s: T = (0..i).map(|k| l[i * d + k] * w[k]).sum();
        w[i] = (z[i] - mean[i] - s) / l[i * d + i];
    }
    let q: T = w.iter().map(|&x| x * x).sum();
    Ok(T::one() / (T::one() + q))
}

/// Zonoid depth `1 / (n t*)` from the LP `min t` s.t. `Σλ = 1`, `X'λ = z`,
/// `0 <= λ_i <= t`; zero outside the convex hull.
pub fn exact_zonoid<T: Real>(z: &[T], data: &Dataset<T>) -> Result<T> {
    check_point(z, data)?;
    let (n, d) = (data.len(), data.dim());
    let mut cols = Vec::with_capacity(n * d);
    for row in data.rows() {
        cols.extend(row.iter().zip(z).map(|(&x, &zi)| x - zi));
    }
    let sol = solve_zonoid_lp(&cols, n, d)?;
    Ok((sol.mass / T::from_count(n)).min(T::one()))
}

/// Number of angles in the open arc `(lo, lo + π)`, angles sorted in `[0, 2π)`.
fn count_in_open_semicircle<T: Real>(sorted: &[T], lo: T) -> usize {
    let tau = T::TAU();
    let hi = lo + T::PI();
    let above = |x: T| sorted.partition_point(|&a| a <= x);
    let below = |x: T| sorted.partition_point(|&a| a < x);
    if hi <= tau {
        below(hi) - above(lo)
    } else {
        (sorted.len() - above(lo)) + below(hi - tau)
    }
}

fn wrap_angle<T: Real>(a: T) -> T {
    let tau = T::TAU();
    let r = a % tau;
    let r = if r < T::zero() { r + tau } else { r };
    if r >= tau {
        T::zero()
    } else {
        r
    }
}

/// Exact bivariate halfspace (Tukey) depth by an angular sweep around `z`.
///
/// The closed-halfplane count only changes at directions orthogonal to some
/// `x_i - z`, and is minimal on the open arcs between those critical
/// directions, so it suffices to count at the arc midpoints. Points equal to
/// `z` lie in every closed halfplane.
pub fn exact_halfspace_2d<T: Real>(z: &[T], data: &Dataset<T>) -> Result<T> {
    check_point(z, data)?;
    if data.dim() != 2 {
        return Err(Error::UnsupportedExact("halfspace", data.dim()));
    }
    let n = data.len();
    let mut at_z = 0usize;
    let mut angles = Vec::with_capacity(n);
    for row in data.rows() {
        let (dx, dy) = (row[0] - z[0], row[1] - z[1]);
        if dx == T::zero() && dy == T::zero() {
            at_z += 1;
        } else {
            angles.push(wrap_angle(dy.atan2(dx)));
        }
    }
    if angles.is_empty() {
        return Ok(T::one());
    }
    let cmp = |a: &T, b: &T| a.partial_cmp(b).expect("finite angles");
    angles.sort_unstable_by(cmp);
    let half = T::FRAC_PI_2();
    let mut critical: Vec<T> = angles
        .iter()
        .flat_map(|&a| [wrap_angle(a + half), wrap_angle(a - half)])
        .collect();
    critical.sort_unstable_by(cmp);
    critical.dedup();
    let m = critical.len();
    let mut best = usize::MAX;
    for k in 0..m {
        let a = critical[k];
        let b = if k + 1 < m { critical[k + 1] } else { critical[0] + T::TAU() };
        let mid = (a + b) / T::lit(2.0);
        let count = count_in_open_semicircle(&angles, wrap_angle(mid - half));
        best = best.min(count);
    }
    Ok(T::from_count(best + at_z) / T::from_count(n))
}

/// Exact depth where an oracle exists: Mahalanobis and zonoid in every
/// dimension, halfspace for `d = 2`.
pub fn exact_depth<T: Real>(notion: DepthNotion, z: &[T], data: &Dataset<T>) -> Result<T> {
    match notion {
        DepthNotion::Mahalanobis => exact_mahalanobis(z, data),
        DepthNotion::Zonoid => exact_zonoid(z, data),
        DepthNotion::Halfspace => exact_halfspace_2d(z, data),
        DepthNotion::Projection => Err(Error::UnsupportedExact("projection", data.dim())),
        DepthNotion::AsymProjection => Err(Error::UnsupportedExact("asymmetric projection", data.dim())),
    }
}

/// Whether [`exact_depth`] supports `notion` in dimension `d`.
pub fn has_oracle(notion: DepthNotion, d: usize) -> bool {
    match notion {
        DepthNotion::Mahalanobis | DepthNotion::Zonoid => true,
        DepthNotion::Halfspace => d == 2,
        DepthNotion::Projection | DepthNotion::AsymProjection => false,
    }
}
