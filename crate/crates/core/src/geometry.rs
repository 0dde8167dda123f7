//! Primitives on the unit sphere: great-circle distances, Householder
//! reflections, geodesic points, tangent frames, grids and the naive mean.
//!
//! Angles are plain scalars in radians. Great-circle distances lie in
//! `[0, π]`, spherical cap radii in `(0, π/2]`.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::scalar::{dot, norm, Real};

/// A unit vector on the sphere `S^{d-1}`, `d >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction<T>(Vec<T>);

impl<T: Real> Direction<T> {
    /// Wraps `coords`, checking that they have unit Euclidean norm.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len(), 2));
        }
        let n = norm(&coords);
        if !n.is_finite() || (n - T::one()).abs() > T::zero_norm() {
            return Err(Error::NotUnit);
        }
        Ok(Self(coords))
    }

    /// Scales `v` to unit length. Fails with [`Error::DegenerateMean`] when
    /// `v` is numerically the zero vector.
    pub fn normalize(mut v: Vec<T>) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::DimensionTooSmall(v.len(), 2));
        }
        let n = norm(&v);
        if !(n > T::zero_norm()) || !n.is_finite() {
            return Err(Error::DegenerateMean);
        }
        v.iter_mut().for_each(|x| *x = *x / n);
        Ok(Self(v))
    }

    /// The `i`-th standard basis vector of `R^d` (0-based).
    pub fn basis(d: usize, i: usize) -> Self {
        assert!(d >= 2 && i < d, "basis vector e_{i} outside R^{d}");
        let mut v = vec![T::zero(); d];
        v[i] = T::one();
        Self(v)
    }

    pub(crate) fn from_vec_unchecked(v: Vec<T>) -> Self {
        debug_assert!(v.len() >= 2);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    /// The antipodal direction `-p`.
    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|&x| -x).collect())
    }
}

impl<T> Deref for Direction<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Angle between two unit vectors together with its sine and the inner
/// product, computed with the arcsin branches that stay accurate for nearly
/// parallel and nearly antipodal pairs.
pub(crate) fn arc<T: Real>(x: &[T], y: &[T]) -> (T, T, T) {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let sp = dot(x, y);
    if sp >= T::zero() {
        let sum: T = x.iter().zip(y).map(|(&a, &b)| (a - b) * (a - b)).sum();
        let alpha = two * (half * sum.sqrt()).min(T::one()).asin();
        let sina = (sum * (T::one() + sp) / two).sqrt();
        (alpha, sina, sp)
    } else {
        let sum: T = x.iter().zip(y).map(|(&a, &b)| (a + b) * (a + b)).sum();
        let alpha = T::PI() - two * (half * sum.sqrt()).min(T::one()).asin();
        let sina = (sum * (T::one() - sp) / two).sqrt();
        (alpha, sina, sp)
    }
}

/// Great-circle distance `arccos(<u, v>)`, in `[0, π]`.
pub fn great_circle_distance<T: Real>(u: &Direction<T>, v: &Direction<T>) -> Result<T> {
    check_dims(u.dim(), v.dim())?;
    Ok(arc(u, v).0)
}

/// `1 - p_1`, computed without cancellation when `p_1` is close to one.
fn one_minus_first<T: Real>(p: &[T]) -> T {
    if p[0] > T::zero() {
        let tail: T = p[1..].iter().map(|&x| x * x).sum();
        tail / (T::one() + p[0])
    } else {
        T::one() - p[0]
    }
}

/// Applies, in place, the Householder reflection that maps `e_1` to `p`.
pub(crate) fn householder_in_place<T: Real>(x: &mut [T], p: &[T]) {
    let denom = one_minus_first(p);
    if denom <= T::lit(1e-12) {
        return;
    }
    let lambda = (dot(p, x) - x[0]) / denom;
    x[0] = x[0] + lambda;
    for (xi, &pi) in x.iter_mut().zip(p) {
        *xi = *xi - lambda * pi;
    }
}

/// Computes `Qx` for the reflection `Q` with `Q e_1 = p`. Returns `x`
/// unchanged when `p` is the north pole.
pub fn householder_apply<T: Real>(x: &[T], p: &Direction<T>) -> Result<Vec<T>> {
    check_dims(p.dim(), x.len())?;
    let mut out = x.to_vec();
    householder_in_place(&mut out, p);
    Ok(out)
}

/// Point `γ_{x,y}(t)` on the great circle through `x` and `y`, with
/// `γ(0) = x` and `γ(1) = y`.
///
/// When `bound` is set, the movement away from `x` is limited to a quarter
/// circle: `|tα|` is clamped to `π/2` and the remaining angle is assigned to
/// the `x` coefficient.
pub fn great_circle_point<T: Real>(
    x: &Direction<T>,
    y: &Direction<T>,
    t: T,
    bound: bool,
) -> Result<Direction<T>> {
    check_dims(x.dim(), y.dim())?;
    let (alpha, sina, sp) = arc(x, y);
    if sp.abs() >= T::one() - T::lit(1e-12) || !(sina > T::zero()) {
        return Err(Error::DegenerateGeodesic);
    }
    let mut gx = (T::one() - t) * alpha;
    let mut gy = t * alpha;
    let quarter = T::FRAC_PI_2();
    if bound && gy.abs() > quarter {
        gy = if gy > T::zero() { quarter } else { -quarter };
        gx = alpha - gy;
    }
    let cx = gx.sin() / sina;
    let cy = gy.sin() / sina;
    let z = x.iter().zip(y.iter()).map(|(&a, &b)| cx * a + cy * b).collect();
    Ok(Direction::from_vec_unchecked(z))
}

/// The `j`-th (0-based, `j < d-1`) column of the Householder matrix that maps
/// `u` to `e_d`. Together with `u` these columns form an orthonormal basis.
pub fn tangent_frame_direction<T: Real>(u: &Direction<T>, j: usize) -> Result<Direction<T>> {
    let d = u.dim();
    if j + 1 >= d {
        return Err(Error::InvalidParameter(format!(
            "tangent direction index {j} out of range for dimension {d}"
        )));
    }
    let last = u[d - 1];
    // 1 - u_d, evaluated stably near the pole e_d
    let tail: T = u[..d - 1].iter().map(|&x| x * x).sum();
    let denom = if last > T::zero() {
        tail / (T::one() + last)
    } else {
        T::one() - last
    };
    if denom == T::zero() {
        return Ok(Direction::basis(d, j));
    }
    let uj = u[j];
    let mut p: Vec<T> = u[..d - 1].iter().map(|&ui| -uj * ui / denom).collect();
    p[j] = T::one() + p[j];
    p.push(uj);
    Ok(Direction::from_vec_unchecked(p))
}

/// All `d-1` tangent directions at `u`.
pub fn tangent_frame<T: Real>(u: &Direction<T>) -> Vec<Direction<T>> {
    (0..u.dim() - 1)
        .map(|j| tangent_frame_direction(u, j).expect("index in range"))
        .collect()
}

/// Coordinatewise average of `points`, projected back onto the sphere.
pub fn naive_mean<T: Real>(points: &[Direction<T>]) -> Result<Direction<T>> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidParameter("naive mean of an empty set".into()))?;
    let d = first.dim();
    let mut acc = vec![T::zero(); d];
    for p in points {
        check_dims(d, p.dim())?;
        for (a, &x) in acc.iter_mut().zip(p.iter()) {
            *a = *a + x;
        }
    }
    let count = T::from_count(points.len());
    acc.iter_mut().for_each(|a| *a = *a / count);
    Direction::normalize(acc)
}

/// Point with generalized spherical coordinates `angles` (length `d-1`).
pub fn from_spherical_angles<T: Real>(angles: &[T]) -> Vec<T> {
    let d = angles.len() + 1;
    let mut x = Vec::with_capacity(d);
    let mut sin_prod = T::one();
    for &phi in angles {
        x.push(sin_prod * phi.cos());
        sin_prod = sin_prod * phi.sin();
    }
    x.push(sin_prod);
    x
}

/// Largest `k` with `k^exponent <= budget`.
pub(crate) fn per_angle_count(budget: usize, exponent: u32) -> usize {
    if exponent == 0 {
        return budget;
    }
    let mut k = 1usize;
    while (k + 1).checked_pow(exponent).is_some_and(|v| v <= budget) {
        k += 1;
    }
    k
}

fn equispaced_closed<T: Real>(k: usize, upper: T) -> Vec<T> {
    if k == 1 {
        return vec![T::zero()];
    }
    let step = upper / T::from_count(k - 1);
    (0..k).map(|i| T::from_count(i) * step).collect()
}

fn equispaced_open<T: Real>(k: usize, upper: T) -> Vec<T> {
    let step = upper / T::from_count(k);
    (0..k).map(|i| T::from_count(i) * step).collect()
}

/// Visits the Cartesian product of `axes` in lexicographic order.
fn product_grid<T: Real>(axes: &[Vec<T>], mut visit: impl FnMut(&[T])) {
    let mut idx = vec![0usize; axes.len()];
    let mut angles: Vec<T> = axes.iter().map(|a| a[0]).collect();
    loop {
        visit(&angles);
        let mut level = axes.len();
        loop {
            if level == 0 {
                return;
            }
            level -= 1;
            idx[level] += 1;
            if idx[level] < axes[level].len() {
                angles[level] = axes[level][idx[level]];
                break;
            }
            idx[level] = 0;
            angles[level] = axes[level][0];
        }
    }
}

/// Deterministic hemisphere grid with at most `budget` directions.
///
/// For `d = 2` the angles `iπ/N`, `i < N`, give one direction per line
/// through the origin. For `d >= 3` a product grid with `k = ⌊N^{1/(d-1)}⌋`
/// values per angle is used: the polar angle on `[0, π/2]`, the middle
/// angles on `[0, π]` and the azimuth on `[0, 2π)`.
pub fn spherical_grid<T: Real>(d: usize, budget: usize) -> Result<Vec<Direction<T>>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d, 2));
    }
    if budget == 0 {
        return Err(Error::InvalidParameter("grid budget must be positive".into()));
    }
    if d == 2 {
        let step = T::PI() / T::from_count(budget);
        return Ok((0..budget)
            .map(|i| {
                let phi = T::from_count(i) * step;
                Direction::from_vec_unchecked(vec![phi.cos(), phi.sin()])
            })
            .collect());
    }
    let k = per_angle_count(budget, (d - 1) as u32);
    if k < 2 {
        return Err(Error::GridTooCoarse { dim: d, budget, per_angle: k });
    }
    let mut axes = Vec::with_capacity(d - 1);
    axes.push(equispaced_closed(k, T::FRAC_PI_2()));
    for _ in 1..d - 2 {
        axes.push(equispaced_closed(k, T::PI()));
    }
    axes.push(equispaced_open(k, T::TAU()));
    let mut out = Vec::with_capacity(k.pow((d - 1) as u32));
    product_grid(&axes, |angles| {
        out.push(Direction::from_vec_unchecked(from_spherical_angles(angles)));
    });
    Ok(out)
}

/// Product grid on the full sphere `S^{m-1}` with `k` values per angle.
/// `S^0` is `{+1, -1}`.
pub(crate) fn full_sphere_grid<T: Real>(m: usize, k: usize) -> Vec<Vec<T>> {
    match m {
        0 => vec![],
        1 => vec![vec![T::one()], vec![-T::one()]],
        _ => {
            let mut axes = Vec::with_capacity(m - 1);
            for _ in 0..m - 2 {
                axes.push(equispaced_closed(k, T::PI()));
            }
            axes.push(equispaced_open(k, T::TAU()));
            let mut out = Vec::new();
            product_grid(&axes, |angles| out.push(from_spherical_angles(angles)));
            out
        }
    }
}
