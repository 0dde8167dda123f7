//! Coordinate descent with equally spaced or golden-section line searches.

use super::{DescentParams, LineSearch, Objective, Space};
use crate::error::Result;
use crate::geometry::{tangent_frame_direction, Direction};
use crate::random::{rnd_sphere, RngStream};
use crate::scalar::Real;

/// Minimizes `f` over the `n + 1` equally spaced points `a + i(b - a)/n`.
/// Returns the first minimizer and its value.
pub fn line_search_uniform<T: Real, E>(
    a: T,
    b: T,
    n: usize,
    mut f: impl FnMut(T) -> Result<T, E>,
) -> Result<(T, T), E> {
    let step = (b - a) / T::from_count(n);
    let mut best = (a, f(a)?);
    for i in 1..=n {
        let lambda = if i == n { b } else { a + T::from_count(i) * step };
        let v = f(lambda)?;
        if v < best.1 {
            best = (lambda, v);
        }
    }
    Ok(best)
}

/// Golden-section search on `(a, b)` until the bracket is at most `tol`
/// wide. Returns the best evaluated point and its value.
pub fn line_search_golden<T: Real, E>(
    mut a: T,
    mut b: T,
    tol: T,
    mut f: impl FnMut(T) -> Result<T, E>,
) -> Result<(T, T), E> {
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let inner = |a: T, b: T| ratio * a + (T::one() - ratio) * b;
    let outer = |a: T, b: T| (T::one() - ratio) * a + ratio * b;
    let mut lambda = inner(a, b);
    let mut mu = outer(a, b);
    let mut f_lambda = f(lambda)?;
    let mut f_mu = f(mu)?;
    let mut best = if f_mu < f_lambda { (mu, f_mu) } else { (lambda, f_lambda) };
    while b - a > tol {
        let (x, v) = if f_lambda < f_mu {
            b = mu;
            mu = lambda;
            f_mu = f_lambda;
            lambda = inner(a, b);
            f_lambda = f(lambda)?;
            (lambda, f_lambda)
        } else {
            a = lambda;
            lambda = mu;
            f_lambda = f_mu;
            mu = outer(a, b);
            f_mu = f(mu)?;
            (mu, f_mu)
        };
        if v < best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

fn search<T: Real>(
    params: &DescentParams,
    a: T,
    b: T,
    f: impl FnMut(T) -> Result<T>,
) -> Result<(T, T)> {
    match params.line_search {
        LineSearch::Uniform => line_search_uniform(a, b, params.n_ls, f),
        LineSearch::Golden => line_search_golden(a, b, T::lit(params.golden_tol), f),
    }
}

/// `cos(λ) u + sin(λ) p`, renormalized.
fn rotate<T: Real>(u: &[T], p: &[T], lambda: T) -> Direction<T> {
    let (s, c) = lambda.sin_cos();
    let w: Vec<T> = u.iter().zip(p).map(|(&a, &b)| c * a + s * b).collect();
    Direction::normalize(w).expect("rotation of orthonormal pair is a unit vector")
}

pub(super) fn coordinate_descent<T: Real>(
    obj: &mut Objective<'_, T>,
    params: &DescentParams,
    rng: &mut RngStream,
) -> Result<()> {
    match params.space {
        Space::Sphere => spherical(obj, params, rng),
        Space::Euclidean => euclidean(obj, params, rng),
    }
}

fn spherical<T: Real>(obj: &mut Objective<'_, T>, params: &DescentParams, rng: &mut RngStream) -> Result<()> {
    let d = obj.dim();
    let half = T::FRAC_PI_2();
    let mut u = rnd_sphere(d, rng)?;
    let mut fu = obj.eval(&u)?;
    loop {
        let frame_at = u.clone();
        for j in 0..d - 1 {
            let p = tangent_frame_direction(&frame_at, j)?;
            let (lambda, v) = search(params, -half, half, |l| obj.eval(&rotate(&u, &p, l)))?;
            if v < fu {
                u = rotate(&u, &p, lambda);
                fu = v;
            }
        }
    }
}

/// Descent along the coordinate axes of `R^d`, evaluating the depth at the
/// normalized point. Points at the origin are skipped.
fn euclidean<T: Real>(obj: &mut Objective<'_, T>, params: &DescentParams, rng: &mut RngStream) -> Result<()> {
    let d = obj.dim();
    let reach = T::lit(2.0);
    let mut x = rnd_sphere(d, rng)?.into_vec();
    let mut fx = obj.eval(&Direction::from_vec_unchecked(x.clone()))?;
    loop {
        for j in 0..d {
            let (lambda, v) = search(params, -reach, reach, |l| {
                let mut y = x.clone();
                y[j] = y[j] + l;
                match Direction::normalize(y) {
                    Ok(p) => obj.eval(&p),
                    Err(_) => Ok(T::infinity()),
                }
            })?;
            if v < fx {
                x[j] = x[j] + lambda;
                x = Direction::normalize(x).expect("improving point is not the origin").into_vec();
                fx = v;
            }
        }
    }
}
