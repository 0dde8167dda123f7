//! Nelder–Mead on the sphere (moves along great circles) and in `R^d`
//! (depth of the normalized point).

use super::{NelderMeadParams, Objective, Space};
use crate::error::{Error, Result};
use crate::geometry::{great_circle_point, naive_mean, Direction};
use crate::random::{rnd_spherical_cap, RngStream};
use crate::scalar::Real;

#[derive(Debug, Clone)]
struct Vertex<P, T> {
    point: P,
    value: T,
}

fn sort_vertices<P, T: Real>(simplex: &mut [Vertex<P, T>]) {
    simplex.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("comparable depths"));
}

/// Replaces the worst vertex and restores the order; ties go after existing
/// vertices of equal value.
fn replace_worst<P, T: Real>(simplex: &mut Vec<Vertex<P, T>>, v: Vertex<P, T>) {
    simplex.pop();
    let at = simplex.partition_point(|w| w.value <= v.value);
    simplex.insert(at, v);
}

pub(super) fn nelder_mead<T: Real>(
    obj: &mut Objective<'_, T>,
    params: &NelderMeadParams,
    rng: &mut RngStream,
) -> Result<()> {
    match params.space {
        Space::Sphere => spherical(obj, params, rng),
        Space::Euclidean => euclidean(obj, params, rng),
    }
}

type SphereVertex<T> = Vertex<Direction<T>, T>;

fn spherical<T: Real>(obj: &mut Objective<'_, T>, params: &NelderMeadParams, rng: &mut RngStream) -> Result<()> {
    let d = obj.dim();
    let eps = T::FRAC_PI_2() / T::lit(params.cap_divisor);
    let start = obj.start(params.start, rng)?;
    let mut simplex = Vec::with_capacity(d);
    for _ in 0..d {
        let point = rnd_spherical_cap(&start, eps, rng)?;
        let value = obj.eval(&point)?;
        simplex.push(Vertex { point, value });
    }
    sort_vertices(&mut simplex);
    loop {
        match spherical_step(obj, &mut simplex, params) {
            Ok(()) => {}
            Err(Error::DegenerateGeodesic | Error::DegenerateMean) => {
                // collapsed simplex: keep the best vertex, redraw the others
                simplex.truncate(1);
                let centre = simplex[0].point.clone();
                for _ in 1..d {
                    let point = rnd_spherical_cap(&centre, eps, rng)?;
                    let value = obj.eval(&point)?;
                    simplex.push(Vertex { point, value });
                }
                sort_vertices(&mut simplex);
            }
            Err(e) => return Err(e),
        }
    }
}

fn spherical_step<T: Real>(
    obj: &mut Objective<'_, T>,
    simplex: &mut Vec<SphereVertex<T>>,
    params: &NelderMeadParams,
) -> Result<()> {
    let n = simplex.len();
    let bound = params.bound;
    let best_points: Vec<Direction<T>> = simplex[..n - 1].iter().map(|v| v.point.clone()).collect();
    let centroid = naive_mean(&best_points)?;
    let worst = simplex[n - 1].clone();
    let f1 = simplex[0].value;
    let f_next = simplex[n - 2].value;

    let xr = great_circle_point(&centroid, &worst.point, -T::lit(params.reflection), bound)?;
    let fr = obj.eval(&xr)?;
    let replacement = if f1 <= fr && fr < f_next {
        Some(Vertex { point: xr, value: fr })
    } else if fr < f1 {
        match great_circle_point(&centroid, &xr, T::lit(params.expansion), bound) {
            Ok(xe) => {
                let fe = obj.eval(&xe)?;
                Some(if fe < fr { Vertex { point: xe, value: fe } } else { Vertex { point: xr, value: fr } })
            }
            Err(_) => Some(Vertex { point: xr, value: fr }),
        }
    } else {
        let toward = if fr < worst.value { &xr } else { &worst.point };
        let xc = great_circle_point(&centroid, toward, T::lit(params.contraction), bound)?;
        let fc = obj.eval(&xc)?;
        (fc < worst.value).then_some(Vertex { point: xc, value: fc })
    };

    match replacement {
        Some(v) => replace_worst(simplex, v),
        None => {
            let sigma = T::lit(params.shrink);
            let anchor = simplex[0].point.clone();
            for v in simplex[1..].iter_mut() {
                // vertices that coincide with the anchor stay where they are
                if let Ok(point) = great_circle_point(&anchor, &v.point, sigma, bound) {
                    v.value = obj.eval(&point)?;
                    v.point = point;
                }
            }
            sort_vertices(simplex);
        }
    }
    Ok(())
}

type PlainVertex<T> = Vertex<Vec<T>, T>;

/// Depth at `x / |x|`; the origin is infeasible and costs no evaluation.
fn ray_value<T: Real>(obj: &mut Objective<'_, T>, x: &[T]) -> Result<T> {
    match Direction::normalize(x.to_vec()) {
        Ok(p) => obj.eval(&p),
        Err(_) => Ok(T::infinity()),
    }
}

fn affine<T: Real>(o: &[T], y: &[T], t: T) -> Vec<T> {
    o.iter().zip(y).map(|(&a, &b)| a + t * (b - a)).collect()
}

fn euclidean<T: Real>(obj: &mut Objective<'_, T>, params: &NelderMeadParams, rng: &mut RngStream) -> Result<()> {
    let d = obj.dim();
    let eps = T::FRAC_PI_2() / T::lit(params.cap_divisor);
    let start = obj.start(params.start, rng)?;
    let mut simplex: Vec<PlainVertex<T>> = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        let point = rnd_spherical_cap(&start, eps, rng)?.into_vec();
        let value = obj.eval(&Direction::from_vec_unchecked(point.clone()))?;
        simplex.push(Vertex { point, value });
    }
    sort_vertices(&mut simplex);
    let (alpha, gamma) = (T::lit(params.reflection), T::lit(params.expansion));
    let (rho, sigma) = (T::lit(params.contraction), T::lit(params.shrink));
    let mut idle = 0usize;
    while idle < 1000 {
        let before = obj.used();
        if collapsed(&simplex) {
            let centre = Direction::normalize(simplex[0].point.clone())?;
            simplex.truncate(1);
            for _ in 0..d {
                let point = rnd_spherical_cap(&centre, eps, rng)?.into_vec();
                let value = obj.eval(&Direction::from_vec_unchecked(point.clone()))?;
                simplex.push(Vertex { point, value });
            }
            sort_vertices(&mut simplex);
        }
        let nf = T::from_count(d);
        let mut centroid = vec![T::zero(); d];
        for v in &simplex[..d] {
            for (c, &x) in centroid.iter_mut().zip(&v.point) {
                *c = *c + x / nf;
            }
        }
        let worst = simplex[d].clone();
        let f1 = simplex[0].value;
        let f_next = simplex[d - 1].value;
        let xr = affine(&centroid, &worst.point, -alpha);
        let fr = ray_value(obj, &xr)?;
        let replacement = if f1 <= fr && fr < f_next {
            Some(Vertex { point: xr, value: fr })
        } else if fr < f1 {
            let xe = affine(&centroid, &xr, gamma);
            let fe = ray_value(obj, &xe)?;
            Some(if fe < fr { Vertex { point: xe, value: fe } } else { Vertex { point: xr, value: fr } })
        } else if fr < worst.value {
            let xc = affine(&centroid, &xr, rho);
            let fc = ray_value(obj, &xc)?;
            (fc <= fr).then_some(Vertex { point: xc, value: fc })
        } else {
            let xc = affine(&centroid, &worst.point, rho);
            let fc = ray_value(obj, &xc)?;
            (fc < worst.value).then_some(Vertex { point: xc, value: fc })
        };
        match replacement {
            Some(v) => replace_worst(&mut simplex, v),
            None => {
                let anchor = simplex[0].point.clone();
                for v in simplex[1..].iter_mut() {
                    v.point = affine(&anchor, &v.point, sigma);
                    v.value = ray_value(obj, &v.point)?;
                }
                sort_vertices(&mut simplex);
            }
        }
        idle = if obj.used() == before { idle + 1 } else { 0 };
    }
    Ok(())
}

/// All vertices agree with the best one to relative precision `1e-12`.
fn collapsed<T: Real>(simplex: &[PlainVertex<T>]) -> bool {
    let best = &simplex[0].point;
    let scale = best.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    let tol = scale * T::lit(1e-12);
    simplex[1..]
        .iter()
        .all(|v| v.point.iter().zip(best).all(|(&a, &b)| (a - b).abs() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replacement_keeps_order() {
        let mut s: Vec<Vertex<(), f64>> =
            [1.0, 2.0, 3.0, 4.0].into_iter().map(|value| Vertex { point: (), value }).collect();
        replace_worst(&mut s, Vertex { point: (), value: 2.0 });
        let values: Vec<f64> = s.iter().map(|v| v.value).collect();
        assert_eq!(values, vec![1.0, 2.0, 2.0, 3.0]);
        replace_worst(&mut s, Vertex { point: (), value: 0.5 });
        assert_eq!(s[0].value, 0.5);
    }

    #[test]
    fn collapse_detection() {
        let v = |p: Vec<f64>| Vertex { point: p, value: 0.0 };
        assert!(collapsed(&[v(vec![1.0, 2.0]), v(vec![1.0, 2.0])]));
        assert!(!collapsed(&[v(vec![1.0, 2.0]), v(vec![1.0, 2.1])]));
    }
}
