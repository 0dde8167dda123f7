//! Random, grid and random-simplex searches and their refined variants.

use super::{Objective, RefineParams, SimplexParams};
use crate::error::{Error, Result};
use crate::geometry::{full_sphere_grid, householder_in_place, per_angle_count, spherical_grid, Direction};
use crate::random::{rnd_dirichlet_sym, rnd_sphere, rnd_spherical_cap, RngStream, SubsetSampler};
use crate::scalar::Real;

pub(super) fn random_search<T: Real>(obj: &mut Objective<'_, T>, rng: &mut RngStream) -> Result<()> {
    let d = obj.dim();
    loop {
        let p = rnd_sphere(d, rng)?;
        obj.eval(&p)?;
    }
}

pub(super) fn grid_search<T: Real>(obj: &mut Objective<'_, T>) -> Result<()> {
    for p in spherical_grid::<T>(obj.dim(), obj.budget())? {
        obj.eval(&p)?;
    }
    Ok(())
}

pub(super) fn refined_random_search<T: Real>(
    obj: &mut Objective<'_, T>,
    params: &RefineParams,
    rng: &mut RngStream,
) -> Result<()> {
    let d = obj.dim();
    let per_round = (obj.budget() / params.n_ref).max(1);
    let mut centre = Direction::basis(d, 0);
    let mut best = obj.eval(&centre)?;
    let mut eps = T::FRAC_PI_2();
    let shrink = T::lit(params.shrink);
    for _ in 0..params.n_ref {
        for _ in 0..per_round {
            let p = rnd_spherical_cap(&centre, eps, rng)?;
            let v = obj.eval(&p)?;
            if v < best {
                best = v;
                centre = p;
            }
        }
        eps = eps * shrink;
    }
    Ok(())
}

/// Local grid on the cap of radius `eps` around `e_1`: `levels` polar angles
/// `eps·i/levels` (`i = 1..=levels`), each combined with every point of the
/// cross-section grid on `S^{d-2}`.
struct CapGrid<T> {
    levels: usize,
    cross: Vec<Vec<T>>,
}

impl<T: Real> CapGrid<T> {
    fn new(d: usize, budget: usize) -> Result<Self> {
        if d == 2 {
            let levels = budget / 2;
            if levels < 1 {
                return Err(Error::GridTooCoarse { dim: d, budget, per_angle: levels });
            }
            return Ok(Self { levels, cross: full_sphere_grid(1, 0) });
        }
        let k = per_angle_count(budget, (d - 1) as u32);
        if k < 2 {
            return Err(Error::GridTooCoarse { dim: d, budget, per_angle: k });
        }
        Ok(Self { levels: k, cross: full_sphere_grid(d - 1, k) })
    }

    fn points(&self, centre: &Direction<T>, eps: T) -> impl Iterator<Item = Direction<T>> + '_ {
        let centre = centre.clone();
        (1..=self.levels).flat_map(move |i| {
            let theta = eps * T::from_count(i) / T::from_count(self.levels);
            let (s, c) = theta.sin_cos();
            let centre = centre.clone();
            self.cross.iter().map(move |dir| {
                let mut x = Vec::with_capacity(dir.len() + 1);
                x.push(c);
                x.extend(dir.iter().map(|&v| s * v));
                householder_in_place(&mut x, &centre);
                Direction::from_vec_unchecked(x)
            })
        })
    }
}

pub(super) fn refined_grid_search<T: Real>(obj: &mut Objective<'_, T>, params: &RefineParams) -> Result<()> {
    let d = obj.dim();
    let grid = CapGrid::<T>::new(d, (obj.budget() / params.n_ref).max(1))?;
    let mut centre = Direction::basis(d, 0);
    let mut best = obj.eval(&centre)?;
    let mut eps = T::FRAC_PI_2();
    let shrink = T::lit(params.shrink);
    for _ in 0..params.n_ref {
        let mut next = None;
        for p in grid.points(&centre, eps) {
            let v = obj.eval(&p)?;
            if v < best {
                best = v;
                next = Some(p);
            }
        }
        if let Some(p) = next {
            centre = p;
        }
        eps = eps * shrink;
    }
    Ok(())
}

pub(super) fn random_simplices<T: Real>(
    obj: &mut Objective<'_, T>,
    params: &SimplexParams,
    rng: &mut RngStream,
) -> Result<()> {
    let data = obj.data();
    let (n, d) = (data.len(), data.dim());
    if n < d + 1 {
        return Err(Error::DataTooSmall { needed: d + 1, got: n });
    }
    let mut sampler = SubsetSampler::new(n);
    let max_skips = 1000 + 100 * obj.budget();
    let mut skips = 0usize;
    while !obj.exhausted() {
        let idx = sampler.draw(d + 1, rng)?.to_vec();
        let w: Vec<T> = rnd_dirichlet_sym(d, params.alpha, rng)?;
        let base = data.row(idx[0]);
        let mut p: Vec<T> = base.iter().map(|&b| -b).collect();
        for (&i, &wk) in idx[1..].iter().zip(&w) {
            for (pj, &x) in p.iter_mut().zip(data.row(i)) {
                *pj = *pj + wk * x;
            }
        }
        match Direction::normalize(p) {
            Ok(p) => {
                obj.eval(&p)?;
            }
            Err(_) => {
                skips += 1;
                if skips > max_skips {
                    break;
                }
            }
        }
    }
    Ok(())
}
