//! Seeded random sources: uniform directions, spherical caps, symmetric
//! Dirichlet weights and index subsets.
//!
//! Every sampler is a deterministic function of its inputs and the state of
//! the [`RngStream`] it draws from. The generator is xoshiro256++ seeded
//! through SplitMix64; normal variates use the ziggurat method of
//! `rand_distr::StandardNormal` and gamma variates `rand_distr::Gamma`.

use rand::{RngExt, SeedableRng};
use rand_distr::{Distribution, Gamma, StandardNormal};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::geometry::{householder_in_place, Direction};
use crate::scalar::Real;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the sub-stream identified by `path` under `master`.
///
/// Each path component is folded in as `h <- mix64(h ^ mix64(component))`,
/// so distinct paths yield unrelated seeds and identical paths always
/// reproduce the same seed.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(mix64(master), |h, &c| mix64(h ^ mix64(c.wrapping_add(GOLDEN_GAMMA))))
}

/// Single-owner deterministic random stream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: Xoshiro256PlusPlus,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: Xoshiro256PlusPlus::seed_from_u64(seed) }
    }

    /// Independent stream for e.g. `(replication, algorithm)`.
    pub fn derive(master: u64, path: &[u64]) -> Self {
        Self::new(derive_seed(master, path))
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn uniform<T: Real>(&mut self) -> T {
        T::lit(self.rng.random::<f64>())
    }

    pub fn normal<T: Real>(&mut self) -> T {
        let z: f64 = StandardNormal.sample(&mut self.rng);
        T::lit(z)
    }

    pub(crate) fn gamma(&mut self, dist: &Gamma<f64>) -> f64 {
        dist.sample(&mut self.rng)
    }

    pub(crate) fn sample<D: Distribution<f64>>(&mut self, dist: D) -> f64 {
        dist.sample(&mut self.rng)
    }

    pub(crate) fn chi_squared(&mut self, dof: f64) -> f64 {
        // chi^2_k = 2 * Gamma(k/2, 1)
        let g = Gamma::new(dof / 2.0, 2.0).expect("positive degrees of freedom");
        g.sample(&mut self.rng)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

/// `d` standard normals scaled to unit length; `d = 1` yields a random sign.
pub(crate) fn unit_normal_vector<T: Real>(d: usize, rng: &mut RngStream) -> Vec<T> {
    loop {
        let v: Vec<T> = (0..d).map(|_| rng.normal::<T>()).collect();
        let s: T = v.iter().map(|&x| x * x).sum::<T>().sqrt();
        if s > T::zero() && s.is_finite() {
            return v.into_iter().map(|x| x / s).collect();
        }
    }
}

/// Uniformly distributed direction on `S^{d-1}`.
pub fn rnd_sphere<T: Real>(d: usize, rng: &mut RngStream) -> Result<Direction<T>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d, 2));
    }
    Ok(Direction::from_vec_unchecked(unit_normal_vector(d, rng)))
}

/// Direction from the cap of radius `eps` around `p`. The distance to `p` is
/// uniform on `[0, eps]`; the position on the small sphere at that distance
/// is uniform.
pub fn rnd_spherical_cap<T: Real>(p: &Direction<T>, eps: T, rng: &mut RngStream) -> Result<Direction<T>> {
    if !(eps > T::zero()) || eps > T::FRAC_PI_2() + T::lit(1e-12) {
        return Err(Error::InvalidParameter(format!("cap radius {eps} outside (0, pi/2]")));
    }
    let d = p.dim();
    let polar = eps * rng.uniform::<T>();
    let ring = polar.sin();
    let mut x = Vec::with_capacity(d);
    x.push(polar.cos());
    x.extend(unit_normal_vector::<T>(d - 1, rng).into_iter().map(|c| ring * c));
    householder_in_place(&mut x, p);
    Ok(Direction::from_vec_unchecked(x))
}

/// Weights from the symmetric Dirichlet distribution on the `(d-1)`-simplex.
pub fn rnd_dirichlet_sym<T: Real>(d: usize, alpha: f64, rng: &mut RngStream) -> Result<Vec<T>> {
    if d == 0 {
        return Err(Error::InvalidParameter("Dirichlet dimension must be positive".into()));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("Dirichlet parameter {alpha} must be positive")));
    }
    if d == 1 {
        return Ok(vec![T::one()]);
    }
    let gamma = Gamma::new(alpha, 1.0).expect("validated shape");
    loop {
        let g: Vec<f64> = (0..d).map(|_| rng.gamma(&gamma)).collect();
        let s: f64 = g.iter().sum();
        if s > 0.0 && s.is_finite() {
            return Ok(g.into_iter().map(|x| T::lit(x / s)).collect());
        }
    }
}

/// `k` distinct indices from `0..n`, uniform over `k`-subsets, in draw order.
pub fn rnd_subset(k: usize, n: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    let mut sampler = SubsetSampler::new(n);
    sampler.draw(k, rng).map(<[usize]>::to_vec)
}

/// Partial Fisher–Yates sampler that reuses its permutation buffer between
/// draws. Any permutation is a valid starting point, so successive draws are
/// independent uniform `k`-subsets.
#[derive(Debug, Clone)]
pub struct SubsetSampler {
    pool: Vec<usize>,
}

impl SubsetSampler {
    pub fn new(n: usize) -> Self {
        Self { pool: (0..n).collect() }
    }

    pub fn draw(&mut self, k: usize, rng: &mut RngStream) -> Result<&[usize]> {
        let n = self.pool.len();
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("cannot draw {k} of {n} indices")));
        }
        for i in 0..k {
            let j = i + rng.index(n - i);
            self.pool.swap(i, j);
        }
        Ok(&self.pool[..k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::great_circle_distance;
    use crate::scalar::norm;

    #[test]
    fn sphere_draws_are_unit_and_reproducible() {
        let mut a = RngStream::new(7);
        let p: Direction<f64> = rnd_sphere(5, &mut a).unwrap();
        let q: Direction<f64> = rnd_sphere(5, &mut a).unwrap();
        assert!((norm(&p) - 1.0).abs() < 1e-12);
        assert_ne!(p, q);
        let mut b = RngStream::new(7);
        assert_eq!(rnd_sphere::<f64>(5, &mut b).unwrap(), p);
        assert_eq!(rnd_sphere::<f64>(5, &mut b).unwrap(), q);
        assert!(rnd_sphere::<f64>(1, &mut b).is_err());
    }

    #[test]
    fn sphere_coordinates_are_centered() {
        let mut rng = RngStream::new(11);
        let n = 100_000;
        let mut mean = [0.0f64; 3];
        for _ in 0..n {
            let p: Direction<f64> = rnd_sphere(3, &mut rng).unwrap();
            for (m, x) in mean.iter_mut().zip(p.iter()) {
                *m += x / n as f64;
            }
        }
        for m in mean {
            assert!(m.abs() < 0.02, "coordinate mean {m}");
        }
    }

    #[test]
    fn cap_draws_stay_in_cap() {
        let mut rng = RngStream::new(3);
        let e1 = Direction::<f64>::basis(4, 0);
        for eps in [0.05, 0.7, std::f64::consts::FRAC_PI_2] {
            for _ in 0..200 {
                let x = rnd_spherical_cap(&e1, eps, &mut rng).unwrap();
                assert!((norm(&x) - 1.0).abs() < 1e-12);
                assert!(great_circle_distance(&x, &e1).unwrap() <= eps + 1e-12);
            }
        }
        let centre: Direction<f64> = rnd_sphere(4, &mut rng).unwrap();
        let x = rnd_spherical_cap(&centre, 1e-9, &mut rng).unwrap();
        for (a, b) in x.iter().zip(centre.iter()) {
            assert!((a - b).abs() < 1e-8);
        }
        assert!(rnd_spherical_cap(&centre, 0.0, &mut rng).is_err());
        assert!(rnd_spherical_cap(&centre, 2.0, &mut rng).is_err());
    }

    #[test]
    fn cap_works_in_the_plane() {
        let mut rng = RngStream::new(5);
        let p = Direction::normalize(vec![1.0f64, 2.0]).unwrap();
        for _ in 0..100 {
            let x = rnd_spherical_cap(&p, 0.3, &mut rng).unwrap();
            assert!(great_circle_distance(&x, &p).unwrap() <= 0.3 + 1e-12);
        }
    }

    #[test]
    fn dirichlet_on_simplex() {
        let mut rng = RngStream::new(1);
        assert_eq!(rnd_dirichlet_sym::<f64>(1, 1.25, &mut rng).unwrap(), vec![1.0]);
        let n = 100_000;
        let mut mean = [0.0; 3];
        for _ in 0..n {
            let w: Vec<f64> = rnd_dirichlet_sym(3, 1.25, &mut rng).unwrap();
            assert!(w.iter().all(|&x| x >= 0.0));
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for (m, x) in mean.iter_mut().zip(&w) {
                *m += x / n as f64;
            }
        }
        for m in mean {
            assert!((m - 1.0 / 3.0).abs() < 0.01, "component mean {m}");
        }
        assert!(rnd_dirichlet_sym::<f64>(3, 0.0, &mut rng).is_err());
    }

    #[test]
    fn subsets() {
        let mut rng = RngStream::new(9);
        let mut perm = rnd_subset(6, 6, &mut rng).unwrap();
        perm.sort_unstable();
        assert_eq!(perm, (0..6).collect::<Vec<_>>());
        let a = rnd_subset(1, 5, &mut RngStream::new(4)).unwrap();
        let b = rnd_subset(1, 5, &mut RngStream::new(4)).unwrap();
        assert_eq!(a, b);
        assert!(rnd_subset(6, 5, &mut rng).is_err());

        let mut sampler = SubsetSampler::new(5);
        let mut counts = [[0usize; 5]; 5];
        let draws = 100_000;
        for _ in 0..draws {
            let s = sampler.draw(2, &mut rng).unwrap();
            let (i, j) = (s[0].min(s[1]), s[0].max(s[1]));
            assert_ne!(i, j);
            counts[i][j] += 1;
        }
        for i in 0..5 {
            for j in i + 1..5 {
                let f = counts[i][j] as f64 / draws as f64;
                assert!((f - 0.1).abs() < 0.01, "pair ({i},{j}) frequency {f}");
            }
        }
    }

    #[test]
    fn derived_streams_differ() {
        assert_ne!(derive_seed(1, &[0, 0]), derive_seed(1, &[0, 1]));
        assert_ne!(derive_seed(1, &[0, 1]), derive_seed(1, &[1, 0]));
        assert_eq!(derive_seed(42, &[3, 4]), derive_seed(42, &[3, 4]));
    }
}
