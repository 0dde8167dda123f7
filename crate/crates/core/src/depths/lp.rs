//! Bounded-variable dense simplex for the zonoid depth LP.
//!
//! With `μ_i = λ_i / t` the problem `min t` s.t. `Σλ_i = 1`, `Σλ_i x_i = z`,
//! `0 <= λ_i <= t` becomes
//!
//! ```text
//! max Σ μ_i   s.t.   Σ μ_i (x_i - z) = 0,   0 <= μ_i <= 1,
//! ```
//!
//! and the depth is `Σμ* / n = 1 / (n t*)`. The right-hand side is zero, so
//! `μ = 0` with one fixed artificial per row (bounds `[0, 0]`) is a feasible
//! starting basis; the artificials leave through degenerate pivots. Entering
//! and leaving variables follow Bland's rule.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Basic,
    Lower,
    Upper,
}

/// Result of the zonoid LP.
#[derive(Debug, Clone)]
pub struct ZonoidLpSolution<T> {
    /// Optimal `μ`, one entry per sample point.
    pub weights: Vec<T>,
    /// `Σ μ_i`.
    pub mass: T,
    pub pivots: usize,
}

/// Solves `max Σμ` subject to `Σ μ_i a_i = 0`, `0 <= μ <= 1`, where `a_i` is
/// row `i` of the row-major `n × d` matrix `cols`.
pub fn solve_zonoid_lp<T: Real>(cols: &[T], n: usize, d: usize) -> Result<ZonoidLpSolution<T>> {
    assert_eq!(cols.len(), n * d);
    let tol = T::lp_tolerance();
    let pivot_tol = tol * T::lit(1e-3);
    let width = n + d;
    let scale = cols.iter().fold(T::zero(), |m, &v| m.max(v.abs())).max(T::one());

    // tableau rows: B^{-1} A; initial basis is the artificial identity block
    let mut tab = vec![T::zero(); d * width];
    for i in 0..n {
        for r in 0..d {
            tab[r * width + i] = cols[i * d + r];
        }
    }
    for r in 0..d {
        tab[r * width + n + r] = T::one();
    }
    // reduced costs of the minimisation of -Σμ
    let mut cost = vec![T::zero(); width];
    cost[..n].iter_mut().for_each(|c| *c = -T::one());
    let mut beta = vec![T::zero(); d];
    let mut basis: Vec<usize> = (n..n + d).collect();
    let mut status = vec![Status::Lower; width];
    for s in &mut status[n..] {
        *s = Status::Basic;
    }
    let upper_bound = |j: usize| if j < n { T::one() } else { T::zero() };

    let max_pivots = 50 * (width + 10) * (d + 1);
    let mut pivots = 0usize;
    loop {
        let entering = (0..n).find(|&j| match status[j] {
            Status::Lower => cost[j] < -pivot_tol,
            Status::Upper => cost[j] > pivot_tol,
            Status::Basic => false,
        });
        let Some(j) = entering else { break };
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::LpNumericalFailure(f64::NAN));
        }
        // s = +1 moves μ_j up from 0, s = -1 moves it down from 1
        let sign = if status[j] == Status::Lower { T::one() } else { -T::one() };
        let mut step = upper_bound(j);
        let mut leave: Option<(usize, bool)> = None;
        for r in 0..d {
            let g = sign * tab[r * width + j];
            let b = basis[r];
            let limit = if g > pivot_tol {
                (beta[r] / g).max(T::zero())
            } else if g < -pivot_tol {
                ((upper_bound(b) - beta[r]) / -g).max(T::zero())
            } else {
                continue;
            };
            let better = match leave {
                _ if limit < step => true,
                Some((row, _)) => limit == step && b < basis[row],
                None => false,
            };
            if better {
                step = limit;
                leave = Some((r, g > T::zero()));
            }
        }
        for r in 0..d {
            beta[r] = beta[r] - sign * step * tab[r * width + j];
        }
        match leave {
            None => {
                status[j] = if status[j] == Status::Lower { Status::Upper } else { Status::Lower };
            }
            Some((r, to_lower)) => {
                let old = basis[r];
                status[old] = if to_lower { Status::Lower } else { Status::Upper };
                let start = if sign > T::zero() { T::zero() } else { T::one() };
                beta[r] = start + sign * step;
                basis[r] = j;
                status[j] = Status::Basic;
                pivot(&mut tab, &mut cost, d, width, r, j);
            }
        }
    }

    let mut weights = vec![T::zero(); n];
    for j in 0..n {
        if status[j] == Status::Upper {
            weights[j] = T::one();
        }
    }
    for r in 0..d {
        if basis[r] < n {
            weights[basis[r]] = beta[r].max(T::zero()).min(T::one());
        }
    }
    let mut worst = T::zero();
    for r in 0..d {
        let res: T = (0..n).map(|i| weights[i] * cols[i * d + r]).sum();
        worst = worst.max(res.abs());
    }
    let mass: T = weights.iter().copied().sum();
    if worst > tol * scale * mass.max(T::one()) {
        return Err(Error::LpNumericalFailure(worst.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(ZonoidLpSolution { weights, mass, pivots })
}

fn pivot<T: Real>(tab: &mut [T], cost: &mut [T], d: usize, width: usize, r: usize, j: usize) {
    let p = tab[r * width + j];
    for v in &mut tab[r * width..(r + 1) * width] {
        *v = *v / p;
    }
    let (before, rest) = tab.split_at_mut(r * width);
    let (prow, after) = rest.split_at_mut(width);
    for row in before.chunks_exact_mut(width).chain(after.chunks_exact_mut(width)) {
        let f = row[j];
        if f != T::zero() {
            for (v, &q) in row.iter_mut().zip(prow.iter()) {
                *v = *v - f * q;
            }
        }
    }
    let f = cost[j];
    if f != T::zero() {
        for (v, &q) in cost.iter_mut().zip(prow.iter()) {
            *v = *v - f * q;
        }
    }
    debug_assert!(d > r);
}
