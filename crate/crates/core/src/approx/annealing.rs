//! Simulated annealing with spherical-cap proposals.

use super::{AnnealParams, Objective};
use crate::error::Result;
use crate::random::{rnd_spherical_cap, RngStream};
use crate::scalar::Real;

pub(super) fn simulated_annealing<T: Real>(
    obj: &mut Objective<'_, T>,
    params: &AnnealParams,
    rng: &mut RngStream,
) -> Result<()> {
    let levels = params.levels();
    let per_level = (obj.budget() / levels).max(1);
    let eps = T::FRAC_PI_2() / T::lit(params.cap_divisor);
    let mut current = obj.start(params.start, rng)?;
    let mut value = obj.eval(&current)?;
    let mut temp = params.t0;
    for _ in 0..levels {
        for _ in 0..per_level {
            let proposal = rnd_spherical_cap(&current, eps, rng)?;
            let v = obj.eval(&proposal)?;
            let accept = v <= value || {
                let delta = (v - value).to_f64().unwrap_or(f64::INFINITY);
                rng.uniform::<f64>() < (-delta / temp).exp()
            };
            if accept {
                current = proposal;
                value = v;
            }
        }
        temp *= params.cooling;
    }
    Ok(())
}
