//! Projected depth on a longitude/latitude grid of `S^2`.

use crate::depths::{Dataset, DepthNotion, ProjectedDepth};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapePoint<T> {
    pub lon: T,
    pub lat: T,
    pub depth: T,
}

/// Depth of `<p, z>` w.r.t. `<p, X>` at the centres of an `m × 2m` grid,
/// latitude-major: latitudes `-π/2 + (i + 1/2)π/m`, longitudes
/// `-π + (j + 1/2)π/m`.
pub fn landscape<T: Real>(
    z: &[T],
    data: &Dataset<T>,
    notion: DepthNotion,
    resolution: usize,
) -> Result<Vec<LandscapePoint<T>>> {
    if data.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: data.dim() });
    }
    if z.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: z.len() });
    }
    if resolution == 0 {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    let m = T::from_count(resolution);
    let half = T::lit(0.5);
    let mut eval = ProjectedDepth::new(notion, z, data);
    let mut out = Vec::with_capacity(2 * resolution * resolution);
    for i in 0..resolution {
        let lat = -T::FRAC_PI_2() + (T::from_count(i) + half) * T::PI() / m;
        for j in 0..2 * resolution {
            let lon = -T::PI() + (T::from_count(j) + half) * T::PI() / m;
            let (slat, clat) = lat.sin_cos();
            let (slon, clon) = lon.sin_cos();
            let p = [clat * clon, clat * slon, slat];
            out.push(LandscapePoint { lon, lat, depth: eval.eval(&p) });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depths::exact_zonoid;

    fn octahedron() -> Dataset<f64> {
        let mut rows = Vec::new();
        for k in 0..3 {
            for s in [1.0, -1.0] {
                let mut r = vec![0.0; 3];
                r[k] = s;
                rows.push(r);
            }
        }
        Dataset::from_rows(rows).unwrap()
    }

    #[test]
    fn grid_size_and_antipodal_symmetry() {
        let x = Dataset::from_rows(vec![
            vec![0.3, 1.0, -0.2],
            vec![2.0, -0.5, 0.1],
            vec![-1.0, 0.4, 0.9],
            vec![0.2, -1.3, -0.7],
            vec![0.5, 0.5, 0.5],
        ])
        .unwrap();
        let z = [0.1, 0.0, 0.2];
        let pts = landscape(&z, &x, DepthNotion::Projection, 2).unwrap();
        assert_eq!(pts.len(), 8);
        let m = 4;
        let pts = landscape(&z, &x, DepthNotion::Zonoid, m).unwrap();
        // cell (i, j) and (m-1-i, j+m mod 2m) are antipodal
        for i in 0..m {
            for j in 0..2 * m {
                let a: f64 = pts[i * 2 * m + j].depth;
                let b = pts[(m - 1 - i) * 2 * m + (j + m) % (2 * m)].depth;
                assert!((a - b).abs() < 1e-12);
            }
        }
        let exact = exact_zonoid(&z, &x).unwrap();
        assert!(pts.iter().all(|p| p.depth >= exact - 1e-12));
    }

    #[test]
    fn symmetric_data_at_the_centre_is_flat() {
        let pts = landscape(&[0.0; 3], &octahedron(), DepthNotion::Halfspace, 4).unwrap();
        assert!(pts.iter().all(|p| p.depth == pts[0].depth));
        assert!(landscape(&[0.0; 2], &Dataset::from_rows(vec![vec![1.0, 2.0]]).unwrap(), DepthNotion::Zonoid, 3).is_err());
    }
}
