//! Univariate depth kernels evaluated on a projected sample.

use std::cell::OnceCell;

use crate::scalar::Real;

/// Projected sample `<p, x_i>` with lazily computed summary statistics.
///
/// The median of an even-sized sample is the mean of the two central order
/// statistics.
#[derive(Debug, Clone, Default)]
pub struct UnivariateSample<T> {
    values: Vec<T>,
    sorted: OnceCell<Vec<T>>,
    moments: OnceCell<(T, T)>,
    median: OnceCell<T>,
}

impl<T: Real> UnivariateSample<T> {
    pub fn new(values: Vec<T>) -> Self {
        assert!(!values.is_empty(), "univariate sample must be non-empty");
        Self { values, ..Self::empty() }
    }

    fn empty() -> Self {
        Self {
            values: Vec::new(),
            sorted: OnceCell::new(),
            moments: OnceCell::new(),
            median: OnceCell::new(),
        }
    }

    /// Replaces the values in place, keeping the allocation.
    pub(crate) fn refill(&mut self, fill: impl FnOnce(&mut Vec<T>)) {
        self.values.clear();
        fill(&mut self.values);
        assert!(!self.values.is_empty(), "univariate sample must be non-empty");
        self.sorted.take();
        self.moments.take();
        self.median.take();
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sorted(&self) -> &[T] {
        self.sorted.get_or_init(|| {
            let mut s = self.values.clone();
            s.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite projections"));
            s
        })
    }

    /// Mean and variance (divisor `n`). Both are accumulated relative to the
    /// first value so that a constant sample has exactly zero variance.
    pub fn mean_variance(&self) -> (T, T) {
        *self.moments.get_or_init(|| {
            let shift = self.values[0];
            let n = T::from_count(self.values.len());
            let offset = self.values.iter().map(|&y| y - shift).sum::<T>() / n;
            let var = self
                .values
                .iter()
                .map(|&y| {
                    let c = y - shift - offset;
                    c * c
                })
                .sum::<T>()
                / n;
            (shift + offset, var)
        })
    }

    pub fn mean(&self) -> T {
        self.mean_variance().0
    }

    pub fn median(&self) -> T {
        *self.median.get_or_init(|| match self.sorted.get() {
            Some(s) => sorted_median(s),
            None => median_in_place(&mut self.values.clone()),
        })
    }

    /// Median absolute deviation from the median.
    pub fn mad(&self) -> T {
        let med = self.median();
        let mut dev: Vec<T> = self.values.iter().map(|&y| (y - med).abs()).collect();
        median_in_place(&mut dev)
    }

    /// Median of the strictly positive deviations `y_i - med` (upper side)
    /// or `med - y_i` (lower side). `None` when there are none.
    pub fn mad_one_sided(&self, upper: bool) -> Option<T> {
        let med = self.median();
        let mut dev: Vec<T> = self
            .values
            .iter()
            .map(|&y| if upper { y - med } else { med - y })
            .filter(|&v| v > T::zero())
            .collect();
        (!dev.is_empty()).then(|| median_in_place(&mut dev))
    }
}

fn sorted_median<T: Real>(s: &[T]) -> T {
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / T::lit(2.0)
    }
}

/// Median by selection; reorders `v`.
pub(crate) fn median_in_place<T: Real>(v: &mut [T]) -> T {
    let n = v.len();
    let cmp = |a: &T, b: &T| a.partial_cmp(b).expect("finite values");
    let (left, upper, _) = v.select_nth_unstable_by(n / 2, cmp);
    let upper = *upper;
    if n % 2 == 1 {
        upper
    } else {
        let lower = left.iter().copied().fold(T::neg_infinity(), T::max);
        (lower + upper) / T::lit(2.0)
    }
}

/// `1 / (1 + outlyingness)` with the degenerate-spread convention: depth 1 at
/// the centre and 0 elsewhere when the spread vanishes.
fn outlyingness_depth<T: Real>(gap: T, spread: T) -> T {
    if gap == T::zero() {
        T::one()
    } else if spread > T::zero() {
        T::one() / (T::one() + gap / spread)
    } else {
        T::zero()
    }
}

/// Univariate Mahalanobis depth.
pub fn md1<T: Real>(zeta: T, sample: &UnivariateSample<T>) -> T {
    let (mean, var) = sample.mean_variance();
    let dev = zeta - mean;
    if dev == T::zero() {
        T::one()
    } else if var > T::zero() {
        T::one() / (T::one() + dev * dev / var)
    } else {
        T::zero()
    }
}

/// Univariate halfspace depth `min(#{y >= ζ}, #{y <= ζ}) / n`.
pub fn hd1<T: Real>(zeta: T, sample: &UnivariateSample<T>) -> T {
    let (mut above, mut below) = (0usize, 0usize);
    for &y in sample.values() {
        above += usize::from(y >= zeta);
        below += usize::from(y <= zeta);
    }
    T::from_count(above.min(below)) / T::from_count(sample.len())
}

/// Univariate zonoid depth, solved exactly on the piecewise-linear boundary
/// of the trimmed regions.
pub fn zd1<T: Real>(zeta: T, sample: &UnivariateSample<T>) -> T {
    let s = sample.sorted();
    let n = s.len();
    let mean = sample.mean();
    if zeta == mean {
        return T::one();
    }
    if zeta > mean {
        upper_trim_depth(zeta, n, |i| s[n - 1 - i])
    } else {
        upper_trim_depth(-zeta, n, |i| -s[i])
    }
}

/// Depth of `zeta >= mean` from the descending order statistics `kth(i)`
/// (`i = 0` is the maximum). The upper end of the trimmed region at mass
/// `m = nα` is `(P_k + (m - k) y_[k+1]) / m`, `k = ⌊m⌋`, where `P_k` sums the
/// `k` largest values; it decreases in `m`, so the largest `m` reaching
/// `zeta` is found on a single linear segment.
fn upper_trim_depth<T: Real>(zeta: T, n: usize, kth: impl Fn(usize) -> T) -> T {
    let top = kth(0);
    if zeta > top {
        return T::zero();
    }
    let mut k = 1usize;
    let mut prefix = top;
    while k < n {
        let next = prefix + kth(k);
        if next < zeta * T::from_count(k + 1) {
            break;
        }
        prefix = next;
        k += 1;
    }
    let nf = T::from_count(n);
    if k == n {
        return T::one();
    }
    let v = kth(k);
    let kf = T::from_count(k);
    let m = ((prefix - kf * v) / (zeta - v)).max(kf).min(kf + T::one());
    (m / nf).min(T::one())
}

/// Univariate projection depth based on the median and MAD.
pub fn pd1<T: Real>(zeta: T, sample: &UnivariateSample<T>) -> T {
    let med = sample.median();
    let gap = (zeta - med).abs();
    if gap == T::zero() {
        return T::one();
    }
    outlyingness_depth(gap, sample.mad())
}

/// Univariate asymmetric projection depth. Both orientations of the line are
/// evaluated, so the kernel is invariant under `y -> -y`.
pub fn apd1<T: Real>(zeta: T, sample: &UnivariateSample<T>) -> T {
    let med = sample.median();
    let side = |upper: bool| {
        let gap = if upper { zeta - med } else { med - zeta };
        if gap <= T::zero() {
            return T::one();
        }
        match sample.mad_one_sided(upper) {
            Some(spread) => outlyingness_depth(gap, spread),
            None => T::zero(),
        }
    };
    side(true).min(side(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn s(v: &[f64]) -> UnivariateSample<f64> {
        UnivariateSample::new(v.to_vec())
    }

    #[test]
    fn mahalanobis_examples() {
        let y = s(&[-1.0, 0.0, 1.0]);
        assert_eq!(md1(0.0, &y), 1.0);
        assert_abs_diff_eq!(md1(1.0, &y), 0.4, epsilon = 1e-15);
        let c = s(&[0.1, 0.1, 0.1]);
        assert_eq!(md1(0.1, &c), 1.0);
        assert_eq!(md1(0.2, &c), 0.0);
    }

    #[test]
    fn halfspace_examples() {
        let y = s(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_abs_diff_eq!(hd1(3.0, &y), 0.6);
        assert_eq!(hd1(0.0, &y), 0.0);
        assert_abs_diff_eq!(hd1(2.0, &y), 0.4);
    }

    #[test]
    fn zonoid_examples() {
        let y = s(&[0.0, 1.0]);
        assert_eq!(zd1(0.5, &y), 1.0);
        assert_abs_diff_eq!(zd1(1.0, &y), 0.5);
        assert_abs_diff_eq!(zd1(0.0, &y), 0.5);
        assert_eq!(zd1(1.5, &y), 0.0);
        assert_eq!(zd1(-0.5, &y), 0.0);
        // two tied maxima share the weight: alpha = 2/3
        assert_abs_diff_eq!(zd1(1.0, &s(&[0.0, 1.0, 1.0])), 2.0 / 3.0, epsilon = 1e-15);
        // (0, 1, 2, 3), zeta = 2.5: m solves 3 + (m - 1) * 2 = 2.5 m -> m = 2
        assert_abs_diff_eq!(zd1(2.5, &s(&[0.0, 1.0, 2.0, 3.0])), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn projection_examples() {
        let y = s(&[1.0, 2.0, 3.0]);
        assert_eq!(pd1(2.0, &y), 1.0);
        assert_abs_diff_eq!(pd1(4.0, &y), 1.0 / 3.0, epsilon = 1e-15);
        let c = s(&[5.0, 5.0, 5.0]);
        assert_eq!(pd1(5.0, &c), 1.0);
        assert_eq!(pd1(6.0, &c), 0.0);
    }

    #[test]
    fn asymmetric_projection_examples() {
        let y = s(&[1.0, 2.0, 3.0]);
        assert_eq!(apd1(2.0, &y), 1.0);
        assert_abs_diff_eq!(apd1(3.0, &y), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(apd1(0.0, &y), 1.0 / 3.0, epsilon = 1e-15);
        // no positive deviations above the median
        let flat_top = s(&[0.0, 1.0, 1.0]);
        assert_eq!(apd1(1.0, &flat_top), 1.0);
        assert_eq!(apd1(2.0, &flat_top), 0.0);
    }

    #[test]
    fn medians() {
        let even = s(&[4.0, 1.0, 3.0, 2.0]);
        assert_eq!(even.median(), 2.5);
        let _ = even.sorted();
        assert_eq!(even.median(), 2.5);
        assert_eq!(s(&[3.0, 1.0, 2.0]).median(), 2.0);
        assert_eq!(s(&[1.0, 2.0, 3.0, 4.0]).mad(), 1.0);
        assert_eq!(s(&[1.0, 2.0, 3.0, 10.0]).mad_one_sided(true), Some(4.0));
        assert_eq!(s(&[1.0, 2.0, 3.0, 10.0]).mad_one_sided(false), Some(1.0));
    }

    #[test]
    fn refill_resets_caches() {
        let mut y = s(&[1.0, 2.0, 3.0]);
        assert_eq!(y.median(), 2.0);
        y.refill(|v| v.extend([10.0, 20.0, 30.0, 40.0]));
        assert_eq!(y.median(), 25.0);
        assert_eq!(y.mean(), 25.0);
        assert_eq!(y.sorted(), &[10.0, 20.0, 30.0, 40.0]);
    }
}
