//! Comparison statistics over replications × algorithms value matrices.
//!
//! Missing entries (`None`) are left out of the ranking of their row; an
//! algorithm missing in every row gets no statistic.

use crate::error::{Error, Result};

/// Midranks (1-based, ties share the mean rank) of the present entries.
pub fn midranks(row: &[Option<f64>]) -> Vec<Option<f64>> {
    let mut present: Vec<(usize, f64)> = row.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).collect();
    present.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut ranks = vec![None; row.len()];
    let mut start = 0;
    while start < present.len() {
        let mut end = start + 1;
        while end < present.len() && present[end].1 == present[start].1 {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &(i, _) in &present[start..end] {
            ranks[i] = Some(rank);
        }
        start = end;
    }
    ranks
}

fn column_means(rows: impl Iterator<Item = Vec<Option<f64>>>, m: usize) -> Vec<Option<f64>> {
    let mut sum = vec![0.0; m];
    let mut count = vec![0usize; m];
    for row in rows {
        for (j, v) in row.into_iter().enumerate() {
            if let Some(v) = v {
                sum[j] += v;
                count[j] += 1;
            }
        }
    }
    sum.into_iter().zip(count).map(|(s, c)| (c > 0).then(|| s / c as f64)).collect()
}

fn width(values: &[Vec<Option<f64>>]) -> usize {
    values.first().map_or(0, Vec::len)
}

/// Mean midrank per algorithm (rank 1 is the lowest depth).
pub fn ave_rank(values: &[Vec<Option<f64>>]) -> Vec<Option<f64>> {
    column_means(values.iter().map(|row| midranks(row)), width(values))
}

/// Percentage of rows in which the algorithm attains the row minimum; every
/// tied minimizer is credited.
pub fn perc_best(values: &[Vec<Option<f64>>]) -> Vec<Option<f64>> {
    let rows = values.iter().map(|row| {
        let min = row.iter().flatten().copied().fold(f64::INFINITY, f64::min);
        row.iter().map(|v| v.map(|v| if v == min { 100.0 } else { 0.0 })).collect()
    });
    column_means(rows, width(values))
}

/// Mean absolute error and mean relative error of upper bounds.
pub fn error_stats(approx: &[f64], exact: &[f64]) -> Result<(f64, f64)> {
    if approx.len() != exact.len() {
        return Err(Error::DimensionMismatch { expected: exact.len(), got: approx.len() });
    }
    if approx.is_empty() {
        return Err(Error::InvalidData("no values for error statistics".into()));
    }
    if exact.iter().any(|&e| e <= 1e-15) {
        return Err(Error::ExactNonPositive);
    }
    let n = approx.len() as f64;
    let mae = approx.iter().zip(exact).map(|(a, e)| a - e).sum::<f64>() / n;
    let mre = approx.iter().zip(exact).map(|(a, e)| (a - e) / e).sum::<f64>() / n;
    Ok((mae, mre))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rows(v: &[&[f64]]) -> Vec<Vec<Option<f64>>> {
        v.iter().map(|r| r.iter().map(|&x| Some(x)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ave_rank(&rows(&[&[0.1, 0.2, 0.3]])), vec![Some(1.0), Some(2.0), Some(3.0)]);
        assert_eq!(ave_rank(&rows(&[&[0.1, 0.1, 0.3]])), vec![Some(1.5), Some(1.5), Some(3.0)]);
        let equal = rows(&[&[0.4; 4], &[0.2; 4]]);
        assert_eq!(ave_rank(&equal), vec![Some(2.5); 4]);
    }

    #[test]
    fn missing_entries_are_skipped() {
        let v = vec![vec![Some(0.3), None, Some(0.1)], vec![Some(0.2), None, Some(0.5)]];
        assert_eq!(ave_rank(&v), vec![Some(1.5), None, Some(1.5)]);
        assert_eq!(perc_best(&v), vec![Some(50.0), None, Some(50.0)]);
    }

    #[test]
    fn best_examples() {
        let v = rows(&[&[0.1, 0.2, 0.3], &[0.0, 0.5, 0.4]]);
        assert_eq!(perc_best(&v), vec![Some(100.0), Some(0.0), Some(0.0)]);
        let tie = rows(&[&[0.1, 0.1, 0.3], &[0.2, 0.2, 0.3]]);
        assert_eq!(perc_best(&tie), vec![Some(100.0), Some(100.0), Some(0.0)]);
    }

    #[test]
    fn error_examples() {
        assert_eq!(error_stats(&[0.2, 0.3], &[0.2, 0.3]).unwrap(), (0.0, 0.0));
        let (mae, mre) = error_stats(&[0.22, 0.33], &[0.2, 0.3]).unwrap();
        assert!((mre - 0.1).abs() < 1e-12);
        assert!((mae - 0.025).abs() < 1e-12);
        assert_eq!(error_stats(&[0.1], &[0.0]), Err(Error::ExactNonPositive));
    }

    proptest! {
        #[test]
        fn ranks_sum_to_triangular_number(row in prop::collection::vec(prop::option::of(0u8..5), 1..9)) {
            let row: Vec<Option<f64>> = row.into_iter().map(|v| v.map(f64::from)).collect();
            let m = row.iter().flatten().count() as f64;
            let ranks = midranks(&row);
            let total: f64 = ranks.iter().flatten().sum();
            prop_assert!((total - m * (m + 1.0) / 2.0).abs() < 1e-9);
            prop_assert!(ranks.iter().flatten().all(|&r| r >= 1.0 && r <= m.max(1.0)));
            let best: Vec<Option<f64>> = perc_best(&[row.clone()]);
            if m > 0.0 {
                prop_assert!(best.iter().flatten().sum::<f64>() >= 100.0);
            }
        }
    }
}
