//! Kendall tau-b in `O(n log n)`: sort by the first variable, then count
//! the exchanges a merge sort needs to order the second.

use crate::centrality::NodeScores;
use crate::{Error, Result};

pub fn kendall_tau(a: &NodeScores, b: &NodeScores) -> Result<f64> {
    kendall_tau_slices(&a.values, &b.values)
}

/// Number of tied pairs among consecutive equal runs of a sorted sequence.
fn tied_pairs<T: PartialEq>(sorted: &[T]) -> u64 {
    let mut total = 0u64;
    let mut run = 1u64;
    for i in 1..sorted.len() {
        if sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total + run * (run - 1) / 2
}

/// Sorts `xs` and returns how many inversions were removed.
fn merge_sort_swaps(xs: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = merge_sort_swaps(&mut xs[..mid], &mut buf[..mid]);
    swaps += merge_sort_swaps(&mut xs[mid..], &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if xs[j] < xs[i] {
            buf[k] = xs[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = xs[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&buf[..n]);
    swaps
}

pub fn kendall_tau_slices(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::UndefinedCorrelation(format!(
            "length mismatch {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::UndefinedCorrelation("need at least 2 values".into()));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::UndefinedCorrelation("NaN in input".into()));
    }
    let mut pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let firsts: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ties_a = tied_pairs(&firsts);
    let joint = tied_pairs(&pairs);
    let mut seconds: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buf = vec![0.0; n];
    let swaps = merge_sort_swaps(&mut seconds, &mut buf);
    let ties_b = tied_pairs(&seconds);
    let total = (n as u64) * (n as u64 - 1) / 2;
    if ties_a == total || ties_b == total {
        return Err(Error::UndefinedCorrelation(
            "a score vector is constant".into(),
        ));
    }
    let numerator =
        total as f64 - ties_a as f64 - ties_b as f64 + joint as f64 - 2.0 * swaps as f64;
    let denominator = ((total - ties_a) as f64 * (total - ties_b) as f64).sqrt();
    Ok((numerator / denominator).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Direct O(n^2) tau-b.
    fn tau_b_pairs(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len();
        let (mut num, mut not_tied_a, mut not_tied_b) = (0i64, 0i64, 0i64);
        for i in 0..n {
            for j in i + 1..n {
                let da = (a[i] - a[j]).signum() as i64 * i64::from(a[i] != a[j]);
                let db = (b[i] - b[j]).signum() as i64 * i64::from(b[i] != b[j]);
                num += da * db;
                not_tied_a += da.abs();
                not_tied_b += db.abs();
            }
        }
        num as f64 / ((not_tied_a as f64) * (not_tied_b as f64)).sqrt()
    }

    #[test]
    fn identical_and_reversed() {
        assert_eq!(
            kendall_tau_slices(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(),
            1.0
        );
        assert_eq!(
            kendall_tau_slices(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(),
            -1.0
        );
    }

    #[test]
    fn tie_corrected_value() {
        // hand count: C = 4, D = 0, ties_a = 1, ties_b = 1 over 6 pairs
        let a = [1.0, 1.0, 2.0, 3.0];
        let b = [1.0, 2.0, 3.0, 3.0];
        assert_relative_eq!(
            kendall_tau_slices(&a, &b).unwrap(),
            4.0 / 5.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(tau_b_pairs(&a, &b), 0.8, epsilon = 1e-15);
    }

    #[test]
    fn undefined_cases() {
        assert!(kendall_tau_slices(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(kendall_tau_slices(&[1.0], &[1.0]).is_err());
        assert!(kendall_tau_slices(&[1.0, 2.0], &[1.0]).is_err());
        assert!(kendall_tau_slices(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
    }

    fn tied_values(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0u8..6, len).prop_map(|v| v.into_iter().map(f64::from).collect())
    }

    proptest! {
        #[test]
        fn matches_pair_counting(
            (a, b) in (2usize..500).prop_flat_map(|n| (tied_values(n), prop::collection::vec(-1e3f64..1e3, n)))
        ) {
            prop_assume!(a.iter().any(|x| *x != a[0]));
            let fast = kendall_tau_slices(&a, &b).unwrap();
            let slow = tau_b_pairs(&a, &b);
            prop_assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
        }

        #[test]
        fn symmetric_and_monotone_invariant(
            (a, b) in (3usize..80).prop_flat_map(|n| (tied_values(n), tied_values(n)))
        ) {
            prop_assume!(a.iter().any(|x| *x != a[0]) && b.iter().any(|x| *x != b[0]));
            let ab = kendall_tau_slices(&a, &b).unwrap();
            let ba = kendall_tau_slices(&b, &a).unwrap();
            prop_assert!((ab - ba).abs() < 1e-12);
            let warped: Vec<f64> = a.iter().map(|x| (x * 0.5).exp() - 7.0).collect();
            let wb = kendall_tau_slices(&warped, &b).unwrap();
            prop_assert!((ab - wb).abs() < 1e-12);
            prop_assert!((-1.0..=1.0).contains(&ab));
        }
    }
}
