//! Descriptive statistics over present values.

use serde::{Deserialize, Serialize};

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some(values.iter().sum::<f64>() / values.len() as f64)
}

/// Standard deviation with the `n - 1` denominator. Needs two values.
pub fn sample_stddev(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let m = mean(values)?;
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt())
}

/// Quantile of ascending-sorted values, interpolating linearly between the
/// closest ranks (`h = (n - 1) p`).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> Option<f64> {
    let n = sorted.len();
    if n == 0 {
        return None;
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    Some(sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo]))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub r: f64,
    pub n_pairs: usize,
}

/// Pearson's r over rows where both values are present.
///
/// `None` when fewer than two complete pairs exist or either side is
/// constant over those pairs.
pub fn pearson(x: &[Option<f64>], y: &[Option<f64>]) -> Option<Correlation> {
    let (mut sx, mut sy, mut n) = (0.0, 0.0, 0usize);
    let mut first: Option<(f64, f64)> = None;
    let (mut x_varies, mut y_varies) = (false, false);
    for (a, b) in x.iter().zip(y) {
        if let (Some(a), Some(b)) = (a, b) {
            let (a0, b0) = *first.get_or_insert((*a, *b));
            x_varies |= *a != a0;
            y_varies |= *b != b0;
            sx += a;
            sy += b;
            n += 1;
        }
    }
    if n < 2 || !x_varies || !y_varies {
        return None;
    }
    let (mx, my) = (sx / n as f64, sy / n as f64);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        if let (Some(a), Some(b)) = (a, b) {
            let (dx, dy) = (a - mx, b - my);
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    Some(Correlation { r, n_pairs: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn some(v: &[f64]) -> Vec<Option<f64>> {
        v.iter().copied().map(Some).collect()
    }

    #[test]
    fn four_values() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&v), Some(2.5));
        assert_eq!(quantile_sorted(&v, 0.5), Some(2.5));
        assert_eq!(quantile_sorted(&v, 0.25), Some(1.75));
        assert_eq!(quantile_sorted(&v, 0.75), Some(3.25));
        // sqrt(5/3)
        assert!((sample_stddev(&v).unwrap() - 1.2909944487358056).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(mean(&[]), None);
        assert_eq!(sample_stddev(&[3.0]), None);
        assert_eq!(sample_stddev(&[5.0, 5.0, 5.0]), Some(0.0));
        assert_eq!(quantile_sorted(&[7.0], 0.25), Some(7.0));
    }

    #[test]
    fn pearson_examples() {
        let x = some(&[1.0, 2.0, 3.0]);
        assert_eq!(pearson(&x, &some(&[2.0, 4.0, 6.0])).unwrap().r, 1.0);
        // Textbook formula: sxy = 5.5, sxx = 5, syy = 8.75 -> 5.5 / sqrt(43.75)
        let r = pearson(&some(&[1.0, 2.0, 3.0, 4.0]), &some(&[1.0, 3.0, 2.0, 5.0])).unwrap();
        assert!((r.r - 0.8315218406202999).abs() < 1e-9, "{}", r.r);
        assert_eq!(r.n_pairs, 4);
    }

    #[test]
    fn pearson_pairwise_complete_and_degenerate() {
        let x = vec![Some(1.0), None, Some(3.0), Some(4.0)];
        let y = vec![Some(2.0), Some(9.0), None, Some(8.0)];
        let c = pearson(&x, &y).unwrap();
        assert_eq!(c.n_pairs, 2);
        assert_eq!(c.r, 1.0);
        assert_eq!(pearson(&some(&[1.0]), &some(&[2.0])), None);
        assert_eq!(pearson(&some(&[1.0, 1.0, 1.0]), &some(&[1.0, 2.0, 3.0])), None);
        // The mean of repeated 0.1 is not exactly 0.1, so constancy is checked on the values.
        assert_eq!(pearson(&some(&[0.1; 7]), &some(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0])), None);
    }

    fn column() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1000.0f64..1000.0, 3..60)
    }

    proptest! {
        #[test]
        fn symmetry_identity_and_scale(x in column(), seed in any::<u64>(), a in -50.0f64..50.0, b in -100.0f64..100.0) {
            prop_assume!(a.abs() > 1e-3);
            let y: Vec<f64> = x.iter().enumerate()
                .map(|(i, v)| v * 0.3 + ((seed.wrapping_mul(i as u64 + 7) % 1000) as f64))
                .collect();
            let (xs, ys) = (some(&x), some(&y));
            if let Some(c) = pearson(&xs, &ys) {
                let back = pearson(&ys, &xs).unwrap();
                prop_assert!((c.r - back.r).abs() < 1e-12);
                let scaled = some(&x.iter().map(|v| a * v + b).collect::<Vec<_>>());
                let cs = pearson(&scaled, &ys).unwrap();
                prop_assert!((cs.r - a.signum() * c.r).abs() < 1e-9);
            }
            if let Some(c) = pearson(&xs, &xs) {
                prop_assert!((c.r - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn quartiles_are_ordered(mut x in column()) {
            x.sort_by(f64::total_cmp);
            let q: Vec<f64> = [0.0, 0.25, 0.5, 0.75, 1.0].iter().map(|p| quantile_sorted(&x, *p).unwrap()).collect();
            prop_assert!(q.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(q[0], x[0]);
            prop_assert_eq!(q[4], *x.last().unwrap());
        }
    }
}
