use crate::config::Standardization;

/// Affine map `(x - center) / scale` fitted to one distribution.
///
/// A distribution with zero spread yields a standardizer that maps everything to 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Standardizer {
    center: f64,
    scale: f64,
}

impl Standardizer {
    pub fn fit(values: &[f64], method: Standardization) -> Self {
        const DEGENERATE: Standardizer = Standardizer { center: 0.0, scale: 0.0 };
        if values.is_empty() {
            return DEGENERATE;
        }
        let (min, max) = min_max(values);
        if min == max {
            return DEGENERATE;
        }
        let (center, scale) = match method {
            Standardization::ZScore => {
                let n = values.len() as f64;
                let mean = values.iter().sum::<f64>() / n;
                let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
                (mean, var.sqrt())
            }
            Standardization::MinMax => (min, max - min),
            Standardization::MedianIqr => {
                let mut sorted = values.to_vec();
                sorted.sort_by(f64::total_cmp);
                let q1 = quantile(&sorted, 0.25);
                let q3 = quantile(&sorted, 0.75);
                (quantile(&sorted, 0.5), q3 - q1)
            }
        };
        if scale > 0.0 {
            Standardizer { center, scale }
        } else {
            DEGENERATE
        }
    }

    pub fn apply(&self, x: f64) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            (x - self.center) / self.scale
        }
    }
}

pub fn standardize(values: &[f64], method: Standardization) -> Vec<f64> {
    let s = Standardizer::fit(values, method);
    values.iter().map(|&x| s.apply(x)).collect()
}

pub(crate) fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

/// Quantile of sorted data by linear interpolation at position `q * (n - 1)`.
pub(crate) fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn z_score_of_one_two_three() {
        let z = standardize(&[1.0, 2.0, 3.0], Standardization::ZScore);
        // population SD is sqrt(2/3)
        let expected = 1.0 / (2.0f64 / 3.0).sqrt();
        assert!((z[0] + expected).abs() < 1e-12);
        assert_eq!(z[1], 0.0);
        assert!((z[2] - expected).abs() < 1e-12);
        assert!((z[2] - 1.2247).abs() < 1e-4);
    }

    #[test]
    fn min_max_of_one_two_three() {
        assert_eq!(standardize(&[1.0, 2.0, 3.0], Standardization::MinMax), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn median_iqr_interpolates() {
        // sorted [1,2,3,4,10]: q1 = 2, median = 3, q3 = 4
        let v = standardize(&[10.0, 1.0, 2.0, 3.0, 4.0], Standardization::MedianIqr);
        assert_eq!(v, vec![3.5, -1.0, -0.5, 0.0, 0.5]);
        // even count: positions 0.75, 1.5, 2.25 of [1,2,3,4]
        let v = standardize(&[1.0, 2.0, 3.0, 4.0], Standardization::MedianIqr);
        assert_eq!(v, vec![-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0]);
    }

    #[test]
    fn degenerate_spread_is_all_zero() {
        for method in [Standardization::ZScore, Standardization::MinMax, Standardization::MedianIqr] {
            assert_eq!(standardize(&[0.1, 0.1, 0.1], method), vec![0.0; 3]);
        }
        // IQR of zero with a nonzero range
        assert_eq!(
            standardize(&[0.0, 0.0, 0.0, 0.0, 5.0], Standardization::MedianIqr),
            vec![0.0; 5]
        );
        assert!(standardize(&[], Standardization::ZScore).is_empty());
    }

    proptest! {
        #[test]
        fn z_score_has_zero_mean_unit_sd(values in proptest::collection::vec(-1e3f64..1e3, 2..200)) {
            let (lo, hi) = min_max(&values);
            prop_assume!(hi - lo > 1.0);
            let z = standardize(&values, Standardization::ZScore);
            let n = z.len() as f64;
            let mean = z.iter().sum::<f64>() / n;
            let sd = (z.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt();
            prop_assert!(mean.abs() < 1e-12, "mean {mean}");
            prop_assert!((sd - 1.0).abs() < 1e-12, "sd {sd}");
        }

        #[test]
        fn standardizers_are_scale_invariant(values in proptest::collection::vec(0f64..100.0, 2..50), c in 1u32..20) {
            for method in [Standardization::ZScore, Standardization::MinMax, Standardization::MedianIqr] {
                let a = standardize(&values, method);
                let scaled: Vec<f64> = values.iter().map(|x| x * c as f64).collect();
                let b = standardize(&scaled, method);
                for (x, y) in a.iter().zip(&b) {
                    prop_assert!((x - y).abs() < 1e-9, "{method:?}: {x} vs {y}");
                }
            }
        }
    }
}
