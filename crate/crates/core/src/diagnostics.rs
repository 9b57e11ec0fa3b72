//! Statistical diagnostics used to validate samplers.

/// Hill estimate of the density tail exponent `lambda` of `|samples|`.
///
/// Uses the top `fraction` of order statistics. The classical Hill estimator
/// returns the survival-function index `a` (`P(X > t) ~ t^-a`); the density
/// then decays like `t^-(a + 1)`, which is what this returns.
pub fn hill_tail_exponent(samples: &[f64], fraction: f64) -> f64 {
    let mut mags: Vec<f64> = samples
        .iter()
        .map(|x| x.abs())
        .filter(|x| x.is_finite())
        .collect();
    mags.sort_unstable_by(|a, b| b.total_cmp(a));
    let k = ((mags.len() as f64 * fraction) as usize).clamp(1, mags.len().saturating_sub(1));
    let threshold = mags[k];
    let mean_log = mags[..k].iter().map(|x| (x / threshold).ln()).sum::<f64>() / k as f64;
    1.0 / mean_log + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_pareto_exponent() {
        // Inverse-CDF Pareto with survival index 1.5: density exponent 2.5.
        let n = 200_000;
        let samples: Vec<f64> = (1..=n)
            .map(|i| {
                let u = i as f64 / (n as f64 + 1.0);
                u.powf(-1.0 / 1.5)
            })
            .collect();
        let est = hill_tail_exponent(&samples, 0.01);
        assert!((est - 2.5).abs() < 0.05, "{est}");
    }
}
