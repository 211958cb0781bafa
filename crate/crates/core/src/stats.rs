//! Small estimators shared by the simulation and convergence reports.

/// Least-squares slope of `ln y` against `ln x`. `None` with fewer than two
/// usable points (both coordinates positive and finite).
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Standard error of the sample mean (zero for fewer than two samples).
pub fn standard_error(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

/// Leave-one-out sums `total - sample[i]` divided by `n - 1`, per column.
/// `samples[i]` is the vector of observations from trial `i`.
pub fn jackknife_means(samples: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = samples.len();
    if n < 2 {
        return Vec::new();
    }
    let width = samples[0].len();
    let mut total = vec![0.0; width];
    for s in samples {
        for (t, x) in total.iter_mut().zip(s) {
            *t += x;
        }
    }
    samples
        .iter()
        .map(|s| s.iter().zip(&total).map(|(x, t)| (t - x) / (n - 1) as f64).collect())
        .collect()
}

/// Jackknife standard error from leave-one-out replicates of a statistic.
pub fn jackknife_standard_error(replicates: &[f64]) -> f64 {
    let n = replicates.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(replicates);
    let ss: f64 = replicates.iter().map(|r| (r - m).powi(2)).sum();
    ((n - 1) as f64 / n as f64 * ss).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_laws() {
        let inv: Vec<_> = [8.0, 16.0, 32.0, 64.0].iter().map(|&n| (n, 3.0 / n)).collect();
        assert!((loglog_slope(&inv).unwrap() + 1.0).abs() < 1e-12);
        let flat: Vec<_> = [8.0, 16.0].iter().map(|&n| (n, 0.2)).collect();
        assert!(loglog_slope(&flat).unwrap().abs() < 1e-12);
        assert_eq!(loglog_slope(&[(2.0, 1.0)]), None);
        assert_eq!(loglog_slope(&[(2.0, 1.0), (4.0, 0.0)]), None);
    }

    #[test]
    fn jackknife_of_mean_matches_classical_se() {
        let xs = [0.3, -1.2, 2.5, 0.0, 0.7, 1.1];
        let samples: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        let reps: Vec<f64> = jackknife_means(&samples).iter().map(|r| r[0]).collect();
        assert!((jackknife_standard_error(&reps) - standard_error(&xs)).abs() < 1e-12);
    }
}
