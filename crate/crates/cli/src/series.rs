//! Long-format convergence series with a fitted log-log slope of the
//! sup-norm error.

use bifree_core::stats::loglog_slope;

use crate::output::{Cell, Report};

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoint {
    pub x: usize,
    pub word: String,
    pub value: f64,
    pub reference: f64,
}

impl SeriesPoint {
    pub fn abs_err(&self) -> f64 {
        (self.value - self.reference).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFit {
    /// `(x, max abs_err)` in order of first appearance.
    pub sup_errors: Vec<(usize, f64)>,
    pub slope: Option<f64>,
}

pub fn fit_series(points: &[SeriesPoint]) -> SeriesFit {
    let mut sup_errors: Vec<(usize, f64)> = Vec::new();
    for p in points {
        match sup_errors.iter_mut().find(|(x, _)| *x == p.x) {
            Some(entry) => entry.1 = entry.1.max(p.abs_err()),
            None => sup_errors.push((p.x, p.abs_err())),
        }
    }
    let pairs: Vec<(f64, f64)> = sup_errors.iter().map(|&(x, e)| (x as f64, e)).collect();
    SeriesFit {
        slope: loglog_slope(&pairs),
        sup_errors,
    }
}

/// Appends the rows `x, word, value, reference, abs_err, slope` and records
/// the fit in the summary. A missing slope leaves the column empty and sets
/// `slope_omitted`.
pub fn emit_convergence_series(report: &mut Report, points: &[SeriesPoint]) -> SeriesFit {
    let fit = fit_series(points);
    let slope_cell = || match fit.slope {
        Some(s) => Cell::Float(s),
        None => Cell::Text(String::new()),
    };
    for p in points {
        report.push(vec![
            p.x.into(),
            p.word.clone().into(),
            p.value.into(),
            p.reference.into(),
            p.abs_err().into(),
            slope_cell(),
        ]);
    }
    report.note("sup_errors", &fit.sup_errors);
    report.note("slope", fit.slope);
    report.note("slope_omitted", fit.slope.is_none());
    fit
}

pub fn series_columns(x_label: &'static str) -> Vec<&'static str> {
    vec![x_label, "word", "value", "reference", "abs_err", "slope"]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(x: usize, err: f64) -> SeriesPoint {
        SeriesPoint {
            x,
            word: "a:l".into(),
            value: 1.0 + err,
            reference: 1.0,
        }
    }

    #[test]
    fn perfect_inverse_data_has_slope_minus_one() {
        let pts: Vec<_> = [8, 16, 32, 64].iter().map(|&n| point(n, 1.0 / n as f64)).collect();
        let slope = fit_series(&pts).slope.unwrap();
        assert!((slope + 1.0).abs() < 1e-6, "{slope}");
    }

    #[test]
    fn constant_error_has_zero_slope() {
        let pts: Vec<_> = [8, 16, 32].iter().map(|&n| point(n, 0.25)).collect();
        assert!(fit_series(&pts).slope.unwrap().abs() < 1e-12);
    }

    #[test]
    fn sup_norm_per_x() {
        let mut pts = vec![point(8, 0.1), point(8, 0.3), point(16, 0.05)];
        pts[1].word = "b:r".into();
        let fit = fit_series(&pts);
        assert_eq!(fit.sup_errors.len(), 2);
        assert!((fit.sup_errors[0].1 - 0.3).abs() < 1e-15);
    }

    #[test]
    fn single_point_omits_slope() {
        let mut report = Report::new("t", 0, serde_json::Value::Null, series_columns("N"));
        let fit = emit_convergence_series(&mut report, &[point(8, 0.1)]);
        assert_eq!(fit.slope, None);
        assert_eq!(report.summary["slope_omitted"], true);
        assert_eq!(report.rows[0][5], Cell::Text(String::new()));
    }
}
