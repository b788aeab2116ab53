use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Segmentation, TimeSeries};

/// Bracket on `||a - b||` from the two piecewise models and their fit errors:
/// `||s(a) - s(b)|| -+ (||s(a) - a|| + ||s(b) - b||)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceBracket {
    /// Clamped at 0.
    pub lower: f64,
    pub upper: f64,
    /// `||a - b||`.
    pub actual: f64,
    /// `||s(a) - s(b)||`.
    pub model_distance: f64,
    pub fit_error_a: f64,
    pub fit_error_b: f64,
}

/// Relative slack for rounding in the three norms; an exact-fit model makes
/// the bracket collapse onto `actual`.
pub const BRACKET_ROUNDING: f64 = 1e-12;

impl DistanceBracket {
    pub fn holds(&self) -> bool {
        let slack = BRACKET_ROUNDING * self.upper.max(1.0);
        self.lower - slack <= self.actual && self.actual <= self.upper + slack
    }
}

pub fn distance_bound_check(
    a: &TimeSeries,
    b: &TimeSeries,
    seg_a: &Segmentation,
    seg_b: &Segmentation,
) -> Result<DistanceBracket> {
    if a.xs() != b.xs() {
        return Err(Error::invalid_argument(
            "series must share the same x grid to compare them",
        ));
    }
    let model_a = seg_a.model_values(a)?;
    let model_b = seg_b.model_values(b)?;
    let actual = l2(a.ys(), b.ys());
    let model_distance = l2(&model_a, &model_b);
    let fit_error_a = l2(&model_a, a.ys());
    let fit_error_b = l2(&model_b, b.ys());
    let slack = fit_error_a + fit_error_b;
    Ok(DistanceBracket {
        lower: (model_distance - slack).max(0.0),
        upper: model_distance + slack,
        actual,
        model_distance,
        fit_error_a,
        fit_error_b,
    })
}

fn l2(u: &[f64], v: &[f64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}
