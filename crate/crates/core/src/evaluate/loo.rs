use serde::{Deserialize, Serialize};

use super::{Method, Segmenter};
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Leave-one-out prediction errors over the interior points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LooReport {
    pub method: Method,
    pub k: usize,
    /// `|p(x_i) - y_i|` for `i = 1 .. n-2`.
    pub per_point_errors: Vec<f64>,
    /// Root mean square of `per_point_errors`.
    pub rms: f64,
}

/// Removes each interior point in turn, re-segments the remaining `n - 1`
/// points at budget `k`, and predicts the removed value with the polynomial
/// of the refit interval whose x-range holds it.
///
/// The removed `x_i` falls strictly between two remaining samples; it is
/// assigned to the interval of its left neighbour, i.e. the last interval
/// starting before `x_i`.
pub fn leave_one_out(
    series: &TimeSeries,
    segmenter: impl Into<Segmenter>,
    k: usize,
) -> Result<LooReport> {
    let segmenter = segmenter.into();
    let n = series.len();
    if n < 3 {
        return Err(Error::invalid_argument(format!(
            "leave-one-out needs at least 3 points, got {n}"
        )));
    }
    let predict = |i: usize| -> Result<f64> {
        let train = series.without(i);
        let seg = segmenter.segment(&train, k)?;
        let j = seg
            .segment_index_of(i - 1)
            .expect("refit segmentation tiles the training set");
        let (x, y) = series.point(i);
        Ok((seg.segments()[j].eval(x) - y).abs())
    };

    #[cfg(feature = "parallel")]
    let errors = {
        use rayon::prelude::*;
        (1..n - 1)
            .into_par_iter()
            .map(predict)
            .collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let errors = (1..n - 1).map(predict).collect::<Result<Vec<_>>>()?;

    let rms = (errors.iter().map(|e| e * e).sum::<f64>() / errors.len() as f64).sqrt();
    Ok(LooReport {
        method: segmenter.method,
        k,
        per_point_errors: errors,
        rms,
    })
}
