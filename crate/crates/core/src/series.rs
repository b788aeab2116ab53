//! Time series, segments and segmentations.
//!
//! Index ranges are half-open `[start, end)` everywhere in the crate. A
//! segmentation's *model complexity* is the total number of polynomial
//! coefficients it stores: a constant interval costs 1, a linear one 2.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted `(x, y)` samples with strictly increasing, finite `x` and finite `y`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeSeries {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl TimeSeries {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::invalid_series(format!(
                "{} x values but {} y values",
                xs.len(),
                ys.len()
            )));
        }
        for (i, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::invalid_series(format!(
                    "point {i} is not finite: ({x}, {y})"
                )));
            }
            if i > 0 && x <= xs[i - 1] {
                return Err(Error::invalid_series(format!(
                    "x values must be strictly increasing: x[{}] = {} but x[{i}] = {x}",
                    i - 1,
                    xs[i - 1]
                )));
            }
        }
        Ok(Self { xs, ys })
    }

    /// Series on the unit grid `x_i = i`.
    pub fn from_values(ys: Vec<f64>) -> Result<Self> {
        let xs = (0..ys.len()).map(|i| i as f64).collect();
        Self::new(xs, ys)
    }

    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let (xs, ys) = points.into_iter().unzip();
        Self::new(xs, ys)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn point(&self, i: usize) -> (f64, f64) {
        (self.xs[i], self.ys[i])
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    /// The series with point `i` removed.
    pub fn without(&self, i: usize) -> TimeSeries {
        let mut xs = self.xs.clone();
        let mut ys = self.ys.clone();
        xs.remove(i);
        ys.remove(i);
        TimeSeries { xs, ys }
    }

    /// `len` consecutive points starting at `start`, keeping their x values.
    pub fn window(&self, start: usize, len: usize) -> Result<TimeSeries> {
        let end = start
            .checked_add(len)
            .filter(|&end| end <= self.len())
            .ok_or_else(|| {
                Error::invalid_argument(format!(
                    "window {start}:{len} exceeds series of length {}",
                    self.len()
                ))
            })?;
        Ok(TimeSeries {
            xs: self.xs[start..end].to_vec(),
            ys: self.ys[start..end].to_vec(),
        })
    }
}

/// One interval of a segmentation together with its least-squares polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub degree: usize,
    /// `a_0 .. a_degree` of `sum a_j x^j`.
    pub coefficients: Vec<f64>,
    /// Squared l2 residual of the fit.
    pub sse: f64,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Regressors spent on this interval.
    pub fn cost(&self) -> usize {
        self.degree + 1
    }

    pub fn contains(&self, index: usize) -> bool {
        (self.start..self.end).contains(&index)
    }

    /// Evaluates the fitted polynomial at `x` (Horner).
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &a| acc * x + a)
    }
}

/// Ordered segments tiling `[0, n)`, with cached totals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    segments: Vec<Segment>,
    total_complexity: usize,
    total_sse: f64,
}

impl Segmentation {
    /// Validates that `segments` tile `[0, n)` and computes the totals.
    pub fn new(segments: Vec<Segment>, n: usize) -> Result<Self> {
        let mut expected_start = 0;
        for (j, seg) in segments.iter().enumerate() {
            if seg.start != expected_start || seg.end <= seg.start {
                return Err(Error::invalid_argument(format!(
                    "segment {j} spans [{}, {}) but must start at {expected_start} and be non-empty",
                    seg.start, seg.end
                )));
            }
            if seg.coefficients.len() != seg.degree + 1 {
                return Err(Error::invalid_argument(format!(
                    "segment {j} has degree {} but {} coefficients",
                    seg.degree,
                    seg.coefficients.len()
                )));
            }
            if seg.sse.is_nan() || seg.sse < 0.0 {
                return Err(Error::invalid_argument(format!(
                    "segment {j} has negative fit error {}",
                    seg.sse
                )));
            }
            expected_start = seg.end;
        }
        if expected_start != n {
            return Err(Error::invalid_argument(format!(
                "segments cover [0, {expected_start}) but the series has {n} points"
            )));
        }
        let total_complexity = segments.iter().map(Segment::cost).sum();
        let total_sse = segments.iter().map(|s| s.sse).sum();
        Ok(Self {
            segments,
            total_complexity,
            total_sse,
        })
    }

    pub fn empty() -> Self {
        Self {
            segments: Vec::new(),
            total_complexity: 0,
            total_sse: 0.0,
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of points covered.
    pub fn len(&self) -> usize {
        self.segments.last().map_or(0, |s| s.end)
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn total_sse(&self) -> f64 {
        self.total_sse
    }

    /// Total regressor count, `sum (degree + 1)`.
    pub fn model_complexity(&self) -> usize {
        self.total_complexity
    }

    /// `sqrt(sum of per-segment squared errors)`, the reported fit error.
    pub fn l2_error(&self) -> f64 {
        self.total_sse.sqrt()
    }

    /// Segment boundaries `z_0 = 0 < z_1 < ... < z_k = n`.
    pub fn boundaries(&self) -> Vec<usize> {
        std::iter::once(0)
            .chain(self.segments.iter().map(|s| s.end))
            .take(self.segments.len() + 1)
            .collect()
    }

    /// Index of the segment covering point `index`.
    pub fn segment_index_of(&self, index: usize) -> Option<usize> {
        if index >= self.len() {
            return None;
        }
        Some(self.segments.partition_point(|s| s.end <= index))
    }

    /// Model value at every point of `series`.
    pub fn model_values(&self, series: &TimeSeries) -> Result<Vec<f64>> {
        self.check_series(series)?;
        let mut out = Vec::with_capacity(series.len());
        for seg in &self.segments {
            out.extend(series.xs()[seg.start..seg.end].iter().map(|&x| seg.eval(x)));
        }
        Ok(out)
    }

    /// Sum of squared residuals recomputed point by point from the stored polynomials.
    pub fn residual_sse(&self, series: &TimeSeries) -> Result<f64> {
        let model = self.model_values(series)?;
        Ok(model
            .iter()
            .zip(series.ys())
            .map(|(m, y)| (m - y) * (m - y))
            .sum())
    }

    /// Writes `x,y,model,segment_id` rows, one per point, with a header.
    pub fn write_plot_csv<W: Write>(&self, series: &TimeSeries, mut out: W) -> io::Result<()> {
        self.check_series(series)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
        writeln!(out, "x,y,model,segment_id")?;
        for (id, seg) in self.segments.iter().enumerate() {
            for i in seg.start..seg.end {
                let (x, y) = series.point(i);
                writeln!(out, "{x},{y},{},{id}", seg.eval(x))?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "segments": self.segments,
            "total_complexity": self.total_complexity,
            "total_sse": self.total_sse,
            "l2_error": self.l2_error(),
        })
    }

    fn check_series(&self, series: &TimeSeries) -> Result<()> {
        if series.len() != self.len() {
            return Err(Error::invalid_argument(format!(
                "segmentation covers {} points but the series has {}",
                self.len(),
                series.len()
            )));
        }
        Ok(())
    }
}

/// Free-function form of [`Segmentation::l2_error`].
pub fn l2_error(seg: &Segmentation) -> f64 {
    seg.l2_error()
}

/// Free-function form of [`Segmentation::model_complexity`].
pub fn model_complexity(seg: &Segmentation) -> usize {
    seg.model_complexity()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(start: usize, end: usize, coefficients: Vec<f64>, sse: f64) -> Segment {
        Segment {
            start,
            end,
            degree: coefficients.len() - 1,
            coefficients,
            sse,
        }
    }

    #[test]
    fn rejects_unsorted_or_non_finite() {
        assert!(TimeSeries::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(TimeSeries::new(vec![1.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(TimeSeries::new(vec![0.0, 1.0], vec![f64::NAN, 2.0]).is_err());
        assert!(TimeSeries::new(vec![0.0, f64::INFINITY], vec![1.0, 2.0]).is_err());
        assert!(TimeSeries::new(vec![0.0], vec![]).is_err());
        assert!(TimeSeries::new(vec![], vec![]).unwrap().is_empty());
    }

    #[test]
    fn exact_fit_has_zero_error() {
        // constant on [0,2), y = x - 2 on [2,5)
        let s = Segmentation::new(
            vec![seg(0, 2, vec![0.0], 0.0), seg(2, 5, vec![-2.0, 1.0], 0.0)],
            5,
        )
        .unwrap();
        assert_eq!(s.l2_error(), 0.0);
        assert_eq!(s.model_complexity(), 3);
        let series = TimeSeries::from_values(vec![0.0, 0.0, 0.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.residual_sse(&series).unwrap(), 0.0);
    }

    #[test]
    fn l2_error_of_single_constant() {
        let s = Segmentation::new(vec![seg(0, 3, vec![1.0 / 3.0], 2.0 / 3.0)], 3).unwrap();
        assert!((l2_error(&s) - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((l2_error(&s) - 0.8165).abs() < 1e-4);

        let flat = Segmentation::new(vec![seg(0, 3, vec![5.0], 0.0)], 3).unwrap();
        assert_eq!(l2_error(&flat), 0.0);
    }

    #[test]
    fn complexity_counts_regressors() {
        let one_linear = Segmentation::new(vec![seg(0, 4, vec![0.0, 1.0], 0.0)], 4).unwrap();
        assert_eq!(model_complexity(&one_linear), 2);
        assert_eq!(model_complexity(&Segmentation::empty()), 0);
        assert_eq!(Segmentation::new(vec![], 0).unwrap(), Segmentation::empty());

        let mixed = Segmentation::new(
            vec![
                seg(0, 2, vec![0.0], 0.0),
                seg(2, 4, vec![0.0, 1.0], 0.0),
                seg(4, 5, vec![0.0], 0.0),
                seg(5, 8, vec![0.0, 1.0], 0.0),
                seg(8, 9, vec![0.0], 0.0),
            ],
            9,
        )
        .unwrap();
        assert_eq!(model_complexity(&mixed), 7);
    }

    #[test]
    fn rejects_gaps_and_overlaps() {
        let gap = vec![seg(0, 2, vec![0.0], 0.0), seg(3, 5, vec![0.0], 0.0)];
        assert!(Segmentation::new(gap, 5).is_err());
        let overlap = vec![seg(0, 3, vec![0.0], 0.0), seg(2, 5, vec![0.0], 0.0)];
        assert!(Segmentation::new(overlap, 5).is_err());
        let short = vec![seg(0, 3, vec![0.0], 0.0)];
        assert!(Segmentation::new(short, 5).is_err());
        let bad_coeffs = vec![Segment {
            start: 0,
            end: 1,
            degree: 1,
            coefficients: vec![0.0],
            sse: 0.0,
        }];
        assert!(Segmentation::new(bad_coeffs, 1).is_err());
    }

    #[test]
    fn locates_segments_and_boundaries() {
        let s = Segmentation::new(
            vec![seg(0, 2, vec![0.0], 0.0), seg(2, 5, vec![-2.0, 1.0], 0.0)],
            5,
        )
        .unwrap();
        assert_eq!(s.boundaries(), vec![0, 2, 5]);
        assert_eq!(s.segment_index_of(0), Some(0));
        assert_eq!(s.segment_index_of(1), Some(0));
        assert_eq!(s.segment_index_of(2), Some(1));
        assert_eq!(s.segment_index_of(4), Some(1));
        assert_eq!(s.segment_index_of(5), None);
        assert_eq!(Segmentation::empty().boundaries(), vec![0]);
    }

    #[test]
    fn plot_csv_has_one_row_per_point() {
        let series = TimeSeries::from_values(vec![0.0, 0.0, 0.0, 1.0, 2.0]).unwrap();
        let s = Segmentation::new(
            vec![seg(0, 2, vec![0.0], 0.0), seg(2, 5, vec![-2.0, 1.0], 0.0)],
            5,
        )
        .unwrap();
        let mut buf = Vec::new();
        s.write_plot_csv(&series, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "x,y,model,segment_id");
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[4], "3,1,1,1");
    }

    #[test]
    fn json_carries_totals() {
        let s = Segmentation::new(vec![seg(0, 3, vec![1.0 / 3.0], 2.0 / 3.0)], 3).unwrap();
        let v = s.to_json();
        assert_eq!(v["total_complexity"], 1);
        assert_eq!(v["segments"][0]["end"], 3);
        let back: Segmentation = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
