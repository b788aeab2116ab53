//! Greedy top-down segmenters.
//!
//! [`topdown_fixed`] starts from one interval and keeps splitting the
//! interval with the largest error at its best split point until the budget
//! is spent. [`topdown_adaptive`] runs it with the richest degree, then
//! revisits each interval once and replaces it by two lower-degree intervals
//! of the same total cost when that lowers the error. Both are O(k n) after
//! the O(n) moment pass.

use crate::error::{Error, Result};
use crate::moments::{PrefixMoments, MAX_REGRESSORS};
use crate::polyfit::{fit, sse_unchecked};
use crate::series::{Segment, Segmentation, TimeSeries};

/// Interval errors at or below this are treated as exact fits.
pub const EXACT_FIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
    pub degree: usize,
    pub sse: f64,
}

impl Interval {
    fn new(m: &PrefixMoments, start: usize, end: usize, degree: usize) -> Self {
        Self {
            start,
            end,
            degree,
            sse: sse_unchecked(m, start, end, degree),
        }
    }
}

/// Candidate intervals tiling `[0, n)`, kept in index order.
#[derive(Debug, Clone, Default)]
pub struct IntervalQueue {
    entries: Vec<Interval>,
}

impl IntervalQueue {
    pub fn entries(&self) -> &[Interval] {
        &self.entries
    }

    /// Position of the interval with the largest error; earliest wins ties.
    pub fn worst(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, e) in self.entries.iter().enumerate() {
            if best.is_none_or(|b| e.sse > self.entries[b].sse) {
                best = Some(i);
            }
        }
        best
    }

    fn replace(&mut self, at: usize, left: Interval, right: Interval) {
        self.entries[at] = left;
        self.entries.insert(at + 1, right);
    }

    fn into_segmentation(self, m: &PrefixMoments) -> Result<Segmentation> {
        let segments = self
            .entries
            .into_iter()
            .map(|iv| {
                let f = fit(m, iv.start, iv.end, iv.degree)?;
                Ok(Segment {
                    start: iv.start,
                    end: iv.end,
                    degree: iv.degree,
                    coefficients: f.coefficients,
                    sse: f.sse,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Segmentation::new(segments, m.len())
    }
}

/// Best split `l` of `[start, end)` for `E(start, l, left) + E(l, end, right)`;
/// the smallest `l` wins ties.
fn best_split(
    m: &PrefixMoments,
    start: usize,
    end: usize,
    left: usize,
    right: usize,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for l in start + 1..end {
        let cost = sse_unchecked(m, start, l, left) + sse_unchecked(m, l, end, right);
        if best.is_none_or(|(_, b)| cost < b) {
            best = Some((l, cost));
        }
    }
    best
}

fn check_degree(degree: usize, k: usize) -> Result<()> {
    if degree >= MAX_REGRESSORS {
        return Err(Error::invalid_argument(format!(
            "degree {degree} is not supported (at most {})",
            MAX_REGRESSORS - 1
        )));
    }
    if k < degree + 1 {
        return Err(Error::infeasible(format!(
            "budget k = {k} is below the {} regressors of one degree-{degree} interval",
            degree + 1
        )));
    }
    Ok(())
}

/// Phase one shared by both heuristics.
fn split_greedily(m: &PrefixMoments, degree: usize, k: usize) -> IntervalQueue {
    let n = m.len();
    let mut queue = IntervalQueue::default();
    if n == 0 {
        return queue;
    }
    if n == 1 {
        queue.entries.push(Interval::new(m, 0, 1, 0));
        return queue;
    }
    queue.entries.push(Interval::new(m, 0, n, degree));
    let step = degree + 1;
    let mut spent = step;
    while spent + step <= k {
        let Some(at) = queue.worst() else { break };
        let worst = queue.entries[at];
        if worst.sse <= EXACT_FIT_TOLERANCE || worst.end - worst.start < 2 {
            break;
        }
        let Some((l, _)) = best_split(m, worst.start, worst.end, degree, degree) else {
            break;
        };
        queue.replace(
            at,
            Interval::new(m, worst.start, l, degree),
            Interval::new(m, l, worst.end, degree),
        );
        spent += step;
    }
    queue
}

/// Top-down segmentation with every interval of the same `degree`
/// (0 = "top-down constant", 1 = "top-down linear").
pub fn topdown_fixed(series: &TimeSeries, degree: usize, k: usize) -> Result<Segmentation> {
    check_degree(degree, k)?;
    let m = PrefixMoments::build(series, degree + 1)?;
    split_greedily(&m, degree, k).into_segmentation(&m)
}

/// Adaptive top-down segmentation with interval degrees below `max_regressors`.
pub fn topdown_adaptive(
    series: &TimeSeries,
    max_regressors: usize,
    k: usize,
) -> Result<Segmentation> {
    if max_regressors == 0 {
        return Err(Error::invalid_argument(
            "max degree bound must be at least 1 (constant intervals)",
        ));
    }
    let top = max_regressors - 1;
    check_degree(top, k)?;
    let m = PrefixMoments::build(series, max_regressors)?;
    let phase_one = split_greedily(&m, top, k);

    let mut refined = IntervalQueue::default();
    for iv in phase_one.entries {
        match refine(&m, iv) {
            Some((left, right)) => {
                refined.entries.push(left);
                refined.entries.push(right);
            }
            None => refined.entries.push(iv),
        }
    }
    refined.into_segmentation(&m)
}

/// Cheapest same-cost pair replacing `iv`, if it strictly lowers the error.
fn refine(m: &PrefixMoments, iv: Interval) -> Option<(Interval, Interval)> {
    if iv.degree == 0 || iv.sse <= EXACT_FIT_TOLERANCE {
        return None;
    }
    let mut best: Option<(usize, usize, f64)> = None;
    for left in 0..iv.degree {
        let right = iv.degree - left - 1;
        if let Some((l, cost)) = best_split(m, iv.start, iv.end, left, right) {
            if best.is_none_or(|(_, _, b)| cost < b) {
                best = Some((l, left, cost));
            }
        }
    }
    let (l, left, cost) = best?;
    (cost < iv.sse).then(|| {
        (
            Interval::new(m, iv.start, l, left),
            Interval::new(m, l, iv.end, iv.degree - left - 1),
        )
    })
}
