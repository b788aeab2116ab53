//! Optimal adaptive segmentation by dynamic programming.
//!
//! `R[r][q]` is the least total squared error of `[0, q)` using at most
//! `r + 1` regressors, with interval degrees below the regressor bound `N`:
//!
//! ```text
//! R[r][q] = min( R[r-1][q],  min_{d < N, p < q} R[r-1-d][p] + E(p, q, d) )
//! ```
//!
//! where row `-1` is infinite except `R[-1][0] = 0`. Ties go to the smaller
//! budget, then the earliest split `p`, then the lower degree. Rows are
//! filled in order, then the optimum is recovered by walking the stored choices back
//! from `R[k-1][n]`. Time is O(n^2 N k), memory O(n k).

use crate::error::{Error, Result};
use crate::moments::PrefixMoments;
use crate::polyfit::{constant_fit, fit, line_fit, sse_unchecked};
use crate::series::{Segment, Segmentation, TimeSeries};

/// Stand-in for an unreachable cell.
pub const UNREACHABLE: f64 = f64::MAX;

/// How a cell of the cost tables was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    /// `[0, q)` is empty (q = 0).
    Empty,
    /// The budget one row up already achieves this cost.
    Carry,
    /// A final interval `[start, q)` of the given degree.
    Interval { start: usize, degree: usize },
}

/// Filled cost (`R`), degree (`D`) and split-point (`P`) tables.
#[derive(Debug, Clone)]
pub struct CostTables {
    rows: usize,
    budget: usize,
    n: usize,
    cost: Vec<f64>,
    choice: Vec<Choice>,
}

impl CostTables {
    /// Fills the tables for budgets `1..=budget`.
    ///
    /// Rows beyond `n` are not stored: `n` regressors already fit every
    /// point exactly, so larger budgets repeat the last row.
    pub fn compute(m: &PrefixMoments, budget: usize) -> Result<Self> {
        if budget == 0 {
            return Err(Error::infeasible("budget k must be at least 1 regressor"));
        }
        let n = m.len();
        if n == 0 {
            return Err(Error::invalid_argument("cannot segment an empty series"));
        }
        let n_reg = m.max_regressors();
        let rows = budget.min(n);
        let stride = n + 1;
        let kernel = Kernel::new(m);
        let mut cost = vec![UNREACHABLE; rows * stride];
        let mut choice = vec![Choice::Empty; rows * stride];
        // row -1: only the empty prefix is reachable
        let mut origin = vec![UNREACHABLE; stride];
        origin[0] = 0.0;

        for r in 0..rows {
            cost[r * stride] = 0.0;
            for q in 1..=n {
                let (mut best, mut how) = if r > 0 {
                    (cost[(r - 1) * stride + q], Choice::Carry)
                } else {
                    (UNREACHABLE, Choice::Empty)
                };
                let row_for = |d: usize| -> &[f64] {
                    if r == d {
                        &origin[..q]
                    } else {
                        &cost[(r - 1 - d) * stride..(r - 1 - d) * stride + q]
                    }
                };
                let found = if n_reg == 2 && r >= 1 {
                    kernel.best_pair(row_for(0), row_for(1), q)
                } else {
                    let mut found: Option<(usize, usize, f64)> = None;
                    for d in 0..n_reg.min(r + 1) {
                        if let Some((p, cand)) = kernel.best_start(row_for(d), q, d) {
                            // smallest split first, then smallest degree
                            let better = match found {
                                None => true,
                                Some((start, _, v)) => cand < v || (cand == v && p < start),
                            };
                            if better {
                                found = Some((p, d, cand));
                            }
                        }
                    }
                    found
                };
                if let Some((p, d, cand)) = found {
                    if cand < best {
                        best = cand;
                        how = Choice::Interval {
                            start: p,
                            degree: d,
                        };
                    }
                }
                cost[r * stride + q] = best;
                choice[r * stride + q] = how;
            }
        }
        Ok(Self {
            rows,
            budget,
            n,
            cost,
            choice,
        })
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Least error of `[0, q)` with at most `k` regressors (`1 <= k <= budget`).
    pub fn cost(&self, k: usize, q: usize) -> f64 {
        self.cost[self.row(k) * (self.n + 1) + q]
    }

    pub fn choice(&self, k: usize, q: usize) -> Choice {
        self.choice[self.row(k) * (self.n + 1) + q]
    }

    /// `R[k-1][n]` for `k = 1..=budget`.
    pub fn cost_curve(&self) -> Vec<f64> {
        (1..=self.budget).map(|k| self.cost(k, self.n)).collect()
    }

    /// Recovers the optimal segmentation for budget `k`.
    pub fn backtrack(&self, m: &PrefixMoments, k: usize) -> Result<Segmentation> {
        let mut budget = k.min(self.rows);
        let mut end = self.n;
        let mut segments = Vec::new();
        while end > 0 {
            match self.choice[(budget - 1) * (self.n + 1) + end] {
                Choice::Carry => budget -= 1,
                Choice::Interval { start, degree } => {
                    let f = fit(m, start, end, degree)?;
                    segments.push(Segment {
                        start,
                        end,
                        degree,
                        coefficients: f.coefficients,
                        sse: f.sse,
                    });
                    end = start;
                    if end > 0 {
                        budget -= degree + 1;
                    }
                }
                Choice::Empty => unreachable!("empty choice on a non-empty prefix"),
            }
        }
        segments.reverse();
        Segmentation::new(segments, self.n)
    }

    fn row(&self, k: usize) -> usize {
        assert!(
            (1..=self.budget).contains(&k),
            "budget {k} outside 1..={}",
            self.budget
        );
        k.min(self.rows) - 1
    }
}

/// Tight scans of `prev[p] + E(p, q, d)` over all `p < q`.
struct Kernel<'a> {
    m: &'a PrefixMoments,
    /// Interleaved prefix sums `count, x, x^2, y, xy, y^2` per index.
    sums: Vec<[f64; 6]>,
}

impl<'a> Kernel<'a> {
    fn new(m: &'a PrefixMoments) -> Self {
        let table = |j, l| m.table(j, l);
        let sums = match (
            table(0, 0),
            table(1, 0),
            table(2, 0),
            table(0, 1),
            table(1, 1),
            table(0, 2),
        ) {
            (Some(c), Some(x), Some(xx), Some(y), Some(xy), Some(yy)) => (0..=m.len())
                .map(|i| [c[i], x[i], xx[i], y[i], xy[i], yy[i]])
                .collect(),
            // constants only: the line slots are never read
            (Some(c), _, _, Some(y), _, Some(yy)) => (0..=m.len())
                .map(|i| [c[i], 0.0, 0.0, y[i], 0.0, yy[i]])
                .collect(),
            _ => unreachable!("count, y and y^2 sums are always stored"),
        };
        Self { m, sums }
    }

    /// Smallest `prev[p] + E(p, q, d)` over `p < q = prev.len()`; the first
    /// minimal `p` wins. Unreachable entries of `prev` are skipped.
    fn best_start(&self, prev: &[f64], q: usize, d: usize) -> Option<(usize, f64)> {
        let mut best = UNREACHABLE;
        let mut arg = None;
        let mut consider = |p: usize, v: f64| {
            if v < best {
                best = v;
                arg = Some(p);
            }
        };
        let [cq, sxq, sxxq, syq, sxyq, syyq] = self.sums[q];
        let head = q.saturating_sub(d + 1);
        match d {
            0 => {
                for (p, (&before, s)) in prev[..head].iter().zip(&self.sums).enumerate() {
                    if before == UNREACHABLE {
                        continue;
                    }
                    let (_, e) = constant_fit(cq - s[0], syq - s[3], syyq - s[5]);
                    consider(p, before + e.max(0.0));
                }
            }
            1 => {
                for (p, (&before, s)) in prev[..head].iter().zip(&self.sums).enumerate() {
                    if before == UNREACHABLE {
                        continue;
                    }
                    let e = line_fit(
                        cq - s[0],
                        sxq - s[1],
                        sxxq - s[2],
                        syq - s[3],
                        sxyq - s[4],
                        syyq - s[5],
                    )
                    .map_or(f64::INFINITY, |(_, _, e)| e.max(0.0));
                    consider(p, before + e);
                }
            }
            _ => {
                for (p, &before) in prev[..head].iter().enumerate() {
                    if before != UNREACHABLE {
                        consider(p, before + sse_unchecked(self.m, p, q, d));
                    }
                }
            }
        }
        // ranges of at most d + 1 points are interpolated exactly
        for (p, &before) in prev.iter().enumerate().skip(head) {
            if before != UNREACHABLE {
                consider(p, before);
            }
        }
        arg.map(|p| (p, best))
    }

    /// Constants against `prev0` and lines against `prev1` in one pass; the
    /// first minimal `(p, d)` in lexicographic order wins.
    fn best_pair(&self, prev0: &[f64], prev1: &[f64], q: usize) -> Option<(usize, usize, f64)> {
        let mut best = UNREACHABLE;
        let mut arg = None;
        let [cq, sxq, sxxq, syq, sxyq, syyq] = self.sums[q];
        let head = q.saturating_sub(2);
        let rows = prev0[..head].iter().zip(&prev1[..head]).zip(&self.sums);
        for (p, ((&before0, &before1), s)) in rows.enumerate() {
            let (count, sy, syy) = (cq - s[0], syq - s[3], syyq - s[5]);
            // unreachable entries stay at UNREACHABLE and never win
            let (_, e0) = constant_fit(count, sy, syy);
            let c0 = before0 + e0.max(0.0);
            if c0 < best {
                best = c0;
                arg = Some((p, 0));
            }
            let e1 = line_fit(count, sxq - s[1], sxxq - s[2], sy, sxyq - s[4], syy)
                .map_or(f64::INFINITY, |(_, _, e)| e.max(0.0));
            let c1 = before1 + e1;
            if c1 < best {
                best = c1;
                arg = Some((p, 1));
            }
        }
        for p in head..q {
            let e0 = if q - p > 1 {
                let s = self.sums[p];
                constant_fit(cq - s[0], syq - s[3], syyq - s[5]).1.max(0.0)
            } else {
                0.0
            };
            for (d, c) in [(0, prev0[p] + e0), (1, prev1[p])] {
                if c < best {
                    best = c;
                    arg = Some((p, d));
                }
            }
        }
        arg.map(|(p, d)| (p, d, best))
    }
}

/// Segmentation of least total squared error with model complexity at most
/// `k`, interval degrees below `max_regressors`.
pub fn optimal_segmentation(
    series: &TimeSeries,
    k: usize,
    max_regressors: usize,
) -> Result<Segmentation> {
    let m = PrefixMoments::build(series, max_regressors)?;
    CostTables::compute(&m, k)?.backtrack(&m, k)
}

/// Optimal total squared error for every budget `1..=kmax`.
pub fn optimal_cost_curve(
    series: &TimeSeries,
    kmax: usize,
    max_regressors: usize,
) -> Result<Vec<f64>> {
    let m = PrefixMoments::build(series, max_regressors)?;
    Ok(CostTables::compute(&m, kmax)?.cost_curve())
}
