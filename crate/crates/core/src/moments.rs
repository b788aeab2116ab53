//! Prefix sums of mixed moments `x^j y^l`.
//!
//! After a single O(n) pass, any range sum `sum_{i=p}^{q-1} x_i^j y_i^l` is a
//! difference of two table entries. Only the pairs needed by a least-squares
//! fit with at most `max_regressors` coefficients are stored:
//! `(j, 0)` for `j < 2N - 1`, `(j, 1)` for `j < N`, and `(0, 2)`.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Largest supported number of regressors per interval (quadratic).
pub const MAX_REGRESSORS: usize = 3;

#[derive(Debug, Clone)]
pub struct PrefixMoments {
    max_regressors: usize,
    n: usize,
    /// `(2N - 1) + N + 1` tables of `n + 1` entries, laid out back to back.
    tables: Vec<f64>,
}

impl PrefixMoments {
    /// Builds the prefix tables for polynomials with up to `max_regressors`
    /// coefficients (`1` = constants, `2` = lines, `3` = quadratics).
    pub fn build(series: &TimeSeries, max_regressors: usize) -> Result<Self> {
        if max_regressors == 0 {
            return Err(Error::invalid_argument(
                "max degree bound must be at least 1 (constant intervals)",
            ));
        }
        if max_regressors > MAX_REGRESSORS {
            return Err(Error::invalid_argument(format!(
                "max degree bound {max_regressors} exceeds {MAX_REGRESSORS}; \
                 prefix-sum fits are numerically unreliable beyond quadratics"
            )));
        }
        let n = series.len();
        let count = table_count(max_regressors);
        let stride = n + 1;
        let mut tables = vec![0.0; count * stride];
        let x_pows = 2 * max_regressors - 1;
        let mut pow = [0.0f64; 2 * MAX_REGRESSORS - 1];
        let mut acc = vec![0.0f64; count];

        for (i, (x, y)) in series.points().enumerate() {
            pow[0] = 1.0;
            for j in 1..x_pows {
                pow[j] = pow[j - 1] * x;
            }
            for j in 0..x_pows {
                acc[j] += pow[j];
            }
            for j in 0..max_regressors {
                acc[x_pows + j] += pow[j] * y;
            }
            acc[count - 1] += y * y;
            for (t, &a) in acc.iter().enumerate() {
                tables[t * stride + i + 1] = a;
            }
        }
        Ok(Self {
            max_regressors,
            n,
            tables,
        })
    }

    /// Number of regressors per interval the tables support.
    pub fn max_regressors(&self) -> usize {
        self.max_regressors
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of prefix tables held.
    pub fn table_count(&self) -> usize {
        table_count(self.max_regressors)
    }

    /// Prefix table for `x^j y^l`, of length `n + 1`.
    pub fn table(&self, j: usize, l: usize) -> Option<&[f64]> {
        let t = self.table_index(j, l)?;
        let stride = self.n + 1;
        Some(&self.tables[t * stride..(t + 1) * stride])
    }

    /// `sum_{i=p}^{q-1} x_i^j y_i^l`.
    pub fn range_sum(&self, j: usize, l: usize, p: usize, q: usize) -> Result<f64> {
        let t = self.table_index(j, l).ok_or_else(|| {
            Error::invalid_argument(format!(
                "moment x^{j} y^{l} is not stored for {} regressors",
                self.max_regressors
            ))
        })?;
        if p > q || q > self.n {
            return Err(Error::invalid_argument(format!(
                "range [{p}, {q}) is not within [0, {}]",
                self.n
            )));
        }
        Ok(self.sum_unchecked(t, p, q))
    }

    /// `sum x^j` over `[p, q)`; callers guarantee `j < 2N - 1` and `p <= q <= n`.
    #[inline]
    pub(crate) fn sum_x(&self, j: usize, p: usize, q: usize) -> f64 {
        self.sum_unchecked(j, p, q)
    }

    /// `sum x^j y` over `[p, q)`; callers guarantee `j < N`.
    #[inline]
    pub(crate) fn sum_xy(&self, j: usize, p: usize, q: usize) -> f64 {
        self.sum_unchecked(2 * self.max_regressors - 1 + j, p, q)
    }

    /// `sum y^2` over `[p, q)`.
    #[inline]
    pub(crate) fn sum_yy(&self, p: usize, q: usize) -> f64 {
        self.sum_unchecked(table_count(self.max_regressors) - 1, p, q)
    }

    #[inline]
    fn sum_unchecked(&self, t: usize, p: usize, q: usize) -> f64 {
        let base = t * (self.n + 1);
        self.tables[base + q] - self.tables[base + p]
    }

    fn table_index(&self, j: usize, l: usize) -> Option<usize> {
        let n_reg = self.max_regressors;
        match l {
            0 if j < 2 * n_reg - 1 => Some(j),
            1 if j < n_reg => Some(2 * n_reg - 1 + j),
            2 if j == 0 => Some(table_count(n_reg) - 1),
            _ => None,
        }
    }
}

fn table_count(max_regressors: usize) -> usize {
    3 * max_regressors
}
