//! Constant-time least-squares polynomial fits over index ranges.
//!
//! The normal equations `A a = V` with `A[l][j] = sum x^(j+l)` and
//! `V[l] = sum x^l y` are assembled from [`PrefixMoments`] range sums, so a
//! fit over any `[p, q)` costs O(1) regardless of the range length. The
//! squared error is expanded the same way:
//!
//! ```text
//! sum_j sum_l a_j a_l S(j+l, 0) - 2 sum_j a_j S(j, 1) + S(0, 2)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{PrefixMoments, MAX_REGRESSORS};

/// Best-fit polynomial over a range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub degree: usize,
    /// `a_0 .. a_degree`; coefficients above the effective degree are 0.
    pub coefficients: Vec<f64>,
    pub sse: f64,
}

/// Fits a degree-`degree` polynomial over `[p, q)`.
///
/// Ranges with at most `degree` points are fitted at degree `q - p - 1`
/// (interpolation) and the higher coefficients are left at zero.
pub fn fit(m: &PrefixMoments, p: usize, q: usize, degree: usize) -> Result<FitResult> {
    check(m, p, q, degree)?;
    if p == q {
        return Err(Error::invalid_argument(format!(
            "cannot fit empty range [{p}, {q})"
        )));
    }
    let raw = solve(m, p, q, degree).ok_or(Error::Singular {
        start: p,
        end: q,
        degree,
    })?;
    Ok(FitResult {
        degree,
        coefficients: raw.coefficients[..=degree].to_vec(),
        sse: raw.sse,
    })
}

/// Squared fit error `E(p, q, d)`; zero on the empty range.
pub fn fit_error(m: &PrefixMoments, p: usize, q: usize, degree: usize) -> Result<f64> {
    check(m, p, q, degree)?;
    if p == q {
        return Ok(0.0);
    }
    solve(m, p, q, degree)
        .map(|raw| raw.sse)
        .ok_or(Error::Singular {
            start: p,
            end: q,
            degree,
        })
}

/// Unvalidated `E(p, q, d)` for the solvers' inner loops. A singular system
/// (unreachable for strictly increasing x) reports an infinite error.
#[inline]
pub(crate) fn sse_unchecked(m: &PrefixMoments, p: usize, q: usize, degree: usize) -> f64 {
    if q - p <= degree + 1 {
        return 0.0;
    }
    solve(m, p, q, degree).map_or(f64::INFINITY, |raw| raw.sse)
}

fn check(m: &PrefixMoments, p: usize, q: usize, degree: usize) -> Result<()> {
    if degree >= m.max_regressors() {
        return Err(Error::invalid_argument(format!(
            "degree {degree} needs {} regressors but the moments support {}",
            degree + 1,
            m.max_regressors()
        )));
    }
    if p > q || q > m.len() {
        return Err(Error::invalid_argument(format!(
            "range [{p}, {q}) is not within [0, {}]",
            m.len()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RawFit {
    pub coefficients: [f64; MAX_REGRESSORS],
    pub sse: f64,
}

/// Requires `p < q` and `degree < m.max_regressors()`.
#[inline]
#[allow(clippy::needless_range_loop)]
pub(crate) fn solve(m: &PrefixMoments, p: usize, q: usize, degree: usize) -> Option<RawFit> {
    let len = q - p;
    let eff = degree.min(len - 1);
    let mut a = [0.0; MAX_REGRESSORS];
    let syy = m.sum_yy(p, q);
    let sse = match eff {
        0 => {
            let (a0, sse) = constant_fit(m.sum_x(0, p, q), m.sum_xy(0, p, q), syy);
            a[0] = a0;
            sse
        }
        1 => {
            let (a0, a1, sse) = line_fit(
                m.sum_x(0, p, q),
                m.sum_x(1, p, q),
                m.sum_x(2, p, q),
                m.sum_xy(0, p, q),
                m.sum_xy(1, p, q),
                syy,
            )?;
            a[0] = a0;
            a[1] = a1;
            sse
        }
        _ => {
            let mut mat = [[0.0; MAX_REGRESSORS]; MAX_REGRESSORS];
            let mut rhs = [0.0; MAX_REGRESSORS];
            for l in 0..=eff {
                for j in 0..=eff {
                    mat[l][j] = m.sum_x(j + l, p, q);
                }
                rhs[l] = m.sum_xy(l, p, q);
            }
            a = gauss_solve(mat, rhs, eff + 1)?;
            let mut sse = syy;
            for j in 0..=eff {
                sse -= 2.0 * a[j] * rhs[j];
                for l in 0..=eff {
                    sse += a[j] * a[l] * mat[j][l];
                }
            }
            sse
        }
    };
    let sse = if len <= eff + 1 { 0.0 } else { sse.max(0.0) };
    Some(RawFit {
        coefficients: a,
        sse,
    })
}

/// Mean and unclamped squared error from range sums `count, sum y, sum y^2`.
#[inline(always)]
pub(crate) fn constant_fit(count: f64, sy: f64, syy: f64) -> (f64, f64) {
    let a0 = sy / count;
    (a0, a0 * a0 * count - 2.0 * a0 * sy + syy)
}

/// Intercept, slope and unclamped squared error of the least-squares line.
#[inline(always)]
pub(crate) fn line_fit(
    count: f64,
    sx: f64,
    sxx: f64,
    sy: f64,
    sxy: f64,
    syy: f64,
) -> Option<(f64, f64, f64)> {
    let denom = count * sxx - sx * sx;
    if denom.is_nan() || denom <= 0.0 {
        return None;
    }
    let a1 = (count * sxy - sx * sy) / denom;
    let a0 = (sy - a1 * sx) / count;
    let sse =
        a0 * a0 * count + 2.0 * a0 * a1 * sx + a1 * a1 * sxx - 2.0 * (a0 * sy + a1 * sxy) + syy;
    Some((a0, a1, sse))
}

/// Gaussian elimination with partial pivoting on the leading `size x size` block.
#[allow(clippy::needless_range_loop)]
fn gauss_solve(
    mut mat: [[f64; MAX_REGRESSORS]; MAX_REGRESSORS],
    mut rhs: [f64; MAX_REGRESSORS],
    size: usize,
) -> Option<[f64; MAX_REGRESSORS]> {
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&i, &j| mat[i][col].abs().total_cmp(&mat[j][col].abs()))
            .unwrap_or(col);
        if mat[pivot][col] == 0.0 || !mat[pivot][col].is_finite() {
            return None;
        }
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..size {
            let factor = mat[row][col] / mat[col][col];
            for k in col..size {
                mat[row][k] -= factor * mat[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut out = [0.0; MAX_REGRESSORS];
    for row in (0..size).rev() {
        let tail: f64 = (row + 1..size).map(|k| mat[row][k] * out[k]).sum();
        out[row] = (rhs[row] - tail) / mat[row][row];
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TimeSeries;

    fn moments(xs: &[f64], ys: &[f64], n_reg: usize) -> PrefixMoments {
        let s = TimeSeries::new(xs.to_vec(), ys.to_vec()).unwrap();
        PrefixMoments::build(&s, n_reg).unwrap()
    }

    #[test]
    fn two_points_give_exact_line() {
        let m = moments(&[3.0, 4.0], &[1.0, 2.0], 2);
        let f = fit(&m, 0, 2, 1).unwrap();
        assert!((f.coefficients[0] + 2.0).abs() < 1e-12);
        assert!((f.coefficients[1] - 1.0).abs() < 1e-12);
        assert_eq!(f.sse, 0.0);
    }

    #[test]
    fn linear_tail_of_example_series() {
        let m = moments(&[0.0, 1.0, 2.0, 3.0, 4.0], &[0.0, 0.0, 0.0, 1.0, 2.0], 2);
        let f = fit(&m, 2, 5, 1).unwrap();
        assert!(f.sse < 1e-12);
        assert!((f.coefficients[0] + 2.0).abs() < 1e-12);
        assert!((f.coefficients[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_of_bump() {
        let m = moments(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0], 2);
        let f = fit(&m, 0, 3, 0).unwrap();
        assert!((f.coefficients[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((f.sse - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn staircase_line_error() {
        // slope 0.4, intercept -0.1, residuals +-0.1, +-0.3
        let m = moments(&[0.0, 1.0, 2.0, 3.0], &[0.0, 0.0, 1.0, 1.0], 2);
        let f = fit(&m, 0, 4, 1).unwrap();
        assert!((f.coefficients[1] - 0.4).abs() < 1e-12);
        assert!((f.coefficients[0] + 0.1).abs() < 1e-12);
        assert!((fit_error(&m, 0, 4, 1).unwrap() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn empty_range_costs_nothing() {
        let m = moments(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0], 3);
        for p in 0..=3 {
            for d in 0..3 {
                assert_eq!(fit_error(&m, p, p, d).unwrap(), 0.0);
            }
        }
        assert!(fit(&m, 1, 1, 0).is_err());
    }

    #[test]
    fn interpolation_is_exact() {
        let xs: Vec<f64> = (0..6).map(|i| i as f64 * 1.5 + 3.0).collect();
        let ys = [4.0, -1.0, 7.5, 2.0, 0.25, 9.0];
        let m = moments(&xs, &ys, 3);
        for p in 0..6 {
            for d in 0..3 {
                let q = p + d + 1;
                if q <= 6 {
                    assert!(fit_error(&m, p, q, d).unwrap().abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn short_range_reduces_degree() {
        let m = moments(&[0.0, 1.0, 2.0], &[5.0, 7.0, 1.0], 3);
        let f = fit(&m, 1, 2, 2).unwrap();
        assert_eq!(f.coefficients.len(), 3);
        assert!((f.coefficients[0] - 7.0).abs() < 1e-12);
        assert_eq!(f.coefficients[1], 0.0);
        assert_eq!(f.coefficients[2], 0.0);
        let f = fit(&m, 0, 2, 2).unwrap();
        assert!((f.coefficients[0] - 5.0).abs() < 1e-12);
        assert!((f.coefficients[1] - 2.0).abs() < 1e-12);
        assert_eq!(f.coefficients[2], 0.0);
    }

    #[test]
    fn quadratic_recovers_parabola() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - 3.0 * x + 0.5 * x * x).collect();
        let m = moments(&xs, &ys, 3);
        let f = fit(&m, 0, 10, 2).unwrap();
        assert!((f.coefficients[0] - 2.0).abs() < 1e-8);
        assert!((f.coefficients[1] + 3.0).abs() < 1e-8);
        assert!((f.coefficients[2] - 0.5).abs() < 1e-9);
        assert!(f.sse < 1e-8);
    }

    #[test]
    fn usage_errors() {
        let m = moments(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0], 2);
        assert!(matches!(fit(&m, 0, 3, 2), Err(Error::InvalidArgument(_))));
        assert!(matches!(fit(&m, 2, 1, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            fit_error(&m, 0, 4, 0),
            Err(Error::InvalidArgument(_))
        ));
    }
}
