//! Reference implementations that recompute everything from the raw points,
//! sharing no code with the prefix-moment path.

#![allow(dead_code)]

use adaseg::TimeSeries;

/// Least-squares polynomial of degree `d` over `xs, ys`, solved on centered
/// and scaled abscissae. Returns the residual sum of squares.
pub fn naive_sse(xs: &[f64], ys: &[f64], d: usize) -> f64 {
    let n = xs.len();
    if n == 0 {
        return 0.0;
    }
    let d = d.min(n - 1);
    let mean = xs.iter().sum::<f64>() / n as f64;
    let scale = xs
        .iter()
        .map(|x| (x - mean).abs())
        .fold(0.0, f64::max)
        .max(1.0);
    let t: Vec<f64> = xs.iter().map(|x| (x - mean) / scale).collect();
    let size = d + 1;
    let mut a = vec![vec![0.0; size + 1]; size];
    for (ti, yi) in t.iter().zip(ys) {
        let pows: Vec<f64> = (0..size).map(|j| ti.powi(j as i32)).collect();
        for r in 0..size {
            for c in 0..size {
                a[r][c] += pows[r] * pows[c];
            }
            a[r][size] += pows[r] * yi;
        }
    }
    let coef = solve(a);
    t.iter()
        .zip(ys)
        .map(|(ti, yi)| {
            let p: f64 = coef
                .iter()
                .enumerate()
                .map(|(j, c)| c * ti.powi(j as i32))
                .sum();
            (p - yi) * (p - yi)
        })
        .sum()
}

#[allow(clippy::needless_range_loop)]
fn solve(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())
            .unwrap();
        a.swap(c, piv);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..=n {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    (0..n).map(|r| a[r][n] / a[r][r]).collect()
}

pub fn range_sse(series: &TimeSeries, p: usize, q: usize, d: usize) -> f64 {
    naive_sse(&series.xs()[p..q], &series.ys()[p..q], d)
}

/// Exhaustive search over every segmentation of `[0, n)` and every degree
/// assignment (degrees below `max_regressors`) with complexity at most `k`.
pub fn brute_force_optimum(series: &TimeSeries, k: usize, max_regressors: usize) -> f64 {
    fn go(series: &TimeSeries, start: usize, budget: usize, n_reg: usize) -> f64 {
        let n = series.len();
        if start == n {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for end in start + 1..=n {
            for d in 0..n_reg {
                if d + 1 > budget {
                    break;
                }
                let rest = go(series, end, budget - d - 1, n_reg);
                if rest.is_finite() {
                    best = best.min(range_sse(series, start, end, d) + rest);
                }
            }
        }
        best
    }
    go(series, 0, k, max_regressors)
}

/// Brute-force `sum x^j y^l` over `[p, q)`.
pub fn direct_moment(series: &TimeSeries, j: usize, l: usize, p: usize, q: usize) -> f64 {
    (p..q)
        .map(|i| {
            let (x, y) = series.point(i);
            x.powi(j as i32) * y.powi(l as i32)
        })
        .sum()
}

/// Small deterministic generator for test data (xorshift64*).
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}
