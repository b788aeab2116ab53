//! Wall-clock scaling measurements for the segmenters.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{Method, Segmenter};
use crate::synth::{generate, GeneratorKind, GeneratorSpec};

/// Bound on the runtime ratio per doubling of `n` for the linear-time heuristics.
pub const LINEAR_MAX_RATIO: f64 = 2.6;
/// Accepted runtime ratio per doubling of `n` for the quadratic solver.
pub const QUADRATIC_RATIO_RANGE: (f64, f64) = (3.3, 5.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingPoint {
    pub n: usize,
    /// Median over the repeats.
    pub median_secs: f64,
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingStep {
    pub from: usize,
    pub to: usize,
    pub ratio: f64,
    /// Set only when `to == 2 * from`.
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingReport {
    pub method: Method,
    pub k: usize,
    pub repeats: usize,
    pub points: Vec<TimingPoint>,
    pub steps: Vec<ScalingStep>,
}

impl TimingReport {
    /// `None` when no step is a doubling.
    pub fn verdict(&self) -> Option<bool> {
        let judged: Vec<bool> = self.steps.iter().filter_map(|s| s.pass).collect();
        (!judged.is_empty()).then(|| judged.iter().all(|&p| p))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,k,n,median_secs\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.method, self.k, p.n, p.median_secs
            ));
        }
        out
    }
}

/// Whether a runtime ratio for one doubling of `n` fits the method's complexity.
pub fn doubling_ok(method: Method, ratio: f64) -> bool {
    match method {
        Method::Optimal => (QUADRATIC_RATIO_RANGE.0..=QUADRATIC_RATIO_RANGE.1).contains(&ratio),
        _ => ratio <= LINEAR_MAX_RATIO,
    }
}

/// Times `segmenter` on seeded random walks of each length in `ns`
/// (ascending), taking the median of `repeats` runs per length.
pub fn time_scaling(
    segmenter: Segmenter,
    ns: &[usize],
    k: usize,
    repeats: usize,
    seed: u64,
) -> Result<TimingReport> {
    if ns.is_empty() || ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid_argument(
            "n list must be non-empty and strictly ascending",
        ));
    }
    if repeats == 0 {
        return Err(Error::invalid_argument("repeats must be at least 1"));
    }
    let series = ns
        .iter()
        .map(|&n| generate(&GeneratorSpec::new(GeneratorKind::RandomWalk, n, seed)))
        .collect::<Result<Vec<_>>>()?;
    // warm-up run on the shortest series, not recorded
    std::hint::black_box(segmenter.segment(&series[0], k)?);
    // lengths are interleaved so drift in machine load hits all of them alike
    let mut samples = vec![Vec::with_capacity(repeats); ns.len()];
    for _ in 0..repeats {
        for (s, out) in series.iter().zip(&mut samples) {
            let start = Instant::now();
            let seg = segmenter.segment(s, k)?;
            let elapsed: Duration = start.elapsed();
            std::hint::black_box(seg);
            out.push(elapsed.as_secs_f64());
        }
    }
    let points: Vec<_> = ns
        .iter()
        .zip(samples)
        .map(|(&n, samples)| TimingPoint {
            n,
            median_secs: median(&samples),
            samples,
        })
        .collect();
    let steps = points
        .windows(2)
        .map(|w| {
            let ratio = w[1].median_secs / w[0].median_secs;
            ScalingStep {
                from: w[0].n,
                to: w[1].n,
                ratio,
                pass: (w[1].n == 2 * w[0].n).then(|| doubling_ok(segmenter.method, ratio)),
            }
        })
        .collect();
    Ok(TimingReport {
        method: segmenter.method,
        k,
        repeats,
        points,
        steps,
    })
}

fn median(samples: &[f64]) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_length_has_no_verdict() {
        let r = time_scaling(Method::TopDownAdaptive.into(), &[500], 4, 3, 1).unwrap();
        assert_eq!(r.points.len(), 1);
        assert!(r.steps.is_empty());
        assert_eq!(r.verdict(), None);
        assert!(r
            .to_csv()
            .starts_with("method,k,n,median_secs\ntd-adaptive,4,500,"));
    }

    #[test]
    fn only_doublings_are_judged() {
        let r = time_scaling(Method::TopDownConstant.into(), &[300, 500, 1000], 4, 1, 1).unwrap();
        assert_eq!(r.steps[0].pass, None);
        assert!(r.steps[1].pass.is_some());
    }

    #[test]
    fn thresholds() {
        assert!(doubling_ok(Method::TopDownLinear, 2.0));
        assert!(!doubling_ok(Method::TopDownLinear, 2.7));
        assert!(doubling_ok(Method::Optimal, 4.0));
        assert!(!doubling_ok(Method::Optimal, 3.0));
        assert!(!doubling_ok(Method::Optimal, 5.5));
    }

    #[test]
    fn rejects_bad_lists() {
        let s = Segmenter::from(Method::TopDownLinear);
        assert!(time_scaling(s, &[], 4, 1, 0).is_err());
        assert!(time_scaling(s, &[200, 100], 4, 1, 0).is_err());
        assert!(time_scaling(s, &[200], 4, 0, 0).is_err());
    }
}
