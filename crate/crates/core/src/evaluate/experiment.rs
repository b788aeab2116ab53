use serde::{Deserialize, Serialize};

use super::compare::{compare_methods, render_table, ComparisonReport, Ratio, TableRow};
use super::Method;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Per-method means across trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodMeans {
    pub adaptive: f64,
    pub linear: f64,
    pub constant: f64,
    pub optimal: Option<f64>,
}

impl MethodMeans {
    pub fn get(&self, method: Method) -> Option<f64> {
        match method {
            Method::TopDownAdaptive => Some(self.adaptive),
            Method::TopDownLinear => Some(self.linear),
            Method::TopDownConstant => Some(self.constant),
            Method::Optimal => self.optimal,
        }
    }

    fn over(
        reports: &[ComparisonReport],
        value: impl Fn(&ComparisonReport, Method) -> Option<f64>,
    ) -> Option<Self> {
        let mean = |m: Method| -> Option<f64> {
            let vals: Option<Vec<f64>> = reports.iter().map(|r| value(r, m)).collect();
            let vals = vals?;
            Some(vals.iter().sum::<f64>() / vals.len() as f64)
        };
        Some(Self {
            adaptive: mean(Method::TopDownAdaptive)?,
            linear: mean(Method::TopDownLinear)?,
            constant: mean(Method::TopDownConstant)?,
            optimal: mean(Method::Optimal),
        })
    }

    fn row(&self, label: String) -> TableRow {
        TableRow::from_lookup(label, |m| self.get(m))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub k: usize,
    /// Mean l2 fit error.
    pub mean_fit: MethodMeans,
    /// Mean leave-one-out rms, when requested.
    pub mean_loo: Option<MethodMeans>,
    /// Ratio of the linear and adaptive means.
    pub fit_ratio: Ratio,
    pub loo_ratio: Option<Ratio>,
    pub trials: Vec<ComparisonReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub trials: usize,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentReport {
    pub fn row(&self, k: usize) -> Option<&ExperimentRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// Aligned fit-error and leave-one-out tables, one line per budget.
    pub fn to_text(&self, title: &str) -> String {
        let fit: Vec<TableRow> = self
            .rows
            .iter()
            .map(|r| r.mean_fit.row(r.k.to_string()))
            .collect();
        let mut out = render_table(&format!("{title}: mean fit error (l2)"), &fit);
        let loo: Option<Vec<TableRow>> = self
            .rows
            .iter()
            .map(|r| r.mean_loo.map(|m| m.row(r.k.to_string())))
            .collect();
        if let Some(loo) = loo {
            out.push('\n');
            out.push_str(&render_table(
                &format!("{title}: mean leave-one-out error (rms)"),
                &loo,
            ));
        }
        out
    }

    /// `(k, mean fit error, mean leave-one-out error)` for one method.
    pub fn plot_rows(&self, method: Method) -> Vec<(usize, f64, Option<f64>)> {
        self.rows
            .iter()
            .filter_map(|r| {
                let fit = r.mean_fit.get(method)?;
                Some((r.k, fit, r.mean_loo.and_then(|m| m.get(method))))
            })
            .collect()
    }
}

/// Compares all methods on every series for every budget in `ks` and
/// averages the results per budget.
pub fn run_experiment(
    series: &[TimeSeries],
    ks: &[usize],
    with_loo: bool,
) -> Result<ExperimentReport> {
    if series.is_empty() {
        return Err(Error::invalid_argument(
            "an experiment needs at least one series",
        ));
    }
    if ks.is_empty() {
        return Err(Error::invalid_argument(
            "an experiment needs at least one budget k",
        ));
    }
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let trials = series
            .iter()
            .map(|s| compare_methods(s, k, with_loo))
            .collect::<Result<Vec<_>>>()?;
        let mean_fit = MethodMeans::over(&trials, |r, m| Some(r.outcome(m).l2_error))
            .expect("fit errors are always present");
        let mean_loo = if with_loo {
            MethodMeans::over(&trials, |r, m| r.outcome(m).loo_rms)
        } else {
            None
        };
        rows.push(ExperimentRow {
            k,
            fit_ratio: Ratio::of(mean_fit.linear, mean_fit.adaptive),
            loo_ratio: mean_loo.map(|m| Ratio::of(m.linear, m.adaptive)),
            mean_fit,
            mean_loo,
            trials,
        });
    }
    Ok(ExperimentReport {
        trials: series.len(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate, GeneratorKind, GeneratorSpec};

    #[test]
    fn constant_series_report_is_zero() {
        let s = TimeSeries::from_values(vec![1.5; 20]).unwrap();
        let r = run_experiment(&[s], &[4, 6], true).unwrap();
        assert_eq!(r.rows.len(), 2);
        for row in &r.rows {
            assert_eq!(row.mean_fit.adaptive, 0.0);
            assert_eq!(row.mean_fit.optimal, Some(0.0));
            let loo = row.mean_loo.unwrap();
            assert_eq!((loo.adaptive, loo.linear, loo.constant), (0.0, 0.0, 0.0));
            assert_eq!(loo.optimal, None);
        }
        let text = r.to_text("constant");
        assert!(text.contains("mean fit error") && text.contains("leave-one-out"));
    }

    #[test]
    fn averages_across_trials() {
        let series: Vec<_> = (0..3)
            .map(|seed| generate(&GeneratorSpec::new(GeneratorKind::RandomWalk, 60, seed)).unwrap())
            .collect();
        let r = run_experiment(&series, &[6], false).unwrap();
        let row = r.row(6).unwrap();
        let manual: f64 = row
            .trials
            .iter()
            .map(|t| t.outcome(Method::TopDownLinear).l2_error)
            .sum::<f64>()
            / 3.0;
        assert!((row.mean_fit.linear - manual).abs() < 1e-12);
        assert!(row.mean_loo.is_none());
        assert_eq!(r.plot_rows(Method::Optimal).len(), 1);
        assert!(row.mean_fit.optimal.unwrap() <= row.mean_fit.adaptive + 1e-9);
    }

    #[test]
    fn rejects_empty_inputs() {
        let s = TimeSeries::from_values(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(run_experiment(&[], &[2], false).is_err());
        assert!(run_experiment(&[s], &[], false).is_err());
    }
}
