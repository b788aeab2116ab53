use std::fmt::Write as _;

use serde::{Deserialize, Serialize, Serializer};

use super::{leave_one_out, Method, Segmenter};
use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::topdown::EXACT_FIT_TOLERANCE;

/// Quotient of two non-negative errors, with the zero-denominator cases kept
/// apart. Serializes as a number, `"inf"`, or `null` when both sides vanish.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(from = "Option<RatioRepr>")]
pub enum Ratio {
    Value(f64),
    Infinite,
    Undefined,
}

impl Ratio {
    /// Denominators at or below the exact-fit threshold (in l2 units) count as zero.
    pub fn of(numerator: f64, denominator: f64) -> Self {
        let zero = EXACT_FIT_TOLERANCE.sqrt();
        if denominator > zero {
            Ratio::Value(numerator / denominator)
        } else if numerator > zero {
            Ratio::Infinite
        } else {
            Ratio::Undefined
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Ratio::Value(v) => Some(v),
            _ => None,
        }
    }

    /// Percentage cell as printed in the report tables.
    pub fn percent(self) -> String {
        match self {
            Ratio::Value(v) => format!("{:.0}%", v * 100.0),
            Ratio::Infinite => "inf".to_string(),
            Ratio::Undefined => "n/a".to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatioRepr {
    Number(f64),
    Text(#[allow(dead_code)] String),
}

impl From<Option<RatioRepr>> for Ratio {
    fn from(r: Option<RatioRepr>) -> Self {
        match r {
            Some(RatioRepr::Number(v)) => Ratio::Value(v),
            Some(RatioRepr::Text(_)) => Ratio::Infinite,
            None => Ratio::Undefined,
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ratio::Value(v) => s.serialize_f64(*v),
            Ratio::Infinite => s.serialize_str("inf"),
            Ratio::Undefined => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodOutcome {
    pub method: Method,
    pub total_sse: f64,
    /// `sqrt(total_sse)`.
    pub l2_error: f64,
    pub complexity: usize,
    pub segments: usize,
    /// Only computed for the top-down heuristics.
    pub loo_rms: Option<f64>,
}

/// All four segmenters run on one series at one budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub k: usize,
    pub n: usize,
    pub outcomes: Vec<MethodOutcome>,
    /// linear / adaptive fit error.
    pub fit_ratio: Ratio,
    /// linear / adaptive leave-one-out error.
    pub loo_ratio: Option<Ratio>,
}

impl ComparisonReport {
    pub fn outcome(&self, method: Method) -> &MethodOutcome {
        self.outcomes
            .iter()
            .find(|o| o.method == method)
            .expect("every method is reported")
    }

    pub fn fit_row(&self) -> TableRow {
        TableRow::from_lookup(self.k.to_string(), |m| Some(self.outcome(m).l2_error))
    }

    pub fn loo_row(&self) -> Option<TableRow> {
        self.loo_ratio?;
        Some(TableRow::from_lookup(self.k.to_string(), |m| {
            self.outcome(m).loo_rms
        }))
    }

    pub fn to_text(&self) -> String {
        let mut out = render_table("fit error (l2)", &[self.fit_row()]);
        if let Some(row) = self.loo_row() {
            out.push('\n');
            out.push_str(&render_table("leave-one-out error (rms)", &[row]));
        }
        out
    }
}

/// Runs the optimal solver and the three top-down heuristics at budget `k`
/// (constant and linear intervals). With `with_loo`, the leave-one-out error
/// of each heuristic is added; the optimal solver is fit-error only.
pub fn compare_methods(series: &TimeSeries, k: usize, with_loo: bool) -> Result<ComparisonReport> {
    if k < 2 {
        return Err(Error::infeasible(format!(
            "method comparison needs k >= 2 so every heuristic is feasible, got {k}"
        )));
    }
    let mut outcomes = Vec::with_capacity(Method::ALL.len());
    for method in Method::ALL {
        let seg = Segmenter::from(method).segment(series, k)?;
        let loo_rms = if with_loo && method != Method::Optimal {
            Some(leave_one_out(series, method, k)?.rms)
        } else {
            None
        };
        outcomes.push(MethodOutcome {
            method,
            total_sse: seg.total_sse(),
            l2_error: seg.l2_error(),
            complexity: seg.model_complexity(),
            segments: seg.segments().len(),
            loo_rms,
        });
    }
    let get = |m: Method| outcomes.iter().find(|o| o.method == m).unwrap();
    let fit_ratio = Ratio::of(
        get(Method::TopDownLinear).l2_error,
        get(Method::TopDownAdaptive).l2_error,
    );
    let loo_ratio = with_loo.then(|| {
        Ratio::of(
            get(Method::TopDownLinear).loo_rms.unwrap_or_default(),
            get(Method::TopDownAdaptive).loo_rms.unwrap_or_default(),
        )
    });
    Ok(ComparisonReport {
        k,
        n: series.len(),
        outcomes,
        fit_ratio,
        loo_ratio,
    })
}

/// One line of an aligned report table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub adaptive: Option<f64>,
    pub linear: Option<f64>,
    pub constant: Option<f64>,
    pub ratio: Ratio,
    pub optimal: Option<f64>,
}

impl TableRow {
    pub(crate) fn from_lookup(label: String, value: impl Fn(Method) -> Option<f64>) -> Self {
        let adaptive = value(Method::TopDownAdaptive);
        let linear = value(Method::TopDownLinear);
        Self {
            label,
            adaptive,
            linear,
            constant: value(Method::TopDownConstant),
            ratio: match (linear, adaptive) {
                (Some(l), Some(a)) => Ratio::of(l, a),
                _ => Ratio::Undefined,
            },
            optimal: value(Method::Optimal),
        }
    }
}

/// Renders rows as `k | adaptive | linear | constant | linear/adaptive | optimal`.
pub fn render_table(title: &str, rows: &[TableRow]) -> String {
    let cell = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"));
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = writeln!(
        out,
        "{:>6}  {:>10}  {:>10}  {:>10}  {:>15}  {:>10}",
        "k", "adaptive", "linear", "constant", "linear/adaptive", "optimal"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>6}  {:>10}  {:>10}  {:>10}  {:>15}  {:>10}",
            r.label,
            cell(r.adaptive),
            cell(r.linear),
            cell(r.constant),
            r.ratio.percent(),
            cell(r.optimal)
        );
    }
    out
}
