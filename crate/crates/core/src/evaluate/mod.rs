//! Experiment metrics: leave-one-out error, distance bounds and method
//! comparison tables.

mod bound;
mod compare;
mod experiment;
mod loo;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bound::{distance_bound_check, DistanceBracket, BRACKET_ROUNDING};
pub use compare::{
    compare_methods, render_table, ComparisonReport, MethodOutcome, Ratio, TableRow,
};
pub use experiment::{run_experiment, ExperimentReport, ExperimentRow, MethodMeans};
pub use loo::{leave_one_out, LooReport};

use crate::dp::optimal_segmentation;
use crate::error::Result;
use crate::series::{Segmentation, TimeSeries};
use crate::topdown::{topdown_adaptive, topdown_fixed};

/// Regressor bound used when none is given: constant and linear intervals.
pub const DEFAULT_MAX_REGRESSORS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "dp")]
    Optimal,
    #[serde(rename = "td-const")]
    TopDownConstant,
    #[serde(rename = "td-linear")]
    TopDownLinear,
    #[serde(rename = "td-adaptive")]
    TopDownAdaptive,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::TopDownAdaptive,
        Method::TopDownLinear,
        Method::TopDownConstant,
        Method::Optimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Optimal => "dp",
            Method::TopDownConstant => "td-const",
            Method::TopDownLinear => "td-linear",
            Method::TopDownAdaptive => "td-adaptive",
        }
    }

    /// Column label used in report tables.
    pub fn label(self) -> &'static str {
        match self {
            Method::Optimal => "optimal",
            Method::TopDownConstant => "constant",
            Method::TopDownLinear => "linear",
            Method::TopDownAdaptive => "adaptive",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dp" | "optimal" => Ok(Method::Optimal),
            "td-const" | "td-constant" | "topdown-constant" | "constant" => {
                Ok(Method::TopDownConstant)
            }
            "td-linear" | "topdown-linear" | "linear" => Ok(Method::TopDownLinear),
            "td-adaptive" | "topdown-adaptive" | "adaptive" => Ok(Method::TopDownAdaptive),
            other => Err(crate::Error::invalid_argument(format!(
                "unknown method {other:?} (expected dp, td-const, td-linear or td-adaptive)"
            ))),
        }
    }
}

/// A method together with the regressor bound used by the adaptive ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segmenter {
    pub method: Method,
    pub max_regressors: usize,
}

impl Segmenter {
    pub fn new(method: Method, max_regressors: usize) -> Self {
        Self {
            method,
            max_regressors,
        }
    }

    pub fn segment(&self, series: &TimeSeries, k: usize) -> Result<Segmentation> {
        match self.method {
            Method::Optimal => optimal_segmentation(series, k, self.max_regressors),
            Method::TopDownConstant => topdown_fixed(series, 0, k),
            Method::TopDownLinear => topdown_fixed(series, 1, k),
            Method::TopDownAdaptive => topdown_adaptive(series, self.max_regressors, k),
        }
    }
}

impl From<Method> for Segmenter {
    fn from(method: Method) -> Self {
        Segmenter::new(method, DEFAULT_MAX_REGRESSORS)
    }
}
