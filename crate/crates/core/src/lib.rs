//! Adaptive piecewise-polynomial segmentation of time series.
//!
//! A series is cut into intervals, each fitted by its own least-squares
//! polynomial (constant, linear, ...), so that the total number of
//! coefficients stays within a budget `k`. Fits over any index range cost
//! O(1) after an O(n) pass of prefix moments, which gives an O(n^2 N k)
//! optimal solver ([`dp`]) and O(k n) greedy heuristics ([`topdown`]).
//!
//! ```
//! use adaseg::{optimal_segmentation, topdown_adaptive, TimeSeries};
//!
//! let series = TimeSeries::from_values(vec![0.0, 0.0, 0.0, 1.0, 2.0]).unwrap();
//! let best = optimal_segmentation(&series, 3, 2).unwrap();
//! assert!(best.total_sse() < 1e-12);
//! let greedy = topdown_adaptive(&series, 2, 4).unwrap();
//! assert!(greedy.model_complexity() <= 4);
//! ```

pub mod bench;
pub mod dp;
pub mod error;
pub mod evaluate;
pub mod moments;
pub mod polyfit;
pub mod series;
pub mod synth;
pub mod topdown;

pub use dp::{optimal_cost_curve, optimal_segmentation, CostTables};
pub use error::{Error, Result};
pub use evaluate::{
    compare_methods, distance_bound_check, leave_one_out, run_experiment, ComparisonReport,
    DistanceBracket, ExperimentReport, LooReport, Method, Ratio, Segmenter,
};
pub use moments::PrefixMoments;
pub use polyfit::{fit, fit_error, FitResult};
pub use series::{l2_error, model_complexity, Segment, Segmentation, TimeSeries};
pub use synth::{generate, GeneratorKind, GeneratorSpec};
pub use topdown::{topdown_adaptive, topdown_fixed};
