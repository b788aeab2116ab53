//! Seeded synthetic series on the unit grid `x_i = i`.
//!
//! Deviates come from `ChaCha8Rng::seed_from_u64(seed)` fed through the
//! ziggurat sampler of `rand_distr::Normal`; both are stable for a given
//! build, so a spec always yields the same bits.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// i.i.d. `N(mu, sigma^2)`.
    WhiteNoise,
    /// `y_0 = 0`, `y_i = y_(i-1) + N(mu, sigma^2)`.
    RandomWalk,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::WhiteNoise => "white-noise",
            GeneratorKind::RandomWalk => "random-walk",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "white-noise" | "whitenoise" | "noise" => Ok(GeneratorKind::WhiteNoise),
            "random-walk" | "randomwalk" | "walk" => Ok(GeneratorKind::RandomWalk),
            other => Err(Error::invalid_argument(format!(
                "unknown generator kind {other:?} (expected noise or walk)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    pub mu: f64,
    pub sigma: f64,
}

impl GeneratorSpec {
    /// Standard normal increments (`mu = 0`, `sigma = 1`).
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            seed,
            mu: 0.0,
            sigma: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid_argument(
                "series length n must be at least 1",
            ));
        }
        if !self.sigma.is_finite() || self.sigma <= 0.0 {
            return Err(Error::invalid_argument(format!(
                "sigma must be positive and finite, got {}",
                self.sigma
            )));
        }
        if !self.mu.is_finite() {
            return Err(Error::invalid_argument(format!(
                "mu must be finite, got {}",
                self.mu
            )));
        }
        Ok(())
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<TimeSeries> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let normal =
        Normal::new(spec.mu, spec.sigma).map_err(|e| Error::invalid_argument(e.to_string()))?;
    let ys: Vec<f64> = match spec.kind {
        GeneratorKind::WhiteNoise => (0..spec.n).map(|_| normal.sample(&mut rng)).collect(),
        GeneratorKind::RandomWalk => {
            let mut y = 0.0;
            let mut ys = Vec::with_capacity(spec.n);
            ys.push(y);
            for _ in 1..spec.n {
                y += normal.sample(&mut rng);
                ys.push(y);
            }
            ys
        }
    };
    TimeSeries::from_values(ys)
}
