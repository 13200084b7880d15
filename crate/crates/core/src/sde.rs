//! Mean-reverting SDEs with GB2-family steady states.
//!
//! The general model is
//!
//! dx = −γ (x − θ x^(1−α)) dt + √(κ₂² x² + κ_α² x^(2−α)) dW,
//!
//! which for α = 1 reduces to dx = −γ(x − θ)dt + √(κ₂²x² + κ₁²x) dW with a
//! beta prime steady state. Paths are integrated with Euler–Maruyama.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{uniform_stream, DistributionSpec};
use crate::error::{Error, Result};
use crate::parallel;
use crate::sample::Sample;

/// Guard-trigger fraction above which a run is rejected as unstable.
pub const MAX_GUARD_RATE: f64 = 0.05;

/// Guard-trigger fraction above which a smaller step is advisable.
pub const ADVISED_GUARD_RATE: f64 = 1e-3;

fn default_alpha() -> f64 {
    1.0
}

fn default_paths() -> usize {
    100
}

/// Coefficients and integration controls of the SDE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SdeConfig {
    /// Reversion rate γ (1/time).
    pub gamma_rate: f64,
    /// Reversion level θ (data units).
    pub theta: f64,
    /// Volatility of the x^(1−α/2) noise branch; κ₁ when α = 1.
    #[serde(alias = "kappa1")]
    pub kappa_alpha: f64,
    /// Multiplicative volatility κ₂ (1/√time).
    pub kappa2: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Step size; defaults to 10⁻³/γ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Steps discarded at the start of each path; defaults to 20 relaxation
    /// times.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burn_in: Option<u64>,
    /// Steps between retained samples; defaults to one relaxation time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thin: Option<u64>,
    #[serde(default = "default_paths")]
    pub n_paths: usize,
    /// Starting value of every path; defaults to θ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<f64>,
}

impl SdeConfig {
    /// Configuration with default integration controls.
    pub fn new(
        gamma_rate: f64,
        theta: f64,
        kappa_alpha: f64,
        kappa2: f64,
        alpha: f64,
    ) -> Result<Self> {
        let config = SdeConfig {
            gamma_rate,
            theta,
            kappa_alpha,
            kappa2,
            alpha,
            dt: None,
            burn_in: None,
            thin: None,
            n_paths: default_paths(),
            initial: None,
        };
        config.validate()?;
        Ok(config)
    }

    /// BP-model configuration (α = 1) whose steady state is BP(p, q, β) with
    /// reversion rate `gamma_rate`.
    pub fn for_bp(p: f64, q: f64, beta: f64, gamma_rate: f64) -> Result<Self> {
        Self::for_gb2(p, q, 1.0, beta, gamma_rate)
    }

    /// Configuration whose steady state is GB2(p, q, α, β), obtained by
    /// inverting the steady-state map.
    pub fn for_gb2(p: f64, q: f64, alpha: f64, beta: f64, gamma_rate: f64) -> Result<Self> {
        DistributionSpec::gb2(p, q, alpha, beta)?;
        if !(alpha * q > 1.0) {
            return Err(Error::InvalidConfig(format!(
                "αq = {} must exceed 1 for a positive multiplicative volatility",
                alpha * q
            )));
        }
        if !(alpha * p > alpha - 1.0) {
            return Err(Error::InvalidConfig(format!(
                "αp = {} must exceed α − 1 for a positive reversion level",
                alpha * p
            )));
        }
        let kappa2_sq = 2.0 * gamma_rate / (alpha * q - 1.0);
        let kappa_alpha_sq = kappa2_sq * beta.powf(alpha);
        let theta = kappa_alpha_sq * (alpha * p + 1.0 - alpha) / (2.0 * gamma_rate);
        Self::new(
            gamma_rate,
            theta,
            kappa_alpha_sq.sqrt(),
            kappa2_sq.sqrt(),
            alpha,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive("gamma_rate", self.gamma_rate)?;
        positive("theta", self.theta)?;
        positive("alpha", self.alpha)?;
        positive("dt", self.step())?;
        for (name, v) in [("kappa_alpha", self.kappa_alpha), ("kappa2", self.kappa2)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be non-negative, got {v}"
                )));
            }
        }
        if self.n_paths == 0 {
            return Err(Error::InvalidConfig("n_paths must be at least 1".into()));
        }
        if self.thin == Some(0) {
            return Err(Error::InvalidConfig("thin must be at least 1".into()));
        }
        if let Some(x0) = self.initial {
            positive("initial", x0)?;
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        self.dt.unwrap_or(1e-3 / self.gamma_rate)
    }

    fn steps_per_relaxation(&self) -> u64 {
        (1.0 / (self.gamma_rate * self.step())).round().max(1.0) as u64
    }

    pub fn burn_in_steps(&self) -> u64 {
        self.burn_in.unwrap_or(20 * self.steps_per_relaxation())
    }

    pub fn thin_steps(&self) -> u64 {
        self.thin.unwrap_or(self.steps_per_relaxation())
    }
}

/// Stationary distribution of the SDE.
///
/// α = 1 gives BP(2γθ/κ₁², 1 + 2γ/κ₂², κ₁²/κ₂²); general α gives
/// GB2(p, q, α, (κ_α/κ₂)^(2/α)) with p = (α − 1 + 2γθ/κ_α²)/α and
/// q = (1 + 2γ/κ₂²)/α. Without multiplicative noise the steady state is
/// GGa (Ga for α = 1); without the additive branch it is GIGa (IGa).
pub fn steady_state_spec(config: &SdeConfig) -> Result<DistributionSpec> {
    config.validate()?;
    let SdeConfig {
        gamma_rate: g,
        theta,
        kappa_alpha: ka,
        kappa2: k2,
        alpha,
        ..
    } = *config;
    let shape_p = || (alpha - 1.0 + 2.0 * g * theta / (ka * ka)) / alpha;
    let shape_q = || (1.0 + 2.0 * g / (k2 * k2)) / alpha;
    let checked = |name: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(Error::InvalidConfig(format!(
                "steady-state {name} = {v} is not positive"
            )))
        }
    };
    let unit = alpha == 1.0;
    match (ka > 0.0, k2 > 0.0) {
        (true, true) => {
            let p = checked("p", shape_p())?;
            let q = checked("q", shape_q())?;
            let beta = (ka / k2).powf(2.0 / alpha);
            if unit {
                DistributionSpec::bp(p, q, beta)
            } else {
                DistributionSpec::gb2(p, q, alpha, beta)
            }
        }
        (true, false) => {
            let shape = checked("shape", shape_p())?;
            let scale = (alpha * ka * ka / (2.0 * g)).powf(1.0 / alpha);
            if unit {
                DistributionSpec::ga(shape, scale)
            } else {
                DistributionSpec::gga(shape, alpha, scale)
            }
        }
        (false, true) => {
            let shape = checked("shape", shape_q())?;
            let scale = (2.0 * g * theta / (alpha * k2 * k2)).powf(1.0 / alpha);
            if unit {
                DistributionSpec::iga(shape, scale)
            } else {
                DistributionSpec::giga(shape, alpha, scale)
            }
        }
        (false, false) => Err(Error::InvalidConfig(
            "with both volatilities zero the steady state is the point mass at θ".into(),
        )),
    }
}

/// Pooled output of [`simulate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub sample: Sample,
    /// Total Euler steps taken across all paths.
    pub steps: u64,
    /// Steps whose proposal was non-positive and had to be reflected.
    pub guard_hits: u64,
}

impl Simulation {
    pub fn guard_rate(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            self.guard_hits as f64 / self.steps as f64
        }
    }
}

struct PathOutput {
    values: Vec<f64>,
    steps: u64,
    guard_hits: u64,
}

/// Integrates `config.n_paths` independent paths and pools `n` retained
/// values (post burn-in, thinned).
///
/// Path i draws its noise from ChaCha8 stream i under `seed`, and the pool is
/// assembled in path order, so the result does not depend on the thread
/// count. A proposal x ≤ 0 is reflected to max(|x|, 10⁻¹²θ); the fraction of
/// such steps is reported and a run with more than 5% is rejected.
pub fn simulate(config: &SdeConfig, n: usize, seed: u64) -> Result<Simulation> {
    config.validate()?;
    if n == 0 {
        return Err(Error::InvalidConfig("requested sample size is zero".into()));
    }
    let paths = config.n_paths.min(n);
    let quota = |i: usize| n / paths + usize::from(i < n % paths);
    let outputs: Vec<PathOutput> = parallel::install(|| {
        (0..paths)
            .into_par_iter()
            .map(|i| integrate_path(config, quota(i), seed, i as u64))
            .collect()
    });
    let steps = outputs.iter().map(|o| o.steps).sum();
    let guard_hits = outputs.iter().map(|o| o.guard_hits).sum();
    let values: Vec<f64> = outputs.into_iter().flat_map(|o| o.values).collect();
    let run = Simulation {
        sample: Sample::new(values)?,
        steps,
        guard_hits,
    };
    if run.guard_rate() > MAX_GUARD_RATE {
        return Err(Error::Instability {
            rate: run.guard_rate(),
        });
    }
    Ok(run)
}

fn integrate_path(config: &SdeConfig, count: usize, seed: u64, stream: u64) -> PathOutput {
    let mut rng = uniform_stream(seed, stream);
    let dt = config.step();
    let sqrt_dt = dt.sqrt();
    let SdeConfig {
        gamma_rate: g,
        theta,
        kappa_alpha: ka,
        kappa2: k2,
        alpha,
        ..
    } = *config;
    let (ka2, k22) = (ka * ka, k2 * k2);
    let floor = 1e-12 * theta;
    let unit = alpha == 1.0;
    let burn_in = config.burn_in_steps();
    let thin = config.thin_steps();
    let mut x = config.initial.unwrap_or(theta);
    let mut values = Vec::with_capacity(count);
    let mut steps = 0u64;
    let mut guard_hits = 0u64;
    let total = burn_in + thin * count as u64;
    for step in 1..=total {
        let (drift, variance) = if unit {
            (-g * (x - theta), k22 * x * x + ka2 * x)
        } else {
            let x_pow = x.powf(-alpha);
            (-g * x * (1.0 - theta * x_pow), x * x * (k22 + ka2 * x_pow))
        };
        let z: f64 = StandardNormal.sample(&mut rng);
        let mut next = x + drift * dt + variance.sqrt() * sqrt_dt * z;
        if next <= 0.0 {
            guard_hits += 1;
            next = next.abs().max(floor);
        }
        x = next;
        steps += 1;
        if step > burn_in && (step - burn_in).is_multiple_of(thin) {
            values.push(x);
        }
    }
    PathOutput {
        values,
        steps,
        guard_hits,
    }
}
