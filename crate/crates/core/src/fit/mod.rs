//! Maximum-likelihood fitting, goodness of fit and tail diagnostics.

mod likelihood;
mod report;
mod simplex;
mod tail;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{DistributionSpec, Family};
use crate::error::{Error, Result};
use crate::ineq::IndexReport;
use crate::parallel;
use crate::sample::Sample;
use crate::Quantity;

use likelihood::{from_search, mean_log_likelihood, search_bounds, starts, LogData};

pub use report::{fit_report, fit_report_with, EmpiricalSummary, FitReport, ReportRow, CSV_HEADER};
pub use tail::{
    tail_cut, tail_cut_count, tail_slope, tail_slope_excluding, TailFit, DEFAULT_EXCLUDED_TOP,
    DEFAULT_TAIL_FRACTION, MIN_TAIL_POINTS,
};

/// Smallest sample [`mle_fit`] accepts.
pub const MIN_FIT_SIZE: usize = 50;

/// Optimizer settings for [`mle_fit_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Number of starting points.
    pub starts: usize,
    /// Simplex diameter, in log-parameter units, at which a run stops.
    pub tolerance: f64,
    /// Iteration cap for each simplex run.
    pub max_iterations: usize,
    /// Edge length of the initial simplex in log-parameter units.
    pub initial_step: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            starts: 8,
            tolerance: 1e-9,
            max_iterations: 2000,
            initial_step: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizerDiagnostics {
    /// Simplex iterations summed over all starts and restarts.
    pub iterations: usize,
    /// Fresh simplices built around a converged point to confirm it.
    pub restarts: usize,
    pub starts: usize,
    /// Whether the returned optimum came from a converged run.
    pub converged: bool,
    /// Whether the optimum lies on the edge of the search box (a shape or
    /// power at 10^±4, or the scale pushed far from the data), i.e. the
    /// likelihood keeps increasing towards a limiting case of the family.
    #[serde(default)]
    pub on_boundary: bool,
}

/// A fitted family with its goodness of fit and implied statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub spec: DistributionSpec,
    /// Kolmogorov–Smirnov distance between the sample and `spec`.
    pub ks: f64,
    /// Σ ln f(xᵢ) at the optimum.
    pub log_likelihood: f64,
    pub mean_analytic: Quantity,
    /// √E[x²] of the fitted distribution.
    pub rms_analytic: Quantity,
    pub std_dev_analytic: Quantity,
    pub indices: IndexReport,
    pub optimizer_diagnostics: OptimizerDiagnostics,
}

impl FitResult {
    /// Fills in every derived field for `spec` against `sample`.
    pub fn evaluate(
        spec: DistributionSpec,
        sample: &Sample,
        diagnostics: OptimizerDiagnostics,
    ) -> Result<Self> {
        let data = LogData::new(sample);
        let log_likelihood = mean_log_likelihood(&spec, &data) * sample.len() as f64;
        // The closed forms can fail to converge near parameter-space edges
        // where the integrals themselves are still fine.
        let indices =
            IndexReport::closed_form(&spec).or_else(|_| IndexReport::quadrature(&spec))?;
        Ok(FitResult {
            ks: ks_statistic(sample, &spec)?,
            log_likelihood,
            mean_analytic: spec.mean(),
            rms_analytic: spec.rms(),
            std_dev_analytic: spec.std_dev(),
            indices,
            optimizer_diagnostics: diagnostics,
            spec,
        })
    }
}

/// sup |Fₙ − F| over the sample, i.e. the largest of |i/n − F(x₍ᵢ₎)| and
/// |(i−1)/n − F(x₍ᵢ₎)|.
pub fn ks_statistic(sample: &Sample, spec: &DistributionSpec) -> Result<f64> {
    let n = sample.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in sample.values().iter().enumerate() {
        let f = spec.cdf(x)?;
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        sup = sup.max(above).max(below);
    }
    Ok(sup)
}

pub(crate) fn check_fittable(sample: &Sample) -> Result<()> {
    if sample.len() < MIN_FIT_SIZE {
        return Err(Error::DegenerateSample(format!(
            "fitting needs at least {MIN_FIT_SIZE} observations, got {}",
            sample.len()
        )));
    }
    if sample.is_constant() {
        return Err(Error::DegenerateSample(format!(
            "all {} observations equal {}",
            sample.len(),
            sample.values()[0]
        )));
    }
    Ok(())
}

/// [`mle_fit_with`] under default options.
pub fn mle_fit(sample: &Sample, family: Family) -> Result<FitResult> {
    mle_fit_with(sample, family, &FitOptions::default())
}

struct StartOutcome {
    coords: Vec<f64>,
    value: f64,
    iterations: usize,
    restarts: usize,
    converged: bool,
}

/// Maximum-likelihood fit of `family` to `sample`.
///
/// Nelder–Mead runs in log-parameter space from each starting point; a run
/// that converges is restarted once from a fresh simplex around its optimum.
/// The best converged run wins, with ties resolved by start order.
pub fn mle_fit_with(sample: &Sample, family: Family, options: &FitOptions) -> Result<FitResult> {
    check_fittable(sample)?;
    let data = LogData::new(sample);
    let bounds = search_bounds(family, &data);
    let objective = |coords: &[f64]| match DistributionSpec::from_params(
        family,
        &from_search(family, coords),
    ) {
        Ok(spec) => -mean_log_likelihood(&spec, &data),
        Err(_) => f64::INFINITY,
    };
    let run = |start: &Vec<f64>| {
        let first = simplex::minimize(
            objective,
            start,
            options.initial_step,
            options.tolerance,
            options.max_iterations,
            &bounds,
        );
        if !first.converged {
            return StartOutcome {
                coords: first.point,
                value: first.value,
                iterations: first.iterations,
                restarts: 0,
                converged: false,
            };
        }
        let second = simplex::minimize(
            objective,
            &first.point,
            options.initial_step,
            options.tolerance,
            options.max_iterations,
            &bounds,
        );
        let iterations = first.iterations + second.iterations;
        let converged = second.converged;
        let best = if second.value <= first.value {
            second
        } else {
            first
        };
        StartOutcome {
            coords: best.point,
            value: best.value,
            iterations,
            restarts: 1,
            converged,
        }
    };
    let start_points = starts(family, &data, options.starts.max(1));
    let outcomes: Vec<StartOutcome> =
        parallel::install(|| start_points.par_iter().map(run).collect());

    let diagnostics = |converged, on_boundary| OptimizerDiagnostics {
        iterations: outcomes.iter().map(|o| o.iterations).sum(),
        restarts: outcomes.iter().map(|o| o.restarts).sum(),
        starts: outcomes.len(),
        converged,
        on_boundary,
    };
    let best = outcomes
        .iter()
        .filter(|o| o.converged && o.value.is_finite())
        .min_by(|a, b| a.value.total_cmp(&b.value));
    let Some(best) = best else {
        let d = diagnostics(false, false);
        return Err(Error::NonConvergence {
            routine: "mle_fit",
            detail: format!(
                "no start of {} converged for {family} ({} iterations over {} starts)",
                d.starts, d.iterations, d.starts
            ),
        });
    };
    let spec = DistributionSpec::from_params(family, &from_search(family, &best.coords))?;
    let on_boundary = best
        .coords
        .iter()
        .zip(&bounds)
        .any(|(z, (lo, hi))| (z - lo).abs() < 1e-6 || (z - hi).abs() < 1e-6);
    FitResult::evaluate(spec, sample, diagnostics(true, on_boundary))
}
