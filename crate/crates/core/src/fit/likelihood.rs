//! Log-likelihood on log-transformed data and the optimizer's coordinates.

use crate::dist::{DistributionSpec, Family, Kernel};
use crate::sample::Sample;
use crate::specfun::{lbeta, lgamma};

/// ln x of every observation with the sufficient statistics that several
/// families need, computed once per fit.
pub(crate) struct LogData {
    pub logs: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    pub median: f64,
}

impl LogData {
    pub fn new(sample: &Sample) -> Self {
        let logs: Vec<f64> = sample.values().iter().map(|x| x.ln()).collect();
        let n = logs.len() as f64;
        let mean = logs.iter().sum::<f64>() / n;
        let variance = logs.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>() / n;
        LogData {
            mean,
            variance,
            median: sample.quantile(0.5),
            logs,
        }
    }

    fn average(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.logs.iter().map(|&y| f(y)).sum::<f64>() / self.logs.len() as f64
    }
}

fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

/// Average log-density per observation, (1/n) Σ ln f(xᵢ).
pub(crate) fn mean_log_likelihood(spec: &DistributionSpec, data: &LogData) -> f64 {
    match spec.kernel() {
        Kernel::BetaPrime { p, q, a, b } => {
            let lb = b.ln();
            a.ln() - lb - lbeta(p, q) + (a * p - 1.0) * (data.mean - lb)
                - (p + q) * data.average(|y| softplus(a * (y - lb)))
        }
        Kernel::Gamma {
            shape,
            power,
            scale,
            inverted,
        } => {
            let lb = scale.ln();
            let sign = if inverted { -1.0 } else { 1.0 };
            let exponent = if inverted {
                shape * power + 1.0
            } else {
                shape * power - 1.0
            };
            power.ln() - lb - lgamma(shape) + exponent * sign * (data.mean - lb)
                - data.average(|y| (power * sign * (y - lb)).exp())
        }
        Kernel::LogNormal { mu, sigma } => {
            let spread = data.variance + (data.mean - mu).powi(2);
            -data.mean
                - sigma.ln()
                - 0.5 * (2.0 * std::f64::consts::PI).ln()
                - 0.5 * spread / (sigma * sigma)
        }
    }
}

/// Half-width, in natural-log units, of the search box around 1 for shape
/// and power parameters.
const SHAPE_RANGE: f64 = 9.210_340_371_976_184; // ln 10⁴
/// Half-width of the search box for the location coordinate around the
/// sample's log-median.
const LOCATION_RANGE: f64 = 50.0;

/// Maps display-order parameters to search coordinates.
///
/// Shapes and powers are searched as logarithms. The scale is replaced by an
/// approximate log-median, ln β + ln(p/q)/α for the beta prime kernel and
/// ln β ± ln(k)/γ for the gamma kernels, which removes most of the
/// correlation between scale and shape that otherwise bends the likelihood
/// ridge.
pub(crate) fn to_search(family: Family, v: &[f64]) -> Vec<f64> {
    let ln = |x: f64| x.ln();
    match family {
        Family::Gb2 => vec![
            ln(v[0]),
            ln(v[1]),
            ln(v[2]),
            ln(v[3]) + (ln(v[0]) - ln(v[1])) / v[2],
        ],
        Family::Bp => vec![ln(v[0]), ln(v[1]), ln(v[2]) + ln(v[0]) - ln(v[1])],
        Family::Gga => vec![ln(v[0]), ln(v[1]) + ln(v[0]) / v[2], ln(v[2])],
        Family::Giga => vec![ln(v[0]), ln(v[1]) - ln(v[0]) / v[2], ln(v[2])],
        Family::Ga => vec![ln(v[0]), ln(v[1]) + ln(v[0])],
        Family::Iga => vec![ln(v[0]), ln(v[1]) - ln(v[0])],
        Family::Ln => vec![v[0], ln(v[1])],
    }
}

pub(crate) fn from_search(family: Family, z: &[f64]) -> Vec<f64> {
    let e = f64::exp;
    match family {
        Family::Gb2 => {
            let alpha = e(z[2]);
            vec![e(z[0]), e(z[1]), alpha, e(z[3] - (z[0] - z[1]) / alpha)]
        }
        Family::Bp => vec![e(z[0]), e(z[1]), e(z[2] - z[0] + z[1])],
        Family::Gga => {
            let power = e(z[2]);
            vec![e(z[0]), e(z[1] - z[0] / power), power]
        }
        Family::Giga => {
            let power = e(z[2]);
            vec![e(z[0]), e(z[1] + z[0] / power), power]
        }
        Family::Ga => vec![e(z[0]), e(z[1] - z[0])],
        Family::Iga => vec![e(z[0]), e(z[1] + z[0])],
        Family::Ln => vec![z[0], e(z[1])],
    }
}

/// Index of the location coordinate in search space.
fn location_index(family: Family) -> usize {
    match family {
        Family::Gb2 => 3,
        Family::Bp => 2,
        Family::Gga | Family::Giga | Family::Ga | Family::Iga => 1,
        Family::Ln => 0,
    }
}

/// Box constraints on the search coordinates. Shapes and powers stay in
/// [10⁻⁴, 10⁴]; the location stays within e^±50 of the sample median.
pub(crate) fn search_bounds(family: Family, data: &LogData) -> Vec<(f64, f64)> {
    let centre = data.median.ln();
    (0..family.arity())
        .map(|i| {
            if i == location_index(family) {
                (centre - LOCATION_RANGE, centre + LOCATION_RANGE)
            } else {
                (-SHAPE_RANGE, SHAPE_RANGE)
            }
        })
        .collect()
}

/// Heuristic starting points in display-order parameters.
///
/// Each family's log-spread is matched through the large-shape
/// approximation ψ'(k) ≈ 1/k of the log-scale variance, at several values of
/// the power parameter and of the p/q balance; the scale then puts the
/// median in place.
fn base_starts(family: Family, data: &LogData) -> Vec<Vec<f64>> {
    let var = data.variance.max(1e-12);
    let med = data.median;
    let clamp = |k: f64| k.clamp(0.05, 1e4);
    match family {
        Family::Ln => vec![vec![data.mean, var.sqrt()]],
        Family::Ga => {
            let shape = clamp(1.0 / var);
            vec![vec![shape, med / shape]]
        }
        Family::Iga => {
            let shape = clamp(1.0 / var);
            vec![vec![shape, med * shape]]
        }
        Family::Gga | Family::Giga => [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&power| {
                let shape = clamp(1.0 / (power * power * var));
                let shift = shape.powf(1.0 / power);
                let scale = if family == Family::Gga {
                    med / shift
                } else {
                    med * shift
                };
                vec![shape, scale, power]
            })
            .collect(),
        Family::Bp => [1.0, 3.0, 1.0 / 3.0]
            .iter()
            .map(|&ratio: &f64| {
                let k = (ratio.sqrt() + 1.0 / ratio.sqrt()) / var;
                let (p, q) = (clamp(k * ratio.sqrt()), clamp(k / ratio.sqrt()));
                vec![p, q, med * q / p]
            })
            .collect(),
        Family::Gb2 => [1.0, 2.0, 3.0, 5.0]
            .iter()
            .flat_map(|&alpha: &f64| {
                [1.0, 3.0].into_iter().map(move |ratio: f64| {
                    let k = (ratio.sqrt() + 1.0 / ratio.sqrt()) / (alpha * alpha * var);
                    let (p, q) = (clamp(k * ratio.sqrt()), clamp(k / ratio.sqrt()));
                    vec![p, q, alpha, med * (q / p).powf(1.0 / alpha)]
                })
            })
            .collect(),
    }
}

/// Exactly `count` starting points in search coordinates: the heuristic
/// ones first, then deterministic ±0.5 log-unit perturbations of them.
pub(crate) fn starts(family: Family, data: &LogData, count: usize) -> Vec<Vec<f64>> {
    let bounds = search_bounds(family, data);
    let base: Vec<Vec<f64>> = base_starts(family, data)
        .iter()
        .map(|p| to_search(family, p))
        .collect();
    (0..count)
        .map(|j| {
            let mut z = base[j % base.len()].clone();
            let round = j / base.len();
            if round > 0 {
                for (i, zi) in z.iter_mut().enumerate() {
                    let sign = if (i + round).is_multiple_of(2) {
                        1.0
                    } else {
                        -1.0
                    };
                    *zi += sign * 0.5 * round.div_ceil(2) as f64;
                }
            }
            for (zi, &(lo, hi)) in z.iter_mut().zip(&bounds) {
                *zi = zi.clamp(lo, hi);
            }
            z
        })
        .collect()
}
