//! Closed-form indices per family.

use std::f64::consts::{LN_2, PI, SQRT_2};

use crate::dist::DistributionSpec;
use crate::error::{Error, Result};
use crate::specfun::{erf, hyp2f1, hyp3f2_unit, inc_beta_pair, inc_gamma, lbeta, lgamma, psi};
use crate::Quantity;

/// Agreement required between the two BP Gini and Hoover representations.
const BP_CROSS_CHECK: f64 = 1e-9;

fn mean_of(spec: &DistributionSpec) -> Option<f64> {
    spec.mean().value()
}

/// Gini index.
///
/// BP is evaluated both through the ₃F₂ form shared with GB2 and through
/// 2B(2p, 2q−1)/(p B²(p, q)); a disagreement beyond 1e-9 is reported as a
/// numerical failure.
pub fn gini_closed(spec: &DistributionSpec) -> Result<Quantity> {
    if !spec.mean_exists() {
        return Ok(Quantity::NonExistent);
    }
    let value = match *spec {
        DistributionSpec::Gb2 { p, q, alpha, .. } => gini_gb2(p, q, 1.0 / alpha)?,
        DistributionSpec::Bp { p, q, .. } => {
            let product = gini_bp_product(p, q);
            let series = gini_gb2(p, q, 1.0)?;
            if (series - product).abs() > BP_CROSS_CHECK * product.max(1.0) {
                return Err(Error::NonConvergence {
                    routine: "gini_closed",
                    detail: format!(
                        "BP({p}, {q}): 3F2 form {series} disagrees with product form {product}"
                    ),
                });
            }
            product
        }
        DistributionSpec::Giga { alpha, gamma, .. } => gini_giga(alpha, 1.0 / gamma)?,
        DistributionSpec::Iga { alpha, .. } => {
            (lgamma(alpha - 0.5) - lgamma(alpha)).exp() / PI.sqrt()
        }
        DistributionSpec::Gga { alpha, gamma, .. } => gini_gga(alpha, 1.0 / gamma)?,
        DistributionSpec::Ga { alpha, .. } => {
            (lgamma(alpha + 0.5) - lgamma(alpha + 1.0)).exp() / PI.sqrt()
        }
        DistributionSpec::Ln { sigma, .. } => erf(sigma / 2.0),
    };
    Ok(Quantity::Value(value))
}

/// BP Gini as 2B(2p, 2q−1)/(p B²(p, q)).
pub fn gini_bp_product(p: f64, q: f64) -> f64 {
    (LN_2 + lbeta(2.0 * p, 2.0 * q - 1.0) - p.ln() - 2.0 * lbeta(p, q)).exp()
}

/// GB2 Gini with `a` = 1/α.
fn gini_gb2(p: f64, q: f64, a: f64) -> Result<f64> {
    let prefactor = (lbeta(2.0 * q - a, 2.0 * p + a) - lbeta(p, q) - lbeta(p + a, q - a)).exp();
    let upper = hyp3f2_unit(1.0, p + q, 2.0 * p + a, p + 1.0, 2.0 * (p + q))?;
    let lower = hyp3f2_unit(1.0, p + q, 2.0 * p + a, p + 1.0 + a, 2.0 * (p + q))?;
    Ok(prefactor * (upper / p - lower / (p + a)))
}

/// GIGa Gini with `a` = 1/γ.
fn gini_giga(alpha: f64, a: f64) -> Result<f64> {
    let shifted = alpha - a;
    let first = hyp2f1(shifted, 2.0 * alpha - a, shifted + 1.0, -1.0)? / shifted;
    let second = hyp2f1(alpha, 2.0 * alpha - a, alpha + 1.0, -1.0)? / alpha;
    Ok((first - second) * (-lbeta(alpha, shifted)).exp())
}

/// GGa Gini with `a` = 1/γ.
fn gini_gga(alpha: f64, a: f64) -> Result<f64> {
    let b = 2.0 * alpha + a;
    let first = hyp2f1(1.0, b, alpha + 1.0, 0.5)? / alpha;
    let second = hyp2f1(1.0, b, alpha + a + 1.0, 0.5)? / (alpha + a);
    Ok((first - second) * (-b * LN_2 - lbeta(alpha, alpha + a)).exp())
}

/// Hoover (Pietra) index, F(μ) − F₁(μ) with F₁ the first-moment
/// distribution.
pub fn hoover_closed(spec: &DistributionSpec) -> Result<Quantity> {
    let Some(mu) = mean_of(spec) else {
        return Ok(Quantity::NonExistent);
    };
    let value = match *spec {
        DistributionSpec::Gb2 { p, q, alpha, beta } => {
            hoover_beta_prime(p, q, 1.0 / alpha, alpha * (mu / beta).ln())?
        }
        DistributionSpec::Bp { p, q, beta } => {
            let product = hoover_bp_product(p, q);
            let difference = hoover_beta_prime(p, q, 1.0, (mu / beta).ln())?;
            if (difference - product).abs() > BP_CROSS_CHECK * product.max(1.0) {
                return Err(Error::NonConvergence {
                    routine: "hoover_closed",
                    detail: format!(
                        "BP({p}, {q}): CDF form {difference} disagrees with product form {product}"
                    ),
                });
            }
            product
        }
        DistributionSpec::Giga { alpha, gamma, beta } => {
            let y = (gamma * (beta / mu).ln()).exp();
            inc_gamma(alpha, y)?.1 - inc_gamma(alpha - 1.0 / gamma, y)?.1
        }
        DistributionSpec::Iga { alpha, beta } => {
            let y = beta / mu;
            (-y + (alpha - 1.0) * y.ln() - lgamma(alpha)).exp()
        }
        DistributionSpec::Gga { alpha, gamma, beta } => {
            let y = (gamma * (mu / beta).ln()).exp();
            inc_gamma(alpha + 1.0 / gamma, y)?.1 - inc_gamma(alpha, y)?.1
        }
        DistributionSpec::Ga { alpha, beta } => {
            let y = mu / beta;
            (-y + alpha * y.ln() - lgamma(alpha + 1.0)).exp()
        }
        DistributionSpec::Ln { sigma, .. } => erf(sigma / (2.0 * SQRT_2)),
    };
    Ok(Quantity::Value(value))
}

/// BP Hoover as p^(p−1)(q−1)^(q−1)(p+q−1)^(1−p−q)/B(p, q).
pub fn hoover_bp_product(p: f64, q: f64) -> f64 {
    ((p - 1.0) * p.ln() + (q - 1.0) * (q - 1.0).ln()
        - (p + q - 1.0) * (p + q - 1.0).ln()
        - lbeta(p, q))
    .exp()
}

/// I(z, p, q) − I(z, p+a, q−a) at z = t/(1+t), ln t = `log_t`.
fn hoover_beta_prime(p: f64, q: f64, a: f64, log_t: f64) -> Result<f64> {
    let z = 1.0 / (1.0 + (-log_t).exp());
    let w = 1.0 / (1.0 + log_t.exp());
    let (lower, _) = inc_beta_pair(z, w, p, q)?;
    let (shifted, _) = inc_beta_pair(z, w, p + a, q - a)?;
    Ok(lower - shifted)
}

/// Theil T index E[(X/μ) ln(X/μ)].
pub fn theil_t_closed(spec: &DistributionSpec) -> Result<Quantity> {
    if !spec.mean_exists() {
        return Ok(Quantity::NonExistent);
    }
    let value = match *spec {
        DistributionSpec::Gb2 { p, q, alpha, .. } => theil_t_beta_prime(p, q, 1.0 / alpha),
        DistributionSpec::Bp { p, q, .. } => theil_t_beta_prime(p, q, 1.0),
        DistributionSpec::Giga { alpha, gamma, .. } => theil_t_inverse_gamma(alpha, 1.0 / gamma),
        DistributionSpec::Iga { alpha, .. } => theil_t_inverse_gamma(alpha, 1.0),
        DistributionSpec::Gga { alpha, gamma, .. } => theil_t_gamma(alpha, 1.0 / gamma),
        DistributionSpec::Ga { alpha, .. } => theil_t_gamma(alpha, 1.0),
        DistributionSpec::Ln { sigma, .. } => 0.5 * sigma * sigma,
    };
    Ok(Quantity::Value(value))
}

/// Theil L index E[ln(μ/X)].
pub fn theil_l_closed(spec: &DistributionSpec) -> Result<Quantity> {
    if !spec.mean_exists() {
        return Ok(Quantity::NonExistent);
    }
    let value = match *spec {
        DistributionSpec::Gb2 { p, q, alpha, .. } => theil_l_beta_prime(p, q, 1.0 / alpha),
        DistributionSpec::Bp { p, q, .. } => theil_l_beta_prime(p, q, 1.0),
        DistributionSpec::Giga { alpha, gamma, .. } => theil_l_inverse_gamma(alpha, 1.0 / gamma),
        DistributionSpec::Iga { alpha, .. } => theil_l_inverse_gamma(alpha, 1.0),
        DistributionSpec::Gga { alpha, gamma, .. } => theil_l_gamma(alpha, 1.0 / gamma),
        DistributionSpec::Ga { alpha, .. } => theil_l_gamma(alpha, 1.0),
        DistributionSpec::Ln { sigma, .. } => 0.5 * sigma * sigma,
    };
    Ok(Quantity::Value(value))
}

fn theil_t_beta_prime(p: f64, q: f64, a: f64) -> f64 {
    a * (psi(p + a) - psi(q - a)) + lbeta(p, q) - lbeta(p + a, q - a)
}

fn theil_l_beta_prime(p: f64, q: f64, a: f64) -> f64 {
    a * (psi(q) - psi(p)) - (lbeta(p, q) - lbeta(p + a, q - a))
}

fn theil_t_inverse_gamma(alpha: f64, a: f64) -> f64 {
    -a * psi(alpha - a) + lgamma(alpha) - lgamma(alpha - a)
}

fn theil_l_inverse_gamma(alpha: f64, a: f64) -> f64 {
    a * psi(alpha) - (lgamma(alpha) - lgamma(alpha - a))
}

fn theil_t_gamma(alpha: f64, a: f64) -> f64 {
    a * psi(alpha + a) + lgamma(alpha) - lgamma(alpha + a)
}

fn theil_l_gamma(alpha: f64, a: f64) -> f64 {
    -a * psi(alpha) + lgamma(alpha + a) - lgamma(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(q: Result<Quantity>) -> f64 {
        q.unwrap().unwrap()
    }

    #[test]
    fn bp_extremes() {
        let bp = DistributionSpec::bp(1.0, 2.0, 3.7).unwrap();
        assert!((value(gini_closed(&bp)) - 2.0 / 3.0).abs() < 1e-12);
        assert!((value(hoover_closed(&bp)) - 0.5).abs() < 1e-12);
        assert!((value(theil_t_closed(&bp)) - 1.0).abs() < 1e-12);
        assert!((value(theil_l_closed(&bp)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lognormal_values() {
        let ln = DistributionSpec::ln(4.5178, 0.62).unwrap();
        assert!((value(gini_closed(&ln)) - 0.3389).abs() < 5e-5);
        assert!((value(hoover_closed(&ln)) - 0.2434).abs() < 5e-5);
        assert!((value(theil_t_closed(&ln)) - 0.1922).abs() < 5e-5);
    }

    #[test]
    fn missing_mean_gives_non_existent() {
        let heavy = DistributionSpec::gb2(2.0, 0.5, 1.5, 1.0).unwrap();
        assert_eq!(gini_closed(&heavy).unwrap(), Quantity::NonExistent);
        assert_eq!(hoover_closed(&heavy).unwrap(), Quantity::NonExistent);
        assert_eq!(theil_t_closed(&heavy).unwrap(), Quantity::NonExistent);
        assert_eq!(theil_l_closed(&heavy).unwrap(), Quantity::NonExistent);
        let iga = DistributionSpec::iga(0.9, 1.0).unwrap();
        assert_eq!(gini_closed(&iga).unwrap(), Quantity::NonExistent);
    }

    #[test]
    fn general_forms_reduce_to_special_cases() {
        // GB2 at α = 1 against BP; GGa/GIGa at γ = 1 against Ga/IGa.
        let pairs = [
            (
                DistributionSpec::gb2(2.5, 3.5, 1.0, 2.0).unwrap(),
                DistributionSpec::bp(2.5, 3.5, 2.0).unwrap(),
            ),
            (
                DistributionSpec::gga(2.5, 1.0, 2.0).unwrap(),
                DistributionSpec::ga(2.5, 2.0).unwrap(),
            ),
            (
                DistributionSpec::giga(2.5, 1.0, 2.0).unwrap(),
                DistributionSpec::iga(2.5, 2.0).unwrap(),
            ),
        ];
        for (general, special) in pairs {
            for f in [gini_closed, hoover_closed, theil_t_closed, theil_l_closed] {
                let (g, s) = (value(f(&general)), value(f(&special)));
                assert!((g - s).abs() < 1e-10, "{general} vs {special}: {g} vs {s}");
            }
        }
    }

    #[test]
    fn bp_theil_swap() {
        for (p, q) in [(1.5, 2.5), (3.0, 4.0), (7.2, 2.2)] {
            let a = DistributionSpec::bp(p, q, 1.0).unwrap();
            let b = DistributionSpec::bp(q - 1.0, p + 1.0, 1.0).unwrap();
            assert!((value(theil_t_closed(&a)) - value(theil_l_closed(&b))).abs() < 1e-12);
        }
    }
}
