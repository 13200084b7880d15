//! Beta-prime specific results: the rational Gini approximation and the
//! large-parameter limits of Gini, Hoover and Theil T.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::specfun::{lgamma, EULER_GAMMA};

/// Rational approximation (pq + 6p + 7q − 6) / (8(pq + q − 1)) to the BP
/// Gini index, accurate to a fraction of a percent for p ≥ 1, q ≥ 2 and
/// invariant under (p, q) → (q − 1, p + 1).
pub fn gini_bp_approx(p: f64, q: f64) -> f64 {
    (p * q + 6.0 * p + 7.0 * q - 6.0) / (8.0 * (p * q + q - 1.0))
}

/// Leading-order limits of the BP indices when one or both shape
/// parameters are large, each evaluated at the given (p, q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BpAsymptotics {
    /// G(p, q ≫ 1) = Γ(p + ½) / (√π Γ(p + 1)).
    pub gini_large_q: f64,
    /// G(p ≫ 1, q) = Γ(q − ½) / (√π Γ(q)).
    pub gini_large_p: f64,
    /// H(p, q ≫ 1) = e^(−p) p^(p−1) / Γ(p).
    pub hoover_large_q: f64,
    /// H(p ≫ 1, q) = e^(1−q) (q − 1)^(q−1) / Γ(q).
    pub hoover_large_p: f64,
    /// G(1, q ≫ 1) = ½ + 1/(4q).
    pub gini_unit_p: f64,
    /// G(p ≫ 1, 2) = ½ + 1/(4p).
    pub gini_q_two: f64,
    /// H(1, q ≫ 1) = 1/e + 1/(2eq).
    pub hoover_unit_p: f64,
    /// H(p ≫ 1, 2) = 1/e + 1/(2ep).
    pub hoover_q_two: f64,
    /// G(p ≫ 1, q ≫ 1) ≈ (p^(−½) + q^(−½)) / √(2π).
    pub gini_both_large: f64,
    /// H(p ≫ 1, q ≫ 1) ≈ (p^(−½) + q^(−½)) / √(2π), as published.
    pub hoover_both_large: f64,
    /// T_T(1, q ≫ 1) = 1 − γ_E + 1/(2q).
    pub theil_t_unit_p: f64,
    /// T_T(p ≫ 1, 2) = γ_E + 1/(2p).
    pub theil_t_q_two: f64,
    /// T_T(p ≫ 1, q ≫ 1) = 1/(2p) + 1/(2q).
    pub theil_t_both_large: f64,
}

/// Evaluates every large-parameter limit expression at (p, q).
pub fn bp_asymptotics(p: f64, q: f64) -> BpAsymptotics {
    let both = (p.powf(-0.5) + q.powf(-0.5)) / (2.0 * PI).sqrt();
    BpAsymptotics {
        gini_large_q: (lgamma(p + 0.5) - lgamma(p + 1.0)).exp() / PI.sqrt(),
        gini_large_p: (lgamma(q - 0.5) - lgamma(q)).exp() / PI.sqrt(),
        hoover_large_q: (-p + (p - 1.0) * p.ln() - lgamma(p)).exp(),
        hoover_large_p: (1.0 - q + (q - 1.0) * (q - 1.0).ln() - lgamma(q)).exp(),
        gini_unit_p: 0.5 + 0.25 / q,
        gini_q_two: 0.5 + 0.25 / p,
        hoover_unit_p: 1.0 / E + 0.5 / (E * q),
        hoover_q_two: 1.0 / E + 0.5 / (E * p),
        gini_both_large: both,
        hoover_both_large: both,
        theil_t_unit_p: 1.0 - EULER_GAMMA + 0.5 / q,
        theil_t_q_two: EULER_GAMMA + 0.5 / p,
        theil_t_both_large: 0.5 / p + 0.5 / q,
    }
}
