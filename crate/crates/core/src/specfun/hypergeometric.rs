//! Gauss ₂F₁ on the real line and ₃F₂ at unit argument.

use super::gamma::lgamma;
use crate::error::{Error, Result};

const SERIES_EPS: f64 = 1e-16;
const MAX_TERMS: usize = 1_000_000;

/// Relative agreement required between successive extrapolated ₃F₂ sums.
const RICHARDSON_TOL: f64 = 1e-14;

/// Loosest accepted extrapolation agreement before reporting failure.
const RICHARDSON_ACCEPT: f64 = 1e-10;

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for real z < 1.
///
/// For z ∈ [0, 1) the power series is summed directly. Negative arguments
/// are first mapped into (0, 1) with the Pfaff transformation
/// ₂F₁(a, b; c; z) = (1−z)^(−b) ₂F₁(c−a, b; c; z/(z−1)), so z = −1 becomes
/// z = 1/2 and the alternating series is avoided.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_non_positive_integer(c) {
        return Err(Error::domain(
            "hyp2f1",
            format!("c must not be a non-positive integer, got {c}"),
        ));
    }
    if !(z < 1.0) || !z.is_finite() {
        return Err(Error::Divergence {
            routine: "hyp2f1",
            detail: format!("series requires z < 1, got {z}"),
        });
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > 0.0 {
        return hyp2f1_series(a, b, c, z);
    }
    let w = z / (z - 1.0);
    // Pick the Pfaff variant whose new first parameter is smaller; it
    // converges faster and with less cancellation.
    if (c - a).abs() <= (c - b).abs() {
        Ok((1.0 - z).powf(-b) * hyp2f1_series(c - a, b, c, w)?)
    } else {
        Ok((1.0 - z).powf(-a) * hyp2f1_series(a, c - b, c, w)?)
    }
}

fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    // Below this index a parameter near a negative integer can make a single
    // term tiny without the series having converged.
    let settle = a.abs().max(b.abs()).max(c.abs()) + 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_TERMS {
        let n = n as f64;
        let ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        // Once the ratio has settled below one the remainder is bounded by a
        // geometric tail.
        let r = ratio.abs();
        if n > settle && r < 1.0 && term.abs() / (1.0 - r) < SERIES_EPS * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        routine: "hyp2f1 series",
        detail: format!("a = {a}, b = {b}, c = {c}, z = {z}"),
    })
}

/// A ₃F₂(a₁, a₂, a₃; b₁, b₂; 1) series scaled by exp(`log_scale`).
#[derive(Debug, Clone, Copy)]
struct UnitSeries {
    upper: [f64; 3],
    lower: [f64; 2],
    log_scale: f64,
}

impl UnitSeries {
    /// Saalschützian excess s = b₁ + b₂ − a₁ − a₂ − a₃; the series converges
    /// iff s > 0, with partial-sum error decaying like N^(−s).
    fn excess(&self) -> f64 {
        self.lower.iter().sum::<f64>() - self.upper.iter().sum::<f64>()
    }

    /// Equivalent series reachable through one two-term Thomae relation.
    fn thomae_images(&self) -> Vec<UnitSeries> {
        let s = self.excess();
        let [d, e] = self.lower;
        let mut out = Vec::new();
        for i in 0..3 {
            let a = self.upper[i];
            let b = self.upper[(i + 1) % 3];
            let c = self.upper[(i + 2) % 3];
            // ₃F₂(a,b,c;d,e;1) = Γ(d)Γ(e)Γ(s) / (Γ(a)Γ(s+b)Γ(s+c))
            //                    · ₃F₂(d−a, e−a, s; s+b, s+c; 1)
            if a > 0.0 && s + b > 0.0 && s + c > 0.0 {
                out.push(UnitSeries {
                    upper: [d - a, e - a, s],
                    lower: [s + b, s + c],
                    log_scale: self.log_scale + lgamma(d) + lgamma(e) + lgamma(s)
                        - lgamma(a)
                        - lgamma(s + b)
                        - lgamma(s + c),
                });
            }
            // ₃F₂(a,b,c;d,e;1) = Γ(e)Γ(s) / (Γ(e−a)Γ(s+a))
            //                    · ₃F₂(a, d−b, d−c; d, s+a; 1)
            for (dd, ee) in [(d, e), (e, d)] {
                if ee - a > 0.0 && s + a > 0.0 {
                    out.push(UnitSeries {
                        upper: [a, dd - b, dd - c],
                        lower: [dd, s + a],
                        log_scale: self.log_scale + lgamma(ee) + lgamma(s)
                            - lgamma(ee - a)
                            - lgamma(s + a),
                    });
                }
            }
        }
        out
    }

    /// Sums the series, extrapolating the partial sums at N, 2N, 4N, …
    /// against the known error expansion N^(−s)·(c₀ + c₁/N + …).
    fn sum(&self) -> Result<f64> {
        let s = self.excess();
        let scale = self
            .upper
            .iter()
            .chain(&self.lower)
            .fold(1.0f64, |m, v| m.max(v.abs()));
        let mut checkpoint = (64.0f64).max(8.0 * scale).ceil() as usize;
        let mut partials: Vec<f64> = Vec::new();
        let mut table: Vec<Vec<f64>> = Vec::new();
        let mut term = 1.0;
        let mut total = 0.0;
        let mut best = f64::NAN;
        let mut last_change = f64::INFINITY;
        for n in 0..MAX_TERMS {
            total += term;
            let nf = n as f64;
            term *= (self.upper[0] + nf) * (self.upper[1] + nf) * (self.upper[2] + nf)
                / ((self.lower[0] + nf) * (self.lower[1] + nf) * (nf + 1.0));
            if term == 0.0 {
                return Ok(total * self.log_scale.exp());
            }
            // Remainder bound: terms decay like n^(−s−1) so the tail after N
            // terms is about N·|t_N|/s.
            if nf > scale + 8.0 && (nf + 1.0) * term.abs() / s < SERIES_EPS * total.abs() {
                return Ok(total * self.log_scale.exp());
            }
            if n + 1 == checkpoint {
                partials.push(total);
                let k = partials.len() - 1;
                let mut row = vec![partials[k]];
                if k > 0 {
                    for j in 0..k {
                        let factor = 2f64.powf(s + j as f64);
                        let prev = table[k - 1][j];
                        row.push((factor * row[j] - prev) / (factor - 1.0));
                    }
                }
                let estimate = *row.last().unwrap();
                if k >= 2 {
                    last_change = (estimate - best).abs() / estimate.abs().max(f64::MIN_POSITIVE);
                    if last_change < RICHARDSON_TOL {
                        return Ok(estimate * self.log_scale.exp());
                    }
                }
                best = estimate;
                table.push(row);
                checkpoint *= 2;
            }
        }
        if last_change < RICHARDSON_ACCEPT {
            return Ok(best * self.log_scale.exp());
        }
        Err(Error::NonConvergence {
            routine: "hyp3f2_unit",
            detail: format!(
                "upper = {:?}, lower = {:?}, extrapolation change {last_change:e}",
                self.upper, self.lower
            ),
        })
    }
}

/// ₃F₂(a₁, a₂, a₃; b₁, b₂; 1) for real parameters with positive lower
/// parameters.
///
/// Among the series reachable through the two-term Thomae relations, the one
/// with the largest excess b₁+b₂−a₁−a₂−a₃ is summed; slow remainders are
/// removed by Richardson extrapolation on the partial sums.
pub fn hyp3f2_unit(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<f64> {
    if is_non_positive_integer(b1) || is_non_positive_integer(b2) {
        return Err(Error::domain(
            "hyp3f2_unit",
            format!("lower parameters must not be non-positive integers, got ({b1}, {b2})"),
        ));
    }
    let series = UnitSeries {
        upper: [a1, a2, a3],
        lower: [b1, b2],
        log_scale: 0.0,
    };
    let s = series.excess();
    if !(s > 0.0) {
        return Err(Error::Divergence {
            routine: "hyp3f2_unit",
            detail: format!("b1 + b2 − a1 − a2 − a3 = {s} must be positive"),
        });
    }
    if series.upper.iter().any(|&a| is_non_positive_integer(a)) {
        return series.sum();
    }
    let chosen = if b1 > 0.0 && b2 > 0.0 {
        series
            .thomae_images()
            .into_iter()
            .filter(|t| t.excess() > 0.0 && t.lower.iter().all(|&b| b > 0.0))
            .fold(
                series,
                |best, t| if t.excess() > best.excess() { t } else { best },
            )
    } else {
        series
    };
    chosen.sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss_unit(a: f64, b: f64, c: f64) -> f64 {
        (lgamma(c) + lgamma(c - a - b) - lgamma(c - a) - lgamma(c - b)).exp()
    }

    #[test]
    fn hyp2f1_trivial_and_log() {
        assert_eq!(hyp2f1(1.3, 2.2, 3.1, 0.0).unwrap(), 1.0);
        let expected = 2.0 * 2f64.ln();
        assert!((hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap() - expected).abs() < 1e-14);
        // −ln(1−z)/z at z = −1 is ln 2
        assert!((hyp2f1(1.0, 1.0, 2.0, -1.0).unwrap() - 2f64.ln()).abs() < 1e-14);
        // (1−z)^(−a) when b = c
        let v = hyp2f1(2.5, 3.0, 3.0, -1.0).unwrap();
        assert!((v - 2f64.powf(-2.5)).abs() < 1e-14);
    }

    #[test]
    fn hyp2f1_errors() {
        assert!(hyp2f1(1.0, 1.0, -2.0, 0.5).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn hyp3f2_reduces_to_gauss_sum() {
        for &(a1, a2, b1, b2) in &[
            (1.0, 2.0, 2.5, 4.5),
            (0.3, 0.7, 1.2, 2.1),
            (1.0, 5.5, 3.0, 8.0),
        ] {
            let v = hyp3f2_unit(a1, a2, b1, b1, b2).unwrap();
            let g = gauss_unit(a1, a2, b2);
            assert!((v / g - 1.0).abs() < 1e-12, "{v} vs {g}");
        }
    }

    #[test]
    fn hyp3f2_slow_series() {
        // ₃F₂(1,1,1;2,2;1) = ζ(2); excess 1 and no Thomae image improves on it
        let v = hyp3f2_unit(1.0, 1.0, 1.0, 2.0, 2.0).unwrap();
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-11);
    }

    #[test]
    fn hyp3f2_rejects_divergent() {
        assert!(hyp3f2_unit(1.0, 2.0, 3.0, 2.0, 3.0).is_err());
    }
}
