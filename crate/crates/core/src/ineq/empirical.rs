//! Indices of a sample under its empirical measure.

use std::f64::consts::PI;

use super::{Dmms, IndexMethod, IndexReport};
use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::Quantity;

/// Grid resolution of the kernel density estimate used for DMMS.
const KDE_GRID: usize = 4096;
/// Kernel support in bandwidths.
const KDE_CUTOFF: f64 = 6.0;

/// Gini, Hoover, Theil T, Theil L and DMMS of a sample.
///
/// Gini uses the sorted-rank form 2Σ i·x₍ᵢ₎ / (nΣx) − (n+1)/n. DMMS is taken
/// from a Gaussian kernel density estimate (see [`empirical_dmms`]).
pub fn empirical_indices(sample: &Sample) -> Result<IndexReport> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::DegenerateSample(format!(
            "empirical indices need at least 2 observations, got {n}"
        )));
    }
    let nf = n as f64;
    let values = sample.values();
    let total: f64 = values.iter().sum();
    let mean = total / nf;
    let ranked: f64 = values
        .iter()
        .enumerate()
        .map(|(i, x)| (i + 1) as f64 * x)
        .sum();
    let gini = 2.0 * ranked / (nf * total) - (nf + 1.0) / nf;
    let hoover = values.iter().map(|x| (x - mean).abs()).sum::<f64>() / (2.0 * mean * nf);
    let theil_t = values
        .iter()
        .map(|x| {
            let r = x / mean;
            r * r.ln()
        })
        .sum::<f64>()
        / nf;
    let theil_l = values.iter().map(|x| (mean / x).ln()).sum::<f64>() / nf;
    let dmms = empirical_dmms(sample)?.value;
    Ok(IndexReport {
        // Rounding can push exact-equality samples a hair below zero.
        gini: Quantity::Value(gini.max(0.0)),
        hoover: Quantity::Value(hoover),
        theil_t: Quantity::Value(theil_t.max(0.0)),
        theil_l: Quantity::Value(theil_l.max(0.0)),
        dmms: Quantity::Value(dmms),
        method: IndexMethod::Empirical,
    })
}

/// Silverman's rule-of-thumb bandwidth 0.9·min(sd, IQR/1.34)·n^(−1/5).
fn silverman_bandwidth(sample: &Sample) -> f64 {
    let spread = sample.std_dev();
    let iqr = (sample.quantile(0.75) - sample.quantile(0.25)) / 1.34;
    let scale = if iqr > 0.0 { spread.min(iqr) } else { spread };
    0.9 * scale * (sample.len() as f64).powf(-0.2)
}

/// DMMS of a sample from a binned Gaussian kernel density estimate with
/// Silverman bandwidth, evaluated on a uniform grid over the bulk of the
/// data. A constant sample is a point mass and gets DMMS 0.
pub fn empirical_dmms(sample: &Sample) -> Result<Dmms> {
    if sample.is_constant() {
        let x = sample.values()[0];
        return Ok(Dmms {
            value: 0.0,
            mpdf: f64::INFINITY,
            half_width: 0.0,
            mode: x,
            left: x,
            right: x,
        });
    }
    let h = silverman_bandwidth(sample);
    let n = sample.len() as f64;
    // The grid covers the central 99.8% plus a kernel margin; observations
    // outside it still count towards the normalization through n.
    let lo = (sample.quantile(0.001) - KDE_CUTOFF * h).max(0.0);
    let hi = sample.quantile(0.999) + KDE_CUTOFF * h;
    let dx = (hi - lo) / (KDE_GRID - 1) as f64;
    let mut counts = vec![0.0; KDE_GRID];
    for &x in sample.values() {
        let pos = (x - lo) / dx;
        if pos < 0.0 || pos > (KDE_GRID - 1) as f64 {
            continue;
        }
        let i = (pos.floor() as usize).min(KDE_GRID - 2);
        let frac = pos - i as f64;
        counts[i] += 1.0 - frac;
        counts[i + 1] += frac;
    }
    let reach = ((KDE_CUTOFF * h / dx).ceil() as usize).max(1);
    let kernel: Vec<f64> = (0..=reach)
        .map(|k| {
            let u = k as f64 * dx / h;
            (-0.5 * u * u).exp() / (h * (2.0 * PI).sqrt() * n)
        })
        .collect();
    let density: Vec<f64> = (0..KDE_GRID)
        .map(|i| {
            let from = i.saturating_sub(reach);
            let to = (i + reach).min(KDE_GRID - 1);
            (from..=to).map(|j| counts[j] * kernel[i.abs_diff(j)]).sum()
        })
        .collect();
    let (peak, &mpdf) = density
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is non-empty");
    let half = 0.5 * mpdf;
    let grid = |i: usize| lo + i as f64 * dx;
    let interpolate = |i: usize, j: usize| {
        let (fi, fj) = (density[i], density[j]);
        grid(i) + (grid(j) - grid(i)) * (half - fi) / (fj - fi)
    };
    let right = (peak..KDE_GRID - 1)
        .find(|&i| density[i + 1] < half)
        .map_or(hi, |i| interpolate(i, i + 1));
    let left = (1..=peak)
        .rev()
        .find(|&i| density[i - 1] < half)
        .map_or(lo, |i| interpolate(i, i - 1));
    let half_width = right - left;
    Ok(Dmms {
        value: 1.0 - mpdf * half_width,
        mpdf,
        half_width,
        mode: grid(peak),
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_equality() {
        let s = Sample::new(vec![1.0; 4]).unwrap();
        let r = empirical_indices(&s).unwrap();
        for q in [r.gini, r.hoover, r.theil_t, r.theil_l, r.dmms] {
            assert_eq!(q.unwrap(), 0.0);
        }
    }

    #[test]
    fn two_points() {
        let s = Sample::new(vec![1.0, 3.0]).unwrap();
        let r = empirical_indices(&s).unwrap();
        assert!((r.gini.unwrap() - 0.25).abs() < 1e-15);
        assert!((r.hoover.unwrap() - 0.25).abs() < 1e-15);
        let t = (0.5 * (0.5f64).ln() + 1.5 * 1.5f64.ln()) / 2.0;
        assert!((r.theil_t.unwrap() - t).abs() < 1e-15);
        let l = (2f64.ln() + (2.0f64 / 3.0).ln()) / 2.0;
        assert!((r.theil_l.unwrap() - l).abs() < 1e-15);
    }

    #[test]
    fn gini_matches_pairwise_definition() {
        let xs = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6, 5.0];
        let s = Sample::new(xs.to_vec()).unwrap();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let pairs: f64 = xs
            .iter()
            .flat_map(|a| xs.iter().map(move |b| (a - b).abs()))
            .sum();
        let direct = pairs / (2.0 * n * n * mean);
        assert!((empirical_indices(&s).unwrap().gini.unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn kde_dmms_tracks_the_density() {
        let spec = crate::DistributionSpec::ln(0.0, 0.62).unwrap();
        let s = spec.sample(20_000, 11).unwrap();
        let exact = super::super::dmms(&spec).unwrap().unwrap().value;
        let estimate = empirical_dmms(&s).unwrap().value;
        assert!((estimate - exact).abs() < 0.03, "{estimate} vs {exact}");
    }
}
