//! Power-law tail regression and top-fraction cuts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::Sample;

/// Tail window used when none is given.
pub const DEFAULT_TAIL_FRACTION: f64 = 0.1;
/// Largest order statistics left out of the regression by default.
pub const DEFAULT_EXCLUDED_TOP: usize = 3;
/// Fewest observations a tail window must contain.
pub const MIN_TAIL_POINTS: usize = 30;

/// Least-squares slope of ln S(x) against ln x over the upper tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub slope: f64,
    pub stderr: f64,
    pub intercept: f64,
    /// Points used in the regression.
    pub points: usize,
    pub top_fraction: f64,
    pub excluded_top: usize,
}

/// [`tail_slope_excluding`] with the default exclusion of the
/// [`DEFAULT_EXCLUDED_TOP`] largest observations.
pub fn tail_slope(sample: &Sample, top_fraction: f64) -> Result<TailFit> {
    tail_slope_excluding(sample, top_fraction, DEFAULT_EXCLUDED_TOP)
}

/// Regresses ln(1 − i/n) on ln x₍ᵢ₎ for the ⌊top_fraction·n⌋ largest
/// observations, leaving out the `excluded_top` largest of them (the very
/// largest has empirical survival 0 and the next few are the noisiest).
pub fn tail_slope_excluding(
    sample: &Sample,
    top_fraction: f64,
    excluded_top: usize,
) -> Result<TailFit> {
    if !(top_fraction > 0.0 && top_fraction < 1.0) {
        return Err(Error::param(
            "top_fraction",
            top_fraction,
            "must lie in (0, 1)",
        ));
    }
    let n = sample.len();
    let window = (top_fraction * n as f64).floor() as usize;
    if window < MIN_TAIL_POINTS {
        return Err(Error::DegenerateSample(format!(
            "tail window holds {window} observations, need at least {MIN_TAIL_POINTS}"
        )));
    }
    let excluded = excluded_top.max(1);
    if window <= excluded + 2 {
        return Err(Error::DegenerateSample(format!(
            "excluding {excluded} of {window} tail points leaves too few to regress"
        )));
    }
    let values = sample.values();
    let nf = n as f64;
    let points: Vec<(f64, f64)> = (n - window..n - excluded)
        .map(|i| (values[i].ln(), (1.0 - (i + 1) as f64 / nf).ln()))
        .collect();
    if values[n - window] == values[n - excluded - 1] {
        return Err(Error::DegenerateSample("all tail values are equal".into()));
    }
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let rss: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(TailFit {
        slope,
        stderr: (rss / (m - 2.0) / sxx).sqrt(),
        intercept,
        points: points.len(),
        top_fraction,
        excluded_top: excluded,
    })
}

/// Number of observations [`tail_cut`] removes: ⌈top_fraction·n⌉, with
/// products that are integers up to rounding treated as exact.
pub fn tail_cut_count(n: usize, top_fraction: f64) -> usize {
    let raw = top_fraction * n as f64;
    let nearest = raw.round();
    if (raw - nearest).abs() <= 1e-9 * raw.max(1.0) {
        nearest as usize
    } else {
        raw.ceil() as usize
    }
}

/// The sample with its ⌈top_fraction·n⌉ largest observations removed.
pub fn tail_cut(sample: &Sample, top_fraction: f64) -> Result<Sample> {
    if !(top_fraction > 0.0 && top_fraction < 0.5) {
        return Err(Error::param(
            "top_fraction",
            top_fraction,
            "must lie in (0, 0.5)",
        ));
    }
    sample.without_largest(tail_cut_count(sample.len(), top_fraction))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pareto_grid() {
        let n = 20_000;
        // x₍ᵢ₎ placed where the true survival equals the empirical 1 − i/n;
        // the maximum, where that is 0, only has to be the largest value.
        let mut values: Vec<f64> = (1..n)
            .map(|i| 5.0 * (1.0 - i as f64 / n as f64).powf(-1.0 / 3.0))
            .collect();
        values.push(2.0 * values[n - 2]);
        let fit = tail_slope(&Sample::new(values).unwrap(), 0.1).unwrap();
        assert!((fit.slope + 3.0).abs() < 0.01, "{}", fit.slope);
        assert_eq!(fit.points, 2000 - 3);
    }

    #[test]
    fn window_too_small() {
        let s = Sample::new((1..=100).map(f64::from).collect()).unwrap();
        assert!(matches!(
            tail_slope(&s, 0.1),
            Err(Error::DegenerateSample(_))
        ));
        assert!(tail_slope(&s, 0.3).is_ok());
    }

    #[test]
    fn flat_tail_is_degenerate() {
        let mut v: Vec<f64> = (1..=300).map(f64::from).collect();
        v.extend(std::iter::repeat_n(1000.0, 100));
        let s = Sample::new(v).unwrap();
        assert!(matches!(
            tail_slope(&s, 0.2),
            Err(Error::DegenerateSample(_))
        ));
    }

    #[test]
    fn cut_counts() {
        assert_eq!(tail_cut_count(100_000, 0.0005), 50);
        assert_eq!(tail_cut_count(100_000, 0.001), 100);
        assert_eq!(tail_cut_count(999, 0.001), 1);
        let s = Sample::new((1..=100_000).map(f64::from).collect()).unwrap();
        assert_eq!(tail_cut(&s, 0.0005).unwrap().len(), 99_950);
        assert!(tail_cut(&s, 0.5).is_err());
        assert!(tail_cut(&s, 0.0).is_err());
    }
}
