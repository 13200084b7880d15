//! DMMS = 1 − MPDF × HW, with MPDF the density at the mode and HW the full
//! width of the region where the density is at least MPDF/2.

use serde::{Deserialize, Serialize};

use crate::dist::{DistributionSpec, Kernel};
use crate::error::{Error, Result};

/// Target accuracy of the half-height crossings, relative to MPDF.
const CROSSING_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 400;

/// DMMS together with the ingredients it is built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dmms {
    pub value: f64,
    /// Density at the mode.
    pub mpdf: f64,
    /// Width of the region with density ≥ MPDF/2.
    pub half_width: f64,
    pub mode: f64,
    /// Left and right half-height crossings; the left one is 0 for densities
    /// that are maximal at the origin.
    pub left: f64,
    pub right: f64,
}

/// DMMS of a distribution, or `None` when the density is unbounded at the
/// origin (front exponent below zero) and MPDF does not exist.
pub fn dmms(spec: &DistributionSpec) -> Result<Option<Dmms>> {
    let kernel = spec.kernel();
    let mode = spec.mode();
    let mpdf = if mode > 0.0 {
        kernel.ln_pdf_positive(mode).exp()
    } else {
        kernel.density_at_zero()
    };
    if !mpdf.is_finite() {
        return Ok(None);
    }
    let half = 0.5 * mpdf;
    // Signed gap to the half height, in log-density to stay well scaled far
    // out in the tails.
    let gap = |y: f64| kernel.ln_pdf_positive(y.exp()) - half.ln();
    let step0 = kernel.log_anchor().1.max(1e-3);

    let right_start = if mode > 0.0 {
        mode.ln()
    } else {
        kernel_floor(&kernel)
    };
    let right = crossing(&gap, right_start, step0, 1.0)?;
    let left = if mode > 0.0 {
        crossing(&gap, mode.ln(), step0, -1.0)?
    } else {
        f64::NEG_INFINITY
    };
    let (left, right) = (left.exp(), right.exp());
    let half_width = right - left;
    let value = 1.0 - mpdf * half_width;
    Ok(Some(Dmms {
        value,
        mpdf,
        half_width,
        mode,
        left,
        right,
    }))
}

/// A point in ln x close enough to the origin that a monotone density is
/// still above half its value at 0.
fn kernel_floor(kernel: &Kernel) -> f64 {
    let (centre, width) = kernel.log_anchor();
    centre - 40.0 * width.max(1.0)
}

/// Finds where `gap` crosses zero moving from `start` (where it is ≥ 0) in
/// `direction`, first bracketing by doubling steps and then bisecting.
fn crossing<G: Fn(f64) -> f64>(gap: &G, start: f64, step0: f64, direction: f64) -> Result<f64> {
    let mut inside = start;
    let mut step = step0;
    let mut outside = start + direction * step;
    while gap(outside) >= 0.0 {
        inside = outside;
        step *= 2.0;
        outside += direction * step;
        if outside.abs() > 1e3 {
            return Err(Error::NonConvergence {
                routine: "dmms",
                detail: "half-height crossing not bracketed".into(),
            });
        }
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (inside + outside);
        let g = gap(mid);
        // |Δ ln f| < ε is |f − MPDF/2| < ε·MPDF/2.
        if g.abs() < CROSSING_TOL || mid == inside || mid == outside {
            return Ok(mid);
        }
        if g >= 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(0.5 * (inside + outside))
}
