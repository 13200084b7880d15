//! Nelder–Mead downhill simplex.
//!
//! Termination is on the simplex diameter (largest coordinate distance of any
//! vertex from the best one), which is what the fitter's parameter-precision
//! target is phrased in.

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// NaN counts as +∞ so that invalid regions are simply uphill.
fn clean(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Weight of the exact (L1) exterior penalty that keeps the search inside
/// the box; it only has to exceed the objective's slope at the faces.
const BOX_PENALTY: f64 = 1e3;

/// Minimizes `f` over the box `bounds`.
///
/// Outside the box the objective is f at the nearest box point plus an L1
/// penalty on the excess. Clamping the trial points instead would flatten
/// the simplex onto a face and stall it there; with the penalty it keeps its
/// full dimension, and optima on a face converge like interior ones. The
/// returned point is clamped into the box.
pub(crate) fn minimize<F: Fn(&[f64]) -> f64>(
    f: F,
    start: &[f64],
    step: f64,
    tolerance: f64,
    max_iterations: usize,
    bounds: &[(f64, f64)],
) -> Minimum {
    let dim = start.len();
    let clamp = |mut x: Vec<f64>| {
        for (xi, &(lo, hi)) in x.iter_mut().zip(bounds) {
            *xi = xi.clamp(lo, hi);
        }
        x
    };
    let eval = |x: &[f64]| {
        let inside = clamp(x.to_vec());
        let excess: f64 = x.iter().zip(&inside).map(|(a, b)| (a - b).abs()).sum();
        clean(f(&inside)) + BOX_PENALTY * excess
    };
    let start = clamp(start.to_vec());
    let mut vertices: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    vertices.push((start.clone(), eval(&start)));
    for i in 0..dim {
        let mut x = start.clone();
        // Step inwards when the start sits on an upper face.
        x[i] += if bounds.get(i).is_some_and(|b| start[i] + step > b.1) {
            -step
        } else {
            step
        };
        let v = eval(&x);
        vertices.push((x, v));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        vertices.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = vertices[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&vertices[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if diameter < tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; dim];
        for (x, _) in &vertices[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let towards = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&vertices[dim].0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };
        let best = vertices[0].1;
        let second_worst = vertices[dim - 1].1;
        let worst = vertices[dim].1;

        let reflected = towards(REFLECT);
        let fr = eval(&reflected);
        if fr < best {
            let expanded = towards(EXPAND);
            let fe = eval(&expanded);
            vertices[dim] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr < second_worst {
            vertices[dim] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst {
            let x = towards(REFLECT * CONTRACT);
            let v = eval(&x);
            (x, v)
        } else {
            let x = towards(-CONTRACT);
            let v = eval(&x);
            (x, v)
        };
        if fc < fr.min(worst) {
            vertices[dim] = (contracted, fc);
            continue;
        }
        let anchor = vertices[0].0.clone();
        for (x, v) in vertices[1..].iter_mut() {
            for (xi, ai) in x.iter_mut().zip(&anchor) {
                *xi = ai + SHRINK * (*xi - ai);
            }
            *v = eval(x);
        }
    }
    vertices.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (point, value) = vertices.swap_remove(0);
    Minimum {
        point: clamp(point),
        value,
        iterations,
        converged,
    }
}
