//! Validated data samples.

use crate::error::{Error, Result};

/// Positive, finite observations stored in ascending order.
///
/// The permutation back to input order is kept so that per-observation
/// output can be reported in the order the data arrived.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    order: Vec<usize>,
    label: Option<String>,
    deflator_base: Option<i32>,
}

impl Sample {
    /// Validates and sorts `values`. Rejects empty input and any value that
    /// is not positive and finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DegenerateSample("sample is empty".into()));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v > 0.0 && v.is_finite()))
        {
            return Err(Error::DegenerateSample(format!(
                "observation {i} is {v}; values must be positive and finite"
            )));
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let sorted = order.iter().map(|&i| values[i]).collect();
        Ok(Sample {
            values: sorted,
            order,
            label: None,
            deflator_base: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Records the reference year of the price level the values are
    /// expressed in.
    pub fn with_deflator_base(mut self, year: i32) -> Self {
        self.deflator_base = Some(year);
        self
    }

    pub fn deflator_base(&self) -> Option<i32> {
        self.deflator_base
    }

    /// Observations in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Observations in their original input order.
    pub fn in_input_order(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.values.len()];
        for (rank, &i) in self.order.iter().enumerate() {
            out[i] = self.values[rank];
        }
        out
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.len() as f64
    }

    /// √(mean of squares).
    pub fn rms(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() / self.len() as f64).sqrt()
    }

    /// Population standard deviation.
    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        (self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / self.len() as f64).sqrt()
    }

    /// Empirical quantile by linear interpolation between order statistics.
    pub fn quantile(&self, u: f64) -> f64 {
        let pos = u.clamp(0.0, 1.0) * (self.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = (lo + 1).min(self.len() - 1);
        let frac = pos - lo as f64;
        self.values[lo] * (1.0 - frac) + self.values[hi] * frac
    }

    /// True when every observation is the same value.
    pub fn is_constant(&self) -> bool {
        self.values.first() == self.values.last()
    }

    /// A new sample with every observation multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::param(
                "factor",
                factor,
                "must be positive and finite",
            ));
        }
        Ok(Sample {
            values: self.values.iter().map(|v| v * factor).collect(),
            order: self.order.clone(),
            label: self.label.clone(),
            deflator_base: self.deflator_base,
        })
    }

    /// A new sample without its `k` largest observations. Input order of the
    /// survivors is preserved.
    pub fn without_largest(&self, k: usize) -> Result<Self> {
        let keep = self.len().saturating_sub(k);
        if keep == 0 {
            return Err(Error::DegenerateSample(format!(
                "removing {k} of {} observations leaves nothing",
                self.len()
            )));
        }
        // Renumber the surviving input positions 0..keep in their original
        // relative order.
        let mut positions: Vec<usize> = self.order[..keep].to_vec();
        positions.sort_unstable();
        let mut compact = vec![usize::MAX; self.len()];
        for (new, &old) in positions.iter().enumerate() {
            compact[old] = new;
        }
        Ok(Sample {
            values: self.values[..keep].to_vec(),
            order: self.order[..keep].iter().map(|&i| compact[i]).collect(),
            label: self.label.clone(),
            deflator_base: self.deflator_base,
        })
    }
}
