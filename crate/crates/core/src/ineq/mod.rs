//! Inequality indices: Gini, Hoover, Theil T, Theil L and DMMS.
//!
//! Every index has a closed form per family ([`closed`]) and an independent
//! numerical evaluation straight from its defining integral
//! ([`index_quadrature`]); the two are cross-checked in tests.

mod bp;
mod closed;
mod dmms;
mod empirical;
mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dist::DistributionSpec;
use crate::error::Result;
use crate::Quantity;

pub use bp::{bp_asymptotics, gini_bp_approx, BpAsymptotics};
pub use closed::{
    gini_bp_product, gini_closed, hoover_bp_product, hoover_closed, theil_l_closed, theil_t_closed,
};
pub use dmms::{dmms, Dmms};
pub use empirical::{empirical_dmms, empirical_indices};
pub use oracle::{index_quadrature, Index};

/// How the values in an [`IndexReport`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexMethod {
    ClosedForm,
    Quadrature,
    Empirical,
}

impl fmt::Display for IndexMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexMethod::ClosedForm => "closed_form",
            IndexMethod::Quadrature => "quadrature",
            IndexMethod::Empirical => "empirical",
        })
    }
}

/// The five inequality indices of one distribution or sample.
///
/// Each value is [`Quantity::NonExistent`] when its defining integral
/// diverges (all but DMMS need a finite mean; DMMS needs a bounded density).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub gini: Quantity,
    pub hoover: Quantity,
    pub theil_t: Quantity,
    pub theil_l: Quantity,
    pub dmms: Quantity,
    pub method: IndexMethod,
}

impl IndexReport {
    /// All five indices from their closed forms.
    pub fn closed_form(spec: &DistributionSpec) -> Result<Self> {
        Ok(IndexReport {
            gini: gini_closed(spec)?,
            hoover: hoover_closed(spec)?,
            theil_t: theil_t_closed(spec)?,
            theil_l: theil_l_closed(spec)?,
            dmms: dmms(spec)?.map_or(Quantity::NonExistent, |d| Quantity::Value(d.value)),
            method: IndexMethod::ClosedForm,
        })
    }

    /// Gini, Hoover and both Theil indices by quadrature of their defining
    /// integrals. DMMS has no integral form and is evaluated as usual.
    pub fn quadrature(spec: &DistributionSpec) -> Result<Self> {
        let eval = |index| -> Result<Quantity> {
            if spec.mean_exists() {
                index_quadrature(spec, index).map(Quantity::Value)
            } else {
                Ok(Quantity::NonExistent)
            }
        };
        Ok(IndexReport {
            gini: eval(Index::Gini)?,
            hoover: eval(Index::Hoover)?,
            theil_t: eval(Index::TheilT)?,
            theil_l: eval(Index::TheilL)?,
            dmms: dmms(spec)?.map_or(Quantity::NonExistent, |d| Quantity::Value(d.value)),
            method: IndexMethod::Quadrature,
        })
    }
}
