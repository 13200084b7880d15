//! Multi-family fit tables.

use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_fittable, mle_fit_with, FitOptions, FitResult};
use crate::dist::Family;
use crate::error::{Error, Result};
use crate::ineq::{empirical_indices, IndexReport};
use crate::parallel;
use crate::sample::Sample;
use crate::Quantity;

/// Column order of [`FitReport::write_csv`].
pub const CSV_HEADER: [&str; 11] = [
    "type",
    "parameters",
    "KS",
    "Mean",
    "RMS",
    "Gini",
    "Hoover",
    "Theil T",
    "Theil L",
    "DMMS",
    "SD",
];

/// The data row of a fit table: sample moments and empirical indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSummary {
    pub n: usize,
    pub mean: f64,
    pub rms: f64,
    pub std_dev: f64,
    pub indices: IndexReport,
}

impl EmpiricalSummary {
    pub fn of(sample: &Sample) -> Result<Self> {
        Ok(EmpiricalSummary {
            n: sample.len(),
            mean: sample.mean(),
            rms: sample.rms(),
            std_dev: sample.std_dev(),
            indices: empirical_indices(sample)?,
        })
    }
}

/// One family's line in a fit table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReportRow {
    Fitted(FitResult),
    Failed { family: Family, error: String },
}

impl ReportRow {
    pub fn family(&self) -> Family {
        match self {
            ReportRow::Fitted(fit) => fit.spec.family(),
            ReportRow::Failed { family, .. } => *family,
        }
    }

    pub fn fit(&self) -> Option<&FitResult> {
        match self {
            ReportRow::Fitted(fit) => Some(fit),
            ReportRow::Failed { .. } => None,
        }
    }
}

/// Empirical summary plus one row per family, fitted rows in ascending KS
/// order followed by failed rows in request order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deflator_base: Option<i32>,
    pub empirical: EmpiricalSummary,
    pub rows: Vec<ReportRow>,
}

/// [`fit_report_with`] under default optimizer options.
pub fn fit_report(sample: &Sample, families: &[Family]) -> Result<FitReport> {
    fit_report_with(sample, families, &FitOptions::default())
}

/// Fits every family in `families`. A family whose fit fails becomes a
/// [`ReportRow::Failed`] rather than aborting the report; problems with the
/// sample itself are returned as errors.
pub fn fit_report_with(
    sample: &Sample,
    families: &[Family],
    options: &FitOptions,
) -> Result<FitReport> {
    if families.is_empty() {
        return Err(Error::InvalidConfig("no families requested".into()));
    }
    check_fittable(sample)?;
    let empirical = EmpiricalSummary::of(sample)?;
    let outcomes: Vec<(Family, Result<FitResult>)> = parallel::install(|| {
        families
            .par_iter()
            .map(|&family| (family, mle_fit_with(sample, family, options)))
            .collect()
    });
    let mut fitted = Vec::new();
    let mut failed = Vec::new();
    for (family, outcome) in outcomes {
        match outcome {
            Ok(fit) => fitted.push(fit),
            Err(e) => failed.push(ReportRow::Failed {
                family,
                error: e.to_string(),
            }),
        }
    }
    // Stable sort keeps request order among equal KS values.
    fitted.sort_by(|a, b| a.ks.total_cmp(&b.ks));
    let rows = fitted
        .into_iter()
        .map(ReportRow::Fitted)
        .chain(failed)
        .collect();
    Ok(FitReport {
        label: sample.label().map(str::to_owned),
        deflator_base: sample.deflator_base(),
        empirical,
        rows,
    })
}

fn cell(q: Quantity) -> String {
    q.to_string()
}

impl FitReport {
    /// Lowest-KS fitted row.
    pub fn best(&self) -> Option<&FitResult> {
        self.rows.iter().find_map(ReportRow::fit)
    }

    /// Writes the table with a header row, the data row first and one row per
    /// family. Parameters are listed in display order, separated by "; ";
    /// nonexistent quantities are written as `N.A.`.
    pub fn write_csv<W: io::Write>(&self, writer: W) -> std::result::Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(CSV_HEADER)?;
        let e = &self.empirical;
        let ix = &e.indices;
        out.write_record([
            "Data".to_string(),
            String::new(),
            String::new(),
            e.mean.to_string(),
            e.rms.to_string(),
            cell(ix.gini),
            cell(ix.hoover),
            cell(ix.theil_t),
            cell(ix.theil_l),
            cell(ix.dmms),
            e.std_dev.to_string(),
        ])?;
        for row in &self.rows {
            match row {
                ReportRow::Fitted(fit) => {
                    let params: Vec<String> =
                        fit.spec.params().iter().map(f64::to_string).collect();
                    let ix = &fit.indices;
                    out.write_record([
                        fit.spec.family().to_string(),
                        params.join("; "),
                        fit.ks.to_string(),
                        cell(fit.mean_analytic),
                        cell(fit.rms_analytic),
                        cell(ix.gini),
                        cell(ix.hoover),
                        cell(ix.theil_t),
                        cell(ix.theil_l),
                        cell(ix.dmms),
                        cell(fit.std_dev_analytic),
                    ])?;
                }
                ReportRow::Failed { family, error } => {
                    let mut record = vec![family.to_string(), format!("error: {error}")];
                    record.resize(CSV_HEADER.len(), String::new());
                    out.write_record(record)?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }
}
