use std::fs::File;
use std::io::{self, BufWriter, Write};

use gb2kit::fit::{
    self, FitReport, ReportRow, TailFit, DEFAULT_EXCLUDED_TOP, DEFAULT_TAIL_FRACTION,
};
use gb2kit::ineq::{dmms, empirical_indices};
use gb2kit::sde::{self, ADVISED_GUARD_RATE};
use gb2kit::{DistributionSpec, Family, IndexReport, Quantity, Sample, SdeConfig};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CliError;
use crate::ingest::{deflate, ingest, DeflatorSeries, IngestOptions};

/// Parses an inline JSON object, or reads one from the named file.
pub fn json_arg<T: DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::data(format!("{arg}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub struct Deflation {
    pub series: String,
    pub base: i32,
}

/// Reads a sample, reporting skipped rows on stderr and deflating when
/// asked.
pub fn load_sample(
    path: &str,
    options: &IngestOptions,
    deflation: Option<&Deflation>,
) -> Result<Sample, CliError> {
    let data = ingest(path, options)?;
    if data.dropped() > 0 {
        eprintln!(
            "note: skipped {} non-positive and {} non-numeric rows of {path}",
            data.non_positive, data.invalid
        );
    }
    let (values, base) = match deflation {
        None => (data.values, None),
        Some(d) => {
            let years = data
                .years
                .as_deref()
                .ok_or_else(|| CliError::data("deflation needs --year-column"))?;
            let series = DeflatorSeries::from_path(&d.series, d.base)?;
            (
                deflate(&data.values, years, &series)?,
                Some(series.base_year()),
            )
        }
    };
    let sample = Sample::new(values)?.with_label(path);
    Ok(match base {
        Some(year) => sample.with_deflator_base(year),
        None => sample,
    })
}

fn cell(q: Quantity) -> String {
    match q {
        Quantity::Value(v) => format!("{v:.4}"),
        Quantity::NonExistent => "N.A.".into(),
    }
}

fn print_table(rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        println!("{}", line.join("  ").trim_end());
    }
}

fn report_table(report: &FitReport) -> Vec<Vec<String>> {
    let mut rows = vec![fit::CSV_HEADER
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()];
    let e = &report.empirical;
    let ix = &e.indices;
    rows.push(vec![
        "Data".into(),
        format!("n = {}", e.n),
        String::new(),
        format!("{:.4}", e.mean),
        format!("{:.4}", e.rms),
        cell(ix.gini),
        cell(ix.hoover),
        cell(ix.theil_t),
        cell(ix.theil_l),
        cell(ix.dmms),
        format!("{:.4}", e.std_dev),
    ]);
    for row in &report.rows {
        match row {
            ReportRow::Fitted(fit) => {
                let params: Vec<String> = fit
                    .spec
                    .params()
                    .iter()
                    .map(|v| format!("{v:.4}"))
                    .collect();
                let ix = &fit.indices;
                rows.push(vec![
                    fit.spec.family().to_string(),
                    params.join(", "),
                    format!("{:.4}", fit.ks),
                    cell(fit.mean_analytic),
                    cell(fit.rms_analytic),
                    cell(ix.gini),
                    cell(ix.hoover),
                    cell(ix.theil_t),
                    cell(ix.theil_l),
                    cell(ix.dmms),
                    cell(fit.std_dev_analytic),
                ]);
            }
            ReportRow::Failed { family, error } => {
                let mut r = vec![family.to_string(), format!("failed: {error}")];
                r.resize(fit::CSV_HEADER.len(), String::new());
                rows.push(r);
            }
        }
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub fn run_fit(
    sample: Sample,
    families: &[Family],
    tail_cut: Option<f64>,
    format: Format,
) -> Result<(), CliError> {
    let sample = match tail_cut {
        Some(fraction) => {
            let cut = fit::tail_cut(&sample, fraction)?;
            eprintln!(
                "note: removed the {} largest of {} values",
                sample.len() - cut.len(),
                sample.len()
            );
            let label = sample
                .label()
                .map(|l| format!("{l} (top {} removed)", fraction));
            match (label, sample.deflator_base()) {
                (Some(l), Some(base)) => cut.with_label(l).with_deflator_base(base),
                (Some(l), None) => cut.with_label(l),
                (None, _) => cut,
            }
        }
        None => sample,
    };
    let report = fit::fit_report(&sample, families)?;
    if report.best().is_none() {
        let reasons: Vec<String> = report
            .rows
            .iter()
            .map(|r| match r {
                ReportRow::Failed { family, error } => format!("{family}: {error}"),
                ReportRow::Fitted(f) => f.spec.to_string(),
            })
            .collect();
        return Err(CliError::Numerical(format!(
            "no family could be fitted ({})",
            reasons.join("; ")
        )));
    }
    for fit in report.rows.iter().filter_map(ReportRow::fit) {
        if fit.optimizer_diagnostics.on_boundary {
            eprintln!(
                "note: the {} fit sits on the edge of the search box; the likelihood keeps rising towards a limiting case",
                fit.spec.family()
            );
        }
    }
    match format {
        Format::Json => print_json(&report)?,
        Format::Csv => report.write_csv(io::stdout().lock())?,
        Format::Text => print_table(&report_table(&report)),
    }
    Ok(())
}

fn index_rows(report: &IndexReport) -> Vec<Vec<String>> {
    let fmt = |q: Quantity| match q {
        Quantity::Value(v) => format!("{v:.6}"),
        Quantity::NonExistent => "N.A.".into(),
    };
    vec![
        vec!["method".into(), report.method.to_string()],
        vec!["gini".into(), fmt(report.gini)],
        vec!["hoover".into(), fmt(report.hoover)],
        vec!["theil_t".into(), fmt(report.theil_t)],
        vec!["theil_l".into(), fmt(report.theil_l)],
        vec!["dmms".into(), fmt(report.dmms)],
    ]
}

pub fn run_indices_spec(spec: &DistributionSpec, json: bool) -> Result<(), CliError> {
    let report = IndexReport::closed_form(spec).or_else(|_| IndexReport::quadrature(spec))?;
    if json {
        return print_json(&report);
    }
    println!("spec      {spec}");
    print_table(&index_rows(&report));
    Ok(())
}

pub fn run_indices_sample(sample: &Sample, json: bool) -> Result<(), CliError> {
    let report = empirical_indices(sample)?;
    if json {
        return print_json(&report);
    }
    println!("n         {}", sample.len());
    print_table(&index_rows(&report));
    Ok(())
}

pub fn run_tailfit(
    sample: &Sample,
    fraction: Option<f64>,
    exclude: Option<usize>,
    json: bool,
    series: Option<&str>,
) -> Result<(), CliError> {
    let fraction = fraction.unwrap_or(DEFAULT_TAIL_FRACTION);
    let excluded = exclude.unwrap_or(DEFAULT_EXCLUDED_TOP);
    let fit: TailFit = fit::tail_slope_excluding(sample, fraction, excluded)?;
    if let Some(path) = series {
        write_survival_series(sample, fraction, path)?;
    }
    if json {
        return print_json(&fit);
    }
    println!("slope     {:.4} ± {:.4}", fit.slope, fit.stderr);
    println!("intercept {:.4}", fit.intercept);
    println!(
        "window    top {}% ({} points, {} largest excluded)",
        fraction * 100.0,
        fit.points,
        fit.excluded_top
    );
    Ok(())
}

/// Writes x and the empirical survival 1 − i/n for the tail window, for
/// plotting on log-log axes.
fn write_survival_series(sample: &Sample, fraction: f64, path: &str) -> Result<(), CliError> {
    let n = sample.len();
    let window = ((fraction * n as f64).floor() as usize).min(n);
    let mut out = csv::Writer::from_path(path)?;
    out.write_record(["x", "survival"])?;
    for (i, x) in sample.values().iter().enumerate().skip(n - window) {
        out.write_record([x.to_string(), (1.0 - (i + 1) as f64 / n as f64).to_string()])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SimulationSummary {
    steady_state: Option<DistributionSpec>,
    n: usize,
    seed: u64,
    steps: u64,
    guard_hits: u64,
    guard_rate: f64,
    output: String,
}

pub fn run_simulate(
    config: &SdeConfig,
    seed: u64,
    n: usize,
    output: &str,
    json: bool,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::data("-n must be at least 1"));
    }
    let steady = match sde::steady_state_spec(config) {
        Ok(spec) => Some(spec),
        Err(gb2kit::Error::InvalidConfig(reason))
            if config.kappa_alpha == 0.0 && config.kappa2 == 0.0 =>
        {
            eprintln!("note: {reason}");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let run = sde::simulate(config, n, seed)?;
    let mut out = csv::Writer::from_writer(BufWriter::new(
        File::create(output).map_err(|e| CliError::data(format!("{output}: {e}")))?,
    ));
    out.write_record(["value"])?;
    for v in run.sample.in_input_order() {
        out.write_record([v.to_string()])?;
    }
    out.flush()?;
    if run.guard_rate() > ADVISED_GUARD_RATE {
        eprintln!(
            "warning: positivity guard fired on {:.3}% of steps; consider a smaller dt",
            100.0 * run.guard_rate()
        );
    }
    let summary = SimulationSummary {
        steady_state: steady,
        n,
        seed,
        steps: run.steps,
        guard_hits: run.guard_hits,
        guard_rate: run.guard_rate(),
        output: output.to_owned(),
    };
    if json {
        return print_json(&summary);
    }
    match steady {
        Some(spec) => println!("steady state  {spec}"),
        None => println!("steady state  point mass at θ = {}", config.theta),
    }
    println!("samples       {n} written to {output}");
    println!("steps         {}", run.steps);
    println!("guard rate    {:.2e}", run.guard_rate());
    Ok(())
}

pub fn run_dmms(spec: &DistributionSpec, json: bool) -> Result<(), CliError> {
    let result = dmms(spec)?;
    if json {
        return print_json(&serde_json::json!({ "spec": spec, "dmms": result }));
    }
    println!("spec        {spec}");
    match result {
        Some(d) => {
            println!("dmms        {:.6}", d.value);
            println!("mpdf        {:.6}", d.mpdf);
            println!("half_width  {:.6}", d.half_width);
            println!("mode        {:.6}", d.mode);
            println!("crossings   {:.6} .. {:.6}", d.left, d.right);
        }
        None => println!("dmms        N.A. (density unbounded at the origin)"),
    }
    Ok(())
}
