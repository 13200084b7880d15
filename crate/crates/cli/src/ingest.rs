//! CSV ingestion and CPI deflation.

use std::collections::BTreeMap;
use std::convert::Infallible;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use crate::error::CliError;

/// A CSV column, by header name or 0-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

impl FromStr for ColumnRef {
    type Err = Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnRef::Index(i),
            Err(_) => ColumnRef::Name(s.to_owned()),
        })
    }
}

impl fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnRef::Index(i) => write!(f, "{i}"),
            ColumnRef::Name(name) => write!(f, "`{name}`"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IngestOptions {
    pub column: ColumnRef,
    /// Column holding the year of each observation, needed for deflation.
    pub year_column: Option<ColumnRef>,
    /// Treat the first row as data. Without this flag the first row is
    /// still taken as data when columns are selected by position and its
    /// value field is numeric.
    pub no_header: bool,
    /// Count and skip non-numeric values instead of failing on them.
    pub skip_invalid: bool,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            column: ColumnRef::Index(0),
            year_column: None,
            no_header: false,
            skip_invalid: false,
        }
    }
}

/// Values read from one column, with the bookkeeping of what was dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub values: Vec<f64>,
    /// Year of each kept value, when a year column was requested.
    pub years: Option<Vec<i32>>,
    pub non_positive: usize,
    pub invalid: usize,
}

impl Ingested {
    pub fn dropped(&self) -> usize {
        self.non_positive + self.invalid
    }
}

fn resolve(column: &ColumnRef, header: Option<&csv::StringRecord>) -> Result<usize, CliError> {
    match column {
        ColumnRef::Index(i) => Ok(*i),
        ColumnRef::Name(name) => {
            let header = header.ok_or_else(|| {
                CliError::data(format!(
                    "column {column} selected by name but the file has no header row"
                ))
            })?;
            header
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| CliError::data(format!("no column named `{name}` in header")))
        }
    }
}

fn field(record: &csv::StringRecord, index: usize, line: u64) -> Result<&str, CliError> {
    record
        .get(index)
        .map(str::trim)
        .ok_or_else(|| CliError::data(format!("row {line}: no column {index}")))
}

/// Reads one numeric column of a CSV stream.
///
/// Non-positive values are skipped and counted. Non-numeric values are an
/// error naming the row unless `skip_invalid` is set, in which case they are
/// counted too.
pub fn ingest_reader<R: Read>(reader: R, options: &IngestOptions) -> Result<Ingested, CliError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = csv.records().peekable();

    let first_is_data = match records.peek() {
        None => return Err(CliError::data("input is empty")),
        Some(Err(_)) => false,
        Some(Ok(first)) => {
            options.no_header
                || (!matches!(options.column, ColumnRef::Name(_))
                    && !matches!(options.year_column, Some(ColumnRef::Name(_)))
                    && first
                        .get(resolve(&options.column, None)?)
                        .is_some_and(|v| v.trim().parse::<f64>().is_ok()))
        }
    };
    let header = if first_is_data {
        None
    } else {
        records.next().transpose()?
    };
    let value_at = resolve(&options.column, header.as_ref())?;
    let year_at = options
        .year_column
        .as_ref()
        .map(|c| resolve(c, header.as_ref()))
        .transpose()?;

    let mut out = Ingested {
        values: Vec::new(),
        years: year_at.map(|_| Vec::new()),
        non_positive: 0,
        invalid: 0,
    };
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let raw = field(&record, value_at, line)?;
        let value = match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => v,
            _ if options.skip_invalid => {
                out.invalid += 1;
                continue;
            }
            _ => {
                return Err(CliError::data(format!(
                    "row {line}: `{raw}` is not a number"
                )))
            }
        };
        if value <= 0.0 {
            out.non_positive += 1;
            continue;
        }
        if let (Some(at), Some(years)) = (year_at, out.years.as_mut()) {
            let raw_year = field(&record, at, line)?;
            let year = raw_year
                .parse::<i32>()
                .map_err(|_| CliError::data(format!("row {line}: `{raw_year}` is not a year")))?;
            years.push(year);
        }
        out.values.push(value);
    }
    if out.values.is_empty() {
        return Err(CliError::data(format!(
            "no positive values in column {} ({} non-positive, {} non-numeric)",
            options.column, out.non_positive, out.invalid
        )));
    }
    Ok(out)
}

pub fn ingest(path: &str, options: &IngestOptions) -> Result<Ingested, CliError> {
    let file = std::fs::File::open(path).map_err(|e| CliError::data(format!("{path}: {e}")))?;
    ingest_reader(file, options)
}

/// Year → price-index mapping with the base year that values are
/// expressed in.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflatorSeries {
    indices: BTreeMap<i32, f64>,
    base_year: i32,
}

impl DeflatorSeries {
    pub fn new(indices: BTreeMap<i32, f64>, base_year: i32) -> Result<Self, CliError> {
        if let Some((year, v)) = indices.iter().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(CliError::data(format!(
                "deflator index for {year} is {v}, must be positive"
            )));
        }
        if !indices.contains_key(&base_year) {
            return Err(CliError::data(format!(
                "base year {base_year} is not in the deflator series"
            )));
        }
        Ok(DeflatorSeries { indices, base_year })
    }

    /// Reads `year,index` rows; a header row is optional.
    pub fn from_reader<R: Read>(reader: R, base_year: i32) -> Result<Self, CliError> {
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut indices = BTreeMap::new();
        for (i, record) in csv.records().enumerate() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            let (Some(year), Some(index)) = (record.get(0), record.get(1)) else {
                return Err(CliError::data(format!(
                    "deflator row {line}: expected `year,index`"
                )));
            };
            match (year.parse::<i32>(), index.parse::<f64>()) {
                (Ok(y), Ok(v)) => {
                    if indices.insert(y, v).is_some() {
                        return Err(CliError::data(format!(
                            "deflator row {line}: year {y} repeated"
                        )));
                    }
                }
                _ if i == 0 => continue,
                _ => {
                    return Err(CliError::data(format!(
                        "deflator row {line}: `{year},{index}` is not `year,index`"
                    )))
                }
            }
        }
        Self::new(indices, base_year)
    }

    pub fn from_path(path: &str, base_year: i32) -> Result<Self, CliError> {
        let file = std::fs::File::open(path).map_err(|e| CliError::data(format!("{path}: {e}")))?;
        Self::from_reader(file, base_year)
    }

    pub fn base_year(&self) -> i32 {
        self.base_year
    }

    pub fn index(&self, year: i32) -> Option<f64> {
        self.indices.get(&year).copied()
    }
}

/// Converts each value to base-year money: value × index(base)/index(year).
pub fn deflate(
    values: &[f64],
    years: &[i32],
    series: &DeflatorSeries,
) -> Result<Vec<f64>, CliError> {
    let base = series
        .index(series.base_year)
        .expect("base year checked on construction");
    values
        .iter()
        .zip(years)
        .map(|(&v, &year)| {
            series
                .index(year)
                .map(|idx| v * (base / idx))
                .ok_or_else(|| CliError::data(format!("no deflator index for year {year}")))
        })
        .collect()
}
