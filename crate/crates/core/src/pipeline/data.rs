use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::jalali;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Calendar {
    #[default]
    Gregorian,
    Jalali,
}

/// Where the date and price live in a delimited file and how dates are
/// written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvSchema {
    pub date_column: String,
    pub price_column: String,
    pub calendar: Calendar,
    /// chrono format string for Gregorian dates; Jalali dates are always
    /// `YYYY/MM/DD`.
    pub date_format: String,
    pub delimiter: char,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            date_column: "date".into(),
            price_column: "price".into(),
            calendar: Calendar::Gregorian,
            date_format: "%Y-%m-%d".into(),
            delimiter: ',',
        }
    }
}

/// Dated prices in strictly increasing date order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    pub label: String,
    pub dates: Vec<NaiveDate>,
    pub prices: Vec<f64>,
}

impl PriceSeries {
    /// Sort by date and check positivity and uniqueness.
    pub fn new(label: impl Into<String>, mut rows: Vec<(NaiveDate, f64)>) -> Result<Self> {
        let label = label.into();
        rows.sort_by_key(|r| r.0);
        if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateDate { file: label, date: w[0].0.to_string() });
        }
        if let Some((i, p)) = rows.iter().map(|r| r.1).enumerate().find(|(_, p)| !(*p > 0.0 && p.is_finite())) {
            return Err(Error::NonPositivePrice { file: label, line: i + 1, value: p });
        }
        let (dates, prices) = rows.into_iter().unzip();
        Ok(Self { label, dates, prices })
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }
}

fn parse_date(s: &str, schema: &CsvSchema) -> Result<NaiveDate> {
    match schema.calendar {
        Calendar::Jalali => jalali::parse_jalali(s),
        Calendar::Gregorian => NaiveDate::parse_from_str(s.trim(), &schema.date_format)
            .map_err(|e| Error::InvalidDate(format!("'{s}' does not match '{}': {e}", schema.date_format))),
    }
}

/// Read a price file. Rows are validated, then sorted by date.
pub fn parse_price_csv(path: &Path, label: &str, schema: &CsvSchema) -> Result<PriceSeries> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_price_reader(file, &path.display().to_string(), label, schema)
}

/// As [`parse_price_csv`], reading from any source; `source` names it in
/// error messages.
pub fn parse_price_reader<R: Read>(reader: R, source: &str, label: &str, schema: &CsvSchema) -> Result<PriceSeries> {
    if !schema.delimiter.is_ascii() {
        return Err(Error::Config(format!("delimiter '{}' is not ASCII", schema.delimiter)));
    }
    let mut rdr = csv::ReaderBuilder::new().delimiter(schema.delimiter as u8).trim(csv::Trim::All).from_reader(reader);
    let parse_err = |line: usize, msg: String| Error::Parse { file: source.to_string(), line, msg };
    let headers = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            parse_err(1, format!("missing column '{name}' (found: {})", headers.iter().collect::<Vec<_>>().join(", ")))
        })
    };
    let (di, pi) = (col(&schema.date_column)?, col(&schema.price_column)?);

    let mut rows = Vec::new();
    let mut seen: BTreeMap<NaiveDate, usize> = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let (Some(ds), Some(ps)) = (rec.get(di), rec.get(pi)) else {
            return Err(parse_err(line, "row is missing the date or price field".into()));
        };
        let date = parse_date(ds, schema).map_err(|e| parse_err(line, e.to_string()))?;
        let price: f64 = ps.parse().map_err(|_| parse_err(line, format!("price '{ps}' is not a number")))?;
        if !(price > 0.0 && price.is_finite()) {
            return Err(Error::NonPositivePrice { file: source.to_string(), line, value: price });
        }
        if let Some(first) = seen.insert(date, line) {
            return Err(Error::DuplicateDate {
                file: source.to_string(),
                date: format!("{date} (lines {first} and {line})"),
            });
        }
        rows.push((date, price));
    }
    if rows.is_empty() {
        return Err(Error::Empty(format!("{source} has no data rows")));
    }
    PriceSeries::new(label, rows)
}

/// r_t = ln(S_t / S_{t−1}).
pub fn log_returns(prices: &[f64]) -> Vec<f64> {
    prices.windows(2).map(|w| (w[1] / w[0]).ln()).collect()
}

/// Record counts before and after the inner join.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JoinStats {
    pub input_lengths: Vec<usize>,
    pub common_dates: usize,
    pub first_date: Option<NaiveDate>,
    pub last_date: Option<NaiveDate>,
}

/// Inner-joined prices and the returns between consecutive common dates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignedPanel {
    pub labels: Vec<String>,
    /// Common price dates.
    pub dates: Vec<NaiveDate>,
    /// Aligned prices, one column per asset.
    pub prices: Vec<Vec<f64>>,
    /// Log returns dated at `dates[1..]`, one column per asset.
    pub returns: Vec<Vec<f64>>,
    pub join: JoinStats,
}

impl AlignedPanel {
    /// Number of return observations.
    pub fn n_obs(&self) -> usize {
        self.dates.len().saturating_sub(1)
    }
}

/// Keep only dates present in every series; nothing is interpolated.
pub fn align_by_date(series: &[PriceSeries]) -> Result<AlignedPanel> {
    if series.is_empty() {
        return Err(Error::Empty("no series to align".into()));
    }
    let mut common: Vec<NaiveDate> = series[0].dates.clone();
    for s in &series[1..] {
        let mut keep = Vec::with_capacity(common.len());
        let (mut i, mut j) = (0, 0);
        while i < common.len() && j < s.dates.len() {
            match common[i].cmp(&s.dates[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    keep.push(common[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        common = keep;
    }
    let join = JoinStats {
        input_lengths: series.iter().map(PriceSeries::len).collect(),
        common_dates: common.len(),
        first_date: common.first().copied(),
        last_date: common.last().copied(),
    };
    log::info!(
        "aligned {} series: lengths {:?} -> {} common dates",
        series.len(),
        join.input_lengths,
        join.common_dates
    );
    if common.len() < 2 {
        return Err(Error::Empty(format!(
            "only {} common date(s) across {}",
            common.len(),
            series.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(", ")
        )));
    }
    let prices: Vec<Vec<f64>> = series
        .iter()
        .map(|s| {
            let mut out = Vec::with_capacity(common.len());
            let mut j = 0;
            for d in &common {
                while s.dates[j] < *d {
                    j += 1;
                }
                out.push(s.prices[j]);
            }
            out
        })
        .collect();
    let returns = prices.iter().map(|p| log_returns(p)).collect();
    Ok(AlignedPanel { labels: series.iter().map(|s| s.label.clone()).collect(), dates: common, prices, returns, join })
}
