//! Arithmetic Jalali (Persian solar hijri) calendar.
//!
//! Leap years follow the 33-year cycle: year `y` is leap iff
//! `(8y + 29) mod 33 < 8`. Months 1–6 have 31 days, 7–11 have 30, and
//! month 12 has 29 (30 in leap years). Dates are anchored at
//! 1384-01-01 = 2005-03-21.

use chrono::{Duration, NaiveDate};

use crate::error::{Error, Result};

/// Supported Jalali years.
pub const YEAR_RANGE: std::ops::RangeInclusive<i32> = 1300..=1500;

const ANCHOR_YEAR: i32 = 1384;

fn anchor() -> NaiveDate {
    NaiveDate::from_ymd_opt(2005, 3, 21).expect("valid anchor")
}

pub fn is_leap(year: i32) -> bool {
    (8 * year + 29).rem_euclid(33) < 8
}

pub fn year_len(year: i32) -> i64 {
    if is_leap(year) {
        366
    } else {
        365
    }
}

pub fn month_len(year: i32, month: u32) -> u32 {
    match month {
        1..=6 => 31,
        7..=11 => 30,
        12 if is_leap(year) => 30,
        _ => 29,
    }
}

/// Zero-based day of the Jalali year.
fn day_of_year(month: u32, day: u32) -> i64 {
    let m = i64::from(month) - 1;
    let before = if m <= 6 { 31 * m } else { 186 + 30 * (m - 6) };
    before + i64::from(day) - 1
}

/// Days between 1 Farvardin of `year` and the anchor.
fn year_offset(year: i32) -> i64 {
    if year >= ANCHOR_YEAR {
        (ANCHOR_YEAR..year).map(year_len).sum()
    } else {
        -(year..ANCHOR_YEAR).map(year_len).sum::<i64>()
    }
}

pub fn validate(year: i32, month: u32, day: u32) -> Result<()> {
    if !YEAR_RANGE.contains(&year) {
        return Err(Error::InvalidDate(format!(
            "Jalali year {year} outside supported range {}..={}",
            YEAR_RANGE.start(),
            YEAR_RANGE.end()
        )));
    }
    if !(1..=12).contains(&month) {
        return Err(Error::InvalidDate(format!("Jalali month {month} in {year:04}/{month:02}/{day:02}")));
    }
    if day == 0 || day > month_len(year, month) {
        return Err(Error::InvalidDate(format!(
            "Jalali day {day} in {year:04}/{month:02}/{day:02}; month {month} of {year} has {} days",
            month_len(year, month)
        )));
    }
    Ok(())
}

pub fn jalali_to_gregorian(year: i32, month: u32, day: u32) -> Result<NaiveDate> {
    validate(year, month, day)?;
    Ok(anchor() + Duration::days(year_offset(year) + day_of_year(month, day)))
}

pub fn gregorian_to_jalali(date: NaiveDate) -> Result<(i32, u32, u32)> {
    let mut rem = (date - anchor()).num_days();
    let mut year = ANCHOR_YEAR;
    while rem < 0 {
        year -= 1;
        rem += year_len(year);
    }
    while rem >= year_len(year) {
        rem -= year_len(year);
        year += 1;
    }
    if !YEAR_RANGE.contains(&year) {
        return Err(Error::InvalidDate(format!("{date} falls outside the supported Jalali range")));
    }
    let mut month = 1;
    while rem >= i64::from(month_len(year, month)) {
        rem -= i64::from(month_len(year, month));
        month += 1;
    }
    Ok((year, month, rem as u32 + 1))
}

/// Parse `YYYY/MM/DD` (or with `-` separators) as a Jalali date.
pub fn parse_jalali(s: &str) -> Result<NaiveDate> {
    let parts: Vec<&str> = s.trim().split(['/', '-']).collect();
    let bad = || Error::InvalidDate(format!("'{s}' is not a Jalali YYYY/MM/DD date"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let y: i32 = parts[0].parse().map_err(|_| bad())?;
    let m: u32 = parts[1].parse().map_err(|_| bad())?;
    let d: u32 = parts[2].parse().map_err(|_| bad())?;
    jalali_to_gregorian(y, m, d)
}
