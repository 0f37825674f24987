//! CSV output. Reals use six fixed decimals (ties to even on the exact
//! binary value), so identical runs produce identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::{SummaryRow, TelemetryRow};
use crate::scalar::Scalar;

pub const TELEMETRY_HEADER: &str = "iteration,deaths_total,deaths_starved,deaths_drowned,mean_courage,mean_generosity,mean_honesty,death_rate,death_rate_plot";
pub const SUMMARY_HEADER: &str = "condition,repeats,mean_death_rate,sd_death_rate,base_seed";

pub fn format_real<T: Scalar>(v: T) -> String {
    format!("{:.6}", v.as_f64())
}

pub fn telemetry_csv<T: Scalar>(rows: &[TelemetryRow<T>]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::InvalidInput("no telemetry rows to write".into()));
    }
    let mut out = String::with_capacity(96 * (rows.len() + 1));
    out.push_str(TELEMETRY_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.iteration,
            r.deaths_total,
            r.deaths_starved,
            r.deaths_drowned,
            format_real(r.mean_courage),
            format_real(r.mean_generosity),
            format_real(r.mean_honesty),
            format_real(r.death_rate),
            format_real(r.death_rate_plot),
        )
        .expect("writing to a String cannot fail");
    }
    Ok(out)
}

/// The standard deviation column is left empty for single-run conditions.
pub fn summary_csv<T: Scalar>(rows: &[SummaryRow<T>]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::InvalidInput("no summary rows to write".into()));
    }
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.condition,
            r.repeats,
            format_real(r.mean_death_rate),
            r.sd_death_rate.map(format_real).unwrap_or_default(),
            r.base_seed,
        )
        .expect("writing to a String cannot fail");
    }
    Ok(out)
}

pub fn write_telemetry_csv<T: Scalar>(path: &Path, rows: &[TelemetryRow<T>]) -> Result<()> {
    let text = telemetry_csv(rows)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_summary_csv<T: Scalar>(path: &Path, rows: &[SummaryRow<T>]) -> Result<()> {
    let text = summary_csv(rows)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
