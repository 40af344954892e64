use std::path::Path;

use geam_core::bounds::{evaluate_report, BoundReport};
use geam_core::catalog::CatalogMeasurement;
use geam_core::DensityMatrix;

use crate::error::{CliError, CliResult};
use crate::files::{load_measurement, load_state};

/// Symmetric sets are analyzed through their uniform-weight GEAM.
pub fn analyze(
    m: &CatalogMeasurement,
    rho: &DensityMatrix,
    alphas: &[f64],
) -> CliResult<BoundReport> {
    let geam = m.as_equiangular().map_err(CliError::Invalid)?;
    Ok(evaluate_report(&geam, rho, alphas)?)
}

pub fn report_json(report: &BoundReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

pub fn cmd_analyze(measurement: &Path, state: &Path, alphas: &[f64]) -> CliResult<String> {
    let m = load_measurement(measurement)?;
    let rho = load_state(state, m.dim())?;
    Ok(report_json(&analyze(&m, &rho, alphas)?))
}
