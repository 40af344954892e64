use std::fs;
use std::path::Path;

use geam_core::catalog::{catalog, lookup, CatalogMeasurement};

use crate::error::{CliError, CliResult};
use crate::files::MeasurementFile;

/// One line per entry: id, kind, description.
pub fn listing() -> String {
    let mut out = String::new();
    for e in catalog() {
        let kind = match e.measurement {
            CatalogMeasurement::Equiangular(_) => "equiangular",
            CatalogMeasurement::Symmetric(_) => "symmetric",
        };
        out.push_str(&format!("{:<10} {:<11} {}\n", e.id, kind, e.description));
    }
    out
}

/// Measurement file text for a catalog id.
pub fn export_json(id: &str) -> CliResult<String> {
    let entry = lookup(id).ok_or_else(|| CliError::UnknownId(id.to_string()))?;
    Ok(MeasurementFile::from_measurement(&entry.measurement).to_json())
}

pub fn cmd_export(id: &str, out: &Path) -> CliResult<()> {
    let text = export_json(id)?;
    fs::write(out, text).map_err(|source| CliError::Write {
        path: out.to_path_buf(),
        source,
    })
}
