use std::fmt::Write as _;
use std::path::Path;

use geam_core::catalog::CatalogMeasurement;
use geam_core::linalg::TOL_STRUCT;
use geam_core::measurements::{
    conical_design_params, equiangular_residuals, operator_span_rank, symmetric_residuals,
    verify_conical_operator_identity, Povm, Residual,
};

use crate::error::{CliError, CliResult};
use crate::files::{read_measurement_file, RawMeasurement};

/// Result of structural validation, ready to print.
#[derive(Clone, Debug)]
pub struct Validation {
    pub kind: &'static str,
    pub dim: usize,
    pub residuals: Vec<Residual>,
    pub declared_gamma: Option<(usize, f64)>,
    pub failure: Option<String>,
    pub conical: String,
    pub rank: Option<usize>,
    pub outcomes: usize,
    pub groups: usize,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "kind: {} (d={}, M={}, K={})",
            self.kind, self.dim, self.groups, self.outcomes
        );
        let _ = writeln!(
            out,
            "{:<16} {:>5} {:>3} {:>3} {:>12} {:>9}  status",
            "condition", "group", "i", "j", "residual", "tol"
        );
        let mut rows: Vec<(String, usize, usize, usize, f64, f64)> = self
            .residuals
            .iter()
            .map(|r| {
                (
                    r.condition.name().to_string(),
                    r.group,
                    r.i,
                    r.j,
                    r.value,
                    r.tolerance,
                )
            })
            .collect();
        if let Some((mu, v)) = self.declared_gamma {
            rows.push(("declared-gamma".into(), mu, 0, 0, v, TOL_STRUCT));
        }
        for (name, g, i, j, v, tol) in rows {
            let status = if v <= tol { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{name:<16} {g:>5} {i:>3} {j:>3} {v:>12.3e} {tol:>9.1e}  {status}"
            );
        }
        let _ = writeln!(out, "conical: {}", self.conical);
        match self.rank {
            Some(r) => {
                let d2 = self.dim * self.dim;
                let ic = if r == d2 { "yes" } else { "no" };
                let _ = writeln!(
                    out,
                    "operator span rank: {r} of {d2} (informationally complete: {ic})"
                );
            }
            None => {
                let _ = writeln!(out, "operator span rank: unavailable");
            }
        }
        match &self.failure {
            None => {
                let _ = writeln!(out, "valid: yes");
            }
            Some(msg) => {
                let _ = writeln!(out, "valid: no ({msg})");
            }
        }
        out
    }
}

fn conical_status(m: &CatalogMeasurement) -> String {
    let label = match m {
        CatalogMeasurement::Equiangular(_) => "",
        CatalogMeasurement::Symmetric(_) => " with uniform gamma",
    };
    let geam = match m.as_equiangular() {
        Ok(g) => g,
        Err(e) => return format!("no{label} ({e})"),
    };
    match conical_design_params(&geam) {
        Ok(cp) => {
            let residual = verify_conical_operator_identity(&geam).unwrap_or(f64::NAN);
            format!(
                "yes{label} (S={:.12}, sigma={:.12}, tensor residual {residual:.1e})",
                cp.s, cp.sigma
            )
        }
        Err(e) => format!("no{label} ({e})"),
    }
}

/// Characterizes a measurement and collects every residual, whether or not
/// it passes.
pub fn validate_raw(raw: RawMeasurement) -> Validation {
    let dim = raw.dim;
    let groups = raw.groups.len();
    let outcomes = raw.groups.iter().map(Vec::len).sum();
    let all: Vec<_> = raw.groups.iter().flatten().cloned().collect();
    let rank = operator_span_rank(&all).ok();
    let declared_gamma = raw.declared_gamma_residual();
    let (kind, residuals) = match raw.gammas {
        Some(_) => (
            "equiangular",
            equiangular_residuals(&raw.groups).map(|(_, r)| r),
        ),
        None => {
            let povms: Result<Vec<_>, _> = raw.groups.iter().cloned().map(Povm::new).collect();
            (
                "symmetric",
                povms.and_then(|p| symmetric_residuals(&p).map(|(_, r)| r)),
            )
        }
    };
    let residuals = residuals.unwrap_or_default();
    let (failure, conical) = match raw.build() {
        Ok(m) => (None, conical_status(&m)),
        Err(e) => (Some(e.to_string()), "not evaluated".to_string()),
    };
    Validation {
        kind,
        dim,
        residuals,
        declared_gamma,
        failure,
        conical,
        rank,
        outcomes,
        groups,
    }
}

/// Reads and validates a measurement file; the error carries the exit code.
pub fn cmd_validate(path: &Path) -> CliResult<Validation> {
    let file = read_measurement_file(path)?;
    let raw = match file.operators() {
        Ok(raw) => raw,
        Err(CliError::Invalid(e)) => {
            return Ok(Validation {
                kind: "unknown",
                dim: file.dimension,
                residuals: Vec::new(),
                declared_gamma: None,
                failure: Some(e.to_string()),
                conical: "not evaluated".into(),
                rank: None,
                outcomes: file.groups.iter().map(|g| g.operators.len()).sum(),
                groups: file.groups.len(),
            })
        }
        Err(e) => return Err(e),
    };
    Ok(validate_raw(raw))
}
