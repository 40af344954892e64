//! JSON file formats for measurements and states.
//!
//! A measurement file lists operator groups; complex entries are `[re, im]`
//! pairs and matrices are lists of rows:
//!
//! ```json
//! {"dimension": 2, "groups": [{"gamma": 0.5, "operators": [[[[0.5, 0], [0, 0]], [[0, 0], [0, 0]]]]}]}
//! ```
//!
//! When every group carries `gamma` the file describes a GEAM; when none
//! does, each group is a POVM of a symmetric measurement set. A state file
//! holds either `{"bloch": [rx, ry, rz]}` or `{"matrix": [[[re, im], ...], ...]}`.

use std::fs;
use std::path::Path;

use geam_core::catalog::CatalogMeasurement;
use geam_core::linalg::{bloch_to_density, BlochVector, HermitianOperator, Matrix, TOL_STRUCT};
use geam_core::measurements::{characterize_equiangular, characterize_symmetric, Povm};
use geam_core::{Condition, DensityMatrix, Error, C64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub type ComplexMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementFile {
    pub dimension: usize,
    pub groups: Vec<GroupFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub operators: Vec<ComplexMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<ComplexMatrix>,
}

/// Operators read from a file, before any structural checks.
#[derive(Clone, Debug)]
pub struct RawMeasurement {
    pub dim: usize,
    pub groups: Vec<Vec<HermitianOperator>>,
    pub gammas: Option<Vec<f64>>,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_measurement_file(path: &Path) -> CliResult<MeasurementFile> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn read_state_file(path: &Path) -> CliResult<StateFile> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn to_matrix(d: usize, rows: &ComplexMatrix, what: &str) -> CliResult<Matrix> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(CliError::Parse(format!("{what} is not a {d}x{d} matrix")));
    }
    Ok(Matrix::from_fn(d, |i, j| {
        C64::new(rows[i][j][0], rows[i][j][1])
    }))
}

fn from_matrix(m: &Matrix) -> ComplexMatrix {
    (0..m.dim())
        .map(|i| {
            (0..m.dim())
                .map(|j| [m.get(i, j).re, m.get(i, j).im])
                .collect()
        })
        .collect()
}

impl MeasurementFile {
    /// Checks the shape of the file and converts entries to Hermitian
    /// operators. Shape problems are parse errors; non-Hermitian or
    /// non-finite entries make the measurement invalid.
    pub fn operators(&self) -> CliResult<RawMeasurement> {
        let d = self.dimension;
        if d == 0 {
            return Err(CliError::Parse("dimension must be positive".into()));
        }
        if self.groups.is_empty() || self.groups.iter().any(|g| g.operators.is_empty()) {
            return Err(CliError::Parse(
                "every group needs at least one operator".into(),
            ));
        }
        let declared = self.groups.iter().filter(|g| g.gamma.is_some()).count();
        if declared != 0 && declared != self.groups.len() {
            return Err(CliError::Parse(
                "either every group declares gamma or none does".into(),
            ));
        }
        let mut groups = Vec::with_capacity(self.groups.len());
        for (mu, g) in self.groups.iter().enumerate() {
            let mut ops = Vec::with_capacity(g.operators.len());
            for (j, rows) in g.operators.iter().enumerate() {
                let m = to_matrix(d, rows, &format!("operator {j} of group {mu}"))?;
                ops.push(HermitianOperator::new(m).map_err(CliError::Invalid)?);
            }
            groups.push(ops);
        }
        let gammas = (declared > 0).then(|| {
            self.groups
                .iter()
                .map(|g| g.gamma.unwrap_or_default())
                .collect()
        });
        Ok(RawMeasurement {
            dim: d,
            groups,
            gammas,
        })
    }

    pub fn from_measurement(m: &CatalogMeasurement) -> Self {
        match m {
            CatalogMeasurement::Equiangular(q) => MeasurementFile {
                dimension: q.dim(),
                groups: q
                    .groups()
                    .iter()
                    .zip(&q.params().gamma)
                    .map(|(g, gamma)| GroupFile {
                        gamma: Some(*gamma),
                        operators: g.iter().map(|op| from_matrix(op.matrix())).collect(),
                    })
                    .collect(),
            },
            CatalogMeasurement::Symmetric(s) => MeasurementFile {
                dimension: s.dim(),
                groups: s
                    .povms()
                    .iter()
                    .map(|p| GroupFile {
                        gamma: None,
                        operators: p
                            .elements()
                            .iter()
                            .map(|op| from_matrix(op.matrix()))
                            .collect(),
                    })
                    .collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("measurement files always serialize");
        s.push('\n');
        s
    }
}

impl RawMeasurement {
    /// Largest gap between a declared `γ_μ` and the one implied by the group sum.
    pub fn declared_gamma_residual(&self) -> Option<(usize, f64)> {
        let gammas = self.gammas.as_ref()?;
        let df = self.dim as f64;
        gammas
            .iter()
            .zip(&self.groups)
            .enumerate()
            .map(|(mu, (g, ops))| {
                let implied = ops.iter().map(HermitianOperator::trace).sum::<f64>() / df;
                (mu, (g - implied).abs())
            })
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Runs the structural characterization for the file's kind.
    pub fn build(self) -> CliResult<CatalogMeasurement> {
        match self.gammas {
            Some(_) => {
                if let Some((_, r)) = self
                    .declared_gamma_residual()
                    .filter(|(_, r)| r.is_nan() || *r > TOL_STRUCT)
                {
                    return Err(CliError::Invalid(Error::NotEquiangular {
                        condition: Condition::GroupSum,
                        residual: r,
                    }));
                }
                characterize_equiangular(self.groups)
                    .map(CatalogMeasurement::Equiangular)
                    .map_err(CliError::Invalid)
            }
            None => {
                let povms = self
                    .groups
                    .into_iter()
                    .map(Povm::new)
                    .collect::<Result<Vec<_>, _>>()?;
                characterize_symmetric(povms)
                    .map(CatalogMeasurement::Symmetric)
                    .map_err(CliError::Invalid)
            }
        }
    }
}

pub fn load_measurement(path: &Path) -> CliResult<CatalogMeasurement> {
    read_measurement_file(path)?.operators()?.build()
}

impl StateFile {
    pub fn density(&self, dim: usize) -> CliResult<DensityMatrix> {
        let rho = match (&self.bloch, &self.matrix) {
            (Some(b), None) => {
                if dim != 2 {
                    return Err(CliError::Parse(format!(
                        "a Bloch vector describes a qubit, measurement has d={dim}"
                    )));
                }
                bloch_to_density(BlochVector::new(b[0], b[1], b[2]))
            }
            (None, Some(rows)) => {
                let m = to_matrix(dim, rows, "state matrix")?;
                HermitianOperator::new(m).and_then(DensityMatrix::new)
            }
            _ => {
                return Err(CliError::Parse(
                    "state file needs exactly one of `bloch` or `matrix`".into(),
                ))
            }
        };
        rho.map_err(CliError::InvalidState)
    }
}

pub fn load_state(path: &Path, dim: usize) -> CliResult<DensityMatrix> {
    read_state_file(path)?.density(dim)
}
