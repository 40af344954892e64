//! Entropies and their lower bounds along a diameter of the Bloch ball.
//!
//! Rows sample `r² = i/(steps-1)`, `i = 0..steps`, with the Bloch vector
//! `r e_axis`. For every `α` the columns are, in order:
//!
//! * `tsallis_<α>_povm<μ>` and `renyi_<α>_povm<μ>` for each POVM `μ`;
//! * `tsallis_<α>_avg`, `tsallis_<α>_avg_bound`, `renyi_<α>_avg`,
//!   `renyi_<α>_avg_bound`: ω-weighted averages and their bounds;
//! * `tsallis_<α>_full`, `tsallis_<α>_conical_bound`, `renyi_<α>_full`,
//!   `renyi_<α>_conical_bound`: entropies over all outcomes and the
//!   conical-design bounds.
//!
//! Cells are empty where a bound does not apply. With rescaling, every
//! Tsallis column is divided by `ln_α K` and every Rényi column by `ln K`,
//! `K` the total number of outcomes.

use clap::ValueEnum;
use geam_core::bounds::{evaluate_report, BoundReport, Relation};
use geam_core::catalog::CatalogMeasurement;
use geam_core::entropies::alpha_log;
use geam_core::linalg::{bloch_to_density, BlochVector};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn bloch(self, r: f64) -> BlochVector {
        match self {
            Axis::X => BlochVector::new(r, 0.0, 0.0),
            Axis::Y => BlochVector::new(0.0, r, 0.0),
            Axis::Z => BlochVector::new(0.0, 0.0, r),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn value(&self, row: usize, name: &str) -> Option<f64> {
        self.rows
            .get(row)?
            .get(self.column(name)?)
            .copied()
            .flatten()
    }

    /// `#`-prefixed header, then one line per row with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# {}\n", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| v.map(|x| format!("{x:.16e}")).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn columns(groups: usize, alphas: &[f64]) -> Vec<String> {
    let mut cols = vec!["r2".to_string()];
    for a in alphas {
        for family in ["tsallis", "renyi"] {
            for mu in 1..=groups {
                cols.push(format!("{family}_{a}_povm{mu}"));
            }
        }
        for suffix in ["avg", "avg_bound"] {
            cols.push(format!("tsallis_{a}_{suffix}"));
        }
        for suffix in ["avg", "avg_bound"] {
            cols.push(format!("renyi_{a}_{suffix}"));
        }
        for (family, suffix) in [
            ("tsallis", "full"),
            ("tsallis", "conical_bound"),
            ("renyi", "full"),
            ("renyi", "conical_bound"),
        ] {
            cols.push(format!("{family}_{a}_{suffix}"));
        }
    }
    cols
}

fn row(
    report: &BoundReport,
    r2: f64,
    groups: usize,
    alphas: &[f64],
    scale: &[(f64, f64)],
) -> Vec<Option<f64>> {
    let mut out = vec![Some(r2)];
    let rhs = |rel: Relation, a: f64| report.entry(rel, Some(a)).and_then(|e| e.rhs);
    for (k, &a) in alphas.iter().enumerate() {
        let (st, sr) = scale[k];
        for mu in 0..groups {
            out.push(report.groups.get(mu).map(|g| g.entropies[k].tsallis / st));
        }
        for mu in 0..groups {
            out.push(report.groups.get(mu).map(|g| g.entropies[k].renyi / sr));
        }
        let avg = report.averaged_entropies.get(k);
        out.push(avg.map(|e| e.tsallis / st));
        out.push(rhs(Relation::AveragedTsallis, a).map(|v| v / st));
        out.push(avg.map(|e| e.renyi / sr));
        out.push(rhs(Relation::AveragedRenyi, a).map(|v| v / sr));
        out.push(Some(report.full.entropies[k].tsallis / st));
        out.push(rhs(Relation::ConicalTsallis, a).map(|v| v / st));
        out.push(Some(report.full.entropies[k].renyi / sr));
        out.push(rhs(Relation::ConicalRenyi, a).map(|v| v / sr));
    }
    out
}

pub fn sweep(
    m: &CatalogMeasurement,
    axis: Axis,
    steps: usize,
    alphas: &[f64],
    rescale: bool,
) -> CliResult<SweepTable> {
    if m.dim() != 2 {
        return Err(CliError::NonQubit(m.dim()));
    }
    if steps < 2 {
        return Err(CliError::Usage("a sweep needs at least two steps".into()));
    }
    if alphas.is_empty() {
        return Err(CliError::Usage("at least one alpha is required".into()));
    }
    let geam = m.as_equiangular().map_err(CliError::Invalid)?;
    let groups = geam.params().groups();
    let k = geam.params().total_outcomes() as f64;
    let scale: Vec<(f64, f64)> = alphas
        .iter()
        .map(|&a| {
            if rescale && k > 1.0 {
                Ok((alpha_log(k, a)?, k.ln()))
            } else {
                Ok((1.0, 1.0))
            }
        })
        .collect::<Result<_, geam_core::Error>>()?;
    let rows = (0..steps)
        .into_par_iter()
        .map(|i| {
            let r2 = i as f64 / (steps - 1) as f64;
            let rho = bloch_to_density(axis.bloch(r2.sqrt()))?;
            let report = evaluate_report(&geam, &rho, alphas)?;
            Ok(row(&report, r2, groups, alphas, &scale))
        })
        .collect::<Result<Vec<_>, geam_core::Error>>()?;
    Ok(SweepTable {
        columns: columns(groups, alphas),
        rows,
    })
}
