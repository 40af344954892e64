//! POVMs, generalized symmetric measurement sets and generalized equiangular
//! measurements (GEAMs).
//!
//! A symmetric measurement set is `M` POVMs `{E_{μ,j}}` whose traces and
//! pairwise overlaps depend only on the group indices:
//!
//! ```text
//! tr E_{μ,j} = w_μ,   tr E_{μ,j}² = x_μ,   tr E_{μ,i}E_{μ,j} = y_μ (i≠j),
//! tr E_{μ,i}E_{ν,j} = z_{μν} (μ≠ν).
//! ```
//!
//! A GEAM is `M` groups `{Q_{μ,j}}` with `Σ_j Q_{μ,j} = γ_μ I`, `Σ_μ γ_μ = 1`,
//! `tr Q_{μ,j} = a_μ`, `tr Q² = b_μ a_μ²`, intra-group overlap `c_μ a_μ²` and
//! inter-group overlap `f a_μ a_ν` with `f = 1/d`. Scaling the POVMs of a
//! symmetric set by positive weights `γ_μ` produces a GEAM and vice versa.

use alloc::vec;
use alloc::vec::Vec;

use crate::eigen;
use crate::entropies::ProbabilityVector;
use crate::error::{Condition, Error, Result};
use crate::linalg::{
    close, hs_inner, swap_and_sym_projectors, DensityMatrix, HermitianOperator, Matrix, C64,
    TOL_PSD, TOL_STRUCT,
};

/// Singular-value cutoff (relative to the largest) for operator-space rank.
pub const RANK_CUTOFF: f64 = 1e-8;

fn common_dim<'a>(mut ops: impl Iterator<Item = &'a HermitianOperator>) -> Result<usize> {
    let first = ops.next().ok_or(Error::Empty)?.dim();
    for op in ops {
        if op.dim() != first {
            return Err(Error::DimensionMismatch(first, op.dim()));
        }
    }
    Ok(first)
}

fn tr(a: &HermitianOperator, b: &HermitianOperator) -> f64 {
    hs_inner(a, b).expect("dimensions checked by caller")
}

/// Worst residual observed for one structural condition.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Residual {
    pub condition: Condition,
    pub group: usize,
    pub i: usize,
    pub j: usize,
    pub value: f64,
    pub tolerance: f64,
}

impl Residual {
    pub fn passes(&self) -> bool {
        self.value <= self.tolerance
    }
}

/// Tracks the worst deviation for one condition.
struct Worst {
    condition: Condition,
    tolerance: f64,
    best: Option<Residual>,
}

impl Worst {
    fn new(condition: Condition, tolerance: f64) -> Self {
        Worst {
            condition,
            tolerance,
            best: None,
        }
    }

    fn record(&mut self, value: f64, group: usize, i: usize, j: usize) {
        let worse = match &self.best {
            None => true,
            Some(r) => value > r.value || value.is_nan(),
        };
        if worse {
            self.best = Some(Residual {
                condition: self.condition,
                group,
                i,
                j,
                value,
                tolerance: self.tolerance,
            });
        }
    }

    fn finish(self) -> Option<Residual> {
        self.best
    }
}

/// Relative deviation of `x` from `mean`.
fn dev(x: f64, mean: f64) -> f64 {
    (x - mean).abs() / mean.abs().max(1.0)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// A single measurement: positive operators intended to sum to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    elements: Vec<HermitianOperator>,
}

impl Povm {
    /// Checks only that the list is nonempty with a common dimension; use
    /// [`validate_povm`] for positivity and completeness.
    pub fn new(elements: Vec<HermitianOperator>) -> Result<Self> {
        common_dim(elements.iter())?;
        Ok(Povm { elements })
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Outcome probabilities `tr(E_j ρ)`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<ProbabilityVector> {
        let p = self
            .elements
            .iter()
            .map(|e| hs_inner(e, rho.operator()))
            .collect::<Result<Vec<_>>>()?;
        ProbabilityVector::new(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ValidationReport {
    /// Smallest eigenvalue over all elements.
    pub min_eigenvalue: f64,
    /// Max-norm of `Σ E_j - I`.
    pub completeness_residual: f64,
    pub valid: bool,
}

pub fn validate_povm(p: &Povm) -> Result<ValidationReport> {
    let d = common_dim(p.elements.iter())?;
    let min_eigenvalue = p
        .elements
        .iter()
        .map(HermitianOperator::min_eigenvalue)
        .fold(f64::INFINITY, f64::min);
    let sum = p
        .elements
        .iter()
        .fold(Matrix::zeros(d), |acc, e| &acc + e.matrix());
    let completeness_residual = (&sum - &Matrix::identity(d)).max_abs();
    Ok(ValidationReport {
        min_eigenvalue,
        completeness_residual,
        valid: min_eigenvalue >= -TOL_PSD && completeness_residual <= TOL_STRUCT,
    })
}

/// Parameters `(w, x, y, z)` of a symmetric measurement set.
///
/// `y[μ]` is `None` for single-element groups; `z[μ][μ]` is always `None`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SymmetricParams {
    pub n: Vec<usize>,
    pub w: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<Option<f64>>,
    pub z: Vec<Vec<Option<f64>>>,
}

impl SymmetricParams {
    pub fn groups(&self) -> usize {
        self.n.len()
    }

    /// Common outcome count, if every group has the same number of elements.
    pub fn common_outcome_count(&self) -> Option<usize> {
        let first = *self.n.first()?;
        self.n.iter().all(|&k| k == first).then_some(first)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMeasurementSet {
    dim: usize,
    povms: Vec<Povm>,
    params: SymmetricParams,
}

impl SymmetricMeasurementSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn povms(&self) -> &[Povm] {
        &self.povms
    }

    pub fn params(&self) -> &SymmetricParams {
        &self.params
    }

    /// Per-POVM outcome distributions.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<Vec<ProbabilityVector>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, rho.dim()));
        }
        self.povms.iter().map(|p| p.probabilities(rho)).collect()
    }

    /// Assembles a set without re-deriving its parameters. Intended for
    /// fixtures that need inconsistent data; all other code should go
    /// through [`characterize_symmetric`].
    pub fn from_parts_unchecked(dim: usize, povms: Vec<Povm>, params: SymmetricParams) -> Self {
        SymmetricMeasurementSet { dim, povms, params }
    }
}

/// Residual table for the symmetric-set conditions. Fails only on empty input
/// or mismatched dimensions.
pub fn symmetric_residuals(povms: &[Povm]) -> Result<(SymmetricParams, Vec<Residual>)> {
    let d = common_dim(povms.iter().flat_map(|p| p.elements.iter()))?;
    let m = povms.len();
    let mut positivity = Worst::new(Condition::Positivity, TOL_PSD);
    let mut completeness = Worst::new(Condition::Completeness, TOL_STRUCT);
    let mut trace = Worst::new(Condition::ElementTrace, TOL_STRUCT);
    let mut trace_rel = Worst::new(Condition::TraceRelation, TOL_STRUCT);
    let mut self_ov = Worst::new(Condition::SelfOverlap, TOL_STRUCT);
    let mut intra = Worst::new(Condition::IntraOverlap, TOL_STRUCT);
    let mut inter = Worst::new(Condition::InterOverlap, TOL_STRUCT);

    let mut params = SymmetricParams {
        n: povms.iter().map(Povm::len).collect(),
        w: vec![0.0; m],
        x: vec![0.0; m],
        y: vec![None; m],
        z: vec![vec![None; m]; m],
    };

    for (mu, povm) in povms.iter().enumerate() {
        let report = validate_povm(povm)?;
        positivity.record((-report.min_eigenvalue).max(0.0), mu, 0, 0);
        completeness.record(report.completeness_residual, mu, 0, 0);

        let els = &povm.elements;
        let nmu = els.len();
        let traces: Vec<f64> = els.iter().map(HermitianOperator::trace).collect();
        let w = mean(&traces);
        for (j, t) in traces.iter().enumerate() {
            trace.record(dev(*t, w), mu, j, j);
        }
        trace_rel.record(dev(w, d as f64 / nmu as f64), mu, 0, 0);
        params.w[mu] = w;

        let squares: Vec<f64> = els.iter().map(|e| tr(e, e)).collect();
        let x = mean(&squares);
        for (j, s) in squares.iter().enumerate() {
            self_ov.record(dev(*s, x), mu, j, j);
        }
        params.x[mu] = x;

        if nmu > 1 {
            let mut cross = Vec::new();
            let mut idx = Vec::new();
            for i in 0..nmu {
                for j in (i + 1)..nmu {
                    cross.push(tr(&els[i], &els[j]));
                    idx.push((i, j));
                }
            }
            let y = mean(&cross);
            for (v, (i, j)) in cross.iter().zip(idx) {
                intra.record(dev(*v, y), mu, i, j);
            }
            params.y[mu] = Some(y);
        }
    }

    for mu in 0..m {
        for nu in (mu + 1)..m {
            let mut vals = Vec::new();
            let mut idx = Vec::new();
            for (i, a) in povms[mu].elements.iter().enumerate() {
                for (j, b) in povms[nu].elements.iter().enumerate() {
                    vals.push(tr(a, b));
                    idx.push((i, j));
                }
            }
            let z = mean(&vals);
            for (v, (i, j)) in vals.iter().zip(idx) {
                inter.record(dev(*v, z), mu, i, j);
            }
            params.z[mu][nu] = Some(z);
            params.z[nu][mu] = Some(z);
        }
    }

    let residuals = [
        positivity,
        completeness,
        trace,
        trace_rel,
        self_ov,
        intra,
        inter,
    ]
    .into_iter()
    .filter_map(Worst::finish)
    .collect();
    Ok((params, residuals))
}

/// Extracts `(w, x, y, z)` from the actual traces, requiring each condition
/// to hold uniformly within [`TOL_STRUCT`].
pub fn characterize_symmetric(povms: Vec<Povm>) -> Result<SymmetricMeasurementSet> {
    let (params, residuals) = symmetric_residuals(&povms)?;
    if let Some(r) = residuals.iter().find(|r| !r.passes()) {
        return Err(Error::NotSymmetric {
            condition: r.condition,
            group: r.group,
            i: r.i,
            j: r.j,
            residual: r.value,
        });
    }
    for (mu, (x, y)) in params.x.iter().zip(&params.y).enumerate() {
        if let Some(y) = y {
            if *x <= y + TOL_STRUCT {
                return Err(Error::DegenerateFrame { group: mu });
            }
        }
    }
    let dim = povms[0].dim();
    Ok(SymmetricMeasurementSet { dim, povms, params })
}

/// Parameters `(γ, a, b, c, f)` of a GEAM. `c[μ]` is `None` for
/// single-element groups.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EquiangularParams {
    pub n: Vec<usize>,
    pub gamma: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<Option<f64>>,
    pub f: f64,
}

impl EquiangularParams {
    pub fn groups(&self) -> usize {
        self.n.len()
    }

    /// Total number of outcomes `K = Σ N_μ`.
    pub fn total_outcomes(&self) -> usize {
        self.n.iter().sum()
    }

    /// `a_μ² (b_μ - c_μ)`, when `c_μ` exists.
    pub fn frame_gap(&self, mu: usize) -> Option<f64> {
        self.c[mu].map(|c| self.a[mu] * self.a[mu] * (self.b[mu] - c))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquiangularMeasurement {
    dim: usize,
    groups: Vec<Vec<HermitianOperator>>,
    params: EquiangularParams,
}

impl EquiangularMeasurement {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn groups(&self) -> &[Vec<HermitianOperator>] {
        &self.groups
    }

    pub fn params(&self) -> &EquiangularParams {
        &self.params
    }

    pub fn elements(&self) -> impl Iterator<Item = &HermitianOperator> {
        self.groups.iter().flatten()
    }

    /// Distribution over all `K` outcomes, labelled `(μ, j)`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<ProbabilityVector> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, rho.dim()));
        }
        let mut p = Vec::new();
        let mut labels = Vec::new();
        for (mu, g) in self.groups.iter().enumerate() {
            for (j, q) in g.iter().enumerate() {
                p.push(tr(q, rho.operator()));
                labels.push((mu, j));
            }
        }
        Ok(ProbabilityVector::new(p)?.with_labels(labels))
    }

    /// Assembles a measurement without re-deriving its parameters. Intended
    /// for fixtures that need inconsistent data; all other code should go
    /// through [`characterize_equiangular`].
    pub fn from_parts_unchecked(
        dim: usize,
        groups: Vec<Vec<HermitianOperator>>,
        params: EquiangularParams,
    ) -> Self {
        EquiangularMeasurement {
            dim,
            groups,
            params,
        }
    }
}

/// Residual table for the GEAM conditions. Fails only on empty input or
/// mismatched dimensions.
pub fn equiangular_residuals(
    groups: &[Vec<HermitianOperator>],
) -> Result<(EquiangularParams, Vec<Residual>)> {
    if groups.iter().any(Vec::is_empty) {
        return Err(Error::Empty);
    }
    let d = common_dim(groups.iter().flatten())?;
    let df = d as f64;
    let m = groups.len();

    let mut positivity = Worst::new(Condition::Positivity, TOL_PSD);
    let mut group_sum = Worst::new(Condition::GroupSum, TOL_STRUCT);
    let mut weight_sum = Worst::new(Condition::WeightSum, TOL_STRUCT);
    let mut trace = Worst::new(Condition::ElementTrace, TOL_STRUCT);
    let mut self_ov = Worst::new(Condition::SelfOverlap, TOL_STRUCT);
    let mut intra = Worst::new(Condition::IntraOverlap, TOL_STRUCT);
    let mut inter = Worst::new(Condition::InterOverlap, TOL_STRUCT);
    let mut frame = Worst::new(Condition::FrameConstant, TOL_STRUCT);
    let mut trace_rel = Worst::new(Condition::TraceRelation, TOL_STRUCT);
    let mut intra_rel = Worst::new(Condition::IntraRelation, TOL_STRUCT);

    let mut params = EquiangularParams {
        n: groups.iter().map(Vec::len).collect(),
        gamma: vec![0.0; m],
        a: vec![0.0; m],
        b: vec![0.0; m],
        c: vec![None; m],
        f: 1.0 / df,
    };

    // γ from group sums first, then a, b, c from traces.
    for (mu, g) in groups.iter().enumerate() {
        for (j, q) in g.iter().enumerate() {
            positivity.record((-q.min_eigenvalue()).max(0.0), mu, j, j);
        }
        let sum = g.iter().fold(Matrix::zeros(d), |acc, q| &acc + q.matrix());
        let gamma = sum.trace().re / df;
        group_sum.record(
            (&sum - &Matrix::identity(d).scale(gamma)).max_abs(),
            mu,
            0,
            0,
        );
        params.gamma[mu] = gamma;

        let traces: Vec<f64> = g.iter().map(HermitianOperator::trace).collect();
        let a = mean(&traces);
        for (j, t) in traces.iter().enumerate() {
            trace.record(dev(*t, a), mu, j, j);
        }
        params.a[mu] = a;
        trace_rel.record(dev(a, gamma * df / g.len() as f64), mu, 0, 0);

        let a2 = a * a;
        let squares: Vec<f64> = g.iter().map(|q| tr(q, q)).collect();
        let b = mean(&squares) / a2;
        for (j, s) in squares.iter().enumerate() {
            self_ov.record(dev(*s, b * a2), mu, j, j);
        }
        params.b[mu] = b;

        if g.len() > 1 {
            let mut cross = Vec::new();
            let mut idx = Vec::new();
            for i in 0..g.len() {
                for j in (i + 1)..g.len() {
                    cross.push(tr(&g[i], &g[j]));
                    idx.push((i, j));
                }
            }
            let c = mean(&cross) / a2;
            for (v, (i, j)) in cross.iter().zip(idx) {
                intra.record(dev(*v, c * a2), mu, i, j);
            }
            params.c[mu] = Some(c);
            let nf = g.len() as f64;
            intra_rel.record(dev(c, (nf / df - b) / (nf - 1.0)), mu, 0, 0);
        }
    }
    let total: f64 = params.gamma.iter().sum();
    weight_sum.record((total - 1.0).abs(), 0, 0, 0);

    // f from all inter-group pairs, normalized by a_μ a_ν.
    let mut fs = Vec::new();
    let mut idx = Vec::new();
    for mu in 0..m {
        for nu in (mu + 1)..m {
            for (i, p) in groups[mu].iter().enumerate() {
                for (j, q) in groups[nu].iter().enumerate() {
                    fs.push(tr(p, q) / (params.a[mu] * params.a[nu]));
                    idx.push((mu, i, j));
                }
            }
        }
    }
    if !fs.is_empty() {
        let f = mean(&fs);
        for (v, (mu, i, j)) in fs.iter().zip(idx) {
            inter.record(dev(*v, f), mu, i, j);
        }
        params.f = f;
    }
    frame.record(dev(params.f, 1.0 / df), 0, 0, 0);

    let residuals = [
        positivity, group_sum, weight_sum, trace, self_ov, intra, inter, frame, trace_rel,
        intra_rel,
    ]
    .into_iter()
    .filter_map(Worst::finish)
    .collect();
    Ok((params, residuals))
}

/// Extracts `(γ, a, b, c, f)` from raw operator groups and verifies every
/// defining condition and the derived identities.
pub fn characterize_equiangular(
    groups: Vec<Vec<HermitianOperator>>,
) -> Result<EquiangularMeasurement> {
    let (params, residuals) = equiangular_residuals(&groups)?;
    if let Some(r) = residuals.iter().find(|r| !r.passes()) {
        return Err(Error::NotEquiangular {
            condition: r.condition,
            residual: r.value,
        });
    }
    if params.gamma.iter().any(|&g| !(g > 0.0)) {
        return Err(Error::BadWeights);
    }
    for (mu, c) in params.c.iter().enumerate() {
        if let Some(c) = c {
            if params.b[mu] <= c + TOL_STRUCT {
                return Err(Error::DegenerateFrame { group: mu });
            }
        }
    }
    let dim = groups[0][0].dim();
    Ok(EquiangularMeasurement {
        dim,
        groups,
        params,
    })
}

/// Builds the GEAM `Q_{μ,j} = γ_μ E_{μ,j}`.
pub fn from_symmetric(
    gamma: &[f64],
    s: &SymmetricMeasurementSet,
) -> Result<EquiangularMeasurement> {
    let m = s.params.groups();
    if gamma.len() != m || gamma.iter().any(|&g| !(g > 0.0) || !g.is_finite()) {
        return Err(Error::BadWeights);
    }
    if !close(gamma.iter().sum(), 1.0, TOL_STRUCT) {
        return Err(Error::BadWeights);
    }
    let p = &s.params;
    let f = 1.0 / s.dim as f64;
    for mu in 0..m {
        for nu in (mu + 1)..m {
            let z = p.z[mu][nu].expect("off-diagonal z present");
            let fmn = z / (p.w[mu] * p.w[nu]);
            if !close(fmn, f, TOL_STRUCT) {
                return Err(Error::InconsistentF {
                    residual: (fmn - f).abs(),
                });
            }
        }
    }
    let groups: Vec<Vec<HermitianOperator>> = s
        .povms
        .iter()
        .zip(gamma)
        .map(|(povm, &g)| povm.elements.iter().map(|e| e.scale(g)).collect())
        .collect();
    let geam = characterize_equiangular(groups)?;

    // Coefficients predicted from (w, x, y, z) must agree with the extracted ones.
    let q = &geam.params;
    #[allow(clippy::needless_range_loop)]
    for mu in 0..m {
        let w2 = p.w[mu] * p.w[mu];
        let checks = [
            (q.a[mu], gamma[mu] * p.w[mu]),
            (q.b[mu], p.x[mu] / w2),
            (q.c[mu].unwrap_or(0.0), p.y[mu].map_or(0.0, |y| y / w2)),
        ];
        for (got, want) in checks {
            if !close(got, want, TOL_STRUCT) {
                return Err(Error::NotEquiangular {
                    condition: Condition::TraceRelation,
                    residual: (got - want).abs(),
                });
            }
        }
    }
    Ok(geam)
}

/// POVMs `γ_μ⁻¹ Q_{μ,j}` underlying a GEAM.
pub fn to_povms(m: &EquiangularMeasurement) -> Result<SymmetricMeasurementSet> {
    let povms = m
        .groups
        .iter()
        .zip(&m.params.gamma)
        .map(|(g, &gamma)| Povm::new(g.iter().map(|q| q.scale(1.0 / gamma)).collect()))
        .collect::<Result<Vec<_>>>()?;
    characterize_symmetric(povms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CompletenessReport {
    /// Span of the elements is all of operator space (`rank == d²`).
    pub complete: bool,
    pub rank: usize,
    /// `Σ N_μ == d² + M - 1`; necessary for a minimal complete GEAM.
    pub count_condition: bool,
}

/// Dimension of the real span of Hermitian operators, from the Gram matrix
/// `tr(A_i A_j)` with cutoff [`RANK_CUTOFF`].
pub fn operator_span_rank(ops: &[HermitianOperator]) -> Result<usize> {
    if ops.is_empty() {
        return Ok(0);
    }
    common_dim(ops.iter())?;
    let k = ops.len();
    let mut gram = vec![0.0; k * k];
    for i in 0..k {
        for j in i..k {
            let v = tr(&ops[i], &ops[j]);
            gram[i * k + j] = v;
            gram[j * k + i] = v;
        }
    }
    Ok(eigen::numerical_rank(&gram, k, RANK_CUTOFF))
}

pub fn is_informationally_complete(m: &EquiangularMeasurement) -> CompletenessReport {
    let ops: Vec<HermitianOperator> = m.elements().cloned().collect();
    let rank = operator_span_rank(&ops).expect("valid measurement");
    let d2 = m.dim * m.dim;
    CompletenessReport {
        complete: rank == d2,
        rank,
        count_condition: m.params.total_outcomes() == d2 + m.params.groups() - 1,
    }
}

/// Conical 2-design constants: `Σ Q⊗Q = κ₊ I⊗I + κ₋ W` with
/// `κ₋ = S = a_μ²(b_μ - c_μ)` and `κ₊ = (σ - S)/d`, `σ = Σ a_μ γ_μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConicalDesignParams {
    pub s: f64,
    pub sigma: f64,
    pub kappa_plus: f64,
    pub kappa_minus: f64,
}

pub fn conical_design_params(m: &EquiangularMeasurement) -> Result<ConicalDesignParams> {
    let p = &m.params;
    let gaps: Vec<f64> = (0..p.groups())
        .map(|mu| {
            p.frame_gap(mu).ok_or(Error::NotConicalDesign {
                group: mu,
                residual: f64::INFINITY,
            })
        })
        .collect::<Result<_>>()?;
    let s = gaps[0];
    for (mu, g) in gaps.iter().enumerate() {
        if !close(*g, s, TOL_STRUCT) {
            return Err(Error::NotConicalDesign {
                group: mu,
                residual: (g - s).abs(),
            });
        }
    }
    let s = mean(&gaps);
    let sigma: f64 = p.a.iter().zip(&p.gamma).map(|(a, g)| a * g).sum();
    let kappa_plus = (sigma - s) / m.dim as f64;
    let kappa_minus = s;
    if !(kappa_minus > 0.0) || kappa_plus < kappa_minus - TOL_STRUCT {
        return Err(Error::NotConicalDesign {
            group: 0,
            residual: kappa_minus - kappa_plus,
        });
    }
    Ok(ConicalDesignParams {
        s,
        sigma,
        kappa_plus,
        kappa_minus,
    })
}

/// Max-norm residual of `Σ Q⊗Q - κ₊ I⊗I - κ₋ W` on `H_d ⊗ H_d`.
pub fn verify_conical_operator_identity(m: &EquiangularMeasurement) -> Result<f64> {
    let cp = conical_design_params(m)?;
    Ok(conical_operator_residual(m, cp.kappa_plus, cp.kappa_minus))
}

/// Same residual for caller-supplied constants; used to test the tensor
/// identity independently of the coefficient condition.
pub fn conical_operator_residual(
    m: &EquiangularMeasurement,
    kappa_plus: f64,
    kappa_minus: f64,
) -> f64 {
    let d = m.dim;
    let (w, _, _) = swap_and_sym_projectors(d);
    let mut acc = Matrix::zeros(d * d);
    for q in m.elements() {
        acc = &acc + q.kron(q).matrix();
    }
    let target = &Matrix::identity(d * d).scale(kappa_plus) + &w.matrix().scale(kappa_minus);
    (&acc - &target).max_abs()
}

/// Max-norm residual of `K⁻¹ Σ |φ⟩⟨φ|⊗|φ⟩⟨φ| - 2/(d²+d) P_sym`.
pub fn projective_2design_residual(vectors: &[Vec<C64>]) -> Result<f64> {
    let first = vectors.first().ok_or(Error::Empty)?;
    let d = first.len();
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != d {
            return Err(Error::DimensionMismatch(d, v.len()));
        }
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if !close(norm, 1.0, TOL_STRUCT) {
            return Err(Error::NotNormalized { index, norm });
        }
    }
    let mut acc = Matrix::zeros(d * d);
    for v in vectors {
        let p = Matrix::outer(v);
        acc = &acc + &p.kron(&p);
    }
    let acc = acc.scale(1.0 / vectors.len() as f64);
    let (_, sym, _) = swap_and_sym_projectors(d);
    let target = sym.matrix().scale(2.0 / (d * d + d) as f64);
    Ok((&acc - &target).max_abs())
}

pub fn is_projective_2design(vectors: &[Vec<C64>]) -> Result<bool> {
    Ok(projective_2design_residual(vectors)? <= TOL_STRUCT)
}

/// Dual operators
/// `G_{μ,j} = (Q_{μ,j} - d⁻¹(a_μ - S_μ/(M γ_μ)) I) / S_μ`, `S_μ = a_μ²(b_μ - c_μ)`,
/// which reconstruct `tr(Q_{μ,i} ρ) = Σ_{ν,j} tr(Q_{ν,j} ρ) tr(Q_{μ,i} G_{ν,j})`.
pub fn dual_operators(m: &EquiangularMeasurement) -> Result<Vec<Vec<HermitianOperator>>> {
    let p = &m.params;
    let mf = p.groups() as f64;
    let df = m.dim as f64;
    let id = HermitianOperator::identity(m.dim);
    m.groups
        .iter()
        .enumerate()
        .map(|(mu, g)| {
            let gap = p
                .frame_gap(mu)
                .ok_or(Error::DegenerateFrame { group: mu })?;
            if !(gap > TOL_STRUCT) || !(p.gamma[mu] > 0.0) {
                return Err(Error::DegenerateFrame { group: mu });
            }
            let shift = (p.a[mu] - gap / (mf * p.gamma[mu])) / df;
            Ok(g.iter()
                .map(|q| q.sub(&id.scale(shift)).scale(1.0 / gap))
                .collect())
        })
        .collect()
}

/// Largest `|Σ_{ν,j} tr(Q_{ν,j} ρ) tr(Q_{μ,i} G_{ν,j}) - tr(Q_{μ,i} ρ)|`.
pub fn dual_reconstruction_residual(
    m: &EquiangularMeasurement,
    rho: &DensityMatrix,
) -> Result<f64> {
    if rho.dim() != m.dim {
        return Err(Error::DimensionMismatch(m.dim, rho.dim()));
    }
    let duals = dual_operators(m)?;
    let ops: Vec<&HermitianOperator> = m.elements().collect();
    let probs: Vec<f64> = ops.iter().map(|q| tr(q, rho.operator())).collect();
    let mut worst: f64 = 0.0;
    for (q, p) in ops.iter().zip(&probs) {
        let rebuilt: f64 = duals
            .iter()
            .flatten()
            .zip(&probs)
            .map(|(g, pj)| pj * tr(q, g))
            .sum();
        worst = worst.max((rebuilt - p).abs());
    }
    Ok(worst)
}

/// Largest entrywise deviation of `tr(G_{μ,i} G_{ν,j})` from
/// `[δ_{μν}δ_{ij} S_μ + δ_{μν} a_μ²(c_μ - f)]/(S_μ S_ν) + f/(M² γ_μ γ_ν)`.
pub fn dual_gram_residual(m: &EquiangularMeasurement) -> Result<f64> {
    let duals = dual_operators(m)?;
    let p = &m.params;
    let mf = p.groups() as f64;
    let mut worst: f64 = 0.0;
    for (mu, gm) in duals.iter().enumerate() {
        let s_mu = p
            .frame_gap(mu)
            .ok_or(Error::DegenerateFrame { group: mu })?;
        let c_mu = p.c[mu].ok_or(Error::DegenerateFrame { group: mu })?;
        for (nu, gn) in duals.iter().enumerate() {
            let s_nu = p
                .frame_gap(nu)
                .ok_or(Error::DegenerateFrame { group: nu })?;
            for (i, a) in gm.iter().enumerate() {
                for (j, b) in gn.iter().enumerate() {
                    let mut num = 0.0;
                    if mu == nu {
                        if i == j {
                            num += s_mu;
                        }
                        num += p.a[mu] * p.a[mu] * (c_mu - p.f);
                    }
                    let want = num / (s_mu * s_nu) + p.f / (mf * mf * p.gamma[mu] * p.gamma[nu]);
                    worst = worst.max((tr(a, b) - want).abs());
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn diag(a: f64, b: f64) -> HermitianOperator {
        HermitianOperator::from_real_diagonal(&[a, b])
    }

    fn herm(rows: &[&[C64]]) -> HermitianOperator {
        HermitianOperator::new(Matrix::from_rows(rows)).unwrap()
    }

    fn two_outcome_z(t: f64) -> Povm {
        Povm::new(vec![diag(0.5 + t, 0.5 - t), diag(0.5 - t, 0.5 + t)]).unwrap()
    }

    #[test]
    fn validate_basis_and_overfull() {
        let basis = Povm::new(vec![diag(1.0, 0.0), diag(0.0, 1.0)]).unwrap();
        assert!(validate_povm(&basis).unwrap().valid);
        let doubled = Povm::new(vec![
            HermitianOperator::identity(2),
            HermitianOperator::identity(2),
        ])
        .unwrap();
        let r = validate_povm(&doubled).unwrap();
        assert!(!r.valid);
        assert!((r.completeness_residual - 1.0).abs() < 1e-15);
        let neg = Povm::new(vec![diag(1.1, 0.0), diag(-0.1, 1.0)]).unwrap();
        assert!(!validate_povm(&neg).unwrap().valid);
    }

    #[test]
    fn povm_dimension_mismatch() {
        let r = Povm::new(vec![diag(1.0, 0.0), HermitianOperator::identity(3)]);
        assert_eq!(r, Err(Error::DimensionMismatch(2, 3)));
        assert_eq!(Povm::new(vec![]), Err(Error::Empty));
    }

    #[test]
    fn nonuniform_inter_overlap_rejected() {
        let basis = two_outcome_z(0.5);
        let noisy = two_outcome_z(0.1);
        let err = characterize_symmetric(vec![basis, noisy]).unwrap_err();
        assert!(
            matches!(
                err,
                Error::NotSymmetric {
                    condition: Condition::InterOverlap,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn degenerate_frame_detected() {
        let flat = Povm::new(vec![diag(0.5, 0.5), diag(0.5, 0.5)]).unwrap();
        assert_eq!(
            characterize_symmetric(vec![flat]).unwrap_err(),
            Error::DegenerateFrame { group: 0 }
        );
    }

    #[test]
    fn bad_weights() {
        let s = characterize_symmetric(vec![two_outcome_z(0.5)]).unwrap();
        assert_eq!(from_symmetric(&[0.5], &s).unwrap_err(), Error::BadWeights);
        assert_eq!(
            from_symmetric(&[1.0, 0.0], &s).unwrap_err(),
            Error::BadWeights
        );
        let s2 = characterize_symmetric(vec![two_outcome_z(0.5), two_outcome_z(0.5)]);
        // Two identical bases are not unbiased but are still a symmetric set
        // only if the inter overlap is uniform, which it is not.
        assert!(s2.is_err());
    }

    #[test]
    fn single_element_group_allowed() {
        let trivial = Povm::new(vec![HermitianOperator::identity(2)]).unwrap();
        let s = characterize_symmetric(vec![two_outcome_z(0.5), trivial]).unwrap();
        assert_eq!(s.params().y[1], None);
        let g = from_symmetric(&[0.5, 0.5], &s).unwrap();
        assert_eq!(g.params().c[1], None);
        assert!(matches!(
            conical_design_params(&g),
            Err(Error::NotConicalDesign { group: 1, .. })
        ));
        assert!(matches!(
            dual_operators(&g),
            Err(Error::DegenerateFrame { group: 1 })
        ));
    }

    #[test]
    fn raw_rank_of_single_basis() {
        let ops = [diag(1.0, 0.0), diag(0.0, 1.0)];
        assert_eq!(operator_span_rank(&ops).unwrap(), 2);
    }

    #[test]
    fn projective_design_negatives() {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let z_and_x = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(s, 0.0), c(s, 0.0)],
            vec![c(s, 0.0), c(-s, 0.0)],
        ];
        assert!(!is_projective_2design(&z_and_x).unwrap());
        let basis = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ];
        assert!(!is_projective_2design(&basis).unwrap());
        let bad = vec![vec![c(1.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(
            is_projective_2design(&bad),
            Err(Error::NotNormalized { index: 0, .. })
        ));
    }

    #[test]
    fn pauli_eigenvectors_form_design() {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let v = vec![
            vec![c(s, 0.0), c(s, 0.0)],
            vec![c(s, 0.0), c(-s, 0.0)],
            vec![c(s, 0.0), c(0.0, s)],
            vec![c(s, 0.0), c(0.0, -s)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ];
        assert!(is_projective_2design(&v).unwrap());
    }

    #[test]
    fn non_hermitian_entry_rejected_before_characterization() {
        let m = Matrix::from_rows(&[&[c(1.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.0, 0.0)]]);
        assert!(HermitianOperator::new(m).is_err());
        let _ = herm(&[&[c(1.0, 0.0), c(0.0, 1.0)], &[c(0.0, -1.0), c(1.0, 0.0)]]);
    }
}
