//! Uncertainty relations for measurements built from generalized equiangular
//! tight frames.
//!
//! Everything rests on an estimate of the index of coincidence. For the POVMs
//! `E_μ` of a symmetric set, with weights `ω_μ = Ω⁻¹/(x_μ - y_μ)` and
//! `Ω = Σ 1/(x_μ - y_μ)`,
//!
//! ```text
//! Σ ω_μ I(E_μ; ρ) ≤ (d tr ρ² - 1)/(Ω d) + d⁻¹ Σ w_μ ω_μ            (averaged)
//! I(P; ρ) = S tr ρ² + (σ - S)/d                                  (conical GEAM)
//! ```
//!
//! and each relation is a monotone (convex or concave) function of that
//! argument applied through one of the diagram functions in
//! [`crate::diagrams`]. Replacing `tr ρ²` by one gives the state-independent
//! form of every relation.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::diagrams::{entropy_minorant, max_prob_lower, max_prob_upper, pair_sum_upper};
use crate::entropies::{index_of_coincidence, renyi_entropy, tsallis_entropy, tsallis_to_renyi};
use crate::error::{Error, Result};
use crate::linalg::{purity, BlochVector, DensityMatrix, TOL_STRUCT};
use crate::measurements::{
    conical_design_params, to_povms, ConicalDesignParams, EquiangularMeasurement,
    SymmetricMeasurementSet, SymmetricParams,
};

/// Slack below which a relation counts as violated.
pub const SLACK_TOL: f64 = 1e-10;

/// Weights `ω_μ` and their normalizer `Ω`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Weights {
    pub omega: Vec<f64>,
    pub normalizer: f64,
}

pub fn weights(params: &SymmetricParams) -> Result<Weights> {
    let gaps = params
        .x
        .iter()
        .zip(&params.y)
        .enumerate()
        .map(|(mu, (x, y))| match y {
            Some(y) if x - y > TOL_STRUCT => Ok(x - y),
            _ => Err(Error::DegenerateFrame { group: mu }),
        })
        .collect::<Result<Vec<f64>>>()?;
    let normalizer: f64 = gaps.iter().map(|g| 1.0 / g).sum();
    let omega = gaps.iter().map(|g| 1.0 / (normalizer * g)).collect();
    Ok(Weights { omega, normalizer })
}

fn check_purity(p: f64, d: usize) -> Result<f64> {
    let lo = 1.0 / d as f64;
    if !p.is_finite() || p < lo - TOL_STRUCT || p > 1.0 + TOL_STRUCT {
        return Err(Error::Domain {
            what: "purity",
            value: p,
        });
    }
    Ok(p.clamp(lo, 1.0))
}

/// Upper bound on `Σ ω_μ I(E_μ; ρ)` for a state of the given purity.
pub fn averaged_ic_bound(params: &SymmetricParams, purity: f64, d: usize) -> Result<f64> {
    let purity = check_purity(purity, d)?;
    let w = weights(params)?;
    let df = d as f64;
    let tail: f64 = params
        .w
        .iter()
        .zip(&w.omega)
        .map(|(w, o)| w * o)
        .sum::<f64>()
        / df;
    Ok((df * purity - 1.0) / (w.normalizer * df) + tail)
}

/// `Σ ω_μ I(E_μ; ρ)`.
pub fn averaged_ic(set: &SymmetricMeasurementSet, rho: &DensityMatrix) -> Result<f64> {
    let w = weights(set.params())?;
    let probs = set.probabilities(rho)?;
    Ok(w.omega
        .iter()
        .zip(&probs)
        .map(|(o, p)| o * index_of_coincidence(p))
        .sum())
}

/// Exact index of coincidence `S tr ρ² + (σ - S)/d` of a conical 2-design.
pub fn conical_ic(params: &ConicalDesignParams, d: usize, purity: f64) -> f64 {
    params.s * purity + (params.sigma - params.s) / d as f64
}

/// Average index of coincidence of `d + 1` MUMs of efficiency `κ`.
pub fn mum_average_ic(d: usize, kappa: f64, purity: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::Domain {
            what: "dimension",
            value: d as f64,
        });
    }
    let df = d as f64;
    if !(kappa >= 1.0 / df - TOL_STRUCT && kappa <= 1.0 + TOL_STRUCT) {
        return Err(Error::Domain {
            what: "efficiency",
            value: kappa,
        });
    }
    let purity = check_purity(purity, d)?;
    Ok(1.0 / (df + 1.0) + (1.0 - kappa + (kappa * df - 1.0) * purity) / (df * df - 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "kebab-case")
)]
pub enum Direction {
    /// `lhs >= rhs`.
    Lower,
    /// `lhs <= rhs`.
    Upper,
}

/// One side of a relation evaluated on a state.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Bound {
    pub lhs: f64,
    pub rhs: f64,
    pub direction: Direction,
}

impl Bound {
    fn lower(lhs: f64, rhs: f64) -> Self {
        Bound {
            lhs,
            rhs,
            direction: Direction::Lower,
        }
    }

    fn upper(lhs: f64, rhs: f64) -> Self {
        Bound {
            lhs,
            rhs,
            direction: Direction::Upper,
        }
    }

    /// Nonnegative when the relation holds.
    pub fn slack(&self) -> f64 {
        match self.direction {
            Direction::Lower => self.lhs - self.rhs,
            Direction::Upper => self.rhs - self.lhs,
        }
    }

    /// `(lhs - rhs)/lhs`, the gap relative to the measured value.
    pub fn relative_deviation(&self) -> f64 {
        (self.lhs - self.rhs) / self.lhs
    }

    pub fn holds(&self) -> bool {
        self.slack() >= -SLACK_TOL
    }
}

fn alpha_in(alpha: f64, min: f64, max: f64, open_min: bool) -> Result<()> {
    let ok = if open_min { alpha > min } else { alpha >= min };
    if ok && alpha <= max {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange { alpha, min, max })
    }
}

fn renyi_of_minorant(x: f64, alpha: f64) -> Result<f64> {
    tsallis_to_renyi(entropy_minorant(x, alpha)?, alpha)
}

fn weighted_entropy(
    set: &SymmetricMeasurementSet,
    rho: &DensityMatrix,
    entropy: impl Fn(&crate::entropies::ProbabilityVector) -> Result<f64>,
) -> Result<f64> {
    let w = weights(set.params())?;
    let probs = set.probabilities(rho)?;
    w.omega
        .iter()
        .zip(&probs)
        .map(|(o, p)| Ok(o * entropy(p)?))
        .sum()
}

fn conical_setup(m: &EquiangularMeasurement) -> Result<ConicalDesignParams> {
    conical_design_params(m)
}

/// Right-hand side of the averaged Tsallis relation, `L_α(averaged bound)`.
pub fn avg_tsallis_rhs(params: &SymmetricParams, d: usize, purity: f64, alpha: f64) -> Result<f64> {
    alpha_in(alpha, 0.0, 2.0, true)?;
    entropy_minorant(averaged_ic_bound(params, purity, d)?, alpha)
}

/// `Σ ω_μ H_α(E_μ; ρ) ≥ L_α(averaged bound)` for `α ∈ (0, 2]`.
pub fn avg_tsallis(
    set: &SymmetricMeasurementSet,
    rho: &DensityMatrix,
    alpha: f64,
) -> Result<Bound> {
    let rhs = avg_tsallis_rhs(set.params(), set.dim(), purity(rho), alpha)?;
    let lhs = weighted_entropy(set, rho, |p| tsallis_entropy(p, alpha))?;
    Ok(Bound::lower(lhs, rhs))
}

pub fn conical_tsallis_rhs(
    cp: &ConicalDesignParams,
    d: usize,
    purity: f64,
    alpha: f64,
) -> Result<f64> {
    alpha_in(alpha, 0.0, 2.0, true)?;
    let purity = check_purity(purity, d)?;
    entropy_minorant(conical_ic(cp, d, purity), alpha)
}

/// `H_α(P; ρ) ≥ L_α(S tr ρ² + (σ - S)/d)` over all outcomes of a conical GEAM.
pub fn conical_tsallis(
    m: &EquiangularMeasurement,
    rho: &DensityMatrix,
    alpha: f64,
) -> Result<Bound> {
    let cp = conical_setup(m)?;
    let rhs = conical_tsallis_rhs(&cp, m.dim(), purity(rho), alpha)?;
    let lhs = tsallis_entropy(&m.probabilities(rho)?, alpha)?;
    Ok(Bound::lower(lhs, rhs))
}

pub fn avg_renyi_rhs(params: &SymmetricParams, d: usize, purity: f64, alpha: f64) -> Result<f64> {
    alpha_in(alpha, 1.0, 2.0, false)?;
    renyi_of_minorant(averaged_ic_bound(params, purity, d)?, alpha)
}

/// `Σ ω_μ R_α(E_μ; ρ) ≥ (1-α)⁻¹ ln{1 + (1-α) L_α(averaged bound)}`, for
/// `α ∈ [1, 2]` only.
pub fn avg_renyi(set: &SymmetricMeasurementSet, rho: &DensityMatrix, alpha: f64) -> Result<Bound> {
    let rhs = avg_renyi_rhs(set.params(), set.dim(), purity(rho), alpha)?;
    let lhs = weighted_entropy(set, rho, |p| renyi_entropy(p, alpha))?;
    Ok(Bound::lower(lhs, rhs))
}

/// The averaged Rényi relation evaluated for any `α ∈ (0, 2]`. Below one it
/// is not established, so failures here are findings, not bugs.
pub fn avg_renyi_unproven(
    set: &SymmetricMeasurementSet,
    rho: &DensityMatrix,
    alpha: f64,
) -> Result<Bound> {
    alpha_in(alpha, 0.0, 2.0, true)?;
    let rhs = renyi_of_minorant(
        averaged_ic_bound(set.params(), purity(rho), set.dim())?,
        alpha,
    )?;
    let lhs = weighted_entropy(set, rho, |p| renyi_entropy(p, alpha))?;
    Ok(Bound::lower(lhs, rhs))
}

pub fn conical_renyi_rhs(
    cp: &ConicalDesignParams,
    d: usize,
    purity: f64,
    alpha: f64,
) -> Result<f64> {
    alpha_in(alpha, 0.0, 2.0, true)?;
    let purity = check_purity(purity, d)?;
    renyi_of_minorant(conical_ic(cp, d, purity), alpha)
}

/// `R_α(P; ρ) ≥ (1-α)⁻¹ ln{1 + (1-α) L_α(conical IC)}` for `α ∈ (0, 2]`.
pub fn conical_renyi(m: &EquiangularMeasurement, rho: &DensityMatrix, alpha: f64) -> Result<Bound> {
    let cp = conical_setup(m)?;
    let rhs = conical_renyi_rhs(&cp, m.dim(), purity(rho), alpha)?;
    let lhs = renyi_entropy(&m.probabilities(rho)?, alpha)?;
    Ok(Bound::lower(lhs, rhs))
}

fn common_n(params: &SymmetricParams) -> Result<usize> {
    params
        .common_outcome_count()
        .ok_or(Error::UnequalOutcomeCounts)
}

pub fn avg_max_prob_rhs(params: &SymmetricParams, d: usize, purity: f64) -> Result<f64> {
    let n = common_n(params)?;
    max_prob_upper(averaged_ic_bound(params, purity, d)?, n)
}

/// `Σ ω_μ max_j tr(E_{μ,j} ρ) ≤ N⁻¹(1 + √(N-1) √(N X - 1))` with `X` the
/// averaged bound; requires equal outcome counts. `purity_override`
/// replaces `tr ρ²` in the right-hand side (one gives the state-independent form).
pub fn avg_max_prob(
    set: &SymmetricMeasurementSet,
    rho: &DensityMatrix,
    purity_override: Option<f64>,
) -> Result<Bound> {
    let pur = purity_override.unwrap_or_else(|| purity(rho));
    let rhs = avg_max_prob_rhs(set.params(), set.dim(), pur)?;
    let lhs = weighted_entropy(set, rho, |p| Ok(p.max()))?;
    Ok(Bound::upper(lhs, rhs))
}

/// Two-sided estimate of the largest outcome probability of a conical GEAM.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TwoSided {
    /// Absent in the state-independent form.
    pub lower: Option<f64>,
    pub value: f64,
    pub upper: f64,
}

impl TwoSided {
    pub fn lower_bound(&self) -> Option<Bound> {
        self.lower.map(|l| Bound::lower(self.value, l))
    }

    pub fn upper_bound(&self) -> Bound {
        Bound::upper(self.value, self.upper)
    }
}

/// `Λ_p(X) ≤ max_{μ,j} tr(Q_{μ,j} ρ) ≤ K⁻¹(1 + √(K-1) √(K X - 1))` with `X`
/// the exact conical IC and `K = Σ N_μ`. With `purity_override` the lower
/// side is dropped.
pub fn conical_max_prob(
    m: &EquiangularMeasurement,
    rho: &DensityMatrix,
    purity_override: Option<f64>,
) -> Result<TwoSided> {
    let cp = conical_setup(m)?;
    let pur = check_purity(purity_override.unwrap_or_else(|| purity(rho)), m.dim())?;
    let x = conical_ic(&cp, m.dim(), pur);
    let k = m.params().total_outcomes();
    let upper = max_prob_upper(x, k)?;
    let lower = match purity_override {
        Some(_) => None,
        None => Some(max_prob_lower(x)?),
    };
    let value = m.probabilities(rho)?.max();
    Ok(TwoSided {
        lower,
        value,
        upper,
    })
}

pub fn avg_pair_sum_rhs(params: &SymmetricParams, d: usize, purity: f64) -> Result<f64> {
    let n = common_n(params)?;
    pair_sum_upper(averaged_ic_bound(params, purity, d)?, n)
}

/// `Σ ω_μ max_{i≠j}(p_{μ,i} + p_{μ,j}) ≤ F_N(averaged bound)`; requires equal
/// outcome counts `N ≥ 2`.
pub fn avg_pair_sum(
    set: &SymmetricMeasurementSet,
    rho: &DensityMatrix,
    purity_override: Option<f64>,
) -> Result<Bound> {
    let pur = purity_override.unwrap_or_else(|| purity(rho));
    let rhs = avg_pair_sum_rhs(set.params(), set.dim(), pur)?;
    let lhs = weighted_entropy(set, rho, |p| {
        p.max_pair_sum().ok_or(Error::Domain {
            what: "outcome count",
            value: 1.0,
        })
    })?;
    Ok(Bound::upper(lhs, rhs))
}

/// Largest sum of two distinct outcome probabilities of a conical GEAM is at
/// most `F_K(conical IC)`.
pub fn conical_pair_sum(
    m: &EquiangularMeasurement,
    rho: &DensityMatrix,
    purity_override: Option<f64>,
) -> Result<Bound> {
    let cp = conical_setup(m)?;
    let pur = check_purity(purity_override.unwrap_or_else(|| purity(rho)), m.dim())?;
    let k = m.params().total_outcomes();
    let rhs = pair_sum_upper(conical_ic(&cp, m.dim(), pur), k)?;
    let lhs = m.probabilities(rho)?.max_pair_sum().ok_or(Error::Domain {
        what: "outcome count",
        value: 1.0,
    })?;
    Ok(Bound::upper(lhs, rhs))
}

/// Relations tracked in a [`BoundReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "snake_case")
)]
pub enum Relation {
    AveragedIndexOfCoincidence,
    AveragedTsallis,
    ConicalTsallis,
    AveragedRenyi,
    ConicalRenyi,
    AveragedMaxProbability,
    ConicalMaxProbabilityLower,
    ConicalMaxProbabilityUpper,
    AveragedPairSum,
    ConicalPairSum,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundEntry {
    pub relation: Relation,
    pub alpha: Option<f64>,
    pub direction: Direction,
    pub applicable: bool,
    pub reason: Option<String>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub slack: Option<f64>,
    pub rhs_state_independent: Option<f64>,
}

impl BoundEntry {
    fn from_result(
        relation: Relation,
        alpha: Option<f64>,
        direction: Direction,
        bound: Result<Bound>,
        state_independent: Option<f64>,
    ) -> Self {
        match bound {
            Ok(b) => BoundEntry {
                relation,
                alpha,
                direction,
                applicable: true,
                reason: None,
                lhs: Some(b.lhs),
                rhs: Some(b.rhs),
                slack: Some(b.slack()),
                rhs_state_independent: state_independent,
            },
            Err(e) => BoundEntry {
                relation,
                alpha,
                direction,
                applicable: false,
                reason: Some(e.to_string()),
                lhs: None,
                rhs: None,
                slack: None,
                rhs_state_independent: None,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EntropyValues {
    pub alpha: f64,
    pub tsallis: f64,
    pub renyi: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GroupStatistics {
    pub probabilities: Vec<f64>,
    pub index_of_coincidence: f64,
    pub entropies: Vec<EntropyValues>,
}

/// Everything known about one state under one GEAM.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundReport {
    pub dim: usize,
    pub purity: f64,
    pub bloch: Option<BlochVector>,
    /// `ω_μ`, absent when the underlying POVMs have a degenerate frame.
    pub weights: Option<Vec<f64>>,
    /// Statistics of each POVM `γ_μ⁻¹ Q_μ`.
    pub groups: Vec<GroupStatistics>,
    /// `Σ ω_μ` of the per-POVM entropies.
    pub averaged_entropies: Vec<EntropyValues>,
    /// Statistics over all `K` outcomes.
    pub full: GroupStatistics,
    pub conical: Option<ConicalDesignParams>,
    /// Predicted full-outcome IC for conical designs.
    pub conical_ic: Option<f64>,
    pub bounds: Vec<BoundEntry>,
}

impl BoundReport {
    /// Smallest slack over applicable relations.
    pub fn worst_slack(&self) -> Option<f64> {
        self.bounds.iter().filter_map(|b| b.slack).reduce(f64::min)
    }

    pub fn all_hold(&self) -> bool {
        self.worst_slack().is_none_or(|s| s >= -SLACK_TOL)
    }

    pub fn entry(&self, relation: Relation, alpha: Option<f64>) -> Option<&BoundEntry> {
        self.bounds
            .iter()
            .find(|b| b.relation == relation && b.alpha == alpha)
    }
}

fn group_stats(p: &crate::entropies::ProbabilityVector, alphas: &[f64]) -> Result<GroupStatistics> {
    let entropies = alphas
        .iter()
        .map(|&alpha| {
            Ok(EntropyValues {
                alpha,
                tsallis: tsallis_entropy(p, alpha)?,
                renyi: renyi_entropy(p, alpha)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupStatistics {
        probabilities: p.as_slice().to_vec(),
        index_of_coincidence: index_of_coincidence(p),
        entropies,
    })
}

/// Evaluates every relation that applies to `(m, ρ)`; relations whose
/// preconditions fail are recorded as inapplicable with a reason.
pub fn evaluate_report(
    m: &EquiangularMeasurement,
    rho: &DensityMatrix,
    alphas: &[f64],
) -> Result<BoundReport> {
    if rho.dim() != m.dim() {
        return Err(Error::DimensionMismatch(m.dim(), rho.dim()));
    }
    if let Some(&a) = alphas.iter().find(|a| !(**a > 0.0) || !a.is_finite()) {
        return Err(Error::Domain {
            what: "alpha",
            value: a,
        });
    }
    let d = m.dim();
    let pur = purity(rho);
    let set = to_povms(m);
    let wts = set.as_ref().ok().and_then(|s| weights(s.params()).ok());
    let conical = conical_design_params(m).ok();

    let groups = match &set {
        Ok(s) => s
            .probabilities(rho)?
            .iter()
            .map(|p| group_stats(p, alphas))
            .collect::<Result<Vec<_>>>()?,
        Err(_) => Vec::new(),
    };
    let averaged_entropies = match &wts {
        Some(w) => alphas
            .iter()
            .enumerate()
            .map(|(k, &alpha)| EntropyValues {
                alpha,
                tsallis: w
                    .omega
                    .iter()
                    .zip(&groups)
                    .map(|(o, g)| o * g.entropies[k].tsallis)
                    .sum(),
                renyi: w
                    .omega
                    .iter()
                    .zip(&groups)
                    .map(|(o, g)| o * g.entropies[k].renyi)
                    .sum(),
            })
            .collect(),
        None => Vec::new(),
    };
    let full_p = m.probabilities(rho)?;
    let full = group_stats(&full_p, alphas)?;

    let set_err = || -> Error {
        match &set {
            Err(e) => e.clone(),
            Ok(_) => Error::DegenerateFrame { group: 0 },
        }
    };
    let with_set = |f: &dyn Fn(&SymmetricMeasurementSet) -> Result<Bound>| -> Result<Bound> {
        match &set {
            Ok(s) => f(s),
            Err(_) => Err(set_err()),
        }
    };

    let mut bounds = Vec::new();
    use Direction::{Lower, Upper};
    use Relation::*;

    let avg_ic = with_set(&|s| {
        let rhs = averaged_ic_bound(s.params(), pur, d)?;
        Ok(Bound::upper(averaged_ic(s, rho)?, rhs))
    });
    let si = set
        .as_ref()
        .ok()
        .and_then(|s| averaged_ic_bound(s.params(), 1.0, d).ok());
    bounds.push(BoundEntry::from_result(
        AveragedIndexOfCoincidence,
        None,
        Upper,
        avg_ic,
        si,
    ));

    for &alpha in alphas {
        let si = set
            .as_ref()
            .ok()
            .and_then(|s| avg_tsallis_rhs(s.params(), d, 1.0, alpha).ok());
        bounds.push(BoundEntry::from_result(
            AveragedTsallis,
            Some(alpha),
            Lower,
            with_set(&|s| avg_tsallis(s, rho, alpha)),
            si,
        ));
        let si = conical.and_then(|cp| conical_tsallis_rhs(&cp, d, 1.0, alpha).ok());
        bounds.push(BoundEntry::from_result(
            ConicalTsallis,
            Some(alpha),
            Lower,
            conical_tsallis(m, rho, alpha),
            si,
        ));
        let si = set
            .as_ref()
            .ok()
            .and_then(|s| avg_renyi_rhs(s.params(), d, 1.0, alpha).ok());
        bounds.push(BoundEntry::from_result(
            AveragedRenyi,
            Some(alpha),
            Lower,
            with_set(&|s| avg_renyi(s, rho, alpha)),
            si,
        ));
        let si = conical.and_then(|cp| conical_renyi_rhs(&cp, d, 1.0, alpha).ok());
        bounds.push(BoundEntry::from_result(
            ConicalRenyi,
            Some(alpha),
            Lower,
            conical_renyi(m, rho, alpha),
            si,
        ));
    }

    let si = set
        .as_ref()
        .ok()
        .and_then(|s| avg_max_prob_rhs(s.params(), d, 1.0).ok());
    bounds.push(BoundEntry::from_result(
        AveragedMaxProbability,
        None,
        Upper,
        with_set(&|s| avg_max_prob(s, rho, None)),
        si,
    ));
    let two_sided = conical_max_prob(m, rho, None);
    let si_upper = conical_max_prob(m, rho, Some(1.0)).ok().map(|t| t.upper);
    bounds.push(BoundEntry::from_result(
        ConicalMaxProbabilityLower,
        None,
        Lower,
        two_sided.clone().map(|t| {
            t.lower_bound()
                .expect("state-dependent form has a lower side")
        }),
        None,
    ));
    bounds.push(BoundEntry::from_result(
        ConicalMaxProbabilityUpper,
        None,
        Upper,
        two_sided.map(|t| t.upper_bound()),
        si_upper,
    ));

    let si = set
        .as_ref()
        .ok()
        .and_then(|s| avg_pair_sum_rhs(s.params(), d, 1.0).ok());
    bounds.push(BoundEntry::from_result(
        AveragedPairSum,
        None,
        Upper,
        with_set(&|s| avg_pair_sum(s, rho, None)),
        si,
    ));
    let si = conical_pair_sum(m, rho, Some(1.0)).ok().map(|b| b.rhs);
    bounds.push(BoundEntry::from_result(
        ConicalPairSum,
        None,
        Upper,
        conical_pair_sum(m, rho, None),
        si,
    ));

    Ok(BoundReport {
        dim: d,
        purity: pur,
        bloch: rho.bloch(),
        weights: wts.map(|w| w.omega),
        groups,
        averaged_entropies,
        full,
        conical,
        conical_ic: conical.map(|cp| conical_ic(&cp, d, pur)),
        bounds,
    })
}
