use core::fmt;

use thiserror::Error;

/// Structural condition checked when characterizing a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "kebab-case")
)]
pub enum Condition {
    /// Elements are positive semidefinite.
    Positivity,
    /// A POVM sums to the identity.
    Completeness,
    /// A group sums to a multiple of the identity.
    GroupSum,
    /// Group weights sum to one.
    WeightSum,
    /// All elements of a group share one trace.
    ElementTrace,
    /// All elements of a group share one squared norm.
    SelfOverlap,
    /// Distinct elements of one group share one overlap.
    IntraOverlap,
    /// Elements of distinct groups share one overlap.
    InterOverlap,
    /// Inter-group constant equals the inverse dimension.
    FrameConstant,
    /// Element trace agrees with weight, dimension and outcome count.
    TraceRelation,
    /// Intra-group coefficient agrees with the self-overlap coefficient.
    IntraRelation,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Positivity => "positivity",
            Condition::Completeness => "completeness",
            Condition::GroupSum => "group-sum",
            Condition::WeightSum => "weight-sum",
            Condition::ElementTrace => "element-trace",
            Condition::SelfOverlap => "self-overlap",
            Condition::IntraOverlap => "intra-overlap",
            Condition::InterOverlap => "inter-overlap",
            Condition::FrameConstant => "frame-constant",
            Condition::TraceRelation => "trace-relation",
            Condition::IntraRelation => "intra-relation",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not one (got {0})")]
    InvalidTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("Bloch vector has length {0} > 1")]
    InvalidBloch(f64),

    #[error("rank {rank} is invalid for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("measurement has no elements")]
    Empty,

    #[error("not a symmetric measurement set: {condition} fails at group {group} (elements {i}, {j}), residual {residual:e}")]
    NotSymmetric {
        condition: Condition,
        group: usize,
        i: usize,
        j: usize,
        residual: f64,
    },

    #[error("not an equiangular measurement: {condition} fails, residual {residual:e}")]
    NotEquiangular { condition: Condition, residual: f64 },

    #[error("degenerate frame in group {group}: self-overlap does not exceed cross overlap")]
    DegenerateFrame { group: usize },

    #[error("group weights must be positive and sum to one")]
    BadWeights,

    #[error("inter-group overlap is not uniform after normalization, residual {residual:e}")]
    InconsistentF { residual: f64 },

    #[error("not a conical 2-design: group {group} deviates by {residual:e}")]
    NotConicalDesign { group: usize, residual: f64 },

    #[error("vector {index} is not normalized (norm {norm})")]
    NotNormalized { index: usize, norm: f64 },

    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("alpha = {alpha} outside [{min}, {max}]")]
    AlphaOutOfRange { alpha: f64, min: f64, max: f64 },

    #[error("groups have unequal outcome counts")]
    UnequalOutcomeCounts,

    #[error("{0} is not a supported prime dimension")]
    NotPrime(usize),

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
