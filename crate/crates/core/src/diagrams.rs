//! Boundary functions of information diagrams, i.e. bounds on entropies and
//! outcome probabilities at a given index of coincidence `X`.
//!
//! * [`entropy_minorant`]: polygonal lower boundary of the `(X, H_α)` diagram
//!   through the uniform-distribution points `(1/k, ln_α k)`.
//! * [`max_prob_lower`] and [`max_prob_upper`]: two-sided estimate of the
//!   largest probability.
//! * [`pair_sum_upper`]: upper bound on the largest sum of two probabilities.

use crate::entropies::ln_alpha;
use crate::error::{Error, Result};
use crate::linalg::TOL_STRUCT;

/// One linear piece `u - v X` of the entropy minorant, valid on
/// `[1/(k+1), 1/k]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub k: u64,
    pub u: f64,
    pub v: f64,
    start: f64,
    rise: f64,
}

impl Segment {
    pub fn new(k: u64, alpha: f64) -> Self {
        let kf = k as f64;
        let lk = ln_alpha(kf, alpha);
        let lk1 = ln_alpha(kf + 1.0, alpha);
        Segment {
            k,
            u: (kf + 1.0) * lk1 - kf * lk,
            v: kf * (kf + 1.0) * (lk1 - lk),
            start: lk,
            rise: lk1 - lk,
        }
    }

    /// Evaluates `u - v X`, measured from the grid point `1/k` so that the
    /// large intercept and slope do not cancel for big `k`.
    pub fn eval(&self, x: f64) -> f64 {
        let kf = self.k as f64;
        self.start + self.rise * (kf + 1.0) * (1.0 - kf * x)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange {
            alpha,
            min: 0.0,
            max: 2.0,
        })
    }
}

/// Clamps `x` into `[lo, 1]`, tolerating round-off of [`TOL_STRUCT`].
fn clamp_unit(x: f64, lo: f64, what: &'static str) -> Result<f64> {
    if !x.is_finite() || x < lo - TOL_STRUCT || x > 1.0 + TOL_STRUCT {
        return Err(Error::Domain { what, value: x });
    }
    Ok(x.clamp(lo, 1.0))
}

/// Piecewise-linear lower bound `L_α(X)` on the Tsallis α-entropy of any
/// distribution with index of coincidence `X`, for `0 < X <= 1` and
/// `0 < α <= 2`.
pub fn entropy_minorant(x: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "index of coincidence",
            value: x,
        });
    }
    let x = clamp_unit(x, 0.0, "index of coincidence")?;
    if x == 1.0 {
        return Ok(0.0);
    }
    let k = libm::floor(1.0 / x).max(1.0) as u64;
    Ok(Segment::new(k, alpha).eval(x))
}

/// Lower boundary `Λ_p(X)` of the `(X, max p)` diagram.
pub fn max_prob_lower(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "index of coincidence",
            value: x,
        });
    }
    let x = clamp_unit(x, 0.0, "index of coincidence")?;
    // X in [1/k, 1/(k-1)]; k >= 2 also covers X = 1.
    let k = libm::ceil(1.0 / x).max(2.0);
    let rad = ((k * x - 1.0) / (k - 1.0)).max(0.0);
    Ok((1.0 + libm::sqrt(rad)) / k)
}

/// Upper bound `(1 + √(N-1) √(N X - 1)) / N` on the largest of `N`
/// probabilities with index of coincidence `X ∈ [1/N, 1]`.
pub fn max_prob_upper(x: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain {
            what: "outcome count",
            value: 0.0,
        });
    }
    let nf = n as f64;
    let x = clamp_unit(x, 1.0 / nf, "index of coincidence")?;
    let rad = (nf * x - 1.0).max(0.0);
    Ok((1.0 + libm::sqrt(nf - 1.0) * libm::sqrt(rad)) / nf)
}

/// `F_N(X)`: upper bound on `max_{i≠j} (p_i + p_j)` for `N >= 2` outcomes
/// with index of coincidence `X ∈ [1/N, 1]`; equal to one for `X >= 1/2`.
pub fn pair_sum_upper(x: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain {
            what: "outcome count",
            value: n as f64,
        });
    }
    let nf = n as f64;
    let x = clamp_unit(x, 1.0 / nf, "index of coincidence")?;
    if x >= 0.5 {
        return Ok(1.0);
    }
    let rad = (nf * x - 1.0).max(0.0);
    Ok((2.0 + libm::sqrt(2.0 * nf - 4.0) * libm::sqrt(rad)) / nf)
}
