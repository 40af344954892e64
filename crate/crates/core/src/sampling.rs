//! Seeded random states and probability vectors.
//!
//! Pure states are normalized vectors of independent standard complex
//! Gaussians (Haar measure). Mixed states of rank `k` are `G G† / tr(G G†)`
//! with a `d x k` Gaussian `G`; `k = d` gives the Hilbert–Schmidt measure.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, HermitianOperator, Matrix, C64};

/// Deterministic generator used for every sampling entry point.
pub type StateRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<C64> {
    (0..d)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect()
}

/// Haar-random unit vector in `C^d`.
pub fn random_pure_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<C64> {
    loop {
        let v = gaussian_vector(rng, d);
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Random density matrix of the given rank, drawn from `rng`.
pub fn random_density_with<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    rank: usize,
) -> Result<DensityMatrix> {
    if d == 0 || rank == 0 || rank > d {
        return Err(Error::InvalidRank { rank, dim: d });
    }
    let columns: Vec<Vec<C64>> = (0..rank).map(|_| gaussian_vector(rng, d)).collect();
    let mut m = Matrix::zeros(d);
    for col in &columns {
        m = &m + &Matrix::outer(col);
    }
    let tr = m.trace().re;
    let op = HermitianOperator::new(m.scale(1.0 / tr))?;
    DensityMatrix::new(op)
}

/// Random density matrix from a fresh generator seeded with `seed`.
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(&mut rng_from_seed(seed), d, rank)
}

/// Random state with a uniformly chosen rank in `1..=d`.
pub fn random_state_mixed_rank<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<DensityMatrix> {
    let rank = rng.random_range(1..=d);
    random_density_with(rng, d, rank)
}

/// Random probability vector of length `n`.
///
/// Draws alternate between flat Dirichlet vectors, sharply peaked ones and
/// vectors supported on a random subset, so boundary regions of the
/// coincidence-index diagrams are visited.
pub fn random_probability_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    assert!(n > 0);
    let mode = rng.random_range(0..4u8);
    let mut p: Vec<f64> = (0..n)
        .map(|_| {
            let e: f64 = Exp1.sample(rng);
            match mode {
                // Dirichlet(1/4): mass concentrates on few outcomes.
                1 => libm::pow(rng.random::<f64>(), 4.0) * e,
                _ => e,
            }
        })
        .collect();
    if mode == 2 {
        let support = rng.random_range(1..=n);
        for x in p.iter_mut().skip(support) {
            *x = 0.0;
        }
    }
    if mode == 3 {
        // Uniform over k outcomes, lightly perturbed.
        let k = rng.random_range(1..=n);
        for (i, x) in p.iter_mut().enumerate() {
            *x = if i < k { 1.0 + 1e-3 * *x } else { 0.0 };
        }
    }
    let total: f64 = p.iter().sum();
    if !(total > 0.0) {
        p.iter_mut().for_each(|x| *x = 0.0);
        p[0] = 1.0;
        return p;
    }
    p.iter_mut().for_each(|x| *x /= total);
    p
}
