//! Seedable random streams and the heavy-tailed step sampler.
//!
//! Every random draw in the crate goes through [`RngState`]. A stream is a
//! pure function of its seed, and independent child streams are derived with
//! [`RngState::split`] so that parallel trials never share state.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::gamma;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random stream.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives an independent stream. The child seed depends only on this
    /// stream's seed and `child`, not on how many draws were made so far.
    pub fn split(&self, child: u64) -> RngState {
        let derived = splitmix64(splitmix64(self.seed) ^ splitmix64(child.wrapping_add(1)));
        RngState::new(derived)
    }

    /// Uniform draw in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform draw in `[lo, hi)`; `lo == hi` returns `lo`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if !(lo <= hi) {
            return Err(Error::InvalidRange { lo, hi });
        }
        Ok(self.uniform_unchecked(lo, hi))
    }

    pub(crate) fn uniform_unchecked(&mut self, lo: f64, hi: f64) -> f64 {
        let v = lo + (hi - lo) * self.unit();
        // rounding can land exactly on hi
        if v >= hi && hi > lo {
            hi.next_down()
        } else {
            v
        }
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// Standard normal draw.
    pub fn gaussian(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Uniformly random permutation of `0..n`.
    pub fn random_permutation(&mut self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.inner);
        perm
    }

    /// Draws a `dim`-vector of independent symmetric Levy steps using the
    /// Mantegna construction `u / |v|^(1/beta)`.
    pub fn levy_step(&mut self, params: &LevyParams, dim: usize) -> Vec<f64> {
        let sigma = params.sigma_u();
        let inv_beta = 1.0 / params.beta();
        (0..dim)
            .map(|_| {
                let u = self.gaussian() * sigma;
                let v = self.gaussian();
                u / v.abs().powf(inv_beta)
            })
            .collect()
    }
}

/// Stability index of the Mantegna sampler.
///
/// Step magnitudes have density tail `t^-lambda` with `lambda = beta + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LevyParams {
    beta: f64,
    sigma_u: f64,
}

impl LevyParams {
    pub const DEFAULT_BETA: f64 = 1.5;

    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "levy stability index must lie in (0, 2), got {beta}"
            )));
        }
        Ok(Self {
            beta,
            sigma_u: mantegna_sigma(beta),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn tail_exponent(&self) -> f64 {
        self.beta + 1.0
    }

    pub fn sigma_u(&self) -> f64 {
        self.sigma_u
    }
}

impl Default for LevyParams {
    fn default() -> Self {
        Self::new(Self::DEFAULT_BETA).expect("default beta is valid")
    }
}

impl TryFrom<f64> for LevyParams {
    type Error = Error;

    fn try_from(beta: f64) -> Result<Self> {
        Self::new(beta)
    }
}

impl From<LevyParams> for f64 {
    fn from(p: LevyParams) -> f64 {
        p.beta
    }
}

fn mantegna_sigma(beta: f64) -> f64 {
    let num = gamma(1.0 + beta) * (PI * beta / 2.0).sin();
    let den = gamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    (num / den).powf(1.0 / beta)
}
