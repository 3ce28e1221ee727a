//! Probability vectors on the simplex of `d ≥ 2` outcomes.

use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::random::rng_for;

/// Slack allowed on components and on the total when building a vector.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// Slack used by the maximal certainty / maximal uncertainty predicates.
pub const DIST_TOL: f64 = 1e-9;

/// A probability distribution over `d ≥ 2` outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

impl ProbabilityVector {
    /// Validates, clamps tiny excursions into `[0, 1]`, and renormalizes.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewOutcomes(values.len()));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || !(-SIMPLEX_TOL..=1.0 + SIMPLEX_TOL).contains(&value) {
                return Err(Error::ComponentOutOfRange { index, value });
            }
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::NotNormalized(total));
        }
        let clamped: Vec<f64> = values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
        let total: f64 = clamped.iter().sum();
        Ok(Self {
            probs: clamped.into_iter().map(|v| v / total).collect(),
        })
    }

    /// The uniform distribution (1/d, …, 1/d).
    pub fn uniform(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::TooFewOutcomes(d));
        }
        Ok(Self {
            probs: vec![1.0 / d as f64; d],
        })
    }

    /// The vertex with all mass on `index`.
    pub fn vertex(d: usize, index: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::TooFewOutcomes(d));
        }
        let mut probs = vec![0.0; d];
        probs[index] = 1.0;
        Ok(Self { probs })
    }

    pub fn d(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `lambda·x + (1 − lambda)·y`.
    pub fn convex_combine(&self, other: &Self, lambda: f64) -> Result<Self> {
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch {
                expected: self.d(),
                found: other.d(),
            });
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidLambda(lambda));
        }
        Self::new(
            self.probs
                .iter()
                .zip(&other.probs)
                .map(|(x, y)| lambda * x + (1.0 - lambda) * y)
                .collect(),
        )
    }

    /// Component `i` of the result is `x[h[i]]`.
    pub fn permute(&self, h: &[usize]) -> Result<Self> {
        if !is_permutation(h, self.d()) {
            return Err(Error::NotPermutation(h.to_vec()));
        }
        Ok(Self {
            probs: h.iter().map(|&j| self.probs[j]).collect(),
        })
    }

    pub fn is_maximal_certainty(&self) -> bool {
        self.probs.iter().any(|&p| p >= 1.0 - DIST_TOL)
    }

    pub fn is_maximal_uncertainty(&self) -> bool {
        let u = 1.0 / self.d() as f64;
        self.probs.iter().all(|&p| (p - u).abs() <= DIST_TOL)
    }

    /// Largest componentwise distance to `other`.
    pub fn max_gap(&self, other: &Self) -> Result<f64> {
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch {
                expected: self.d(),
                found: other.d(),
            });
        }
        Ok(self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// A uniformly distributed point on the simplex, deterministic in `seed`.
    pub fn sample_random(d: usize, seed: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::TooFewOutcomes(d));
        }
        Ok(Self::sample_with(d, &mut rng_for(seed, 0)))
    }

    /// Uniform simplex sample from normalized exponential spacings.
    pub fn sample_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        assert!(d >= 2, "simplex needs at least two outcomes");
        let draws: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = draws.iter().sum();
        Self {
            probs: draws.into_iter().map(|e| e / total).collect(),
        }
    }
}

pub fn is_permutation(h: &[usize], d: usize) -> bool {
    if h.len() != d {
        return false;
    }
    let mut seen = vec![false; d];
    for &j in h {
        if j >= d || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

/// Uniformly random permutation of `0..d` (Fisher–Yates).
pub fn random_permutation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<usize> {
    let mut h: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        let j = rng.random_range(0..=i);
        h.swap(i, j);
    }
    h
}

impl Serialize for ProbabilityVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.probs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProbabilityVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ProbabilityVector::new(Vec::<f64>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
