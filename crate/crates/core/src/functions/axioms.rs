//! Randomized verification of the uncertainty-function axioms.
//!
//! Each sample `i` draws from its own RNG stream derived from `(seed, i)`, so a
//! report depends only on the seed and the sample count.

use rand::Rng;
use serde::Serialize;

use super::UncertaintyFunction;
use crate::error::Result;
use crate::random::rng_for;
use crate::simplex::{random_permutation, ProbabilityVector};

/// Inequality slack used by every axiom check.
pub const AXIOM_TOL: f64 = 1e-9;

/// Outcome of one axiom check.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AxiomCheck {
    pub pass: bool,
    /// Largest observed violation (0 when the check never went the wrong way).
    pub worst_violation: f64,
    /// The offending vector(s) for the worst failure; empty on pass.
    pub witness: Vec<Vec<f64>>,
}

impl Default for AxiomCheck {
    fn default() -> Self {
        Self {
            pass: true,
            worst_violation: 0.0,
            witness: Vec::new(),
        }
    }
}

impl AxiomCheck {
    /// Records a sample. `violation` is positive when the inequality is
    /// broken; `failed` decides whether the sample fails the check.
    pub(crate) fn record(&mut self, violation: f64, failed: bool, witness: impl FnOnce() -> Vec<Vec<f64>>) {
        if violation.is_nan() {
            self.pass = false;
            self.worst_violation = f64::INFINITY;
            self.witness = witness();
            return;
        }
        let first_failure = failed && self.pass;
        if first_failure || violation > self.worst_violation {
            self.worst_violation = self.worst_violation.max(violation);
            if failed {
                self.pass = false;
                self.witness = witness();
            }
        }
    }
}

/// Per-axiom results for one function at one outcome count.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AxiomReport {
    /// `f(x) = 0` exactly on maximal-certainty distributions.
    pub zero_iff_certain: AxiomCheck,
    /// `f(x) = 1` exactly on the uniform distribution.
    pub one_iff_uniform: AxiomCheck,
    /// Invariance under permutations of the outcomes.
    pub symmetric: AxiomCheck,
    /// `f(λx + (1−λ)y) ≥ λf(x) + (1−λ)f(y)`.
    pub concave: AxiomCheck,
    /// `0 ≤ f ≤ 1`.
    pub range: AxiomCheck,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.pass)
    }

    pub fn checks(&self) -> [(&'static str, &AxiomCheck); 5] {
        [
            ("zero_iff_certain", &self.zero_iff_certain),
            ("one_iff_uniform", &self.one_iff_uniform),
            ("symmetric", &self.symmetric),
            ("concave", &self.concave),
            ("range", &self.range),
        ]
    }

    /// Largest violation among the failed checks.
    pub fn worst_failure(&self) -> f64 {
        self.checks()
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(_, c)| c.worst_violation)
            .fold(0.0, f64::max)
    }
}

/// Runs every axiom check on `samples` random draws at outcome count `d`.
///
/// The vertices and the uniform distribution are always checked in addition
/// to the random samples. Values are never clamped before comparison.
pub fn verify_axioms(
    f: &UncertaintyFunction,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let mut zero = AxiomCheck::default();
    let mut one = AxiomCheck::default();
    let mut symmetric = AxiomCheck::default();
    let mut concave = AxiomCheck::default();
    let mut range = AxiomCheck::default();

    let check_range = |x: &ProbabilityVector, value: f64, range: &mut AxiomCheck| {
        let violation = (-value).max(value - 1.0);
        range.record(violation, violation > AXIOM_TOL, || vec![x.probs().to_vec()]);
    };

    for i in 0..d {
        let vertex = ProbabilityVector::vertex(d, i)?;
        let value = f.evaluate(&vertex)?;
        zero.record(value.abs(), value.abs() > AXIOM_TOL, || {
            vec![vertex.probs().to_vec()]
        });
        check_range(&vertex, value, &mut range);
    }
    let uniform = ProbabilityVector::uniform(d)?;
    let at_uniform = f.evaluate(&uniform)?;
    one.record(
        (at_uniform - 1.0).abs(),
        (at_uniform - 1.0).abs() > AXIOM_TOL,
        || vec![uniform.probs().to_vec()],
    );
    check_range(&uniform, at_uniform, &mut range);

    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let x = ProbabilityVector::sample_with(d, &mut rng);
        // Every fourth sample mixes toward a vertex to probe the boundary.
        let y = if i % 4 == 3 {
            ProbabilityVector::vertex(d, rng.random_range(0..d))?
        } else {
            ProbabilityVector::sample_with(d, &mut rng)
        };
        let lambda: f64 = rng.random();
        let h = random_permutation(d, &mut rng);

        let fx = f.evaluate(&x)?;
        let fy = f.evaluate(&y)?;
        check_range(&x, fx, &mut range);

        if !x.is_maximal_certainty() {
            zero.record(-fx, fx <= 0.0, || vec![x.probs().to_vec()]);
        }
        if !x.is_maximal_uncertainty() {
            one.record(fx - 1.0, fx >= 1.0, || vec![x.probs().to_vec()]);
        }

        let permuted = x.permute(&h)?;
        let diff = (fx - f.evaluate(&permuted)?).abs();
        symmetric.record(diff, diff > AXIOM_TOL, || {
            vec![x.probs().to_vec(), permuted.probs().to_vec()]
        });

        let mixed = x.convex_combine(&y, lambda)?;
        let gap = lambda * fx + (1.0 - lambda) * fy - f.evaluate(&mixed)?;
        concave.record(gap, gap > AXIOM_TOL, || {
            vec![x.probs().to_vec(), y.probs().to_vec(), vec![lambda]]
        });
    }

    Ok(AxiomReport {
        zero_iff_certain: zero,
        one_iff_uniform: one,
        symmetric,
        concave,
        range,
    })
}

/// Checks `f(Σ λₖ zₖ) ≥ Σ λₖ f(zₖ)` for `n`-point mixtures over `trials`
/// random draws.
pub fn jensen_check(
    f: &UncertaintyFunction,
    d: usize,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<AxiomCheck> {
    let mut check = AxiomCheck::default();
    for t in 0..trials {
        let mut rng = rng_for(seed, t as u64);
        let weights = ProbabilityVector::sample_with(n.max(2), &mut rng);
        let points: Vec<ProbabilityVector> = (0..n)
            .map(|_| ProbabilityVector::sample_with(d, &mut rng))
            .collect();
        let mut mix = vec![0.0; d];
        let mut rhs = 0.0;
        for (w, z) in weights.probs().iter().zip(&points) {
            for (m, p) in mix.iter_mut().zip(z.probs()) {
                *m += w * p;
            }
            rhs += w * f.evaluate(z)?;
        }
        let mix = ProbabilityVector::new(mix)?;
        let gap = rhs - f.evaluate(&mix)?;
        check.record(gap, gap > AXIOM_TOL, || {
            let mut w = vec![weights.probs().to_vec()];
            w.extend(points.iter().map(|p| p.probs().to_vec()));
            w
        });
    }
    Ok(check)
}

/// `true` iff no `n`-point Jensen violation beyond [`AXIOM_TOL`] is found.
pub fn verify_jensen(
    f: &UncertaintyFunction,
    d: usize,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    Ok(jensen_check(f, d, n, trials, seed)?.pass)
}
