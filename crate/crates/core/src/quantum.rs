//! Effects, observables (POVMs), and density operators.
//!
//! All three are validated when built, so an existing value always satisfies
//! its invariants. Tolerances are absolute and live at the top of this module.
//!
//! JSON files: a state is `{"density": <matrix>}` or `{"ket": <vector>}`, an
//! observable is `{"effects": [<matrix>, ...]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::validate_weights;
use crate::linalg::{ComplexMatrix, ComplexVector, HERMITIAN_TOL};
use crate::simplex::ProbabilityVector;

/// Slack on minimum eigenvalues (positivity and `a ≤ I`).
pub const PSD_TOL: f64 = 1e-9;
/// Slack on `Σ Aᵢ = I` (max-entry norm).
pub const COMPLETENESS_TOL: f64 = 1e-9;
/// Slack on `tr ρ = 1`.
pub const TRACE_TOL: f64 = 1e-9;
/// An effect whose largest entry modulus is at most this is the zero effect.
pub const ZERO_EFFECT_TOL: f64 = 1e-10;
/// Largest tolerated imaginary part of `tr(ρAᵢ)`.
pub const IMAG_TOL: f64 = 1e-10;
/// Slack on `Aᵢ² = Aᵢ` and `tr Aᵢ = 1` for the projectivity predicates.
pub const PROJECTIVE_TOL: f64 = 1e-9;
/// Modulus below which a diagonal entry of `T` counts as zero.
pub const DIAGONAL_TOL: f64 = 1e-10;

/// A Hermitian operator `a` with `0 ≤ a ≤ I`, `a ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Effect {
    matrix: ComplexMatrix,
}

impl Effect {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let largest = matrix.max_abs();
        if largest <= ZERO_EFFECT_TOL {
            return Err(Error::ZeroEffect(largest));
        }
        let low = matrix.min_eigenvalue_hermitian()?;
        if low < -PSD_TOL {
            return Err(Error::NotPositive(low));
        }
        let headroom = ComplexMatrix::identity(matrix.dim())
            .sub(&matrix)?
            .min_eigenvalue_hermitian()?;
        if headroom < -PSD_TOL {
            return Err(Error::ExceedsIdentity(headroom));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn is_projection(&self) -> bool {
        self.matrix
            .matmul(&self.matrix)
            .and_then(|sq| sq.max_abs_diff(&self.matrix))
            .is_ok_and(|diff| diff <= PROJECTIVE_TOL)
    }
}

/// A finite POVM: `d ≥ 2` effects on a common space summing to the identity.
///
/// The outcome count `d` is independent of the Hilbert-space dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    effects: Vec<Effect>,
}

impl Observable {
    pub fn new(effects: Vec<Effect>) -> Result<Self> {
        if effects.len() < 2 {
            return Err(Error::TooFewOutcomes(effects.len()));
        }
        let n = effects[0].dim();
        let mut total = ComplexMatrix::zeros(n);
        for e in &effects {
            total = total.add(e.matrix())?;
        }
        let deviation = total.max_abs_diff(&ComplexMatrix::identity(n))?;
        if deviation > COMPLETENESS_TOL {
            return Err(Error::Incomplete(deviation));
        }
        Ok(Self { effects })
    }

    pub fn from_matrices(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(
            matrices
                .into_iter()
                .map(Effect::new)
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// `{|0⟩⟨0|, …, |n−1⟩⟨n−1|}`.
    pub fn standard_basis(n: usize) -> Result<Self> {
        Self::from_matrices(
            (0..n)
                .map(|i| {
                    let e = ComplexVector::basis(n, i);
                    ComplexMatrix::outer(&e, &e)
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    /// Outcome count `d`.
    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn hilbert_dim(&self) -> usize {
        self.effects[0].dim()
    }

    /// Every effect is a projection.
    pub fn is_projective(&self) -> bool {
        self.effects.iter().all(Effect::is_projection)
    }

    /// Every effect is a rank-one projection.
    pub fn is_atomic_projective(&self) -> bool {
        self.is_projective()
            && self
                .effects
                .iter()
                .all(|e| (e.matrix().trace() - 1.0).norm() <= PROJECTIVE_TOL)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ObservableFile = serde_json::from_str(text)?;
        Self::from_matrices(file.effects)
    }

    pub fn to_json(&self) -> String {
        let file = ObservableFile {
            effects: self.effects.iter().map(|e| e.matrix.clone()).collect(),
        };
        serde_json::to_string(&file).expect("matrices always serialize")
    }
}

/// A density operator: positive with unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    matrix: ComplexMatrix,
}

impl State {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let low = matrix.min_eigenvalue_hermitian()?;
        if low < -PSD_TOL {
            return Err(Error::NotPositive(low));
        }
        Ok(Self { matrix })
    }

    /// `|ψ⟩⟨ψ|` for the normalized ket.
    pub fn pure(ket: &ComplexVector) -> Result<Self> {
        let psi = ket.normalized()?;
        Self::new(ComplexMatrix::outer(&psi, &psi)?)
    }

    /// The completely random state `I/n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n).scale(1.0 / n as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The Born distribution `i ↦ tr(ρAᵢ)`.
    pub fn born_distribution(&self, a: &Observable) -> Result<ProbabilityVector> {
        born_distribution(self, a)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        match serde_json::from_str::<StateFile>(text)? {
            StateFile::Density { density } => Self::new(density),
            StateFile::Ket { ket } => Self::pure(&ket),
        }
    }

    pub fn to_json(&self) -> String {
        let file = StateFile::Density {
            density: self.matrix.clone(),
        };
        serde_json::to_string(&file).expect("matrices always serialize")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum StateFile {
    Density { density: ComplexMatrix },
    Ket { ket: ComplexVector },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObservableFile {
    effects: Vec<ComplexMatrix>,
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `Σ λᵢ ρᵢ` with weights in `[0, 1]` summing to one.
pub fn mix_states(states: &[State], weights: &[f64]) -> Result<State> {
    if states.is_empty() {
        return Err(Error::Empty("no states to mix"));
    }
    validate_weights(weights, states.len(), true)?;
    let n = states[0].dim();
    let mut acc = ComplexMatrix::zeros(n);
    for (s, &w) in states.iter().zip(weights) {
        check_dims(n, s.dim())?;
        acc = acc.add(&s.matrix.scale(w))?;
    }
    State::new(acc)
}

pub fn born_distribution(rho: &State, a: &Observable) -> Result<ProbabilityVector> {
    check_dims(a.hilbert_dim(), rho.dim())?;
    let mut probs = Vec::with_capacity(a.outcomes());
    for (index, effect) in a.effects().iter().enumerate() {
        let p = rho.matrix.trace_product(effect.matrix())?;
        if p.im.abs() > IMAG_TOL {
            return Err(Error::ComplexProbability { index, imag: p.im });
        }
        probs.push(p.re);
    }
    ProbabilityVector::new(probs)
}

/// The ρ-variance `tr(ρa²) − tr(ρa)²`.
pub fn effect_variance(a: &Effect, rho: &State) -> Result<f64> {
    check_dims(a.dim(), rho.dim())?;
    let square = a.matrix.matmul(&a.matrix)?;
    let second = rho.matrix.trace_product(&square)?.re;
    let first = rho.matrix.trace_product(&a.matrix)?.re;
    Ok(second - first * first)
}

/// Effect `j` of the result is `Σᵢ λᵢ Aᵢⱼ`.
pub fn mix_observables(observables: &[Observable], weights: &[f64]) -> Result<Observable> {
    if observables.is_empty() {
        return Err(Error::Empty("no observables to mix"));
    }
    validate_weights(weights, observables.len(), false)?;
    let n = observables[0].hilbert_dim();
    let d = observables[0].outcomes();
    for b in observables {
        check_dims(n, b.hilbert_dim())?;
        check_dims(d, b.outcomes())?;
    }
    let matrices = (0..d)
        .map(|j| {
            observables
                .iter()
                .zip(weights)
                .try_fold(ComplexMatrix::zeros(n), |acc, (b, &w)| {
                    acc.add(&b.effects[j].matrix.scale(w))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Observable::from_matrices(matrices)
}

/// Whether `tr(ρAᵢ) = 1/d` for every outcome (within the simplex tolerance).
pub fn is_maximal_uncertainty_state(rho: &State, a: &Observable) -> Result<bool> {
    Ok(born_distribution(rho, a)?.is_maximal_uncertainty())
}

/// `ρ = I/d + T` for a Hermitian `T` with zero diagonal. Such a state is
/// maximally uncertain for the standard-basis observable.
pub fn make_maximal_uncertainty_state(basis_dim: usize, t: &ComplexMatrix) -> Result<State> {
    check_dims(basis_dim, t.dim())?;
    let defect = t.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let diag = (0..basis_dim)
        .map(|r| t.get(r, r).norm())
        .fold(0.0, f64::max);
    if diag > DIAGONAL_TOL {
        return Err(Error::NonzeroDiagonal(diag));
    }
    let rho = ComplexMatrix::identity(basis_dim)
        .scale(1.0 / basis_dim as f64)
        .add(t)?;
    State::new(rho)
}

/// Recovers `T = ρ − I/d` from a state that is maximally uncertain for the
/// standard-basis observable.
pub fn decompose_maximal_uncertainty_state(rho: &State) -> Result<ComplexMatrix> {
    let d = rho.dim();
    let u = 1.0 / d as f64;
    let worst = (0..d)
        .map(|r| (rho.matrix.get(r, r) - u).norm())
        .fold(0.0, f64::max);
    if worst > crate::simplex::DIST_TOL {
        return Err(Error::NotMaximallyUncertain(worst));
    }
    rho.matrix.sub(&ComplexMatrix::identity(d).scale(u))
}

/// The pure qubit state with ket `[α, i·√(1 − α²)]`. Every member of this
/// family gives the uniform distribution under the `|±⟩` measurement.
pub fn imaginary_phase_state(alpha: f64) -> Result<State> {
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let ket = ComplexVector::new(vec![
        Complex64::new(alpha, 0.0),
        Complex64::new(0.0, (1.0 - alpha * alpha).sqrt()),
    ])?;
    State::pure(&ket)
}
