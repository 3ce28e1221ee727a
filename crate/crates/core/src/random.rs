//! Seeded generators for random matrices, states, and observables.
//!
//! Property checks derive one independent stream per trial from
//! `(seed, index)` via [`rng_for`], so results do not depend on evaluation
//! order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::quantum::{make_maximal_uncertainty_state, Effect, Observable, State};

/// The RNG stream for trial `index` under `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_complex_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| complex_gaussian(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_complex_matrix(n, rng);
    g.add(&g.adjoint()).expect("same dimension").scale(0.5)
}

pub fn random_ket<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexVector {
    ComplexVector::new((0..n).map(|_| complex_gaussian(rng)).collect()).expect("finite entries")
}

/// `ρ = GG†/tr(GG†)` with Gaussian `G`: full support on the state space.
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> State {
    let g = random_complex_matrix(n, rng);
    let gg = g.matmul(&g.adjoint()).expect("same dimension");
    let tr = gg.trace().re;
    State::new(gg.scale(1.0 / tr)).expect("Gram matrix is a valid state after normalization")
}

/// `k` orthonormal vectors of length `len` (Gram–Schmidt on Gaussian
/// vectors, re-orthogonalized once for stability).
pub fn random_orthonormal<R: Rng + ?Sized>(len: usize, k: usize, rng: &mut R) -> Vec<Vec<Complex64>> {
    assert!(k <= len, "cannot fit {k} orthonormal vectors in dimension {len}");
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    while basis.len() < k {
        let mut v: Vec<Complex64> = (0..len).map(|_| complex_gaussian(rng)).collect();
        for _ in 0..2 {
            for b in &basis {
                let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= overlap * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    basis
}

/// Haar-like random unitary, returned as its columns.
pub fn random_unitary_columns<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<ComplexVector> {
    random_orthonormal(n, n, rng)
        .into_iter()
        .map(|c| ComplexVector::new(c).expect("finite entries"))
        .collect()
}

/// A random `d`-outcome POVM on ℂⁿ.
///
/// Draws an isometry `V: ℂⁿ → ℂⁿᵈ` and cuts its range into `d` blocks of `n`
/// rows; effect `k` is `Vₖ†Vₖ`, so the effects are positive and sum to `V†V = I`.
pub fn random_povm<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Observable {
    // columns of V
    let cols = random_orthonormal(n * d, n, rng);
    let effects = (0..d)
        .map(|k| {
            let rows = k * n..(k + 1) * n;
            let m = ComplexMatrix::from_fn(n, |i, j| {
                rows.clone().map(|r| cols[i][r].conj() * cols[j][r]).sum()
            });
            // Symmetrize away rounding before validation.
            let m = m.add(&m.adjoint()).expect("same dimension").scale(0.5);
            Effect::new(m).expect("block of an isometry is an effect")
        })
        .collect();
    Observable::new(effects).expect("isometry blocks sum to the identity")
}

pub fn random_effect<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Effect {
    random_povm(n, 2, rng).effects()[0].clone()
}

/// A random projective observable with `d ≤ n` outcomes on ℂⁿ: the columns
/// of a random unitary are split into `d` non-empty groups and each group's
/// projector becomes an effect. With `d == n` the result is atomic.
pub fn random_projective_observable<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Observable {
    assert!((1..=n).contains(&d) && d >= 2, "need 2 ≤ d ≤ n");
    let cols = random_unitary_columns(n, rng);
    let mut group: Vec<usize> = (0..n).map(|i| if i < d { i } else { rng.random_range(0..d) }).collect();
    // shuffle which columns land in which group
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        group.swap(i, j);
    }
    let matrices = (0..d)
        .map(|g| {
            let mut p = ComplexMatrix::zeros(n);
            for (c, _) in group.iter().enumerate().filter(|(_, &gi)| gi == g) {
                p = p
                    .add(&ComplexMatrix::outer(&cols[c], &cols[c]).expect("same dimension"))
                    .expect("same dimension");
            }
            p.add(&p.adjoint()).expect("same dimension").scale(0.5)
        })
        .collect();
    Observable::from_matrices(matrices).expect("orthogonal projectors summing to I")
}

/// A Hermitian zero-diagonal `T` with Gaussian off-diagonal entries, scaled
/// down when necessary so that `I/d + T` keeps its smallest eigenvalue at or
/// above `0.1/d`.
pub fn random_admissible_offdiagonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let mut upper = vec![Complex64::new(0.0, 0.0); d * d];
    for r in 0..d {
        for c in (r + 1)..d {
            upper[r * d + c] = complex_gaussian(rng);
        }
    }
    let t = ComplexMatrix::from_fn(d, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Less => upper[r * d + c],
        std::cmp::Ordering::Greater => upper[c * d + r].conj(),
        std::cmp::Ordering::Equal => Complex64::new(0.0, 0.0),
    });
    let low = t.min_eigenvalue_hermitian().expect("Hermitian by construction");
    let limit = 0.9 / d as f64;
    if low < -limit {
        t.scale(limit / low.abs())
    } else {
        t
    }
}

/// `I/d + T` for a random admissible `T`.
pub fn random_maximal_uncertainty_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> State {
    let t = random_admissible_offdiagonal(d, rng);
    make_maximal_uncertainty_state(d, &t).expect("admissible T yields a state")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = rng_for(1, 0).random();
        let b: f64 = rng_for(1, 0).random();
        let c: f64 = rng_for(1, 1).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn povm_blocks_are_valid() {
        let mut rng = rng_for(2, 0);
        for n in 1..4 {
            for d in 2..5 {
                let a = random_povm(n, d, &mut rng);
                assert_eq!((a.hilbert_dim(), a.outcomes()), (n, d));
            }
        }
    }

    #[test]
    fn projective_observables() {
        let mut rng = rng_for(3, 0);
        let a = random_projective_observable(3, 3, &mut rng);
        assert!(a.is_atomic_projective());
        let b = random_projective_observable(3, 2, &mut rng);
        assert!(b.is_projective() && !b.is_atomic_projective());
    }

    #[test]
    fn admissible_offdiagonal_keeps_state_positive() {
        let mut rng = rng_for(4, 0);
        for d in 2..7 {
            let t = random_admissible_offdiagonal(d, &mut rng);
            assert!(t.is_hermitian(0.0));
            assert!((0..d).all(|r| t.get(r, r) == Complex64::new(0.0, 0.0)));
            let rho = random_maximal_uncertainty_state(d, &mut rng);
            assert!(rho.matrix().min_eigenvalue_hermitian().unwrap() > 0.0);
        }
    }
}
