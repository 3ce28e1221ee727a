//! Qubit fixtures: the `|±⟩` measurement, its unsharp version, and `|+⟩`.

use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::quantum::{Observable, State};

/// `{½[[1, 1], [1, 1]], ½[[1, −1], [−1, 1]]}`: the projective measurement in
/// the `|±⟩` basis.
pub fn plus_minus_observable() -> Observable {
    Observable::from_matrices(vec![
        ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]]).unwrap(),
    ])
    .expect("valid observable")
}

/// `{½[[1, ⅓], [⅓, 1]], ½[[1, −⅓], [−⅓, 1]]}`: an unsharp `|±⟩` measurement.
pub fn unsharp_plus_minus_observable() -> Observable {
    let k = 1.0 / 6.0;
    Observable::from_matrices(vec![
        ComplexMatrix::from_real_rows(&[&[0.5, k], &[k, 0.5]]).unwrap(),
        ComplexMatrix::from_real_rows(&[&[0.5, -k], &[-k, 0.5]]).unwrap(),
    ])
    .expect("valid observable")
}

/// `|ψ⟩⟨ψ|` for `ψ = (|0⟩ + |1⟩)/√2`.
pub fn plus_state() -> State {
    State::pure(&ComplexVector::from_real(&[1.0, 1.0]).unwrap()).expect("nonzero ket")
}
