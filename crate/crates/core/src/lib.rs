//! # quncert
//!
//! Uncertainty of a quantum state as a composition of two parts:
//!
//! * the **quantum component**, the Born distribution `P_ρ^A(i) = tr(ρAᵢ)` of
//!   a finite POVM `A` in a state `ρ`;
//! * the **classical component**, an uncertainty function `f` on the
//!   probability simplex.
//!
//! The `(f, A)`-uncertainty of `ρ` is `f(P_ρ^A)`.
//!
//! ```
//! use quncert::{fixtures, State, UncertaintyFunction, UncertaintyMeasure};
//!
//! let m = UncertaintyMeasure::new(UncertaintyFunction::variance(), fixtures::plus_minus_observable())?;
//! assert!((m.measure(&State::maximally_mixed(2))? - 1.0).abs() < 1e-12);
//! assert!(m.measure(&fixtures::plus_state())?.abs() < 1e-12);
//! # Ok::<(), quncert::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod functions;
pub mod linalg;
pub mod measures;
pub mod quantum;
pub mod random;
pub mod simplex;
mod table;

pub use error::{Error, Result};
pub use functions::{
    eval_entropy, eval_geometric, eval_sine, eval_variance, make_mixture, make_sum_form,
    verify_axioms, verify_jensen, AxiomCheck, AxiomReport, FunctionRegistry, GeneratorFunction,
    UncertaintyFunction,
};
pub use linalg::{ComplexMatrix, ComplexVector};
pub use measures::{
    discriminate, measure_concavity_check, mixed_measure, variance_measure_decomposition,
    DiscriminationReport, UncertaintyMeasure,
};
pub use quantum::{
    born_distribution, decompose_maximal_uncertainty_state, effect_variance,
    imaginary_phase_state, is_maximal_uncertainty_state, make_maximal_uncertainty_state,
    mix_observables, mix_states, Effect, Observable, State,
};
pub use simplex::ProbabilityVector;
