//! Python bindings. Matrices are nested lists of Python complex numbers.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quncert::{ComplexMatrix, ComplexVector, FunctionRegistry};

fn py_err(e: quncert::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(rows).map_err(py_err)
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    m.rows()
}

#[pyclass(name = "State", frozen, from_py_object)]
#[derive(Clone)]
struct PyState(quncert::State);

#[pymethods]
impl PyState {
    #[new]
    fn new(density: Vec<Vec<Complex64>>) -> PyResult<Self> {
        quncert::State::new(matrix(density)?).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn pure(ket: Vec<Complex64>) -> PyResult<Self> {
        let ket = ComplexVector::new(ket).map_err(py_err)?;
        quncert::State::pure(&ket).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn maximally_mixed(n: usize) -> Self {
        Self(quncert::State::maximally_mixed(n))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        quncert::State::from_json(text).map(Self).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn density(&self) -> Vec<Vec<Complex64>> {
        rows(self.0.matrix())
    }
}

#[pyclass(name = "Observable", frozen, from_py_object)]
#[derive(Clone)]
struct PyObservable(quncert::Observable);

#[pymethods]
impl PyObservable {
    #[new]
    fn new(effects: Vec<Vec<Vec<Complex64>>>) -> PyResult<Self> {
        let matrices = effects.into_iter().map(matrix).collect::<PyResult<Vec<_>>>()?;
        quncert::Observable::from_matrices(matrices)
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn standard_basis(n: usize) -> PyResult<Self> {
        quncert::Observable::standard_basis(n).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        quncert::Observable::from_json(text).map(Self).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn outcomes(&self) -> usize {
        self.0.outcomes()
    }

    #[getter]
    fn hilbert_dim(&self) -> usize {
        self.0.hilbert_dim()
    }

    fn is_projective(&self) -> bool {
        self.0.is_projective()
    }

    fn effects(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.0.effects().iter().map(|e| rows(e.matrix())).collect()
    }
}

#[pyclass(name = "UncertaintyFunction", frozen, from_py_object)]
#[derive(Clone)]
struct PyFunction(quncert::UncertaintyFunction);

#[pymethods]
impl PyFunction {
    /// Accepts `v`, `e`, `g`, `s` or `mix:w1*f1+w2*f2+...`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        FunctionRegistry::default().parse(spec).map(Self).map_err(py_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name()
    }

    fn __call__(&self, probs: Vec<f64>) -> PyResult<f64> {
        let x = quncert::ProbabilityVector::new(probs).map_err(py_err)?;
        self.0.evaluate(&x).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("UncertaintyFunction('{}')", self.0.name())
    }
}

#[pyfunction]
fn born_distribution(state: &PyState, observable: &PyObservable) -> PyResult<Vec<f64>> {
    quncert::born_distribution(&state.0, &observable.0)
        .map(|p| p.probs().to_vec())
        .map_err(py_err)
}

#[pyfunction]
fn measure(f: &PyFunction, observable: &PyObservable, state: &PyState) -> PyResult<f64> {
    quncert::UncertaintyMeasure::new(f.0.clone(), observable.0.clone())
        .and_then(|m| m.measure(&state.0))
        .map_err(py_err)
}

/// Returns `{axiom: (pass, worst_violation)}`.
#[pyfunction]
#[pyo3(signature = (f, d, samples = 10_000, seed = 0))]
fn verify_axioms(
    f: &PyFunction,
    d: usize,
    samples: usize,
    seed: u64,
) -> PyResult<Vec<(String, bool, f64)>> {
    let report = quncert::verify_axioms(&f.0, d, samples, seed).map_err(py_err)?;
    Ok(report
        .checks()
        .iter()
        .map(|(k, c)| (k.to_string(), c.pass, c.worst_violation))
        .collect())
}

#[pyfunction]
fn mix_states(states: Vec<PyState>, weights: Vec<f64>) -> PyResult<PyState> {
    let states: Vec<_> = states.into_iter().map(|s| s.0).collect();
    quncert::mix_states(&states, &weights).map(PyState).map_err(py_err)
}

#[pyfunction]
fn mix_observables(observables: Vec<PyObservable>, weights: Vec<f64>) -> PyResult<PyObservable> {
    let observables: Vec<_> = observables.into_iter().map(|a| a.0).collect();
    quncert::mix_observables(&observables, &weights)
        .map(PyObservable)
        .map_err(py_err)
}

#[pyfunction]
fn is_maximal_uncertainty_state(state: &PyState, observable: &PyObservable) -> PyResult<bool> {
    quncert::is_maximal_uncertainty_state(&state.0, &observable.0).map_err(py_err)
}

#[pyfunction]
fn imaginary_phase_state(alpha: f64) -> PyResult<PyState> {
    quncert::imaginary_phase_state(alpha).map(PyState).map_err(py_err)
}

#[pyfunction]
fn variance_measure_decomposition(observable: &PyObservable, state: &PyState) -> PyResult<(f64, f64)> {
    quncert::variance_measure_decomposition(&observable.0, &state.0).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "quncert")]
fn quncert_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_class::<PyObservable>()?;
    m.add_class::<PyFunction>()?;
    m.add_function(wrap_pyfunction!(born_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(measure, m)?)?;
    m.add_function(wrap_pyfunction!(verify_axioms, m)?)?;
    m.add_function(wrap_pyfunction!(mix_states, m)?)?;
    m.add_function(wrap_pyfunction!(mix_observables, m)?)?;
    m.add_function(wrap_pyfunction!(is_maximal_uncertainty_state, m)?)?;
    m.add_function(wrap_pyfunction!(imaginary_phase_state, m)?)?;
    m.add_function(wrap_pyfunction!(variance_measure_decomposition, m)?)?;
    Ok(())
}
