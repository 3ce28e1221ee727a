//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; the process exits nonzero on any failure.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use quncert::fixtures::{plus_minus_observable, plus_state, unsharp_plus_minus_observable};
use quncert::functions::jensen_check;
use quncert::random::{
    random_admissible_offdiagonal, random_povm, random_projective_observable, random_state, rng_for,
};
use quncert::{
    born_distribution, decompose_maximal_uncertainty_state, imaginary_phase_state,
    is_maximal_uncertainty_state, make_maximal_uncertainty_state, make_mixture, make_sum_form,
    measure_concavity_check, mix_observables, variance_measure_decomposition, verify_axioms,
    ComplexMatrix, GeneratorFunction, Observable, ProbabilityVector, State, UncertaintyFunction,
    UncertaintyMeasure,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: quncert::Error) -> String {
    e.to_string()
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:.0?}"))
}

fn purity() -> UncertaintyFunction {
    UncertaintyFunction::custom("purity", None, |x| x.iter().map(|p| p * p).sum())
}

fn first_component() -> UncertaintyFunction {
    UncertaintyFunction::custom("x0", None, |x| x[0])
}

fn pv(values: &[f64]) -> ProbabilityVector {
    ProbabilityVector::new(values.to_vec()).unwrap()
}

/// Builtin values at the example distributions against closed forms.
fn example_values() -> Outcome {
    let start = Instant::now();
    let [v, e, g, s] = UncertaintyFunction::builtins();
    let z = pv(&[2.0 / 3.0, 1.0 / 3.0]);
    let checks = [
        ("v(z)", v.evaluate(&z).map_err(err)?, 0.8889, 5e-4),
        ("e(z)", e.evaluate(&z).map_err(err)?, 0.9184, 5e-4),
        ("g(z)", g.evaluate(&z).map_err(err)?, 0.6667, 5e-4),
        ("s(z)", s.evaluate(&z).map_err(err)?, 3f64.sqrt() / 2.0, 1e-12),
        // closed forms independent of the implementation
        ("v(z) exact", v.evaluate(&z).map_err(err)?, 8.0 / 9.0, 1e-12),
        ("e(z) exact", e.evaluate(&z).map_err(err)?, 3f64.log2() - 2.0 / 3.0, 1e-12),
    ];
    for (name, got, want, tol) in checks {
        ensure((got - want).abs() <= tol, || format!("{name} = {got}, want {want} ± {tol}"))?;
    }
    let x = pv(&[0.5, 0.5]);
    let y = pv(&[1.0, 0.0]);
    for f in UncertaintyFunction::builtins() {
        let fx = f.evaluate(&x).map_err(err)?;
        let fy = f.evaluate(&y).map_err(err)?;
        ensure((fx - 1.0).abs() <= 1e-12, || format!("{}(x) = {fx}", f.name()))?;
        ensure(fy.abs() <= 1e-12, || format!("{}(y) = {fy}", f.name()))?;
    }
    within_time(start, Duration::from_secs(1))?;
    Ok(format!("s(z) = sqrt(3)/2, in {:.2?}", start.elapsed()))
}

fn born_distributions() -> Outcome {
    let start = Instant::now();
    let psi = plus_state();
    let rho = State::maximally_mixed(2);
    let sharp = plus_minus_observable();
    let unsharp = unsharp_plus_minus_observable();
    let cases = [
        ("sharp, psi", &psi, &sharp, [1.0, 0.0]),
        ("unsharp, psi", &psi, &unsharp, [2.0 / 3.0, 1.0 / 3.0]),
        ("sharp, I/2", &rho, &sharp, [0.5, 0.5]),
        ("unsharp, I/2", &rho, &unsharp, [0.5, 0.5]),
    ];
    for (name, state, a, want) in cases {
        let p = born_distribution(state, a).map_err(err)?;
        let gap = p.max_gap(&pv(&want)).map_err(err)?;
        ensure(gap <= 1e-10, || format!("{name}: {:?} vs {want:?}", p.probs()))?;
    }
    within_time(start, Duration::from_secs(1))?;
    Ok(format!("4 distributions, in {:.2?}", start.elapsed()))
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    for f in UncertaintyFunction::builtins() {
        for d in 2..=6 {
            let report = verify_axioms(&f, d, 10_000, d as u64).map_err(err)?;
            ensure(report.all_pass(), || format!("{} fails at d={d}: {report:?}", f.name()))?;
        }
    }
    let mut control_worst = f64::INFINITY;
    for control in [purity(), first_component()] {
        for d in 2..=6 {
            let report = verify_axioms(&control, d, 10_000, d as u64).map_err(err)?;
            let worst = report.worst_failure();
            ensure(!report.all_pass() && worst > 1e-2, || {
                format!("control {} at d={d}: worst failure {worst}", control.name())
            })?;
            control_worst = control_worst.min(worst);
        }
    }
    within_time(start, Duration::from_secs(30))?;
    Ok(format!(
        "20 builtin runs pass; controls fail by >= {control_worst:.3}, in {:.2?}",
        start.elapsed()
    ))
}

fn affine_closure() -> Outcome {
    let start = Instant::now();
    let builtins = UncertaintyFunction::builtins();
    for k in 0..20u64 {
        let mut rng = rng_for(1000, k);
        let count = 2 + (k as usize % 3);
        let picks = (0..count).map(|i| builtins[(k as usize + i) % 4].clone()).collect();
        let weights = ProbabilityVector::sample_with(count, &mut rng).probs().to_vec();
        let f = make_mixture(picks, weights).map_err(err)?;
        for d in 2..=4 {
            let report = verify_axioms(&f, d, 1_000, k).map_err(err)?;
            ensure(report.all_pass(), || format!("{} fails at d={d}", f.name()))?;
        }
    }
    within_time(start, Duration::from_secs(30))?;
    Ok(format!("20 mixtures x d in 2..=4, in {:.2?}", start.elapsed()))
}

fn sum_form_constructor() -> Outcome {
    let mut worst = 0.0f64;
    for d in 2..=6 {
        let pairs = [
            (GeneratorFunction::variance(d), UncertaintyFunction::variance()),
            (GeneratorFunction::entropy(d), UncertaintyFunction::entropy()),
            (GeneratorFunction::sine(d), UncertaintyFunction::sine()),
        ];
        for (generator, builtin) in pairs {
            let f = make_sum_form(generator, d).map_err(err)?;
            let mut rng = rng_for(5, d as u64);
            for _ in 0..1_000 {
                let x = ProbabilityVector::sample_with(d, &mut rng);
                let diff = (f.evaluate(&x).map_err(err)? - builtin.evaluate(&x).map_err(err)?).abs();
                worst = worst.max(diff);
            }
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn measure_concavity_and_boundaries() -> Outcome {
    let povm = random_povm(3, 3, &mut rng_for(6, 0));
    for a in [plus_minus_observable(), povm.clone()] {
        for f in UncertaintyFunction::builtins() {
            let name = f.name();
            let m = UncertaintyMeasure::new(f, a.clone()).map_err(err)?;
            ensure(measure_concavity_check(&m, 1_000, 6).map_err(err)?, || {
                format!("{name} concavity fails for a {}-dim observable", a.hilbert_dim())
            })?;
        }
    }
    let purity_measure = UncertaintyMeasure::new(purity(), plus_minus_observable()).map_err(err)?;
    ensure(!measure_concavity_check(&purity_measure, 1_000, 6).map_err(err)?, || {
        "purity measure passed the concavity check".into()
    })?;

    // zero exactly when some outcome is certain
    let sharp = plus_minus_observable();
    let basis3 = Observable::standard_basis(3).map_err(err)?;
    let e1 = State::pure(&quncert::ComplexVector::basis(3, 1)).map_err(err)?;
    let uniform3 = make_maximal_uncertainty_state(3, &random_admissible_offdiagonal(3, &mut rng_for(6, 1)))
        .map_err(err)?;
    for f in UncertaintyFunction::builtins() {
        let on_sharp = UncertaintyMeasure::new(f.clone(), sharp.clone()).map_err(err)?;
        let on_basis = UncertaintyMeasure::new(f.clone(), basis3.clone()).map_err(err)?;
        let on_povm = UncertaintyMeasure::new(f.clone(), povm.clone()).map_err(err)?;
        let name = f.name();
        let zero = on_sharp.measure(&plus_state()).map_err(err)?.abs()
            .max(on_basis.measure(&e1).map_err(err)?.abs());
        ensure(zero <= 1e-9, || format!("{name}: certain outcome gives {zero}"))?;
        let one = (on_sharp.measure(&State::maximally_mixed(2)).map_err(err)? - 1.0).abs()
            .max((on_basis.measure(&uniform3).map_err(err)? - 1.0).abs());
        ensure(one <= 1e-9, || format!("{name}: uniform distribution gives 1 - {one}"))?;
        // generic states are neither certain nor uniform
        let mut rng = rng_for(6, 2);
        for _ in 0..200 {
            let rho = random_state(3, &mut rng);
            let p = born_distribution(&rho, &povm).map_err(err)?;
            let u = on_povm.measure(&rho).map_err(err)?;
            let certain = p.is_maximal_certainty();
            let uniform = p.is_maximal_uncertainty();
            ensure((u <= 1e-9) == certain && (u >= 1.0 - 1e-9) == uniform, || {
                format!("{name}: value {u} for {:?}", p.probs())
            })?;
        }
    }
    Ok("concavity for v, e, g, s on 2 observables; boundaries hold".into())
}

fn maximal_uncertainty_roundtrip() -> Outcome {
    let mut worst_dist = 0.0f64;
    let mut worst_t = 0.0f64;
    for k in 0..100u64 {
        let d = 2 + (k as usize % 4);
        let t = random_admissible_offdiagonal(d, &mut rng_for(7, k));
        let rho = make_maximal_uncertainty_state(d, &t).map_err(err)?;
        let p = born_distribution(&rho, &Observable::standard_basis(d).map_err(err)?).map_err(err)?;
        worst_dist = worst_dist.max(p.max_gap(&ProbabilityVector::uniform(d).map_err(err)?).map_err(err)?);
        let back = decompose_maximal_uncertainty_state(&rho).map_err(err)?;
        worst_t = worst_t.max(back.max_abs_diff(&t).map_err(err)?);
    }
    ensure(worst_dist <= 1e-10, || format!("distribution off by {worst_dist:e}"))?;
    ensure(worst_t <= 1e-12, || format!("T recovered within {worst_t:e}"))?;
    for d in 2..=6 {
        let rho = make_maximal_uncertainty_state(d, &ComplexMatrix::zeros(d)).map_err(err)?;
        let diag = State::new(ComplexMatrix::diagonal(&vec![1.0 / d as f64; d])).map_err(err)?;
        let reference = ComplexMatrix::identity(d).scale(1.0 / d as f64);
        for m in [rho.matrix(), diag.matrix()] {
            let gap = m.max_abs_diff(&reference).map_err(err)?;
            ensure(gap <= 1e-12, || format!("diagonal case at d={d} off by {gap:e}"))?;
        }
    }
    Ok(format!("100 T; worst distribution {worst_dist:.1e}, worst T {worst_t:.1e}"))
}

fn imaginary_phase_family() -> Outcome {
    let a = plus_minus_observable();
    for k in 0..50 {
        let alpha = -1.0 + 2.0 * k as f64 / 49.0;
        let rho = imaginary_phase_state(alpha).map_err(err)?;
        ensure(is_maximal_uncertainty_state(&rho, &a).map_err(err)?, || {
            format!("alpha = {alpha} is not maximally uncertain")
        })?;
    }
    Ok("50 values of alpha in [-1, 1]".into())
}

fn variance_decomposition() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..100u64 {
        let mut rng = rng_for(9, k);
        let n = 2 + (k as usize % 2);
        let d = if n == 2 { 2 } else { 2 + (k as usize / 2) % 2 };
        let a = random_projective_observable(n, d, &mut rng);
        let rho = random_state(n, &mut rng);
        let (direct, via_variance) = variance_measure_decomposition(&a, &rho).map_err(err)?;
        worst = worst.max((direct - via_variance).abs());
    }
    ensure(worst <= 1e-10, || format!("paths differ by {worst:e}"))?;
    Ok(format!("100 projective observables; max difference {worst:.1e}"))
}

fn observable_mixture_jensen() -> Outcome {
    let mut largest_gap = 0.0f64;
    for f in UncertaintyFunction::builtins() {
        for t in 0..1_000u64 {
            let mut rng = rng_for(10, t);
            let n = 2 + (t as usize % 2);
            let outcomes = 2 + (t as usize / 2) % 2;
            let count = 2 + (t as usize / 4) % 2;
            let rho = random_state(n, &mut rng);
            let bs: Vec<Observable> = (0..count).map(|_| random_povm(n, outcomes, &mut rng)).collect();
            let mu = ProbabilityVector::sample_with(count, &mut rng).probs().to_vec();
            let mixed = mix_observables(&bs, &mu).map_err(err)?;
            let lhs = f.evaluate(&born_distribution(&rho, &mixed).map_err(err)?).map_err(err)?;
            let mut rhs = 0.0;
            for (b, w) in bs.iter().zip(&mu) {
                rhs += w * f.evaluate(&born_distribution(&rho, b).map_err(err)?).map_err(err)?;
            }
            ensure(lhs >= rhs - 1e-9, || format!("{}: {lhs} < {rhs} at trial {t}", f.name()))?;
            largest_gap = largest_gap.max(lhs - rhs);
        }
        ensure(jensen_check(&f, 3, 4, 1_000, 10).map_err(err)?.pass, || {
            format!("{}: simplex Jensen check failed", f.name())
        })?;
    }
    ensure(largest_gap > 1e-3, || format!("largest strict gap only {largest_gap:e}"))?;
    Ok(format!("4000 triples; largest strict gap {largest_gap:.3}"))
}

fn cli_golden() -> Outcome {
    let golden_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/examples.txt");
    let golden = std::fs::read(&golden_path).map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_quncert");
    let out = Command::new(bin).arg("examples").output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("examples exited {:?}", out.status.code()))?;
    ensure(out.stdout == golden, || "examples output differs from golden file".into())?;
    let status = Command::new(bin)
        .args(["axioms", "-f", "e", "-d", "3"])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ensure(status.code() == Some(0), || format!("axioms -f e -d 3 exited {:?}", status.code()))?;
    Ok("golden table matches; axioms -f e -d 3 exits 0".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("example uncertainty values", example_values),
        ("example Born distributions", born_distributions),
        ("axiom suite for v, e, g, s and controls", axiom_suite),
        ("affine closure of uncertainty functions", affine_closure),
        ("sum-form constructor", sum_form_constructor),
        ("measure concavity and boundary cases", measure_concavity_and_boundaries),
        ("maximal-uncertainty state roundtrip", maximal_uncertainty_roundtrip),
        ("imaginary-phase qubit family", imaginary_phase_family),
        ("variance decomposition", variance_decomposition),
        ("observable-mixture Jensen inequality", observable_mixture_jensen),
        ("CLI golden output", cli_golden),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
