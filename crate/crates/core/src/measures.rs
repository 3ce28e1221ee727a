//! `(f, A)`-uncertainty measures: `U(ρ) = f(P_ρ^A)`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{make_mixture, AxiomCheck, UncertaintyFunction, AXIOM_TOL};
use crate::quantum::{born_distribution, effect_variance, mix_observables, mix_states, Observable, State};
use crate::random::{random_state, rng_for};
use crate::table::{align, fixed4};

/// An uncertainty function paired with an observable of matching outcome count.
#[derive(Clone, Debug)]
pub struct UncertaintyMeasure {
    f: UncertaintyFunction,
    a: Observable,
}

impl UncertaintyMeasure {
    pub fn new(f: UncertaintyFunction, a: Observable) -> Result<Self> {
        if let Some(expected) = f.arity() {
            if expected != a.outcomes() {
                return Err(Error::ArityMismatch {
                    expected,
                    found: a.outcomes(),
                });
            }
        }
        Ok(Self { f, a })
    }

    pub fn function(&self) -> &UncertaintyFunction {
        &self.f
    }

    pub fn observable(&self) -> &Observable {
        &self.a
    }

    pub fn measure(&self, rho: &State) -> Result<f64> {
        self.f.evaluate(&born_distribution(rho, &self.a)?)
    }
}

/// Samples `trials` random state pairs and mixing weights and checks
/// `U(λρ₁ + (1−λ)ρ₂) ≥ λU(ρ₁) + (1−λ)U(ρ₂)`.
pub fn concavity_in_state(m: &UncertaintyMeasure, trials: usize, seed: u64) -> Result<AxiomCheck> {
    let n = m.a.hilbert_dim();
    let mut check = AxiomCheck::default();
    for t in 0..trials {
        let mut rng = rng_for(seed, t as u64);
        let r1 = random_state(n, &mut rng);
        let r2 = random_state(n, &mut rng);
        let lambda: f64 = rng.random();
        let mixed = mix_states(&[r1.clone(), r2.clone()], &[lambda, 1.0 - lambda])?;
        let gap = lambda * m.measure(&r1)? + (1.0 - lambda) * m.measure(&r2)? - m.measure(&mixed)?;
        check.record(gap, gap > AXIOM_TOL, || vec![vec![lambda]]);
    }
    Ok(check)
}

pub fn measure_concavity_check(m: &UncertaintyMeasure, trials: usize, seed: u64) -> Result<bool> {
    Ok(concavity_in_state(m, trials, seed)?.pass)
}

/// Returns `(U_(v,A)(ρ), d/(d−1) · Σ Var(Aᵢ, ρ))`. The two agree for
/// projective `A`; other observables are rejected.
pub fn variance_measure_decomposition(a: &Observable, rho: &State) -> Result<(f64, f64)> {
    if !a.is_projective() {
        return Err(Error::NotProjective);
    }
    let direct = UncertaintyMeasure::new(UncertaintyFunction::variance(), a.clone())?.measure(rho)?;
    let d = a.outcomes() as f64;
    let mut total = 0.0;
    for e in a.effects() {
        total += effect_variance(e, rho)?;
    }
    Ok((direct, d / (d - 1.0) * total))
}

/// The measure `(Σ λᵢ fᵢ, Σ μⱼ Bⱼ)`, evaluated as `(Σλᵢfᵢ)(P_ρ^{ΣμⱼBⱼ})`.
///
/// By concavity this is at least `Σᵢⱼ λᵢ μⱼ U_(fᵢ,Bⱼ)(ρ)`; it is not equal to
/// it in general.
pub fn mixed_measure(
    fs: Vec<UncertaintyFunction>,
    fweights: Vec<f64>,
    observables: &[Observable],
    oweights: &[f64],
) -> Result<UncertaintyMeasure> {
    let f = make_mixture(fs, fweights)?;
    let a = mix_observables(observables, oweights)?;
    UncertaintyMeasure::new(f, a)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DiscriminationRow {
    pub label: String,
    pub distribution: Vec<f64>,
    /// One value per entry of [`DiscriminationReport::functions`].
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PairGap {
    pub first: String,
    pub second: String,
    /// `max_i |P₁(i) − P₂(i)|`.
    pub gap: f64,
}

/// Born distributions and uncertainty values for several states under one
/// observable, plus the pairwise distribution gaps.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DiscriminationReport {
    pub functions: Vec<String>,
    pub rows: Vec<DiscriminationRow>,
    pub gaps: Vec<PairGap>,
}

impl DiscriminationReport {
    pub fn to_table(&self) -> String {
        let d = self.rows.first().map_or(0, |r| r.distribution.len());
        let mut header = vec!["label".to_string()];
        header.extend((0..d).map(|i| format!("P({i})")));
        header.extend(self.functions.iter().cloned());
        let mut body: Vec<Vec<String>> = vec![header];
        for row in &self.rows {
            let mut cells = vec![row.label.clone()];
            cells.extend(row.distribution.iter().map(|p| fixed4(*p)));
            cells.extend(row.values.iter().map(|v| fixed4(*v)));
            body.push(cells);
        }
        let mut out = align(&body);
        if !self.gaps.is_empty() {
            out.push('\n');
            let gap_rows: Vec<Vec<String>> = std::iter::once(vec![
                "first".to_string(),
                "second".to_string(),
                "gap".to_string(),
            ])
            .chain(
                self.gaps
                    .iter()
                    .map(|g| vec![g.first.clone(), g.second.clone(), fixed4(g.gap)]),
            )
            .collect();
            out.push_str(&align(&gap_rows));
        }
        out
    }
}

pub fn discriminate(
    states: &[(String, State)],
    a: &Observable,
    fs: &[UncertaintyFunction],
) -> Result<DiscriminationReport> {
    let mut rows = Vec::with_capacity(states.len());
    let mut dists = Vec::with_capacity(states.len());
    for (label, rho) in states {
        let p = born_distribution(rho, a)?;
        let values = fs
            .iter()
            .map(|f| f.evaluate(&p))
            .collect::<Result<Vec<_>>>()?;
        rows.push(DiscriminationRow {
            label: label.clone(),
            distribution: p.probs().to_vec(),
            values,
        });
        dists.push(p);
    }
    let mut gaps = Vec::new();
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            gaps.push(PairGap {
                first: states[i].0.clone(),
                second: states[j].0.clone(),
                gap: dists[i].max_gap(&dists[j])?,
            });
        }
    }
    Ok(DiscriminationReport {
        functions: fs.iter().map(UncertaintyFunction::name).collect(),
        rows,
        gaps,
    })
}
