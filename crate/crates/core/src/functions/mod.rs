//! Uncertainty functions on the probability simplex.
//!
//! An uncertainty function maps a distribution `x` over `d` outcomes into
//! `[0, 1]`. It must vanish exactly on the vertices of the simplex, equal one
//! exactly at the uniform distribution, be invariant under relabeling of the
//! outcomes, and be concave. Four such functions are built in:
//!
//! | name | formula |
//! |------|---------|
//! | `v` (variance)  | `d/(d−1) · (1 − Σ xᵢ²)` |
//! | `e` (entropy)   | `−(1/ln d) · Σ xᵢ ln xᵢ` with `0 ln 0 = 0` |
//! | `g` (geometric) | `d/(d−1) · (1 − max xᵢ)` |
//! | `s` (sine)      | `Σ sin(π xᵢ) / (d sin(π/d))` |
//!
//! New functions come from a per-coordinate generator `h` (`x ↦ Σ h(xᵢ)`, see
//! [`make_sum_form`]) or from weighted combinations of existing ones
//! ([`make_mixture`]).

mod axioms;
mod spec;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplex::ProbabilityVector;

pub use axioms::{jensen_check, verify_axioms, verify_jensen, AxiomCheck, AxiomReport, AXIOM_TOL};
pub use spec::FunctionRegistry;

/// Slack used when auditing a sum-form generator.
pub const AUDIT_TOL: f64 = 1e-9;

/// Tolerance for a generator's endpoint values and for mixture weight sums.
pub const EVAL_TOL: f64 = 1e-12;

const AUDIT_GRID: usize = 100;

pub fn eval_variance(x: &ProbabilityVector) -> f64 {
    let d = x.d() as f64;
    let sum_sq: f64 = x.probs().iter().map(|p| p * p).sum();
    d / (d - 1.0) * (1.0 - sum_sq)
}

pub fn eval_entropy(x: &ProbabilityVector) -> f64 {
    let d = x.d() as f64;
    let h: f64 = x
        .probs()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum();
    // + 0.0 turns the -0.0 of a vertex into 0.0
    -h / d.ln() + 0.0
}

pub fn eval_geometric(x: &ProbabilityVector) -> f64 {
    let d = x.d() as f64;
    let max = x.probs().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    d / (d - 1.0) * (1.0 - max)
}

pub fn eval_sine(x: &ProbabilityVector) -> f64 {
    let d = x.d() as f64;
    let sum: f64 = x.probs().iter().map(|p| (PI * p).sin()).sum();
    sum / (d * (PI / d).sin())
}

/// A per-coordinate generator `h: [0, 1] → ℝ` with `h(0) = h(1) = 0`.
#[derive(Clone)]
pub struct GeneratorFunction {
    h: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    description: String,
}

impl GeneratorFunction {
    pub fn new(
        description: impl Into<String>,
        h: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let description = description.into();
        for alpha in [0.0, 1.0] {
            let value = h(alpha);
            if !value.is_finite() || value.abs() > EVAL_TOL {
                return Err(Error::Generator(format!(
                    "{description}: h({alpha}) = {value}, expected 0"
                )));
            }
        }
        Ok(Self {
            h: Arc::new(h),
            description,
        })
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        (self.h)(alpha)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// `h(α) = d/(d−1) · (α − α²)`.
    pub fn variance(d: usize) -> Self {
        let k = d as f64 / (d as f64 - 1.0);
        Self::new(format!("variance generator (d={d})"), move |a| {
            k * (a - a * a)
        })
        .expect("variance generator vanishes at 0 and 1")
    }

    /// `h(α) = −α ln α / ln d`, with `h(0) = 0`.
    pub fn entropy(d: usize) -> Self {
        let ln_d = (d as f64).ln();
        Self::new(format!("entropy generator (d={d})"), move |a| {
            if a > 0.0 {
                -(a * a.ln()) / ln_d
            } else {
                0.0
            }
        })
        .expect("entropy generator vanishes at 0 and 1")
    }

    /// `h(α) = sin(πα) / (d sin(π/d))`.
    pub fn sine(d: usize) -> Self {
        let norm = d as f64 * (PI / d as f64).sin();
        Self::new(format!("sine generator (d={d})"), move |a| {
            (PI * a).sin() / norm
        })
        .expect("sine generator vanishes at 0 and 1")
    }
}

impl fmt::Debug for GeneratorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("GeneratorFunction")
            .field(&self.description)
            .finish()
    }
}

type Evaluator = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Variance,
    Entropy,
    Geometric,
    Sine,
    SumForm {
        generator: GeneratorFunction,
        d: usize,
    },
    Mixture {
        components: Vec<UncertaintyFunction>,
        weights: Vec<f64>,
    },
    Custom {
        name: String,
        arity: Option<usize>,
        eval: Evaluator,
    },
}

/// A map from the simplex into `[0, 1]`.
///
/// Builtins are defined for every `d`; sum-form functions carry the `d` they
/// were audited for, and mixtures inherit the arity of their components.
#[derive(Clone)]
pub struct UncertaintyFunction(Kind);

impl UncertaintyFunction {
    pub fn variance() -> Self {
        Self(Kind::Variance)
    }

    pub fn entropy() -> Self {
        Self(Kind::Entropy)
    }

    pub fn geometric() -> Self {
        Self(Kind::Geometric)
    }

    pub fn sine() -> Self {
        Self(Kind::Sine)
    }

    pub fn builtins() -> [Self; 4] {
        [
            Self::variance(),
            Self::entropy(),
            Self::geometric(),
            Self::sine(),
        ]
    }

    /// Wraps an arbitrary evaluator without any audit. This is how
    /// counterexamples (purity, a single coordinate, …) are fed to the axiom
    /// verifier; nothing guarantees the result is an uncertainty function.
    pub fn custom(
        name: impl Into<String>,
        arity: Option<usize>,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self(Kind::Custom {
            name: name.into(),
            arity,
            eval: Arc::new(eval),
        })
    }

    /// The short label used by the CLI: `v`, `e`, `g`, `s`, `mix:…`, or the
    /// custom/generator name.
    pub fn name(&self) -> String {
        match &self.0 {
            Kind::Variance => "v".into(),
            Kind::Entropy => "e".into(),
            Kind::Geometric => "g".into(),
            Kind::Sine => "s".into(),
            Kind::SumForm { generator, .. } => format!("sum[{}]", generator.description()),
            Kind::Mixture {
                components,
                weights,
            } => {
                let terms: Vec<String> = weights
                    .iter()
                    .zip(components)
                    .map(|(w, f)| format!("{w}*{}", f.name()))
                    .collect();
                format!("mix:{}", terms.join("+"))
            }
            Kind::Custom { name, .. } => name.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match &self.0 {
            Kind::Variance => "variance",
            Kind::Entropy => "entropy",
            Kind::Geometric => "geometric",
            Kind::Sine => "sine",
            Kind::SumForm { .. } => "sum_form",
            Kind::Mixture { .. } => "mixture",
            Kind::Custom { .. } => "custom",
        }
    }

    /// The outcome count this function is restricted to, if any.
    pub fn arity(&self) -> Option<usize> {
        match &self.0 {
            Kind::SumForm { d, .. } => Some(*d),
            Kind::Mixture { components, .. } => components.iter().find_map(|f| f.arity()),
            Kind::Custom { arity, .. } => *arity,
            _ => None,
        }
    }

    pub fn accepts(&self, d: usize) -> bool {
        self.arity().is_none_or(|a| a == d)
    }

    pub fn evaluate(&self, x: &ProbabilityVector) -> Result<f64> {
        if let Some(expected) = self.arity() {
            if expected != x.d() {
                return Err(Error::ArityMismatch {
                    expected,
                    found: x.d(),
                });
            }
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &ProbabilityVector) -> f64 {
        match &self.0 {
            Kind::Variance => eval_variance(x),
            Kind::Entropy => eval_entropy(x),
            Kind::Geometric => eval_geometric(x),
            Kind::Sine => eval_sine(x),
            Kind::SumForm { generator, .. } => x.probs().iter().map(|&p| generator.eval(p)).sum(),
            Kind::Mixture {
                components,
                weights,
            } => {
                let mut acc = 0.0;
                for (w, f) in weights.iter().zip(components) {
                    acc += w * f.eval_unchecked(x);
                }
                acc
            }
            Kind::Custom { eval, .. } => eval(x.probs()),
        }
    }
}

impl fmt::Debug for UncertaintyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UncertaintyFunction({})", self.name())
    }
}

/// Builds `x ↦ Σ h(xᵢ)` on `d` outcomes after auditing `h` numerically:
///
/// * (i) midpoint concavity on a 101-point grid,
/// * (ii) `h(0) = h(1) = 0`,
/// * (iii) `h > 0` at interior grid points,
/// * (iv) `h(1/d) = 1/d`.
///
/// Whether `Σ h(xᵢ) = 1` forces the uniform distribution is a global property
/// and is left to [`verify_axioms`].
pub fn make_sum_form(generator: GeneratorFunction, d: usize) -> Result<UncertaintyFunction> {
    if d < 2 {
        return Err(Error::TooFewOutcomes(d));
    }
    let h = |a: f64| generator.eval(a);
    let fail = |condition, detail: String| Err(Error::SumFormAudit { condition, detail });

    for alpha in [0.0, 1.0] {
        let v = h(alpha);
        if !v.is_finite() || v.abs() > EVAL_TOL {
            return fail("ii: h(0) = h(1) = 0", format!("h({alpha}) = {v}"));
        }
    }

    let grid: Vec<f64> = (0..=AUDIT_GRID).map(|k| k as f64 / AUDIT_GRID as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&a| h(a)).collect();
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        return fail("ii: h finite", format!("h({}) = {}", grid[k], values[k]));
    }
    for k in 1..AUDIT_GRID {
        if values[k] <= 0.0 {
            return fail(
                "iii: h > 0 on (0, 1)",
                format!("h({}) = {}", grid[k], values[k]),
            );
        }
    }

    let reciprocal = 1.0 / d as f64;
    let at_reciprocal = h(reciprocal);
    if (at_reciprocal - reciprocal).abs() > AUDIT_TOL {
        return fail(
            "iv: h(1/d) = 1/d",
            format!("h({reciprocal}) = {at_reciprocal}"),
        );
    }

    for i in 0..=AUDIT_GRID {
        for j in (i + 1)..=AUDIT_GRID {
            let mid = h(0.5 * (grid[i] + grid[j]));
            let chord = 0.5 * (values[i] + values[j]);
            if mid < chord - AUDIT_TOL {
                return fail(
                    "i: h concave",
                    format!(
                        "h(({a} + {b})/2) = {mid} < {chord}",
                        a = grid[i],
                        b = grid[j]
                    ),
                );
            }
        }
    }

    Ok(UncertaintyFunction(Kind::SumForm { generator, d }))
}

/// `Σ wᵢ fᵢ` with weights in `(0, 1]` summing to one.
pub fn make_mixture(
    components: Vec<UncertaintyFunction>,
    weights: Vec<f64>,
) -> Result<UncertaintyFunction> {
    if components.is_empty() {
        return Err(Error::Empty("mixture has no components"));
    }
    validate_weights(&weights, components.len(), false)?;
    let mut arity = None;
    for f in &components {
        match (arity, f.arity()) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::ArityMismatch {
                    expected: a,
                    found: b,
                })
            }
            (None, Some(b)) => arity = Some(b),
            _ => {}
        }
    }
    Ok(UncertaintyFunction(Kind::Mixture {
        components,
        weights,
    }))
}

/// Checks mixture weights: one per component, each in `(0, 1]` (or `[0, 1]`
/// when `allow_zero`), summing to one within [`EVAL_TOL`].
pub(crate) fn validate_weights(weights: &[f64], count: usize, allow_zero: bool) -> Result<()> {
    if weights.len() != count {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {count} components",
            weights.len()
        )));
    }
    for &w in weights {
        let ok = if allow_zero {
            (0.0..=1.0).contains(&w)
        } else {
            w > 0.0 && w <= 1.0
        };
        if !ok {
            return Err(Error::InvalidWeights(format!("weight {w} out of range")));
        }
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > EVAL_TOL {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    Ok(())
}
