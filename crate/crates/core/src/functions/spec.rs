//! Textual function specifiers: `v | e | g | s | mix:w1*f1+w2*f2+...`.

use std::collections::BTreeMap;
use std::str::FromStr;

use super::{make_mixture, UncertaintyFunction};
use crate::error::{Error, Result};

/// Named functions available to the specifier grammar.
///
/// The default registry knows the four builtins; callers may register more
/// names (they become usable both alone and inside `mix:`).
#[derive(Clone, Debug)]
pub struct FunctionRegistry {
    entries: BTreeMap<String, UncertaintyFunction>,
}

impl Default for FunctionRegistry {
    fn default() -> Self {
        let mut entries = BTreeMap::new();
        for f in UncertaintyFunction::builtins() {
            entries.insert(f.name(), f);
        }
        Self { entries }
    }
}

impl FunctionRegistry {
    pub fn register(&mut self, name: impl Into<String>, f: UncertaintyFunction) {
        self.entries.insert(name.into(), f);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn parse(&self, spec: &str) -> Result<UncertaintyFunction> {
        let spec = spec.trim();
        let err = |reason: String| Error::FunctionSpec {
            spec: spec.to_string(),
            reason,
        };
        let Some(terms) = spec.strip_prefix("mix:") else {
            return self.lookup(spec).ok_or_else(|| err(self.unknown(spec)));
        };
        let mut components = Vec::new();
        let mut weights = Vec::new();
        for term in terms.split('+') {
            let (w, name) = term
                .split_once('*')
                .ok_or_else(|| err(format!("term {term:?} is not of the form weight*name")))?;
            let w: f64 = w
                .trim()
                .parse()
                .map_err(|_| err(format!("bad weight {w:?}")))?;
            let f = self
                .lookup(name.trim())
                .ok_or_else(|| err(self.unknown(name.trim())))?;
            weights.push(w);
            components.push(f);
        }
        make_mixture(components, weights).map_err(|e| err(e.to_string()))
    }

    fn lookup(&self, name: &str) -> Option<UncertaintyFunction> {
        self.entries.get(name).cloned()
    }

    fn unknown(&self, name: &str) -> String {
        let known: Vec<&str> = self.names().collect();
        format!("unknown function {name:?} (known: {})", known.join(", "))
    }
}

impl FromStr for UncertaintyFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionRegistry::default().parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::ProbabilityVector;

    #[test]
    fn parses_builtins_and_mixtures() {
        for name in ["v", "e", "g", "s"] {
            assert_eq!(name.parse::<UncertaintyFunction>().unwrap().name(), name);
        }
        let f: UncertaintyFunction = "mix:0.5*v+0.5*e".parse().unwrap();
        assert_eq!(f.kind(), "mixture");
        assert_eq!(f.name(), "mix:0.5*v+0.5*e");
        let x = ProbabilityVector::uniform(3).unwrap();
        assert!((f.evaluate(&x).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["x", "mix:", "mix:0.5v+0.5*e", "mix:a*v", "mix:0.5*v+0.4*e", "mix:0.5*v+0.5*q"] {
            assert!(
                matches!(bad.parse::<UncertaintyFunction>(), Err(Error::FunctionSpec { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn registered_names_are_usable() {
        let mut reg = FunctionRegistry::default();
        reg.register("purity", UncertaintyFunction::custom("purity", None, |x| x.iter().map(|p| p * p).sum()));
        assert_eq!(reg.parse("purity").unwrap().name(), "purity");
        assert!(reg.parse("mix:0.25*purity+0.75*g").is_ok());
    }
}
