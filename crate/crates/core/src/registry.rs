//! Injectivity deciders behind a common trait, selectable by name.

use std::collections::BTreeMap;
use std::fmt;

use crate::bipartite::{injectivity_test, InjectivityOptions, InjectivityVerdict};
use crate::error::AlgebraError;
use crate::freealg::FreePolyMap;
use crate::inverter::{invert, InversionOutcome, InvertOptions};

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Injective; the polynomial inverse when the method produces one.
    Injective(Option<FreePolyMap>),
    NotInjective(String),
    Indeterminate,
}

impl Verdict {
    pub fn is_injective(&self) -> bool {
        matches!(self, Verdict::Injective(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Injective(_) => f.write_str("injective"),
            Verdict::NotInjective(reason) => write!(f, "not injective ({reason})"),
            Verdict::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

pub trait InjectivityDecider: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn decide(&self, p: &FreePolyMap) -> Result<Verdict, AlgebraError>;
}

/// Runs the auxiliary-inverse iteration.
pub struct AuxInverseDecider {
    pub options: InvertOptions,
}

impl InjectivityDecider for AuxInverseDecider {
    fn name(&self) -> &'static str {
        "aux-inverse"
    }

    fn summary(&self) -> &'static str {
        "iterate the auxiliary inverse and verify the head"
    }

    fn decide(&self, p: &FreePolyMap) -> Result<Verdict, AlgebraError> {
        Ok(match invert(p, &self.options)?.outcome {
            InversionOutcome::PolynomialInverse { q, .. } => Verdict::Injective(Some(q)),
            InversionOutcome::NotInjective(reason) => Verdict::NotInjective(reason.to_string()),
            InversionOutcome::Indeterminate { .. } => Verdict::Indeterminate,
        })
    }
}

/// Inverts the hypo-Jacobian.
pub struct HypoJacobianDecider {
    pub options: InjectivityOptions,
}

impl InjectivityDecider for HypoJacobianDecider {
    fn name(&self) -> &'static str {
        "hypo-jacobian"
    }

    fn summary(&self) -> &'static str {
        "invert the hypo-Jacobian over the bipartite algebra"
    }

    fn decide(&self, p: &FreePolyMap) -> Result<Verdict, AlgebraError> {
        Ok(match injectivity_test(p, &self.options)? {
            InjectivityVerdict::Injective(_) => Verdict::Injective(None),
            InjectivityVerdict::NotInjective(reason) => Verdict::NotInjective(reason.to_string()),
            InjectivityVerdict::Indeterminate => Verdict::Indeterminate,
        })
    }
}

#[derive(Default)]
pub struct Registry {
    deciders: BTreeMap<&'static str, Box<dyn InjectivityDecider>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Both built-in deciders.
    pub fn with_defaults(invert_options: InvertOptions, injectivity_options: InjectivityOptions) -> Self {
        let mut r = Registry::new();
        r.register(Box::new(AuxInverseDecider { options: invert_options }));
        r.register(Box::new(HypoJacobianDecider {
            options: injectivity_options,
        }));
        r
    }

    /// Adds a decider, replacing any with the same name.
    pub fn register(&mut self, decider: Box<dyn InjectivityDecider>) {
        self.deciders.insert(decider.name(), decider);
    }

    pub fn get(&self, name: &str) -> Option<&dyn InjectivityDecider> {
        self.deciders.get(name).map(|d| d.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.deciders.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_map;

    #[test]
    fn lookup_by_name() {
        let r = Registry::with_defaults(InvertOptions::default(), InjectivityOptions::default());
        assert_eq!(r.names().collect::<Vec<_>>(), vec!["aux-inverse", "hypo-jacobian"]);
        assert!(r.get("newton").is_none());
        let p = parse_map(&["x1", "x2 - x1^2"]).unwrap();
        for name in ["aux-inverse", "hypo-jacobian"] {
            assert!(r.get(name).unwrap().decide(&p).unwrap().is_injective());
        }
    }
}
