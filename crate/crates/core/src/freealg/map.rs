use std::fmt;

use super::poly::{FreePoly, Substitution};
use super::word::{Kind, Letter};
use crate::coeff::Coefficient;
use crate::error::AlgebraError;

/// A tuple of free polynomials, read as a map `x ↦ (p^1(x), …, p^g(x))`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FreePolyMap {
    components: Vec<FreePoly>,
}

impl FreePolyMap {
    pub fn new(components: Vec<FreePoly>) -> Self {
        FreePolyMap { components }
    }

    /// `(x_1, …, x_g)`.
    pub fn identity(g: usize) -> Self {
        Self::letters(Kind::X, g)
    }

    /// `(k_1, …, k_n)` for a letter kind `k`.
    pub fn letters(kind: Kind, n: usize) -> Self {
        FreePolyMap {
            components: (1..=n).map(|i| FreePoly::letter(Letter::new(kind, i))).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[FreePoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &FreePoly {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<FreePoly> {
        self.components
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FreePoly> {
        self.components.iter()
    }

    /// Maximum component degree, `None` when every component is zero.
    pub fn degree(&self) -> Option<usize> {
        self.components.iter().filter_map(FreePoly::degree).max()
    }

    /// Componentwise minimum of `𝔡_z`.
    pub fn dz_degree(&self) -> Option<usize> {
        self.components.iter().filter_map(FreePoly::dz_degree).min()
    }

    pub fn constant_terms(&self) -> Vec<Coefficient> {
        self.components.iter().map(FreePoly::constant_term).collect()
    }

    pub fn without_constants(&self) -> Self {
        self.map(FreePoly::without_constant)
    }

    pub fn has_constant_terms(&self) -> bool {
        self.components.iter().any(|c| !c.constant_term().is_zero())
    }

    pub fn map(&self, f: impl FnMut(&FreePoly) -> FreePoly) -> Self {
        FreePolyMap {
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn truncate(&self, max_len: usize) -> Self {
        self.map(|c| c.truncate(max_len))
    }

    pub fn transpose(&self) -> Self {
        self.map(FreePoly::transpose)
    }

    pub fn rename_kind(&self, from: Kind, to: Kind) -> Self {
        self.map(|c| c.rename_kind(from, to))
    }

    pub fn term_count(&self) -> usize {
        self.components.iter().map(FreePoly::len).sum()
    }

    /// Checks all components only use `x_1, …, x_g` with `g = arity`.
    pub fn check_square(&self) -> Result<(), AlgebraError> {
        let g = self.arity();
        for c in &self.components {
            c.check_letters(&[(Kind::X, g)])?;
        }
        Ok(())
    }

    /// The substitution `kind_i ↦ self_i`.
    pub fn as_substitution(&self, kind: Kind) -> Substitution {
        Substitution::new().bind_kind(kind, &self.components)
    }

    /// `self ∘ inner`, i.e. `x_i ↦ inner_i` in every component.
    pub fn compose(&self, inner: &FreePolyMap) -> Result<FreePolyMap, AlgebraError> {
        let sigma = inner.as_substitution(Kind::X);
        self.substitute(&sigma)
    }

    pub fn substitute(&self, sigma: &Substitution) -> Result<FreePolyMap, AlgebraError> {
        Ok(FreePolyMap {
            components: self
                .components
                .iter()
                .map(|c| c.substitute(sigma))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn substitute_truncated(
        &self,
        sigma: &Substitution,
        max_len: usize,
    ) -> Result<FreePolyMap, AlgebraError> {
        Ok(FreePolyMap {
            components: self
                .components
                .iter()
                .map(|c| c.substitute_truncated(sigma, max_len))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn add(&self, other: &FreePolyMap) -> Result<FreePolyMap, AlgebraError> {
        if self.arity() != other.arity() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(FreePolyMap {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    /// `x_i ↦ x_i + shift_i`.
    pub fn translation(shift: &[Coefficient]) -> Self {
        FreePolyMap {
            components: shift
                .iter()
                .enumerate()
                .map(|(i, c)| &FreePoly::x(i + 1) + &FreePoly::constant(c.clone()))
                .collect(),
        }
    }
}

impl From<Vec<FreePoly>> for FreePolyMap {
    fn from(components: Vec<FreePoly>) -> Self {
        FreePolyMap::new(components)
    }
}

impl std::ops::Index<usize> for FreePolyMap {
    type Output = FreePoly;
    fn index(&self, i: usize) -> &FreePoly {
        &self.components[i]
    }
}

impl fmt::Display for FreePolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for FreePolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreePolyMap{self}")
    }
}
