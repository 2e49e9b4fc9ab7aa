//! The bipartite algebra `ℂ⟨y⟩ ⊗ ℂ⟨x⟩`, hypo-Jacobians, hypomatrix
//! representations and the hypo-Jacobian injectivity test.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::coeff::Coefficient;
use crate::deriv::free_derivative;
use crate::error::{AlgebraError, NotInvertibleReason, NotPolyInvertible, ParseError};
use crate::freealg::{FreePoly, FreePolyMap, Kind, Parser, Substitution, Tok, Word};
use crate::inverter::pmid_bound;
use crate::matrix::{series_inverse, Matrix, SeriesInverseLimits};
use crate::ring::{GradedRing, Ring};
use crate::shadow::{determinant_nonconstant, Weights};
use crate::sysolve::ProperAlgebraicSystem;

/// `Σ c · u ⊗ v`. Left and right letters commute with each other but not
/// among themselves.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BipartitePoly {
    terms: BTreeMap<(Word, Word), Coefficient>,
}

pub type BipartiteMatrix = Matrix<BipartitePoly>;

impl BipartitePoly {
    pub fn zero() -> Self {
        BipartitePoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        let mut b = BipartitePoly::zero();
        b.add_term(Word::empty(), Word::empty(), &c);
        b
    }

    pub fn monomial(left: Word, right: Word, c: Coefficient) -> Self {
        let mut b = BipartitePoly::zero();
        b.add_term(left, right, &c);
        b
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &FreePoly, b: &FreePoly) -> Self {
        let mut out = BipartitePoly::zero();
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                out.add_term(u.clone(), v.clone(), &(c * d));
            }
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((Word, Word), Coefficient)>) -> Self {
        let mut b = BipartitePoly::zero();
        for ((u, v), c) in terms {
            b.add_term(u, v, &c);
        }
        b
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: &Word, right: &Word) -> Coefficient {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Coefficient::zero)
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Total degree `max |u| + |v|`.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|(u, v)| u.len() + v.len()).max()
    }

    pub fn constant_term(&self) -> Coefficient {
        self.coefficient(&Word::empty(), &Word::empty())
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return BipartitePoly::zero();
        }
        BipartitePoly {
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(&Word, &Word) -> bool) -> Self {
        BipartitePoly {
            terms: self
                .terms
                .iter()
                .filter(|((u, v), _)| keep(u, v))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `u ⊗ v ↦ left(u) ⊗ right(v)` for substitutions on each side.
    pub fn substitute(&self, left: &Substitution, right: &Substitution) -> Result<Self, AlgebraError> {
        let mut out = BipartitePoly::zero();
        for ((u, v), c) in &self.terms {
            let l = FreePoly::monomial(u.clone(), c.clone()).substitute(left)?;
            let r = FreePoly::monomial(v.clone(), Coefficient::one()).substitute(right)?;
            out += &BipartitePoly::tensor(&l, &r);
        }
        Ok(out)
    }
}

impl Add for &BipartitePoly {
    type Output = BipartitePoly;
    fn add(self, rhs: &BipartitePoly) -> BipartitePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BipartitePoly> for BipartitePoly {
    fn add_assign(&mut self, rhs: &BipartitePoly) {
        for ((u, v), c) in &rhs.terms {
            self.add_term(u.clone(), v.clone(), c);
        }
    }
}

impl Sub for &BipartitePoly {
    type Output = BipartitePoly;
    fn sub(self, rhs: &BipartitePoly) -> BipartitePoly {
        let mut out = self.clone();
        for ((u, v), c) in &rhs.terms {
            out.add_term(u.clone(), v.clone(), &-c);
        }
        out
    }
}

impl Mul for &BipartitePoly {
    type Output = BipartitePoly;
    fn mul(self, rhs: &BipartitePoly) -> BipartitePoly {
        let mut out = BipartitePoly::zero();
        for ((u, v), a) in &self.terms {
            for ((s, t), b) in &rhs.terms {
                out.add_term(u.concat(s), v.concat(t), &(a * b));
            }
        }
        out
    }
}

impl Neg for &BipartitePoly {
    type Output = BipartitePoly;
    fn neg(self) -> BipartitePoly {
        BipartitePoly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Ring for BipartitePoly {
    fn zero() -> Self {
        BipartitePoly::zero()
    }
    fn one() -> Self {
        BipartitePoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Coefficient) -> Self {
        BipartitePoly::scale(self, c)
    }
    fn from_scalar(c: Coefficient) -> Self {
        BipartitePoly::constant(c)
    }
}

impl GradedRing for BipartitePoly {
    fn degree(&self) -> Option<usize> {
        BipartitePoly::degree(self)
    }
    fn homogeneous(&self, d: usize) -> Self {
        self.filter(|u, v| u.len() + v.len() == d)
    }
    fn constant(&self) -> Coefficient {
        self.constant_term()
    }
    fn term_count(&self) -> usize {
        self.len()
    }
}

/// `u (x) v` terms; a coefficient attaches to the left factor.
impl fmt::Display for BipartitePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((u, v), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_display();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{u}")?;
            } else if u.is_empty() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{u}")?;
            }
            write!(f, " (x) {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BipartitePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartitePoly({self})")
    }
}

/// Parses `Σ ±[left] (x) [right]`; `⊗` is accepted for `(x)`.
pub fn parse_bipartite(src: &str) -> Result<BipartitePoly, ParseError> {
    let mut p = Parser::new(src)?;
    if p.at_end() {
        return Err(p.error_here("empty bipartite polynomial"));
    }
    if p.peek() == Some(&Tok::Num(Coefficient::zero())) {
        p.bump();
        p.expect_end()?;
        return Ok(BipartitePoly::zero());
    }
    let mut out = BipartitePoly::zero();
    let mut negative = p.sign();
    loop {
        let left = p.product()?;
        if p.peek() != Some(&Tok::Tensor) {
            return Err(p.error_here("expected `(x)`"));
        }
        p.bump();
        let right = p.product()?;
        let term = BipartitePoly::tensor(&left, &right);
        out += &if negative { -&term } else { term };
        match p.peek() {
            Some(Tok::Plus) | Some(Tok::Minus) => negative = p.sign(),
            _ => break,
        }
    }
    p.expect_end()?;
    Ok(out)
}

impl std::str::FromStr for BipartitePoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bipartite(s)
    }
}

/// `Ĵ_p`: entry `(j, i)` collects `Uᵀ ⊗ V` over the terms `U(y) x_j V(y)`
/// of `Dp^i(y)[x]`, so that `vec(Dp(Y)[X]) = vec(X) · Ĵ_p(Yᵀ⊗I, I⊗Y)`.
pub fn hypo_jacobian(p: &FreePolyMap) -> Result<BipartiteMatrix, AlgebraError> {
    p.check_square()?;
    let g = p.arity();
    let mut out = BipartiteMatrix::zeros(g, g);
    for (i, comp) in p.iter().enumerate() {
        // base point in x, direction in y: the direction letter splits the word
        for (w, c) in free_derivative(comp).terms() {
            let pos = w
                .letters()
                .iter()
                .position(|l| l.kind == Kind::Y)
                .expect("derivative words carry one direction letter");
            let j = w.letters()[pos].slot();
            let to_y = |l: crate::freealg::Letter| l.with_kind(Kind::Y);
            let u = w.slice(0, pos).reversed().map_letters(to_y);
            let v = w.slice(pos + 1, w.len()).map_letters(to_y);
            out.get_mut(j, i).add_term(u, v, c);
        }
    }
    Ok(out)
}

/// Inverse of a bipartite matrix by the terminating-series strategy,
/// verified exactly.
pub fn bipartite_matrix_inverse(m: &BipartiteMatrix, degree_cap: usize) -> Result<BipartiteMatrix, NotPolyInvertible> {
    series_inverse(m, SeriesInverseLimits::with_cap(degree_cap))
}

/// `z ↦ left`, `y ↦ right` substitution in every entry, as in
/// `Ĵ_α(βᵀ(z), β(y))`.
pub fn substitute_matrix(
    m: &BipartiteMatrix,
    left: &Substitution,
    right: &Substitution,
) -> Result<BipartiteMatrix, AlgebraError> {
    m.try_map(|e| e.substitute(left, right))
}

/// Outcome of [`injectivity_test`].
#[derive(Clone, Debug, PartialEq)]
pub enum InjectivityVerdict {
    /// `Ĵ_p` has the given polynomial inverse.
    Injective(BipartiteMatrix),
    NotInjective(NotInvertibleReason),
    /// The term budget ran out before the series terminated and no
    /// certificate of non-invertibility was found.
    Indeterminate,
}

impl InjectivityVerdict {
    pub fn is_injective(&self) -> bool {
        matches!(self, InjectivityVerdict::Injective(_))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct InjectivityOptions {
    pub term_budget: usize,
    pub seed: u64,
}

impl Default for InjectivityOptions {
    fn default() -> Self {
        InjectivityOptions {
            term_budget: 200_000,
            seed: 0x5eed,
        }
    }
}

/// Decides injectivity of `p` through invertibility of `Ĵ_p`.
pub fn injectivity_test(p: &FreePolyMap, options: &InjectivityOptions) -> Result<InjectivityVerdict, AlgebraError> {
    let jhat = hypo_jacobian(&p.without_constants())?;
    let g = p.arity();
    if g == 0 {
        return Ok(InjectivityVerdict::Injective(jhat));
    }
    if jhat.constant_part().inverse().is_none() {
        return Ok(InjectivityVerdict::NotInjective(NotInvertibleReason::SingularConstantTerm));
    }
    let mut weights = Weights::new(options.seed);
    if determinant_nonconstant(&jhat, |e| weights.bipartite(e)) == Some(true) {
        return Ok(InjectivityVerdict::NotInjective(NotInvertibleReason::NonConstantDeterminant));
    }
    let cap = pmid_bound(g, jhat.degree().unwrap_or(0)).bound_usize();
    let limits = SeriesInverseLimits {
        degree_cap: cap.unwrap_or(usize::MAX / 4),
        term_budget: options.term_budget,
    };
    Ok(match series_inverse(&jhat, limits) {
        Ok(inv) => InjectivityVerdict::Injective(inv),
        Err(e) if e.reason == NotInvertibleReason::BudgetExhausted => InjectivityVerdict::Indeterminate,
        Err(e) => InjectivityVerdict::NotInjective(e.reason),
    })
}

/// A proper algebraic system that is affine in `z`: components
/// `𝔞^i(x) + Σ_ℓ U_ℓ z_j V_ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyporealization {
    base: FreePolyMap,
    /// Per component, `(j, U, V)` triples with `j` 0-based.
    linear: Vec<Vec<(usize, FreePoly, FreePoly)>>,
}

impl Hyporealization {
    pub fn new(base: FreePolyMap, linear: Vec<Vec<(usize, FreePoly, FreePoly)>>) -> Result<Self, AlgebraError> {
        let h = base.arity();
        if linear.len() != h {
            return Err(AlgebraError::ArityMismatch {
                expected: h,
                found: linear.len(),
            });
        }
        for (i, c) in base.iter().enumerate() {
            if c.has_kind(Kind::Z) || !c.constant_term().is_zero() {
                return Err(AlgebraError::NotHyporealization(format!(
                    "base component {} must be z-free without constant term",
                    i + 1
                )));
            }
        }
        for terms in &linear {
            for (j, u, v) in terms {
                if *j >= h {
                    return Err(AlgebraError::NotHyporealization(format!("z{} out of range", j + 1)));
                }
                if u.has_kind(Kind::Z) || v.has_kind(Kind::Z) {
                    return Err(AlgebraError::NotHyporealization("nonlinear z term".into()));
                }
                if !u.constant_term().is_zero() && !v.constant_term().is_zero() {
                    return Err(AlgebraError::NotHyporealization("linear z term of length one".into()));
                }
            }
        }
        Ok(Hyporealization { base, linear })
    }

    /// Splits each word of a `z`-affine system at its `z` letter.
    pub fn from_system(system: &ProperAlgebraicSystem) -> Result<Self, AlgebraError> {
        system.validate().map_err(|e| AlgebraError::NotHyporealization(e.to_string()))?;
        let mut base = Vec::new();
        let mut linear = Vec::new();
        for comp in system.as_map().iter() {
            let mut b = FreePoly::zero();
            let mut lin = Vec::new();
            for (w, c) in comp.terms() {
                let zs: Vec<usize> = (0..w.len()).filter(|&k| w.letters()[k].kind == Kind::Z).collect();
                match zs[..] {
                    [] => b.add_term(w.clone(), c),
                    [pos] => lin.push((
                        w.letters()[pos].slot(),
                        FreePoly::monomial(w.slice(0, pos), c.clone()),
                        FreePoly::monomial(w.slice(pos + 1, w.len()), Coefficient::one()),
                    )),
                    _ => return Err(AlgebraError::NotHyporealization(format!("`{w}` is not z-linear"))),
                }
            }
            base.push(b);
            linear.push(lin);
        }
        Hyporealization::new(FreePolyMap::new(base), linear)
    }

    pub fn arity(&self) -> usize {
        self.base.arity()
    }

    pub fn base(&self) -> &FreePolyMap {
        &self.base
    }

    pub fn linear(&self) -> &[Vec<(usize, FreePoly, FreePoly)>] {
        &self.linear
    }

    pub fn to_system(&self) -> ProperAlgebraicSystem {
        let comps = self
            .base
            .iter()
            .zip(&self.linear)
            .map(|(b, lin)| {
                let mut c = b.clone();
                for (j, u, v) in lin {
                    c += &(&(u * &FreePoly::z(j + 1)) * v);
                }
                c
            })
            .collect();
        ProperAlgebraicSystem::new(comps)
    }
}

/// `(𝔞, Φ)` with `Φ_{j,i} = Σ Uᵀ(y) ⊗ V(x)` over the terms `U z_j V` of
/// component `i`.
pub fn hypomatrix_rep(a: &Hyporealization) -> (FreePolyMap, BipartiteMatrix) {
    let h = a.arity();
    let mut phi = BipartiteMatrix::zeros(h, h);
    for (i, lin) in a.linear.iter().enumerate() {
        for (j, u, v) in lin {
            let ut = u.transpose().rename_kind(Kind::X, Kind::Y);
            *phi.get_mut(*j, i) += &BipartitePoly::tensor(&ut, v);
        }
    }
    (a.base.clone(), phi)
}
