use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::word::{Kind, Letter, Word};
use crate::coeff::Coefficient;
use crate::error::AlgebraError;
use crate::ring::{GradedRing, Ring};

/// A free (noncommutative) polynomial: a finite sum of words with nonzero
/// Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FreePoly {
    terms: BTreeMap<Word, Coefficient>,
}

impl FreePoly {
    pub fn zero() -> Self {
        FreePoly::default()
    }

    pub fn one() -> Self {
        FreePoly::constant(Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        FreePoly::monomial(Word::empty(), c)
    }

    pub fn monomial(word: Word, c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        FreePoly { terms }
    }

    pub fn letter(l: Letter) -> Self {
        FreePoly::monomial(Word::letter(l), Coefficient::one())
    }

    pub fn x(i: usize) -> Self {
        FreePoly::letter(Letter::x(i))
    }

    pub fn y(i: usize) -> Self {
        FreePoly::letter(Letter::y(i))
    }

    pub fn z(i: usize) -> Self {
        FreePoly::letter(Letter::z(i))
    }

    /// Builds a polynomial from `(word, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Coefficient)>) -> Self {
        let mut p = FreePoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
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

    /// Terms in graded-lexicographic word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Coefficient {
        self.coefficient(&Word::empty())
    }

    /// Adds `c * w` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, w: Word, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    /// Maximum word length; `None` stands for `-∞` (the zero polynomial).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// Minimum word length.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::len)
    }

    /// `𝔡_z`: the least length of a word containing a `Z` letter; `None`
    /// stands for `+∞`.
    pub fn dz_degree(&self) -> Option<usize> {
        self.min_degree_with(Kind::Z)
    }

    pub fn min_degree_with(&self, kind: Kind) -> Option<usize> {
        self.terms.keys().find(|w| w.has_kind(kind)).map(Word::len)
    }

    pub fn has_kind(&self, kind: Kind) -> bool {
        self.terms.keys().any(|w| w.has_kind(kind))
    }

    /// The set of letters that occur.
    pub fn letters(&self) -> BTreeSet<Letter> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }

    /// Checks every letter of `kind` has index at most `size` and no other
    /// kind than those listed occurs.
    pub fn check_letters(&self, allowed: &[(Kind, usize)]) -> Result<(), AlgebraError> {
        for l in self.letters() {
            match allowed.iter().find(|(k, _)| *k == l.kind) {
                Some(&(_, size)) if l.index() <= size => {}
                Some(&(_, size)) => return Err(AlgebraError::LetterOutOfRange { letter: l, size }),
                None => return Err(AlgebraError::LetterOutOfRange { letter: l, size: 0 }),
            }
        }
        Ok(())
    }

    /// Reverses every word; an involutive anti-automorphism.
    pub fn transpose(&self) -> Self {
        FreePoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), c.clone()))
                .collect(),
        }
    }

    /// Drops every word longer than `max_len`.
    pub fn truncate(&self, max_len: usize) -> Self {
        FreePoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= max_len)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        self.filter(|w| w.len() == d)
    }

    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        FreePoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn without_constant(&self) -> Self {
        self.filter(|w| !w.is_empty())
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return FreePoly::zero();
        }
        FreePoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Self {
        FreePoly::from_terms(self.terms.iter().map(|(w, c)| (w.map_letters(&f), c.clone())))
    }

    /// Renames every letter of kind `from` to the same index of kind `to`.
    pub fn rename_kind(&self, from: Kind, to: Kind) -> Self {
        self.map_letters(|l| if l.kind == from { l.with_kind(to) } else { l })
    }

    /// Product keeping only words of length at most `max_len`.
    pub fn mul_truncated(&self, other: &FreePoly, max_len: usize) -> FreePoly {
        let mut out = FreePoly::zero();
        for (u, a) in &self.terms {
            if u.len() > max_len {
                break;
            }
            let room = max_len - u.len();
            for (v, b) in &other.terms {
                if v.len() > room {
                    break;
                }
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> FreePoly {
        (0..k).fold(FreePoly::one(), |acc, _| &acc * self)
    }

    /// Applies the algebra homomorphism determined by `sigma`.
    pub fn substitute(&self, sigma: &Substitution) -> Result<FreePoly, AlgebraError> {
        self.substitute_impl(sigma, None)
    }

    /// Like [`FreePoly::substitute`] but discards words longer than
    /// `max_len` at every intermediate product.
    pub fn substitute_truncated(
        &self,
        sigma: &Substitution,
        max_len: usize,
    ) -> Result<FreePoly, AlgebraError> {
        self.substitute_impl(sigma, Some(max_len))
    }

    fn substitute_impl(
        &self,
        sigma: &Substitution,
        max_len: Option<usize>,
    ) -> Result<FreePoly, AlgebraError> {
        let mut out = FreePoly::zero();
        for (w, c) in &self.terms {
            let mut acc = FreePoly::constant(c.clone());
            for &l in w.letters() {
                let owned;
                let image = match sigma.image(l) {
                    Some(img) => img,
                    None if sigma.keep_unbound => {
                        owned = FreePoly::letter(l);
                        &owned
                    }
                    None => return Err(AlgebraError::UnboundLetter(l)),
                };
                acc = match max_len {
                    Some(m) => acc.mul_truncated(image, m),
                    None => &acc * image,
                };
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        Ok(out)
    }
}

/// Letter images for [`FreePoly::substitute`].
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    images: BTreeMap<Letter, FreePoly>,
    keep_unbound: bool,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    /// Letters without an image map to themselves instead of failing.
    pub fn keeping_unbound(mut self) -> Self {
        self.keep_unbound = true;
        self
    }

    pub fn bind(mut self, l: Letter, image: FreePoly) -> Self {
        self.images.insert(l, image);
        self
    }

    pub fn insert(&mut self, l: Letter, image: FreePoly) {
        self.images.insert(l, image);
    }

    /// Binds `kind_1, …, kind_n` to the given images in order.
    pub fn bind_kind<'a>(mut self, kind: Kind, images: impl IntoIterator<Item = &'a FreePoly>) -> Self {
        for (i, img) in images.into_iter().enumerate() {
            self.images.insert(Letter::new(kind, i + 1), img.clone());
        }
        self
    }

    pub fn image(&self, l: Letter) -> Option<&FreePoly> {
        self.images.get(&l)
    }
}

impl Add for &FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (w, c) in &small.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl AddAssign<&FreePoly> for FreePoly {
    fn add_assign(&mut self, rhs: &FreePoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c);
        }
    }
}

impl Sub for &FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Mul for &FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }
}

impl Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        FreePoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FreePoly {
            type Output = FreePoly;
            fn $m(self, rhs: FreePoly) -> FreePoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FreePoly> for FreePoly {
            type Output = FreePoly;
            fn $m(self, rhs: &FreePoly) -> FreePoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        -&self
    }
}

impl Ring for FreePoly {
    fn zero() -> Self {
        FreePoly::zero()
    }
    fn one() -> Self {
        FreePoly::one()
    }
    fn is_zero(&self) -> bool {
        FreePoly::is_zero(self)
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
        FreePoly::scale(self, c)
    }
    fn from_scalar(c: Coefficient) -> Self {
        FreePoly::constant(c)
    }
}

impl GradedRing for FreePoly {
    fn degree(&self) -> Option<usize> {
        FreePoly::degree(self)
    }
    fn homogeneous(&self, d: usize) -> Self {
        self.homogeneous_part(d)
    }
    fn constant(&self) -> Coefficient {
        self.constant_term()
    }
    fn term_count(&self) -> usize {
        self.len()
    }
}

/// Writes `c*w` terms joined by ` + ` / ` - `, in graded-lex order.
pub(crate) fn write_terms<'a, T: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (T, &'a Coefficient, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (body, c, body_is_unit) in terms {
        let negative = c.is_negative_display();
        let abs = if negative { -c } else { c.clone() };
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        if body_is_unit {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{body}")?;
        } else {
            write!(f, "{abs}*{body}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(w, c)| (w, c, w.is_empty())))
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreePoly({self})")
    }
}
