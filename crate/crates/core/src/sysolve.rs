//! Proper algebraic systems `z = α(x)[z]` and their iterates.

use std::fmt;

use crate::error::AlgebraError;
use crate::freealg::{FreePoly, FreePolyMap, Kind, Substitution};
use crate::matrix::ScalarMatrix;

/// A tuple `α = (α^1, …, α^h)` of polynomials in `x` and `z = (z_1, …, z_h)`.
///
/// The system `z = α(x)[z]` is proper when no component has a constant term
/// and every word containing a `z` letter has length at least two.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProperAlgebraicSystem {
    components: FreePolyMap,
}

impl ProperAlgebraicSystem {
    pub fn new(components: Vec<FreePoly>) -> Self {
        ProperAlgebraicSystem {
            components: FreePolyMap::new(components),
        }
    }

    pub fn from_map(components: FreePolyMap) -> Self {
        ProperAlgebraicSystem { components }
    }

    pub fn arity(&self) -> usize {
        self.components.arity()
    }

    pub fn as_map(&self) -> &FreePolyMap {
        &self.components
    }

    pub fn check_proper(&self) -> bool {
        self.validate().is_ok()
    }

    /// Like [`Self::check_proper`] but says what is wrong.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let h = self.arity();
        for (j, c) in self.components.iter().enumerate() {
            for l in c.letters() {
                match l.kind {
                    Kind::X => {}
                    Kind::Z if l.index() <= h => {}
                    _ => return Err(AlgebraError::LetterOutOfRange { letter: l, size: h }),
                }
            }
            if !c.constant_term().is_zero() {
                return Err(AlgebraError::ImproperSystem(format!("component {} has a constant term", j + 1)));
            }
            if c.dz_degree().is_some_and(|d| d < 2) {
                return Err(AlgebraError::ImproperSystem(format!(
                    "component {} has a linear z term",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// Largest word length, at least one.
    fn degree(&self) -> usize {
        self.components.degree().unwrap_or(1).max(1)
    }

    /// `α(x)[z ↦ a]`, dropping words longer than `max_len`.
    pub fn apply_truncated(&self, a: &FreePolyMap, max_len: usize) -> FreePolyMap {
        let sigma = Substitution::new().bind_kind(Kind::Z, a.components()).keeping_unbound();
        self.components
            .substitute_truncated(&sigma, max_len)
            .expect("unbound letters are kept")
    }
}

impl fmt::Display for ProperAlgebraicSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.components)
    }
}

/// Lower bound on the length of `z`-carrying words of an iterate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZDegree {
    /// The shortest `z` word has exactly this length.
    Finite(usize),
    /// No `z` word of length at most the given truncation survived.
    Beyond(usize),
    /// The iterate is exact and free of `z`.
    Infinite,
}

impl ZDegree {
    /// Every `z` word has length strictly greater than `n`.
    pub fn exceeds(self, n: usize) -> bool {
        match self {
            ZDegree::Finite(d) => d > n,
            ZDegree::Beyond(t) => t >= n,
            ZDegree::Infinite => true,
        }
    }
}

impl fmt::Display for ZDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZDegree::Finite(d) => write!(f, "{d}"),
            ZDegree::Beyond(t) => write!(f, ">{t}"),
            ZDegree::Infinite => f.write_str("inf"),
        }
    }
}

/// `α^{∘k} = 𝔮^k + 𝔯^k` with `𝔮^k` the `z`-free words shorter than
/// `𝔡_z(α^{∘k})`.
#[derive(Clone, Debug, PartialEq)]
pub struct IterateSplit {
    pub k: usize,
    pub head: FreePolyMap,
    pub tail: FreePolyMap,
    pub dz: ZDegree,
    /// Whether no word was dropped by truncation.
    pub exact: bool,
}

/// Successive iterates `α^{∘0} = z`, `α^{∘k} = α(x)[α^{∘k-1}]`, truncated
/// at a fixed length.
#[derive(Clone, Debug)]
pub struct Iterates<'a> {
    system: &'a ProperAlgebraicSystem,
    truncation: usize,
    k: usize,
    current: FreePolyMap,
    exact: bool,
}

impl<'a> Iterates<'a> {
    pub fn new(system: &'a ProperAlgebraicSystem, truncation: usize) -> Self {
        Iterates {
            system,
            truncation,
            k: 0,
            current: FreePolyMap::letters(Kind::Z, system.arity()),
            exact: true,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn current(&self) -> &FreePolyMap {
        &self.current
    }

    pub fn step(&mut self) {
        // an exact z-free iterate is already the fixed point
        if self.exact && self.current.dz_degree().is_none() {
            self.k += 1;
            return;
        }
        let bound = self.system.degree() * self.current.degree().unwrap_or(0).max(1);
        if bound > self.truncation {
            self.exact = false;
        }
        self.current = self.system.apply_truncated(&self.current, self.truncation);
        self.k += 1;
    }

    pub fn split(&self) -> IterateSplit {
        split_map(self.k, &self.current, self.truncation, self.exact)
    }
}

fn split_map(k: usize, current: &FreePolyMap, truncation: usize, exact: bool) -> IterateSplit {
    let dz = match current.dz_degree() {
        Some(d) => ZDegree::Finite(d),
        None if exact => ZDegree::Infinite,
        None => ZDegree::Beyond(truncation),
    };
    let in_head = |w: &crate::freealg::Word| {
        !w.has_kind(Kind::Z)
            && match dz {
                ZDegree::Finite(d) => w.len() < d,
                _ => true,
            }
    };
    IterateSplit {
        k,
        head: current.map(|c| c.filter(in_head)),
        tail: current.map(|c| c.filter(|w| !in_head(w))),
        dz,
        exact,
    }
}

/// Computes `α^{∘k}` with words longer than `truncation` dropped and splits
/// it into head and tail.
pub fn iterate_split(
    system: &ProperAlgebraicSystem,
    k: usize,
    truncation: usize,
) -> Result<IterateSplit, AlgebraError> {
    system.validate()?;
    let mut it = Iterates::new(system, truncation);
    for _ in 0..k {
        it.step();
    }
    Ok(it.split())
}

/// The unique solution of `z = α(x)[z]` modulo words longer than
/// `truncation`.
///
/// Iterates from `z = 0`; for a proper system each step fixes at least one
/// more degree, so at most `truncation + 1` steps are needed.
pub fn solve_truncated(system: &ProperAlgebraicSystem, truncation: usize) -> Result<FreePolyMap, AlgebraError> {
    system.validate()?;
    let mut a = FreePolyMap::new(vec![FreePoly::zero(); system.arity()]);
    for _ in 0..=truncation {
        let next = system.apply_truncated(&a, truncation);
        if next == a {
            break;
        }
        a = next;
    }
    Ok(a)
}

/// Solves `f(x, z) = 0` for `z` modulo words longer than `truncation`.
///
/// Requires `f(0, 0) = 0` and an invertible matrix `A` of coefficients of
/// the linear `z` words; rewrites the system as `z = z - A^{-1} f`.
pub fn implicit_solve(f: &FreePolyMap, truncation: usize) -> Result<FreePolyMap, AlgebraError> {
    let h = f.arity();
    if f.has_constant_terms() {
        return Err(AlgebraError::NonzeroConstant);
    }
    let mut a = ScalarMatrix::zeros(h, h);
    for (i, c) in f.iter().enumerate() {
        for j in 0..h {
            let w = crate::freealg::Word::letter(crate::freealg::Letter::z(j + 1));
            a.set(i, j, c.coefficient(&w));
        }
    }
    let a_inv = a.inverse().ok_or(AlgebraError::SingularLinearPart)?;
    let comps = (0..h)
        .map(|i| {
            let mut normalized = FreePoly::zero();
            for j in 0..h {
                normalized += &f[j].scale(a_inv.get(i, j));
            }
            &FreePoly::z(i + 1) - &normalized
        })
        .collect();
    solve_truncated(&ProperAlgebraicSystem::new(comps), truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{parse_map, parse_poly};

    fn system(src: &[&str]) -> ProperAlgebraicSystem {
        ProperAlgebraicSystem::from_map(parse_map(src).unwrap())
    }

    #[test]
    fn properness() {
        assert!(system(&["x1 + z1*x2"]).check_proper());
        assert!(!system(&["z1 + x1"]).check_proper());
        assert!(!system(&["1 + x1*z1"]).check_proper());
        assert!(!system(&["x1*z2"]).check_proper());
    }

    #[test]
    fn classic_auxiliary_iterates() {
        let s = system(&["x1", "x2 + x1*z2*z1"]);
        let it = iterate_split(&s, 1, 50).unwrap();
        assert_eq!(it.head, parse_map(&["x1", "x2"]).unwrap());
        assert_eq!(it.dz, ZDegree::Finite(3));
        assert_eq!(it.tail, parse_map(&["0", "x1*z2*z1"]).unwrap());
        let it = iterate_split(&s, 2, 50).unwrap();
        assert_eq!(it.head, parse_map(&["x1", "x2 + x1*x2*x1"]).unwrap());
        assert_eq!(it.dz, ZDegree::Finite(5));
    }

    #[test]
    fn identity_system_is_exact() {
        let s = system(&["x1", "x2"]);
        let it = iterate_split(&s, 1, 4).unwrap();
        assert_eq!(it.dz, ZDegree::Infinite);
        assert!(it.tail.iter().all(FreePoly::is_zero));
    }

    #[test]
    fn truncated_iterate_reports_lower_bound() {
        let s = system(&["x1*x1 + x1*z1*z1"]);
        let it = iterate_split(&s, 3, 4).unwrap();
        assert!(matches!(it.dz, ZDegree::Beyond(4)));
        assert!(!it.exact);
    }

    #[test]
    fn catalan_generating_series() {
        // z = x1 + z x1 z counts binary trees by length
        let s = system(&["x1 + z1*x1*z1"]);
        let sol = solve_truncated(&s, 7).unwrap();
        let expect = parse_poly("x1 + x1^3 + 2*x1^5 + 5*x1^7").unwrap();
        assert_eq!(sol[0], expect);
        let it = iterate_split(&s, 7, 7).unwrap();
        assert_eq!(it.head.truncate(7)[0], expect);
    }

    #[test]
    fn implicit_solve_normalizes() {
        // 2 z1 - x1 - z1*z1 = 0  ⇒  z1 = x1/2 + z1^2/2
        let f = parse_map(&["2*z1 - x1 - z1*z1"]).unwrap();
        let sol = implicit_solve(&f, 3).unwrap();
        assert_eq!(sol[0], parse_poly("1/2*x1 + 1/8*x1^2 + 1/16*x1^3").unwrap());
        let g = parse_map(&["x1*z1 - x1"]).unwrap();
        assert_eq!(implicit_solve(&g, 3), Err(AlgebraError::SingularLinearPart));
        let c = parse_map(&["1 + z1"]).unwrap();
        assert_eq!(implicit_solve(&c, 3), Err(AlgebraError::NonzeroConstant));
    }
}
