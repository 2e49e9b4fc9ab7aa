//! Worked examples and a seeded generator of tame automorphisms with known
//! inverses.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Coefficient;
use crate::freealg::{parse_map, FreePoly, FreePolyMap, Word};
use crate::matrix::ScalarMatrix;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub p: FreePolyMap,
    /// The inverse, for injective entries.
    pub inverse: Option<FreePolyMap>,
}

impl CorpusEntry {
    pub fn injective(&self) -> bool {
        self.inverse.is_some()
    }
}

fn entry(name: &'static str, p: &[&str], q: Option<&[&str]>) -> CorpusEntry {
    CorpusEntry {
        name,
        p: parse_map(p).expect("corpus polynomial"),
        inverse: q.map(|q| parse_map(q).expect("corpus polynomial")),
    }
}

/// The fixed regression corpus.
pub fn examples() -> Vec<CorpusEntry> {
    vec![
        entry("identity", &["x1", "x2"], Some(&["x1", "x2"])),
        entry("linear", &["x2", "x1 + x2"], Some(&["x2 - x1", "x1"])),
        entry("elementary", &["x1", "x2 - x1^2"], Some(&["x1", "x2 + x1^2"])),
        entry(
            "twisted",
            &["x1 + x2^2", "x2 + (x1 + x2^2)^2"],
            Some(&["x1 - (x2 - x1^2)^2", "x2 - x1^2"]),
        ),
        entry(
            "triangular-3",
            &["x1", "x2 - x1^2", "x3 + x1*(-x2 + x1*x2) - x2^2"],
            Some(&["x1", "x2 + x1^2", "x3 + (x1 + x2)*x2 + (x1 + x2)*x1^2"]),
        ),
        entry("sandwich", &["x1", "x2 - x1*x2*x1"], None),
        entry("nilpotent", &["x1 + x1^2 + x2*x1", "x2 - x1^2 - x2*x1"], None),
    ]
}

/// A random tame automorphism together with the inverse assembled from
/// the inverses of its factors.
#[derive(Clone, Debug)]
pub struct TameSample {
    pub p: FreePolyMap,
    pub inverse: FreePolyMap,
    pub factors: usize,
}

fn small_coeff(rng: &mut impl Rng) -> Coefficient {
    let v = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
    Coefficient::from_integer(v)
}

/// `x_i ↦ x_i + h(x_{≠i})` and its inverse `x_i ↦ x_i - h`.
fn elementary(rng: &mut impl Rng, g: usize, max_deg: usize) -> (FreePolyMap, FreePolyMap) {
    let i = rng.gen_range(0..g);
    let others: Vec<usize> = (0..g).filter(|&j| j != i).collect();
    let mut h = FreePoly::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(1..=max_deg);
        let word = Word::from_letters(
            (0..len)
                .map(|_| crate::freealg::Letter::x(others.choose(rng).expect("g >= 2") + 1))
                .collect(),
        );
        h.add_term(word, &small_coeff(rng));
    }
    let id = FreePolyMap::identity(g);
    let mut fwd = id.clone().into_components();
    let mut back = id.into_components();
    fwd[i] = &fwd[i] + &h;
    back[i] = &back[i] - &h;
    (FreePolyMap::new(fwd), FreePolyMap::new(back))
}

/// `x ↦ x · L` for an invertible integer matrix with entries in `-1..=1`.
fn linear(rng: &mut impl Rng, g: usize) -> (FreePolyMap, FreePolyMap) {
    loop {
        let l = ScalarMatrix::from_vec(
            g,
            g,
            (0..g * g).map(|_| Coefficient::from_integer(rng.gen_range(-1..=1))).collect(),
        );
        if let Some(inv) = l.inverse() {
            let as_map = |m: &ScalarMatrix| {
                FreePolyMap::new(
                    (0..g)
                        .map(|j| {
                            let mut c = FreePoly::zero();
                            for s in 0..g {
                                c += &FreePoly::x(s + 1).scale(m.get(s, j));
                            }
                            c
                        })
                        .collect(),
                )
            };
            return (as_map(&l), as_map(&inv));
        }
    }
}

/// Compositions of at most `max_factors` elementary and linear maps in
/// `g` variables, rejected until the degree is at most `max_deg`.
pub fn tame_automorphism(rng: &mut impl Rng, g: usize, max_deg: usize, max_factors: usize) -> TameSample {
    loop {
        let factors = rng.gen_range(1..=max_factors);
        let mut p = FreePolyMap::identity(g);
        let mut q = FreePolyMap::identity(g);
        for _ in 0..factors {
            let (f, f_inv) = if g >= 2 && rng.gen_bool(0.6) {
                elementary(rng, g, max_deg)
            } else {
                linear(rng, g)
            };
            p = f.compose(&p).expect("square");
            q = q.compose(&f_inv).expect("square");
        }
        if p.degree().unwrap_or(0) <= max_deg {
            return TameSample { p, inverse: q, factors };
        }
    }
}

/// `count` samples with `g` cycling through `1..=max_g`.
pub fn tame_automorphisms(seed: u64, count: usize, max_g: usize, max_deg: usize, max_factors: usize) -> Vec<TameSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| tame_automorphism(&mut rng, 1 + k % max_g, max_deg, max_factors))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverter::verify_inverse;

    #[test]
    fn corpus_inverses_verify() {
        for e in examples() {
            if let Some(q) = &e.inverse {
                assert!(verify_inverse(&e.p, q), "{}", e.name);
            }
        }
    }

    #[test]
    fn generated_inverses_verify() {
        for s in tame_automorphisms(11, 20, 3, 3, 4) {
            assert!(s.p.degree().unwrap() <= 3);
            assert!(verify_inverse(&s.p, &s.inverse), "{}", s.p);
        }
    }
}
