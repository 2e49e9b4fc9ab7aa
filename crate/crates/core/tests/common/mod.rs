#![allow(dead_code)]

use freeinv::freealg::{Letter, Word};
use freeinv::{Coefficient, FreePoly, FreePolyMap, Kind};
use rand::Rng;

pub fn small_coeff(rng: &mut impl Rng) -> Coefficient {
    let num = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { -1 } else { 1 };
    let den = rng.gen_range(1..=2);
    Coefficient::from_ratio(num, den)
}

pub fn random_word(rng: &mut impl Rng, letters: &[Letter], len: usize) -> Word {
    Word::from_letters((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect())
}

pub fn x_letters(g: usize) -> Vec<Letter> {
    (1..=g).map(Letter::x).collect()
}

/// Up to `terms` random words of length `min_len..=max_len`.
pub fn random_poly(rng: &mut impl Rng, letters: &[Letter], min_len: usize, max_len: usize, terms: usize) -> FreePoly {
    let mut f = FreePoly::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let len = rng.gen_range(min_len..=max_len);
        f.add_term(random_word(rng, letters, len), &small_coeff(rng));
    }
    f
}

/// Random map without constant terms.
pub fn random_map(rng: &mut impl Rng, g: usize, max_len: usize, terms: usize) -> FreePolyMap {
    FreePolyMap::new((0..g).map(|_| random_poly(rng, &x_letters(g), 1, max_len, terms)).collect())
}

/// Substitutes `kind_i ↦ images_i`, keeping every other letter.
pub fn subst(f: &FreePoly, kind: Kind, images: &[FreePoly]) -> FreePoly {
    let sigma = freeinv::Substitution::new().bind_kind(kind, images).keeping_unbound();
    f.substitute(&sigma).unwrap()
}

/// `subst` dropping words longer than `max_len` along the way.
pub fn subst_truncated(f: &FreePoly, kind: Kind, images: &[FreePoly], max_len: usize) -> FreePoly {
    let sigma = freeinv::Substitution::new().bind_kind(kind, images).keeping_unbound();
    f.substitute_truncated(&sigma, max_len).unwrap()
}

pub mod strategies {
    use super::*;
    use freeinv::mateval::MatrixTuple;
    use freeinv::ScalarMatrix;
    use proptest::prelude::*;

    /// Small Gaussian rationals, mostly real.
    pub fn coeff() -> impl Strategy<Value = Coefficient> {
        (-4i64..=4, prop_oneof![3 => Just(0i64), 1 => -2i64..=2], 1i64..=3).prop_map(|(re, im, den)| {
            &Coefficient::from_ratio(re, den) + &(&Coefficient::i() * &Coefficient::from_ratio(im, den))
        })
    }

    pub fn word(letters: Vec<Letter>, min_len: usize, max_len: usize) -> impl Strategy<Value = Word> {
        let n = letters.len();
        proptest::collection::vec(0..n, min_len..=max_len)
            .prop_map(move |ix| Word::from_letters(ix.into_iter().map(|i| letters[i]).collect()))
    }

    pub fn poly_in(letters: Vec<Letter>, min_len: usize, max_len: usize, terms: usize) -> impl Strategy<Value = FreePoly> {
        proptest::collection::vec((word(letters, min_len, max_len), coeff()), 0..=terms).prop_map(FreePoly::from_terms)
    }

    pub fn poly(g: usize, max_len: usize, terms: usize) -> impl Strategy<Value = FreePoly> {
        poly_in(x_letters(g), 0, max_len, terms)
    }

    /// Maps in `g` variables without constant terms.
    pub fn map(g: usize, max_len: usize, terms: usize) -> impl Strategy<Value = FreePolyMap> {
        proptest::collection::vec(poly_in(x_letters(g), 1, max_len, terms), g).prop_map(FreePolyMap::new)
    }

    pub fn scalar_matrix(n: usize) -> impl Strategy<Value = ScalarMatrix> {
        proptest::collection::vec(-3i64..=3, n * n)
            .prop_map(move |v| ScalarMatrix::from_vec(n, n, v.into_iter().map(Coefficient::from_integer).collect()))
    }

    pub fn tuple(g: usize, n: usize) -> impl Strategy<Value = MatrixTuple> {
        proptest::collection::vec(scalar_matrix(n), g).prop_map(|m| MatrixTuple::new(m).unwrap())
    }
}
