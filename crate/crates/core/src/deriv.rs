//! The free derivative `Dη(x)[y]` and the scion `F(x, y) = (Dp(y)[x], y)`.

use crate::error::AlgebraError;
use crate::freealg::{FreePoly, FreePolyMap, Kind, Word};

/// `Df(x)[y]`: replaces one `x_i` at a time by `y_i` and sums.
///
/// Letters of other kinds are treated as constants.
pub fn free_derivative(f: &FreePoly) -> FreePoly {
    let mut out = FreePoly::zero();
    for (w, c) in f.terms() {
        for (pos, l) in w.letters().iter().enumerate() {
            if l.kind != Kind::X {
                continue;
            }
            let mut letters = w.letters().to_vec();
            letters[pos] = l.with_kind(Kind::Y);
            out.add_term(Word::from_letters(letters), c);
        }
    }
    out
}

/// Componentwise [`free_derivative`].
pub fn map_derivative(p: &FreePolyMap) -> FreePolyMap {
    p.map(free_derivative)
}

/// `F(x, y) = (Dp(y)[x], y_1, …, y_g)`: the derivative with base point in
/// `y` and direction in `x`.
pub fn scion(p: &FreePolyMap, g: usize) -> Result<FreePolyMap, AlgebraError> {
    if p.arity() != g {
        return Err(AlgebraError::ArityMismatch {
            expected: g,
            found: p.arity(),
        });
    }
    let swap = |l: crate::freealg::Letter| match l.kind {
        Kind::X => l.with_kind(Kind::Y),
        Kind::Y => l.with_kind(Kind::X),
        _ => l,
    };
    let mut comps: Vec<FreePoly> = p.iter().map(|c| free_derivative(c).map_letters(swap)).collect();
    comps.extend((1..=g).map(FreePoly::y));
    Ok(FreePolyMap::new(comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{parse_map, parse_poly};

    #[test]
    fn commutator_derivative() {
        let d = free_derivative(&parse_poly("x1*x2 - x2*x1").unwrap());
        assert_eq!(d, parse_poly("y1*x2 + x1*y2 - y2*x1 - x2*y1").unwrap());
    }

    #[test]
    fn square_derivative() {
        let d = free_derivative(&parse_poly("x2 + x1^2").unwrap());
        assert_eq!(d, parse_poly("y2 + x1*y1 + y1*x1").unwrap());
        assert!(free_derivative(&FreePoly::one()).is_zero());
    }

    #[test]
    fn scions_of_examples() {
        let p = parse_map(&["x1", "x2 - x1^2"]).unwrap();
        let f = scion(&p, 2).unwrap();
        assert_eq!(f, parse_map(&["x1", "x2 - x1*y1 - y1*x1", "y1", "y2"]).unwrap());

        let p = parse_map(&["x1", "x2 - x1*x2*x1"]).unwrap();
        let f = scion(&p, 2).unwrap();
        let expect = parse_map(&["x1", "x2 - x1*y2*y1 - y1*x2*y1 - y1*y2*x1", "y1", "y2"]).unwrap();
        assert_eq!(f, expect);

        let f = scion(&FreePolyMap::identity(2), 2).unwrap();
        assert_eq!(f, parse_map(&["x1", "x2", "y1", "y2"]).unwrap());
        assert!(scion(&p, 3).is_err());
    }
}
