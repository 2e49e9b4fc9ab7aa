//! Commutative images over `𝔽_p[t]`.
//!
//! Sending every letter `ℓ` to `c_ℓ t` for random `c_ℓ ∈ 𝔽_p` is a ring
//! homomorphism from the free (or bipartite) algebra onto a commutative
//! polynomial ring. Invertibility survives homomorphisms, so a matrix whose
//! image has a non-constant determinant has no polynomial inverse, and a
//! system whose image solution has a nonzero coefficient above `B` has no
//! polynomial solution of degree at most `B`. Both tests can only return
//! proofs of the negative, never false negatives of the positive.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::BipartitePoly;
use crate::coeff::Coefficient;
use crate::freealg::{FreePoly, Kind, Letter};
use crate::matrix::Matrix;
use crate::sysolve::ProperAlgebraicSystem;

pub const PRIME: u64 = 998_244_353;

fn mul(a: u64, b: u64) -> u64 {
    a * b % PRIME
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % PRIME
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

fn reduce(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(PRIME)).to_u64().expect("reduced")
}

/// `c mod p` with `i ↦ √-1`; `None` when a denominator vanishes mod `p`.
pub fn coeff_mod(c: &Coefficient) -> Option<u64> {
    let part = |q: &num_rational::BigRational| {
        let d = reduce(q.denom());
        (d != 0).then(|| mul(reduce(q.numer()), inv(d)))
    };
    let i = pow(3, (PRIME - 1) / 4);
    Some(add(part(c.re())?, mul(i, part(c.im())?)))
}

/// Random nonzero weights for letters, per side.
#[derive(Clone, Debug)]
pub struct Weights {
    rng: ChaCha8Rng,
    table: BTreeMap<(u8, Letter), u64>,
}

impl Weights {
    pub fn new(seed: u64) -> Self {
        Weights {
            rng: ChaCha8Rng::seed_from_u64(seed),
            table: BTreeMap::new(),
        }
    }

    fn get(&mut self, side: u8, l: Letter) -> u64 {
        let rng = &mut self.rng;
        *self.table.entry((side, l)).or_insert_with(|| rng.gen_range(1..PRIME))
    }

    /// Image of a free polynomial as coefficients in `t`.
    pub fn free(&mut self, f: &FreePoly) -> Option<Vec<u64>> {
        let mut out = vec![0; f.degree().map_or(1, |d| d + 1)];
        for (w, c) in f.terms() {
            let mut v = coeff_mod(c)?;
            for &l in w.letters() {
                v = mul(v, self.get(0, l));
            }
            out[w.len()] = add(out[w.len()], v);
        }
        Some(out)
    }

    /// Image of a bipartite polynomial, left and right letters weighted
    /// independently.
    pub fn bipartite(&mut self, b: &BipartitePoly) -> Option<Vec<u64>> {
        let mut out = vec![0; b.degree().map_or(1, |d| d + 1)];
        for ((u, v), c) in b.terms() {
            let mut x = coeff_mod(c)?;
            for &l in u.letters() {
                x = mul(x, self.get(1, l));
            }
            for &l in v.letters() {
                x = mul(x, self.get(2, l));
            }
            let d = u.len() + v.len();
            out[d] = add(out[d], x);
        }
        Some(out)
    }
}

fn eval_poly(coeffs: &[u64], t: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| add(mul(acc, t), c))
}

fn det_mod(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (PRIME - det) % PRIME;
        }
        det = mul(det, m[col][col]);
        let pinv = inv(m[col][col]);
        for r in col + 1..n {
            let f = mul(m[r][col], pinv);
            if f == 0 {
                continue;
            }
            for c in col..n {
                m[r][c] = (m[r][c] + PRIME - mul(f, m[col][c])) % PRIME;
            }
        }
    }
    det
}

/// Whether the determinant of the image matrix is non-constant in `t`.
///
/// `None` when some coefficient has no image mod `p`.
pub fn determinant_nonconstant<R>(
    m: &Matrix<R>,
    mut image: impl FnMut(&R) -> Option<Vec<u64>>,
) -> Option<bool>
where
    R: crate::ring::Ring,
{
    let n = m.rows();
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            entries.push(image(m.get(r, c))?);
        }
    }
    let max_deg = entries.iter().map(|e| e.len() - 1).max().unwrap_or(0);
    let points = (n * max_deg + 1) as u64;
    let at = |t: u64| {
        det_mod(
            (0..n)
                .map(|r| (0..n).map(|c| eval_poly(&entries[r * n + c], t)).collect())
                .collect(),
        )
    };
    let d0 = at(0);
    Some((1..=points).any(|t| at(t) != d0))
}

/// Image of a proper algebraic system: per component, a list of
/// `(t-polynomial coefficient, sorted z slots)`.
type ShadowSystem = Vec<Vec<(Vec<u64>, Vec<usize>)>>;

fn system_image(system: &ProperAlgebraicSystem, weights: &mut Weights) -> Option<ShadowSystem> {
    let mut out = Vec::new();
    for comp in system.as_map().iter() {
        let mut grouped: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
        for (w, c) in comp.terms() {
            let mut v = coeff_mod(c)?;
            let mut zs = Vec::new();
            let mut xs = 0;
            for &l in w.letters() {
                if l.kind == Kind::Z {
                    zs.push(l.slot());
                } else {
                    v = mul(v, weights.get(0, l));
                    xs += 1;
                }
            }
            zs.sort_unstable();
            let poly = grouped.entry(zs).or_default();
            if poly.len() <= xs {
                poly.resize(xs + 1, 0);
            }
            poly[xs] = add(poly[xs], v);
        }
        out.push(grouped.into_iter().map(|(zs, p)| (p, zs)).collect());
    }
    Some(out)
}

/// Coefficients `0..=degree` of the image of the unique solution of a
/// proper system, one series per component.
pub fn solution_image(system: &ProperAlgebraicSystem, degree: usize, seed: u64) -> Option<Vec<Vec<u64>>> {
    system.validate().ok()?;
    let mut weights = Weights::new(seed);
    let image = system_image(system, &mut weights)?;
    let h = system.arity();
    let mut z = vec![vec![0u64; degree + 1]; h];
    // products of sorted prefixes of z-monomials, shared between terms
    let mut products: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
    for comp in &image {
        for (_, zs) in comp {
            for k in 2..=zs.len() {
                products.entry(zs[..k].to_vec()).or_insert_with(|| vec![0; degree + 1]);
            }
        }
    }
    let keys: Vec<Vec<usize>> = products.keys().cloned().collect();
    for n in 1..=degree {
        // products first: z[0] = 0 so they only need z below degree n
        for key in &keys {
            let (last, prefix) = key.split_last().expect("length at least two");
            let mut acc = 0u64;
            for m in 1..n {
                let left = if prefix.len() == 1 {
                    z[prefix[0]][m]
                } else {
                    products[prefix][m]
                };
                if left != 0 {
                    acc = add(acc, mul(left, z[*last][n - m]));
                }
            }
            products.get_mut(key).expect("present")[n] = acc;
        }
        for (j, comp) in image.iter().enumerate() {
            let mut acc = 0u64;
            for (tpoly, zs) in comp {
                for (a, &coef) in tpoly.iter().enumerate() {
                    if coef == 0 || a > n {
                        continue;
                    }
                    let factor = match zs.len() {
                        0 => u64::from(a == n),
                        1 if a >= 1 => z[zs[0]][n - a],
                        1 => unreachable!("proper systems have no linear z words"),
                        _ => products[zs][n - a],
                    };
                    acc = add(acc, mul(coef, factor));
                }
            }
            z[j][n] = acc;
        }
    }
    Some(z)
}

/// Whether the image of the solution has a nonzero coefficient in degrees
/// `above+1..=upto`; a `true` answer proves the solution is not a
/// polynomial of degree at most `above`.
pub fn solution_exceeds(system: &ProperAlgebraicSystem, above: usize, upto: usize, seed: u64) -> Option<bool> {
    let z = solution_image(system, upto, seed)?;
    Some(z.iter().any(|s| s[above + 1..].iter().any(|&c| c != 0)))
}

type ModMatrix = Vec<Vec<u64>>;

fn mat_mul(a: &ModMatrix, b: &ModMatrix) -> ModMatrix {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = add(out[i][j], mul(a[i][k], b[k][j]));
            }
        }
    }
    out
}

fn eval_mod(f: &FreePoly, xs: &[ModMatrix]) -> Option<ModMatrix> {
    let n = xs[0].len();
    let mut out = vec![vec![0; n]; n];
    for (w, c) in f.terms() {
        let c = coeff_mod(c)?;
        let mut acc: ModMatrix = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        for l in w.letters() {
            acc = mat_mul(&acc, xs.get(l.slot())?);
        }
        for i in 0..n {
            for j in 0..n {
                out[i][j] = add(out[i][j], mul(c, acc[i][j]));
            }
        }
    }
    Some(out)
}

/// Evaluates `p ∘ q` and `q ∘ p` on a random tuple of `3 × 3` matrices
/// over `𝔽_p`. `false` proves `q` is not an inverse of `p`; `true` is only
/// evidence.
pub fn inverse_plausible(p: &crate::freealg::FreePolyMap, q: &crate::freealg::FreePolyMap, seed: u64) -> bool {
    let g = p.arity();
    if q.arity() != g || g == 0 {
        return q.arity() == g;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<ModMatrix> = (0..g)
        .map(|_| (0..3).map(|_| (0..3).map(|_| rng.gen_range(0..PRIME)).collect()).collect())
        .collect();
    let image = |m: &crate::freealg::FreePolyMap, at: &[ModMatrix]| -> Option<Vec<ModMatrix>> {
        m.iter().map(|c| eval_mod(c, at)).collect()
    };
    let round_trip = |a: &crate::freealg::FreePolyMap, b: &crate::freealg::FreePolyMap| {
        let Some(inner) = image(b, &xs) else { return true };
        match image(a, &inner) {
            Some(outer) => outer == xs,
            None => true,
        }
    };
    round_trip(p, q) && round_trip(q, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{parse_map, parse_poly};

    #[test]
    fn plausibility_filter() {
        let p = parse_map(&["x1", "x2 + x1^2"]).unwrap();
        let q = parse_map(&["x1", "x2 - x1^2"]).unwrap();
        assert!(inverse_plausible(&p, &q, 1));
        assert!(!inverse_plausible(&p, &p, 1));
    }

    #[test]
    fn modular_coefficients() {
        assert_eq!(coeff_mod(&"1/2".parse().unwrap()), Some(inv(2)));
        let i = coeff_mod(&Coefficient::i()).unwrap();
        assert_eq!(mul(i, i), PRIME - 1);
        assert_eq!(coeff_mod(&"-3".parse().unwrap()), Some(PRIME - 3));
    }

    #[test]
    fn geometric_determinant_is_nonconstant() {
        let m = Matrix::from_rows(vec![vec![parse_poly("1 - x1").unwrap()]]);
        let mut w = Weights::new(1);
        assert_eq!(determinant_nonconstant(&m, |e| w.free(e)), Some(true));
        let m = Matrix::from_rows(vec![
            vec![parse_poly("1 + x1").unwrap(), parse_poly("-x1").unwrap()],
            vec![parse_poly("x1").unwrap(), parse_poly("1 - x1").unwrap()],
        ]);
        assert_eq!(determinant_nonconstant(&m, |e| w.free(e)), Some(false));
    }

    #[test]
    fn classic_system_image_is_infinite() {
        let s = ProperAlgebraicSystem::from_map(parse_map(&["x1", "x2 + x1*z2*z1"]).unwrap());
        assert_eq!(solution_exceeds(&s, 20, 30, 7), Some(true));
        let s = ProperAlgebraicSystem::from_map(parse_map(&["x1", "x2 + z1*z1"]).unwrap());
        assert_eq!(solution_exceeds(&s, 2, 30, 7), Some(false));
    }

    #[test]
    fn image_matches_exact_solution() {
        let s = ProperAlgebraicSystem::from_map(parse_map(&["x1 + z1*x1*z1"]).unwrap());
        let exact = crate::sysolve::solve_truncated(&s, 9).unwrap();
        let mut w = Weights::new(3);
        let expect = w.free(&exact[0]).unwrap();
        let got = solution_image(&s, 9, 3).unwrap();
        assert_eq!(&got[0][..expect.len()], &expect[..]);
    }
}
