//! Left Jacobian matrices of free polynomial maps, their polynomial inverses,
//! and auxiliary inverses.

use crate::coeff::Coefficient;
use crate::error::{AlgebraError, NotPolyInvertible};
use crate::freealg::{FreePoly, FreePolyMap, Kind, Substitution};
use crate::matrix::{series_inverse, Matrix, SeriesInverseLimits};
use crate::sysolve::ProperAlgebraicSystem;

pub type PolyMatrix = Matrix<FreePoly>;

/// `p(x) = p(0) + x · J_p(x)` with `x` the row `(x_1, …, x_g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianDecomposition {
    pub constant: Vec<Coefficient>,
    pub jacobian: PolyMatrix,
}

impl JacobianDecomposition {
    /// Rebuilds `p(0) + x · J`.
    pub fn reconstruct(&self) -> FreePolyMap {
        let g = self.jacobian.rows();
        let comps = (0..self.jacobian.cols())
            .map(|j| {
                let mut c = FreePoly::constant(self.constant[j].clone());
                for s in 0..g {
                    c += &(&FreePoly::x(s + 1) * self.jacobian.get(s, j));
                }
                c
            })
            .collect();
        FreePolyMap::new(comps)
    }
}

/// Splits every word of `p^j` by its first letter: the word `x_s w`
/// contributes `w` to `J[s][j]`.
pub fn jacobian_extract(p: &FreePolyMap) -> Result<JacobianDecomposition, AlgebraError> {
    p.check_square()?;
    let g = p.arity();
    let mut jac = PolyMatrix::zeros(g, g);
    for (j, comp) in p.iter().enumerate() {
        for (w, c) in comp.terms() {
            let Some(first) = w.first() else { continue };
            jac.get_mut(first.slot(), j).add_term(w.tail(), c);
        }
    }
    Ok(JacobianDecomposition {
        constant: p.constant_terms(),
        jacobian: jac,
    })
}

/// Polynomial inverse of a square polynomial matrix, verified exactly.
///
/// With `degree_cap = 3^n 𝔣(n) deg(M)` a failure proves no polynomial
/// inverse exists; with a smaller cap it only means none was found.
pub fn poly_matrix_inverse(m: &PolyMatrix, degree_cap: usize) -> Result<PolyMatrix, NotPolyInvertible> {
    series_inverse(m, SeriesInverseLimits::with_cap(degree_cap))
}

pub fn poly_matrix_inverse_with(
    m: &PolyMatrix,
    limits: SeriesInverseLimits,
) -> Result<PolyMatrix, NotPolyInvertible> {
    series_inverse(m, limits)
}

/// The auxiliary inverse `𝕡(x)[z] = x · J_p^{-1}(z)`.
pub fn auxiliary_inverse(jacobian_inverse: &PolyMatrix) -> ProperAlgebraicSystem {
    let g = jacobian_inverse.rows();
    let comps = (0..jacobian_inverse.cols())
        .map(|j| {
            let mut c = FreePoly::zero();
            for s in 0..g {
                let entry = jacobian_inverse.get(s, j).rename_kind(Kind::X, Kind::Z);
                c += &(&FreePoly::x(s + 1) * &entry);
            }
            c
        })
        .collect();
    ProperAlgebraicSystem::new(comps)
}

/// `J(φ(x))`: substitutes `x_i ↦ φ_i` in every entry.
pub fn compose_entries(m: &PolyMatrix, phi: &FreePolyMap) -> Result<PolyMatrix, AlgebraError> {
    let sigma: Substitution = phi.as_substitution(Kind::X);
    m.try_map(|e| e.substitute(&sigma))
}
