//! Minimal ring abstractions shared by polynomial, bipartite and scalar matrices.

use std::fmt::Debug;

use crate::coeff::Coefficient;

/// An associative unital ring over the Gaussian rationals.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, c: &Coefficient) -> Self;
    fn from_scalar(c: Coefficient) -> Self;
}

/// A ring graded by total degree with the scalars in degree zero.
pub trait GradedRing: Ring {
    /// `None` for zero.
    fn degree(&self) -> Option<usize>;
    /// The degree-`d` homogeneous component.
    fn homogeneous(&self, d: usize) -> Self;
    /// The degree-zero coefficient.
    fn constant(&self) -> Coefficient;
    fn term_count(&self) -> usize;
}

impl Ring for Coefficient {
    fn zero() -> Self {
        Coefficient::zero()
    }
    fn one() -> Self {
        Coefficient::one()
    }
    fn is_zero(&self) -> bool {
        Coefficient::is_zero(self)
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
        self * c
    }
    fn from_scalar(c: Coefficient) -> Self {
        c
    }
}
