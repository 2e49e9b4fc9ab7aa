//! Degree bounds and the decision procedure for polynomial invertibility.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{AlgebraError, NotInvertibleReason};
use crate::freealg::FreePolyMap;
use crate::jacobian::{auxiliary_inverse, jacobian_extract, poly_matrix_inverse_with};
use crate::matrix::SeriesInverseLimits;
use crate::shadow::{determinant_nonconstant, inverse_plausible, solution_exceeds, Weights};
use crate::sysolve::{Iterates, ZDegree};

/// `3^n 𝔣(n) d` with `𝔣(n) = (n!)^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmidBound {
    pub g: usize,
    pub d: usize,
    pub f_value: BigUint,
    pub bound: BigUint,
}

impl PmidBound {
    pub fn bound_usize(&self) -> Option<usize> {
        self.bound.to_usize()
    }
}

/// `𝔣(1) = 1`, `𝔣(n+1) = (n+1)^3 𝔣(n)`.
pub fn frak_f(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k).pow(3))
}

pub fn pmid_bound(n: usize, d: usize) -> PmidBound {
    let f_value = frak_f(n);
    let bound = BigUint::from(3u32).pow(n as u32) * &f_value * BigUint::from(d);
    PmidBound {
        g: n,
        d,
        f_value,
        bound,
    }
}

/// `B = 3^g 𝔣(g) (deg p - 1) + 1`.
pub fn inverse_degree_bound(g: usize, deg_p: usize) -> BigUint {
    assert!(deg_p >= 1, "the degree of p is at least one");
    pmid_bound(g, deg_p - 1).bound + BigUint::one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotInjectiveReason {
    SingularJacobianConstant,
    JacobianNotPolyInvertible,
    DegreeExceeded,
    IterationExceeded,
}

impl fmt::Display for NotInjectiveReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotInjectiveReason::SingularJacobianConstant => "singular-jacobian-constant",
            NotInjectiveReason::JacobianNotPolyInvertible => "jacobian-not-poly-invertible",
            NotInjectiveReason::DegreeExceeded => "degree-exceeded",
            NotInjectiveReason::IterationExceeded => "iteration-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InversionOutcome {
    PolynomialInverse { q: FreePolyMap, iterations: usize },
    NotInjective(NotInjectiveReason),
    Indeterminate { cap_used: usize },
}

/// An outcome together with the bounds it was computed under.
#[derive(Clone, Debug, PartialEq)]
pub struct Inversion {
    pub outcome: InversionOutcome,
    /// `B`, or `None` when the Jacobian was rejected before it was needed.
    pub bound_b: Option<BigUint>,
    /// Largest truncation length used.
    pub cap_used: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct InvertOptions {
    /// Working-degree cap; `None` runs with the full bound.
    pub cap: Option<usize>,
    /// Largest number of terms an iterate or series component may carry.
    pub term_budget: usize,
    pub seed: u64,
    /// Largest `B` for which the modular degree certificate is attempted.
    pub shadow_limit: usize,
}

impl Default for InvertOptions {
    fn default() -> Self {
        InvertOptions {
            cap: Some(64),
            term_budget: 200_000,
            seed: 0x5eed,
            shadow_limit: 4096,
        }
    }
}

impl InvertOptions {
    pub fn rigorous() -> Self {
        InvertOptions {
            cap: None,
            ..Self::default()
        }
    }
}

/// `p ∘ q = x = q ∘ p`, checked exactly.
pub fn verify_inverse(p: &FreePolyMap, q: &FreePolyMap) -> bool {
    let g = p.arity();
    if q.arity() != g || p.check_square().is_err() || q.check_square().is_err() {
        return false;
    }
    let id = FreePolyMap::identity(g);
    p.compose(q).is_ok_and(|c| c == id) && q.compose(p).is_ok_and(|c| c == id)
}

/// Decides whether `p` has a free polynomial inverse and returns it.
///
/// Positive answers are verified by exact composition. Negative answers
/// rest on the degree bound `B`: the iterate heads agree with the inverse
/// below `𝔡_z`, so a visible head word longer than `B` rules out a
/// polynomial inverse.
pub fn invert(p: &FreePolyMap, options: &InvertOptions) -> Result<Inversion, AlgebraError> {
    p.check_square()?;
    let g = p.arity();
    let done = |outcome, bound_b, cap_used| Ok(Inversion { outcome, bound_b, cap_used });
    if g == 0 {
        return done(InversionOutcome::PolynomialInverse { q: p.clone(), iterations: 0 }, None, 0);
    }
    let shift = p.constant_terms();
    let p0 = p.without_constants();
    let not_injective = InversionOutcome::NotInjective;

    let decomposition = jacobian_extract(&p0)?;
    let jac = decomposition.jacobian;
    if jac.constant_part().inverse().is_none() {
        return done(not_injective(NotInjectiveReason::SingularJacobianConstant), None, 0);
    }
    let deg_p = p0.degree().expect("nonsingular linear part");
    let bound_b = inverse_degree_bound(g, deg_p);
    let b = bound_b.to_usize().unwrap_or(usize::MAX / 4);
    let rigorous_w = (&bound_b * BigUint::from(deg_p) + BigUint::one())
        .to_usize()
        .unwrap_or(usize::MAX / 4);
    let w = options.cap.map_or(rigorous_w, |c| c.min(rigorous_w)).max(1);
    let some_b = Some(bound_b.clone());

    let mut weights = Weights::new(options.seed);
    if determinant_nonconstant(&jac, |e| weights.free(e)) == Some(true) {
        return done(not_injective(NotInjectiveReason::JacobianNotPolyInvertible), some_b, 0);
    }
    let jcap = pmid_bound(g, jac.degree().unwrap_or(0)).bound_usize().unwrap_or(usize::MAX / 4);
    let limits = SeriesInverseLimits {
        degree_cap: jcap,
        term_budget: options.term_budget,
    };
    let jinv = match poly_matrix_inverse_with(&jac, limits) {
        Ok(m) => m,
        Err(e) if e.reason == NotInvertibleReason::BudgetExhausted => {
            return done(InversionOutcome::Indeterminate { cap_used: w }, some_b, w);
        }
        Err(_) => return done(not_injective(NotInjectiveReason::JacobianNotPolyInvertible), some_b, 0),
    };
    let aux = auxiliary_inverse(&jinv);

    let restore = |q0: FreePolyMap| {
        q0.compose(&FreePolyMap::translation(&shift.iter().map(|c| -c).collect::<Vec<_>>()))
            .expect("square")
    };

    let mut t = w.min(2 * deg_p + 2).max(2);
    'levels: loop {
        let mut it = Iterates::new(&aux, t);
        loop {
            it.step();
            let k = it.k();
            if it.current().term_count() > options.term_budget || k > t + 2 {
                break 'levels;
            }
            let split = it.split();
            let head_deg = split.head.degree().unwrap_or(0);
            if head_deg > b {
                return done(not_injective(NotInjectiveReason::DegreeExceeded), some_b, t);
            }
            // the head is the exact solution below this length
            let visible = match split.dz {
                ZDegree::Finite(d) => d,
                ZDegree::Beyond(t) => t + 1,
                ZDegree::Infinite => usize::MAX,
            };
            let gap = match split.dz {
                ZDegree::Finite(d) => head_deg * deg_p < d,
                ZDegree::Beyond(_) | ZDegree::Infinite => true,
            };
            if !gap {
                continue;
            }
            if inverse_plausible(&p0, &split.head, options.seed) && verify_inverse(&p0, &split.head) {
                return done(
                    InversionOutcome::PolynomialInverse {
                        q: restore(split.head),
                        iterations: k,
                    },
                    some_b,
                    t,
                );
            }
            if visible > b + 1 {
                let reason = if k > b {
                    NotInjectiveReason::IterationExceeded
                } else {
                    NotInjectiveReason::DegreeExceeded
                };
                return done(not_injective(reason), some_b, t);
            }
            if matches!(split.dz, ZDegree::Beyond(_)) {
                if t >= w {
                    break 'levels;
                }
                t = (2 * t).min(w);
                continue 'levels;
            }
        }
    }

    if b <= options.shadow_limit {
        let upto = b + 64;
        for seed in [options.seed, options.seed.wrapping_add(1)] {
            if solution_exceeds(&aux, b, upto, seed) == Some(true) {
                return done(not_injective(NotInjectiveReason::DegreeExceeded), some_b, t);
            }
        }
    }
    done(InversionOutcome::Indeterminate { cap_used: w }, some_b, t)
}
