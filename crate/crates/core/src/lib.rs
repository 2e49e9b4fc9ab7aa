//! Exact computer algebra for free (noncommutative) polynomial maps: Jacobian
//! and hypo-Jacobian matrices, auxiliary inverses, proper algebraic systems,
//! free derivatives and a decision procedure for polynomial invertibility,
//! with every answer checked by exact evaluation.

pub mod coeff;
pub mod corpus;
pub mod error;
pub mod freealg;
pub mod mateval;
pub mod matrix;
pub mod bipartite;
pub mod deriv;
pub mod inverter;
pub mod jacobian;
pub mod registry;
pub mod ring;
pub mod shadow;
pub mod sysolve;

pub use coeff::Coefficient;
pub use error::{AlgebraError, NotInvertibleReason, NotPolyInvertible, ParseError};
pub use freealg::{parse_map, parse_poly, FreePoly, FreePolyMap, Kind, Letter, Substitution, Word};
pub use matrix::{Matrix, ScalarMatrix};
