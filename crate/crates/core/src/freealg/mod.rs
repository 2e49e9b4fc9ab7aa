//! Free polynomials over tagged multi-alphabets.

mod map;
mod parse;
mod poly;
mod word;

pub use map::FreePolyMap;
pub use parse::{parse_map, parse_poly};
pub(crate) use parse::{Parser, Tok};
pub use poly::{FreePoly, Substitution};

pub use word::{Alphabet, Kind, Letter, Word};
