//! Exact polynomial arithmetic over two coefficient domains: prime fields
//! 𝔽_p (odd p) for the arrangement and residue computations, and ℚ(ζ₈)
//! extended by formal root symbols for the del Pezzo line geometry.

mod cyclo;
mod field;
mod gcd;
mod line;
mod parse;
mod poly;
mod split;

pub use cyclo::CycloElem;
pub use field::PrimeField;
pub use gcd::{
    content_in, gcd as gcd_multivar, is_square_mod_constants, primitive_part, pseudo_remainder,
    squarefree_decomposition, SquarefreeDecomposition,
};
pub use line::{
    cross, det3, evaluate, intersection_point, line_points, linear_coefficients, normalize_point,
    proportional, restrict_to_line, split_quadratic, LineRestriction, LinearSplit, PlanePoint,
};
pub(crate) use line::{kernel3, quadratic_matrix};
pub use parse::{parse, Domain};
pub use poly::{Exponents, FpPoly, Var, NVARS};
pub use split::{RootExponents, SplitScalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { position: usize, name: String },
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime below 2^32")]
    NotAnOddPrime(u64),
    #[error("'{0}' is not a nonzero linear form in x, y, z")]
    NotLinear(String),
    #[error("'{0}' is not homogeneous in x, y, z")]
    NotHomogeneous(String),
    #[error("'{0}' involves variables other than x, y, z")]
    NotPlanar(String),
    #[error("'{0}' does not split into linear factors over the prime field; try another prime")]
    NotSplit(String),
    #[error("'{0}' has degree above 2; supply its linear factors explicitly")]
    DegreeTooHigh(String),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
}
