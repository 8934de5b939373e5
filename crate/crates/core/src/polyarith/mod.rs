//! Exact univariate polynomial arithmetic over Q and Q(i), real-root counting,
//! and double-precision root extraction.

mod coeff;
mod gcd;
mod json;
mod poly;
mod roots;
mod sturm;

pub use coeff::{
    format_rational, parse_rational, rational_from_f64, rational_to_f64, Coeff, GaussRational, Rational,
};
pub use gcd::{gcd_all, gcd_euclid, gcd_subresultant, resultant, resultant_q, squarefree_part};
pub use json::{json_coeffs_to_poly, CoeffJson, PolyJson};
pub use poly::{GaussPoly, Poly, QPoly};
pub use roots::{
    derivative_coeffs, horner, poly_from_roots, roots_numeric, roots_of_coeffs, scaled_residual, CLUSTER_DISTANCE,
};
pub use sturm::{sturm_count, Interval, SturmChain};
