//! Exact arithmetic over ℤ, ℚ, ℤ[i] and ℤ[ω]: factorization, exponent maps
//! and Weil heights.

pub mod expmap;
pub mod factor;
pub mod height;
pub mod number;
pub mod parse;
pub mod ring;

pub use expmap::{
    exponent_map, exponent_vector, exponent_vector_with, factor_quad_int, factorize, factorize_with,
    gaussian_factorize, gaussian_factorize_with, PrimeExponentMap, PrimeRep,
};
pub use height::{weil_height, WeilHeight};
pub use number::{format_quad, format_rational, ExactNumber};
pub use parse::{parse_number, parse_quad, parse_rational};
pub use ring::{QuadField, QuadInt, QuadRat, Ring};
