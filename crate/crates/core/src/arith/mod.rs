//! Exact integers, rationals, dense polynomials and rational functions.

pub mod num;
pub mod poly;
pub mod ratfunc;

pub use num::{int, rat, Int, Rat};
pub use poly::{Coeff, ExactDiv, ExprFmt, Field, Poly};
pub use ratfunc::RatFunc;

/// Division with remainder for polynomials over Q.
pub fn poly_divrem(f: &Poly<Rat>, g: &Poly<Rat>) -> crate::Result<(Poly<Rat>, Poly<Rat>)> {
    f.divrem(g)
}

/// Extended gcd over Q: `(d, s, t)` with `s*f + t*g = d`, `d` monic or zero.
pub fn poly_extended_gcd(f: &Poly<Rat>, g: &Poly<Rat>) -> (Poly<Rat>, Poly<Rat>, Poly<Rat>) {
    f.extended_gcd(g)
}
