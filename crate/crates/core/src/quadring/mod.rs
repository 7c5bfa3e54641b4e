//! Imaginary quadratic orders Z[sqrt(d)] and their ideals.

mod elem;
mod factor;
mod ideal;
pub mod lattice;

pub use elem::{divides, QuadElem, QuadFrac, QuadOrder};
pub use factor::{factor_principal, primes_above, PrimeFactorization, PrimeIdeal, Splitting};
pub use ideal::{
    ideal_from_pair, ideal_is_invertible, ideal_is_principal, ideal_mul, norm_search,
    IdealEquality, Invertibility, NormSearch, PrincipalityVerdict, QuadIdeal,
};
