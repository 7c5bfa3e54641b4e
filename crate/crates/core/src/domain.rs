//! Integral domains with decidable divisibility.
//!
//! Every ring family in this crate implements [`Domain`]; the idempotent-pair
//! engine and the certificate builders are written against it.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ExactDiv, ExprFmt, Int, Poly, Rat};

pub trait Domain {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `Some(q)` with `a = b*q` and `q` in the ring.
    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Canonical textual form, parseable in the ring's expression grammar.
    fn render(&self, a: &Self::Elem) -> String;

    /// Ring descriptor in the `--ring` grammar.
    fn describe(&self) -> String;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.divide(&self.one(), a).is_some()
    }

    /// `Some(q)` when `b | a`, including the convention `0 | 0` with `q = 0`.
    fn divides_with_zero(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(b) {
            self.is_zero(a).then(|| self.zero())
        } else {
            self.divide(a, b)
        }
    }

    fn one_minus(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.one(), a)
    }
}

/// Domains whose fraction field is implemented, for certificates with
/// entries in an overring (inverse ideals, the fraction field).
pub trait FractionDomain: Domain {
    type Frac: Clone + PartialEq + fmt::Debug;

    fn embed(&self, a: &Self::Elem) -> Self::Frac;
    fn frac_add(&self, a: &Self::Frac, b: &Self::Frac) -> Self::Frac;
    fn frac_mul(&self, a: &Self::Frac, b: &Self::Frac) -> Self::Frac;
    /// The element as a ring element, if it is one.
    fn retract(&self, a: &Self::Frac) -> Option<Self::Elem>;
    fn render_frac(&self, a: &Self::Frac) -> String;
}

/// The rational integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Domain for Integers {
    type Elem = Int;

    fn zero(&self) -> Int {
        Int::zero()
    }
    fn one(&self) -> Int {
        Int::one()
    }
    fn add(&self, a: &Int, b: &Int) -> Int {
        a + b
    }
    fn sub(&self, a: &Int, b: &Int) -> Int {
        a - b
    }
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a * b
    }
    fn divide(&self, a: &Int, b: &Int) -> Option<Int> {
        a.exact_div(b)
    }
    fn render(&self, a: &Int) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        "Z".into()
    }
    fn is_unit(&self, a: &Int) -> bool {
        a.abs().is_one()
    }
}

impl FractionDomain for Integers {
    type Frac = Rat;

    fn embed(&self, a: &Int) -> Rat {
        Rat::from_integer(a.clone())
    }
    fn frac_add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn frac_mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn retract(&self, a: &Rat) -> Option<Int> {
        a.is_integer().then(|| a.to_integer())
    }
    fn render_frac(&self, a: &Rat) -> String {
        crate::arith::num::fmt_rat(a)
    }
}

/// Nonnegative generator of the ideal `(a, b)` of Z.
pub fn int_ideal_generator(gens: &[Int]) -> Int {
    gens.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// The polynomial ring Q[X].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RatPolyRing;

impl Domain for RatPolyRing {
    type Elem = Poly<Rat>;

    fn zero(&self) -> Poly<Rat> {
        Poly::zero()
    }
    fn one(&self) -> Poly<Rat> {
        Poly::one()
    }
    fn add(&self, a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
        a + b
    }
    fn sub(&self, a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
        a - b
    }
    fn mul(&self, a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
        a * b
    }
    fn divide(&self, a: &Poly<Rat>, b: &Poly<Rat>) -> Option<Poly<Rat>> {
        a.exact_div(b)
    }
    fn render(&self, a: &Poly<Rat>) -> String {
        a.expr(&["X"])
    }
    fn describe(&self) -> String {
        "Q[X]".into()
    }
    fn is_unit(&self, a: &Poly<Rat>) -> bool {
        a.degree() == Some(0)
    }
}

/// Monic generator of an ideal of Q[X].
pub fn qx_ideal_generator(gens: &[Poly<Rat>]) -> Poly<Rat> {
    gens.iter().fold(Poly::zero(), |g, x| g.primitive_gcd(x))
}
