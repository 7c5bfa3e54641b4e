//! Rational functions over Q in one variable.

use num_traits::{One, Zero};

use super::num::Rat;
use super::poly::{ExprFmt, Poly};
use crate::error::{Error, Result};

/// `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: Poly<Rat>,
    den: Poly<Rat>,
}

impl RatFunc {
    pub fn new(num: Poly<Rat>, den: Poly<Rat>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g).expect("gcd nonzero");
        let (den, _) = den.divrem(&g).expect("gcd nonzero");
        let l = den.lead().expect("nonzero").clone();
        let linv = l.recip();
        Ok(RatFunc {
            num: num.scale(&linv),
            den: den.scale(&linv),
        })
    }

    pub fn from_poly(p: Poly<Rat>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<Rat> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Rat> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.expr(&[var])
        } else {
            format!("({})/({})", self.num.expr(&[var]), self.den.expr(&[var]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::num::rat;

    #[test]
    fn canonical_form() {
        let x = RatFunc::var();
        let one = RatFunc::constant(rat(1, 1));
        let a = one.div(&one.add(&x.mul(&x))).unwrap();
        let twice = a.add(&a);
        assert_eq!(twice.num(), &Poly::constant(rat(2, 1)));
        // (X^2 - 1)/(X - 1) = X + 1
        let q = x.mul(&x).sub(&one).div(&x.sub(&one)).unwrap();
        assert_eq!(q, x.add(&one));
        assert_eq!(a.render("X"), "(1)/(1 + X^2)");
    }
}
