use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::num::{fmt_rat, is_squarefree};
use crate::arith::{Int, Rat};
use crate::domain::{Domain, FractionDomain};
use crate::error::{Error, Result};

/// The order Z[sqrt(d)] for a squarefree `d < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    d: i64,
}

impl QuadOrder {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::UnsupportedRing(format!(
                "Z[sqrt({d})]: only imaginary quadratic orders (d < 0) are supported"
            )));
        }
        if !is_squarefree(&Int::from(d)) {
            return Err(Error::UnsupportedRing(format!("d = {d} is not squarefree")));
        }
        Ok(QuadOrder { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Z[sqrt(d)] is the full ring of integers iff d is not 1 mod 4.
    pub fn is_maximal(&self) -> bool {
        self.d.rem_euclid(4) != 1
    }

    pub fn elem(&self, x: impl Into<Int>, y: impl Into<Int>) -> QuadElem {
        QuadElem {
            x: x.into(),
            y: y.into(),
            d: self.d,
        }
    }

    pub fn int(&self, x: impl Into<Int>) -> QuadElem {
        self.elem(x, 0)
    }

    pub fn sqrt_d(&self) -> QuadElem {
        self.elem(0, 1)
    }

    pub fn check(&self, a: &QuadElem) -> Result<()> {
        if a.d != self.d {
            return Err(Error::RingMismatch(format!(
                "element of Z[sqrt({})] used in Z[sqrt({})]",
                a.d, self.d
            )));
        }
        Ok(())
    }

    pub fn units(&self) -> Vec<QuadElem> {
        let mut u = vec![self.int(1), self.int(-1)];
        if self.d == -1 {
            u.push(self.elem(0, 1));
            u.push(self.elem(0, -1));
        }
        u
    }
}

/// `x + y*sqrt(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub x: Int,
    pub y: Int,
    pub d: i64,
}

impl QuadElem {
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadElem {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            d: self.d,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadElem {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
            d: self.d,
        }
    }

    pub fn neg(&self) -> Self {
        QuadElem {
            x: -&self.x,
            y: -&self.y,
            d: self.d,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = Int::from(self.d);
        QuadElem {
            x: &self.x * &o.x + d * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
            d: self.d,
        }
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            x: self.x.clone(),
            y: -&self.y,
            d: self.d,
        }
    }

    /// `x^2 - d*y^2`, nonnegative since `d < 0`.
    pub fn norm(&self) -> Int {
        &self.x * &self.x - Int::from(self.d) * &self.y * &self.y
    }

    pub fn scale(&self, k: &Int) -> Self {
        QuadElem {
            x: &self.x * k,
            y: &self.y * k,
            d: self.d,
        }
    }

    /// Coordinates as a lattice vector.
    pub fn coords(&self) -> [Int; 2] {
        [self.x.clone(), self.y.clone()]
    }

    pub fn render(&self) -> String {
        let s = format!("sqrt({})", self.d);
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => self.x.to_string(),
            (true, false) => coeff_sqrt(&self.y, &s),
            (false, false) => {
                let t = coeff_sqrt(&self.y, &s);
                match t.strip_prefix('-') {
                    Some(rest) => format!("{} - {}", self.x, rest),
                    None => format!("{} + {}", self.x, t),
                }
            }
        }
    }
}

fn coeff_sqrt(y: &Int, s: &str) -> String {
    if y.is_one() {
        s.to_string()
    } else if (-y).is_one() {
        format!("-{s}")
    } else {
        format!("{y}*{s}")
    }
}

/// `b | a` in Z[sqrt(d)]: the quotient is `a*conj(b)/N(b)` when integral.
pub fn divides(b: &QuadElem, a: &QuadElem) -> Result<Option<QuadElem>> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = b.norm();
    let p = a.mul(&b.conj());
    let (qx, rx) = p.x.div_rem(&n);
    let (qy, ry) = p.y.div_rem(&n);
    Ok((rx.is_zero() && ry.is_zero()).then_some(QuadElem {
        x: qx,
        y: qy,
        d: a.d,
    }))
}

/// Element of Q(sqrt(d)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadFrac {
    pub x: Rat,
    pub y: Rat,
    pub d: i64,
}

impl QuadFrac {
    pub fn add(&self, o: &Self) -> Self {
        QuadFrac {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            d: self.d,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = Rat::from_integer(Int::from(self.d));
        QuadFrac {
            x: &self.x * &o.x + d * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
            d: self.d,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = Rat::from_integer(Int::from(self.d));
        let n = &self.x * &self.x - d * &self.y * &self.y;
        Ok(QuadFrac {
            x: &self.x / &n,
            y: -&self.y / &n,
            d: self.d,
        })
    }

    pub fn render(&self) -> String {
        let s = format!("sqrt({})", self.d);
        let xs = fmt_rat(&self.x);
        if self.y.is_zero() {
            return xs;
        }
        let ys = if self.y.is_one() {
            s
        } else if (-&self.y).is_one() {
            format!("-{s}")
        } else {
            format!("{}*{s}", fmt_rat(&self.y))
        };
        if self.x.is_zero() {
            ys
        } else {
            match ys.strip_prefix('-') {
                Some(rest) => format!("{xs} - {rest}"),
                None => format!("{xs} + {ys}"),
            }
        }
    }
}

impl Domain for QuadOrder {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        self.int(0)
    }
    fn one(&self) -> QuadElem {
        self.int(1)
    }
    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        a.add(b)
    }
    fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        a.sub(b)
    }
    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        a.mul(b)
    }
    fn divide(&self, a: &QuadElem, b: &QuadElem) -> Option<QuadElem> {
        divides(b, a).ok().flatten()
    }
    fn render(&self, a: &QuadElem) -> String {
        a.render()
    }
    fn describe(&self) -> String {
        format!("Z[sqrt({})]", self.d)
    }
    fn is_unit(&self, a: &QuadElem) -> bool {
        a.norm().is_one()
    }
}

impl FractionDomain for QuadOrder {
    type Frac = QuadFrac;

    fn embed(&self, a: &QuadElem) -> QuadFrac {
        QuadFrac {
            x: Rat::from_integer(a.x.clone()),
            y: Rat::from_integer(a.y.clone()),
            d: a.d,
        }
    }
    fn frac_add(&self, a: &QuadFrac, b: &QuadFrac) -> QuadFrac {
        a.add(b)
    }
    fn frac_mul(&self, a: &QuadFrac, b: &QuadFrac) -> QuadFrac {
        a.mul(b)
    }
    fn retract(&self, a: &QuadFrac) -> Option<QuadElem> {
        (a.x.is_integer() && a.y.is_integer()).then(|| QuadElem {
            x: a.x.to_integer(),
            y: a.y.to_integer(),
            d: a.d,
        })
    }
    fn render_frac(&self, a: &QuadFrac) -> String {
        a.render()
    }
}

/// Sort key for generator tie-breaks: `x^2`, then `y^2`, then negative signs last.
pub(crate) fn generator_key(e: &QuadElem) -> (Int, Int, bool, bool) {
    (
        &e.x * &e.x,
        &e.y * &e.y,
        e.x.is_negative(),
        e.y.is_negative(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_examples() {
        let o = QuadOrder::new(-5).unwrap();
        assert_eq!(divides(&o.int(-3), &o.int(-6)).unwrap(), Some(o.int(2)));
        assert_eq!(
            divides(&o.elem(1, 1), &o.int(6)).unwrap(),
            Some(o.elem(1, -1))
        );
        assert_eq!(divides(&o.elem(1, 1), &o.int(2)).unwrap(), None);
        assert_eq!(divides(&o.int(0), &o.int(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn order_validation() {
        assert!(QuadOrder::new(5).is_err());
        assert!(QuadOrder::new(-4).is_err());
        assert!(QuadOrder::new(-5).unwrap().is_maximal());
        assert!(!QuadOrder::new(-3).unwrap().is_maximal());
    }

    #[test]
    fn rendering() {
        let o = QuadOrder::new(-5).unwrap();
        assert_eq!(o.elem(1, 2).render(), "1 + 2*sqrt(-5)");
        assert_eq!(o.elem(4, -1).render(), "4 - sqrt(-5)");
        assert_eq!(o.elem(0, -3).render(), "-3*sqrt(-5)");
        assert_eq!(o.elem(-7, 0).render(), "-7");
    }
}
