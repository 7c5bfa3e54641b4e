//! The ascending union `R = D[x_1] ⊂ D[x_2] ⊂ ...` with
//! `x_i = x_{i+1}(1 + x_{i+1})`.
//!
//! Each level is a polynomial ring in one variable, so an element is a pair
//! (level, polynomial). Lifting to a higher level substitutes `x + x^2`;
//! arithmetic and equality happen at the larger of the two levels.

use std::fmt;

use crate::arith::{ExprFmt, Int, Poly, Rat};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::monoidring::BaseRing;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone)]
pub struct LimitElem {
    level: u32,
    poly: Poly<Rat>,
}

impl LimitElem {
    pub fn new(level: u32, poly: Poly<Rat>) -> Result<Self> {
        if level == 0 {
            return Err(Error::Precondition("levels start at 1".into()));
        }
        Ok(LimitElem { level, poly })
    }

    pub fn constant(c: Rat) -> Self {
        LimitElem {
            level: 1,
            poly: Poly::constant(c),
        }
    }

    /// `x_n`.
    pub fn var(n: u32) -> Result<Self> {
        Self::new(n, Poly::var())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn poly(&self) -> &Poly<Rat> {
        &self.poly
    }

    pub fn render(&self) -> String {
        self.poly.expr(&[&format!("x_{}", self.level)])
    }
}

/// `P/den` with `P` integral.
fn clear_denominators(p: &Poly<Rat>) -> (Vec<Int>, Int) {
    let den = p.coeffs().iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p.coeffs().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    (ints, den)
}

fn restore(ints: Vec<Int>, den: &Int) -> Poly<Rat> {
    Poly::from_coeffs(ints.into_iter().map(|c| Rat::new(c, den.clone())).collect())
}

/// Substitutes `x -> x + x^2` `times` times, by Horner's rule with shifts.
fn lift_poly(p: &Poly<Rat>, times: u32) -> Poly<Rat> {
    if times == 0 || p.is_constant() {
        return p.clone();
    }
    let (mut cur, den) = clear_denominators(p);
    for _ in 0..times {
        let mut acc: Vec<Int> = Vec::new();
        for c in cur.iter().rev() {
            let mut next = vec![Int::zero(); acc.len() + 2];
            for (k, a) in acc.iter().enumerate() {
                next[k + 1] += a;
                next[k + 2] += a;
            }
            next[0] += c;
            acc = next;
        }
        while acc.last().is_some_and(Zero::is_zero) {
            acc.pop();
        }
        cur = acc;
    }
    restore(cur, &den)
}

fn mul_poly(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let ((pa, da), (pb, db)) = (clear_denominators(a), clear_denominators(b));
    let mut out = vec![Int::zero(); pa.len() + pb.len() - 1];
    for (i, x) in pa.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in pb.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    restore(out, &(da * db))
}

/// Rewrite `e` over `x_m`, `m >= level(e)`.
pub fn lr_lift(e: &LimitElem, m: u32) -> Result<LimitElem> {
    if m < e.level {
        return Err(Error::Precondition(format!(
            "cannot lower level {} to {m}",
            e.level
        )));
    }
    Ok(LimitElem {
        level: m,
        poly: lift_poly(&e.poly, m - e.level),
    })
}

fn common(a: &LimitElem, b: &LimitElem) -> (Poly<Rat>, Poly<Rat>, u32) {
    let m = a.level.max(b.level);
    let lift = |e: &LimitElem| lr_lift(e, m).expect("m is the max level").poly;
    (lift(a), lift(b), m)
}

impl PartialEq for LimitElem {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = common(self, other);
        a == b
    }
}

impl fmt::Debug for LimitElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LimitElem({})", self.render())
    }
}

/// `R` over a coefficient ring of characteristic zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitRing {
    pub base: BaseRing,
}

impl LimitRing {
    pub fn new(base: BaseRing) -> Result<Self> {
        if matches!(base, BaseRing::PrimeField(_)) {
            return Err(Error::UnsupportedRing("limit rings are built over Z, Q or Z[1/p]".into()));
        }
        Ok(LimitRing { base })
    }

    pub fn rationals() -> Self {
        LimitRing {
            base: BaseRing::Rationals,
        }
    }

    pub fn integers() -> Self {
        LimitRing {
            base: BaseRing::Integers,
        }
    }

    pub fn contains(&self, e: &LimitElem) -> bool {
        e.poly.coeffs().iter().all(|c| self.base.coeff(c).is_some())
    }

    pub fn elem(&self, level: u32, coeffs: Vec<Rat>) -> Result<LimitElem> {
        let e = LimitElem::new(level, Poly::from_coeffs(coeffs))?;
        if !self.contains(&e) {
            return Err(Error::NotInRing(format!(
                "{} has coefficients outside {}",
                e.render(),
                self.base.describe()
            )));
        }
        Ok(e)
    }

    pub fn constant(&self, c: i64) -> LimitElem {
        LimitElem::constant(Rat::from_integer(c.into()))
    }

    /// `1 + x_n`.
    pub fn one_plus(&self, n: u32) -> LimitElem {
        LimitElem {
            level: n,
            poly: Poly::from_coeffs(vec![Rat::one(), Rat::one()]),
        }
    }

    fn combine(&self, a: &LimitElem, b: &LimitElem, f: impl Fn(&Poly<Rat>, &Poly<Rat>) -> Poly<Rat>) -> LimitElem {
        let (pa, pb, level) = common(a, b);
        LimitElem { level, poly: f(&pa, &pb) }
    }
}

impl Domain for LimitRing {
    type Elem = LimitElem;

    fn zero(&self) -> LimitElem {
        self.constant(0)
    }
    fn one(&self) -> LimitElem {
        self.constant(1)
    }
    fn add(&self, a: &LimitElem, b: &LimitElem) -> LimitElem {
        self.combine(a, b, |x, y| x + y)
    }
    fn sub(&self, a: &LimitElem, b: &LimitElem) -> LimitElem {
        self.combine(a, b, |x, y| x - y)
    }
    fn mul(&self, a: &LimitElem, b: &LimitElem) -> LimitElem {
        self.combine(a, b, mul_poly)
    }
    fn divide(&self, a: &LimitElem, b: &LimitElem) -> Option<LimitElem> {
        // D[x_m] is integral over D[x_n] and integrally closed, so an exact
        // quotient exists in R iff it exists at the common level.
        let (pa, pb, level) = common(a, b);
        let (q, r) = pa.divrem(&pb).ok()?;
        let q = LimitElem { level, poly: q };
        (r.is_zero() && self.contains(&q)).then_some(q)
    }
    fn render(&self, a: &LimitElem) -> String {
        a.render()
    }
    fn describe(&self) -> String {
        format!("limitring:{}", self.base.describe())
    }
}

/// `lambda*f_i + mu*f_j = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitBezout {
    pub i: usize,
    pub j: usize,
    pub lambda: LimitElem,
    pub mu: LimitElem,
}

/// `x_1 = x_m (1 + x_2) ... (1 + x_m)` with pairwise comaximality certificates.
#[derive(Clone, Debug)]
pub struct LimitChain {
    pub m: u32,
    /// `x_m`, then `1 + x_i` for `i = 2..=m`.
    pub factors: Vec<LimitElem>,
    pub certificates: Vec<LimitBezout>,
}

impl LimitChain {
    pub fn verify(&self, ring: &LimitRing) -> Result<bool> {
        let prod = self.factors.iter().fold(ring.one(), |acc, f| ring.mul(&acc, f));
        let x1 = lr_lift(&LimitElem::var(1)?, self.m)?;
        let n = self.factors.len();
        let complete = self.certificates.len() == n * (n - 1) / 2;
        let certs_ok = self.certificates.iter().all(|c| {
            let s = ring.add(&ring.mul(&c.lambda, &self.factors[c.i]), &ring.mul(&c.mu, &self.factors[c.j]));
            lr_lift(&s, self.m).is_ok_and(|s| s.poly.is_one())
        });
        Ok(lr_lift(&prod, self.m)?.poly == x1.poly && complete && certs_ok && self.factors.iter().all(|f| ring.contains(f)))
    }
}

pub fn lr_chain(ring: &LimitRing, m: u32) -> Result<LimitChain> {
    if m < 2 {
        return Err(Error::Precondition("chain needs m >= 2".into()));
    }
    let xm = LimitElem::var(m)?;
    let mut factors = vec![xm.clone()];
    factors.extend((2..=m).map(|i| ring.one_plus(i)));
    let prod_range = |lo: u32, hi: u32| (lo..=hi).fold(ring.one(), |acc, k| ring.mul(&acc, &ring.one_plus(k)));
    let minus_one = ring.constant(-1);
    let mut certificates = Vec::new();
    for i in 2..=m {
        // 1 = (1 + x_i) - x_m prod_{j=i+1}^{m} (1 + x_j)
        certificates.push(LimitBezout {
            i: 0,
            j: (i - 1) as usize,
            lambda: ring.mul(&minus_one, &prod_range(i + 1, m)),
            mu: ring.one(),
        });
    }
    for i in 2..=m {
        for j in i + 1..=m {
            // 1 = (1 + x_i) - x_j prod_{k=i+1}^{j-1} (1 + x_k) (1 + x_j)
            let w = ring.mul(&LimitElem::var(j)?, &prod_range(i + 1, j - 1));
            certificates.push(LimitBezout {
                i: (i - 1) as usize,
                j: (j - 1) as usize,
                lambda: ring.one(),
                mu: ring.mul(&minus_one, &w),
            });
        }
    }
    let chain = LimitChain { m, factors, certificates };
    if !chain.verify(ring)? {
        return Err(Error::CertificateFailed("limit chain fails".into()));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn lifting() {
        let r = LimitRing::rationals();
        let x1 = LimitElem::var(1).unwrap();
        assert_eq!(lr_lift(&x1, 2).unwrap().render(), "x_2 + x_2^2");
        assert_eq!(lr_lift(&r.constant(5), 7).unwrap().render(), "5");
        let x13 = lr_lift(&x1, 3).unwrap();
        assert_eq!(x13.poly().degree(), Some(4));
        assert_eq!(x13.render(), "x_3 + 2*x_3^2 + 2*x_3^3 + x_3^4");
        assert!(lr_lift(&LimitElem::var(3).unwrap(), 2).is_err());
    }

    #[test]
    fn arithmetic() {
        let r = LimitRing::rationals();
        let x1 = LimitElem::var(1).unwrap();
        let x2 = LimitElem::var(2).unwrap();
        assert!(r.is_zero(&r.sub(&x1, &r.mul(&x2, &r.one_plus(2)))));
        assert_eq!(r.mul(&x1, &r.one()), x1);
        let d = r.mul(&r.one_plus(2), &r.sub(&r.one(), &x2));
        assert_eq!(d.render(), "1 - x_2^2");
        assert_eq!(r.divide(&x1, &r.one_plus(2)), Some(x2.clone()));
        assert!(r.divide(&r.one(), &x2).is_none());
    }

    #[test]
    fn chains() {
        for ring in [LimitRing::rationals(), LimitRing::integers()] {
            let c = lr_chain(&ring, 2).unwrap();
            assert_eq!(c.certificates.len(), 1);
            assert_eq!(c.certificates[0].lambda.render(), "-1");
            let c = lr_chain(&ring, 3).unwrap();
            let f: Vec<String> = c.factors.iter().map(LimitElem::render).collect();
            assert_eq!(f, ["x_3", "1 + x_2", "1 + x_3"]);
            let c = lr_chain(&ring, 8).unwrap();
            assert_eq!(c.factors.len(), 8);
            assert_eq!(c.certificates.len(), 28);
        }
        assert!(lr_chain(&LimitRing::rationals(), 1).is_err());
    }

    #[test]
    fn integer_membership() {
        let z = LimitRing::integers();
        assert!(z.elem(2, vec![rat(1, 2)]).is_err());
        assert!(z.divide(&z.constant(1), &z.constant(2)).is_none());
        assert!(LimitRing::rationals().divide(&z.constant(1), &z.constant(2)).is_some());
    }
}
