//! Dense univariate polynomials over an arbitrary coefficient ring.
//!
//! Coefficients are stored in ascending degree order; the zero polynomial
//! has an empty coefficient vector and every other polynomial has a nonzero
//! last coefficient. Nesting (`Poly<Poly<Rat>>`) gives the bivariate rings
//! used by the sphere and polynomial-extension modules.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::num::{fmt_rat, Int, Rat};
use crate::error::{Error, Result};

/// Coefficient ring: a commutative ring with exact arithmetic.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Coefficient field.
pub trait Field: Coeff {
    fn inv(&self) -> Self;
}

impl Field for Rat {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Exact division in an integral domain: `Some(q)` with `self = d*q`.
pub trait ExactDiv: Coeff {
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

impl ExactDiv for Rat {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }
}

impl ExactDiv for Int {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, d);
        r.is_zero().then_some(q)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> Poly<R> {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        Poly { coeffs }.normalize()
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate.
    pub fn var() -> Self {
        Self::from_coeffs(vec![R::zero(), R::one()])
    }

    pub fn monomial(c: R, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> R {
        self.coeff(0)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `self(q)`.
    pub fn compose(&self, q: &Poly<R>) -> Poly<R> {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Substitutes `var -> var^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division: `self = q*g + r`, `deg r < deg g`.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self)> {
        let glead_inv = g.lead().ok_or(Error::DivisionByZero)?.inv();
        let gdeg = g.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= gdeg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); r.len() - gdeg];
        for i in (0..q.len()).rev() {
            let c = r[i + gdeg].clone() * glead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * gc.clone();
            }
            q[i] = c;
        }
        r.truncate(gdeg);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Extended Euclid: `(d, s, t)` with `s*self + t*g = d`, `d` monic (or zero).
    pub fn extended_gcd(&self, g: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    pub fn gcd(&self, g: &Self) -> Self {
        self.extended_gcd(g).0
    }
}

impl Poly<Rat> {
    /// Integer coefficients and the denominator cleared to get them.
    fn to_primitive_int(&self) -> Vec<Int> {
        let den = self.coeffs.iter().fold(Int::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
        let v: Vec<Int> = self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        primitive_part(v)
    }

    /// Monic gcd by the primitive remainder sequence over `Z`, which keeps
    /// coefficient growth in check where Euclid over `Q` does not.
    pub fn primitive_gcd(&self, g: &Self) -> Self {
        if self.is_zero() {
            return g.monic();
        }
        if g.is_zero() {
            return self.monic();
        }
        let (mut a, mut b) = (self.to_primitive_int(), g.to_primitive_int());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive_part(pseudo_rem(&a, &b));
            a = std::mem::replace(&mut b, r);
        }
        Poly::from_coeffs(a.into_iter().map(Rat::from_integer).collect()).monic()
    }
}

fn primitive_part(mut v: Vec<Int>) -> Vec<Int> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(Int::zero(), |g, c| num_integer::Integer::gcd(&g, c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

/// `lc(b)^k * a mod b` over `Z`, `b` nonzero with trimmed leading coefficient.
fn pseudo_rem(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor");
    let db = b.len() - 1;
    while r.len() > db {
        let lr = r.pop().expect("nonempty");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b[..db].iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl<R: ExactDiv> ExactDiv for Poly<R> {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        let dlead = d.lead()?;
        let ddeg = d.coeffs.len() - 1;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut r = self.coeffs.clone();
        if r.len() <= ddeg {
            return None;
        }
        let mut q = vec![R::zero(); r.len() - ddeg];
        for i in (0..q.len()).rev() {
            if r[i + ddeg].is_zero() {
                continue;
            }
            let c = r[i + ddeg].exact_div(dlead)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * dc.clone();
            }
            q[i] = c;
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::from_coeffs(q))
    }
}

impl<'a, R: Coeff> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a, R: Coeff> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a, R: Coeff> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<R: Coeff> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<R: Coeff> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<R: Coeff> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<R: Coeff> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<R: Coeff> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Self {
        -&self
    }
}

impl<R: Coeff> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Coeff> One for Poly<R> {
    fn one() -> Self {
        Poly {
            coeffs: vec![R::one()],
        }
    }
}

/// Rendering in the expression grammar. `vars[0]` names the outermost
/// variable; nested coefficient rings consume the remaining names.
pub trait ExprFmt {
    fn expr(&self, vars: &[&str]) -> String;
}

impl ExprFmt for Rat {
    fn expr(&self, _: &[&str]) -> String {
        fmt_rat(self)
    }
}

impl ExprFmt for Int {
    fn expr(&self, _: &[&str]) -> String {
        self.to_string()
    }
}

/// True if `s` is a single signed factor (no top-level `+`/`-` after the first char).
fn is_atomic(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return false,
            _ => {}
        }
    }
    true
}

/// Joins rendered terms with ` + ` / ` - `.
pub fn join_terms(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    out
}

/// `c*m` for a rendered coefficient and a monomial (`m` empty for degree 0).
pub fn term(c: &str, m: &str) -> String {
    if m.is_empty() {
        return c.to_string();
    }
    match c {
        "1" => m.to_string(),
        "-1" => format!("-{m}"),
        _ if is_atomic(c) => format!("{c}*{m}"),
        _ => format!("({c})*{m}"),
    }
}

pub fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl<R: Coeff + ExprFmt> ExprFmt for Poly<R> {
    fn expr(&self, vars: &[&str]) -> String {
        let (v, rest) = vars.split_first().expect("variable name");
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| term(&c.expr(rest), &power(v, k)))
            .collect();
        join_terms(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::num::rat;

    fn qp(cs: &[(i64, i64)]) -> Poly<Rat> {
        Poly::from_coeffs(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn zp(cs: &[i64]) -> Poly<Rat> {
        Poly::from_coeffs(cs.iter().map(|&n| rat(n, 1)).collect())
    }

    #[test]
    fn divrem_division_identity() {
        // 1 + Z + Z^2 = (1 - Z)(-Z - 2) + 3
        let (q, r) = zp(&[1, 1, 1]).divrem(&zp(&[1, -1])).unwrap();
        assert_eq!(q, zp(&[-2, -1]));
        assert_eq!(r, zp(&[3]));
        let (q, r) = zp(&[1, 1]).divrem(&zp(&[1, -1])).unwrap();
        assert_eq!(q, zp(&[-1]));
        assert_eq!(r, zp(&[2]));
        let f = zp(&[4, 0, 7]);
        assert_eq!(f.divrem(&f).unwrap(), (Poly::one(), Poly::zero()));
    }

    #[test]
    fn primitive_gcd_matches_euclid() {
        let q = |c: &[(i64, i64)]| Poly::from_coeffs(c.iter().map(|&(n, d)| Rat::new(n.into(), d.into())).collect());
        let f = q(&[(1, 2), (-3, 1), (2, 3)]);
        let g = q(&[(5, 1), (0, 1), (1, 7)]);
        let h = q(&[(-1, 3), (1, 1)]);
        let (a, b) = (&(&f * &h) * &h, &g * &h);
        assert_eq!(a.primitive_gcd(&b), a.gcd(&b));
        assert_eq!(a.primitive_gcd(&b), h.monic());
        assert_eq!(f.primitive_gcd(&g), Poly::one());
        assert_eq!(Poly::zero().primitive_gcd(&f), f.monic());
    }

    #[test]
    fn divrem_by_zero_fails() {
        assert_eq!(zp(&[1]).divrem(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn extended_gcd_examples() {
        let (d, s, t) = zp(&[1, -1]).extended_gcd(&zp(&[1, 1]));
        assert_eq!((d, s, t), (zp(&[1]), qp(&[(1, 2)]), qp(&[(1, 2)])));

        let (d, s, t) = zp(&[0, 0, 1]).extended_gcd(&zp(&[0, 0, 0, 1]));
        assert_eq!((d, s, t), (zp(&[0, 0, 1]), zp(&[1]), Poly::zero()));

        let (d, s, t) = Poly::zero().extended_gcd(&zp(&[0, 3]));
        assert_eq!((d, s, t), (zp(&[0, 1]), Poly::zero(), qp(&[(1, 3)])));

        let (d, _, _) = Poly::<Rat>::zero().extended_gcd(&Poly::zero());
        assert!(d.is_zero());
    }

    #[test]
    fn compose_and_inflate() {
        // x -> x + x^2 applied to x gives x + x^2
        let step = zp(&[0, 1, 1]);
        assert_eq!(Poly::<Rat>::var().compose(&step), step);
        assert_eq!(step.compose(&step), zp(&[0, 1, 2, 2, 1]));
        assert_eq!(zp(&[1, 2]).inflate(3), zp(&[1, 0, 0, 2]));
    }

    #[test]
    fn exact_division_nested() {
        let a: Poly<Poly<Rat>> = Poly::from_coeffs(vec![zp(&[0, 1]), zp(&[1])]); // y + X
        let b: Poly<Poly<Rat>> = Poly::from_coeffs(vec![zp(&[0, -1]), zp(&[1])]); // -y + X
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!((&p + &Poly::one()).exact_div(&a), None);
    }

    #[test]
    fn rendering() {
        assert_eq!(zp(&[1, -1]).expr(&["Z"]), "1 - Z");
        assert_eq!(qp(&[(0, 1), (-3, 2), (1, 1)]).expr(&["X"]), "-3/2*X + X^2");
        let nested: Poly<Poly<Rat>> = Poly::from_coeffs(vec![zp(&[1]), zp(&[1, 1])]);
        assert_eq!(nested.expr(&["X", "y"]), "1 + (1 + y)*X");
        assert_eq!(Poly::<Rat>::zero().expr(&["X"]), "0");
    }
}
