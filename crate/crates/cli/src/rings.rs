//! The `--ring` grammar and evaluation of parsed expressions in each ring.

use num_traits::{One, Signed, Zero};

use princ_core::arith::num::fmt_rat;
use princ_core::arith::{Int, Poly, Rat};
use princ_core::domain::{Domain, Integers, RatPolyRing};
use princ_core::limitring::{LimitElem, LimitRing};
use princ_core::monoidring::{BaseRing, MonoidDesc, MonoidKind, MonoidRing};
use princ_core::polyext::{PolyExtRing, XPoly, YPoly};
use princ_core::pullback::{PbBase, Pullback, YFrac};
use princ_core::quadring::QuadOrder;
use princ_core::sphere::{SphereElem, SphereRing};

use crate::expr::{parse, Expr, Node, Op, ParseError};

/// Largest integer exponent accepted in an expression.
const MAX_EXPONENT: u64 = 4096;

/// A [`Domain`] whose elements can be built from expressions.
pub trait Algebra: Domain {
    fn lift_int(&self, n: &Int) -> Result<Self::Elem, String>;

    fn var(&self, name: &str) -> Result<Self::Elem, String> {
        Err(format!("no variable '{name}' in {}", self.describe()))
    }

    fn sqrt(&self, d: i64) -> Result<Self::Elem, String> {
        Err(format!("sqrt({d}) is not in {}", self.describe()))
    }

    fn quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, String> {
        if self.is_zero(b) {
            return Err("division by zero".into());
        }
        self.divide(a, b).ok_or_else(|| {
            format!("{} is not divisible by {} in {}", self.render(a), self.render(b), self.describe())
        })
    }

    fn power(&self, a: &Self::Elem, e: &Rat) -> Result<Self::Elem, String> {
        int_power(self, a, e)
    }

    /// Final membership test for the value of a whole expression.
    fn admit(&self, a: Self::Elem) -> Result<Self::Elem, String> {
        Ok(a)
    }
}

fn int_power<A: Algebra + ?Sized>(ring: &A, a: &A::Elem, e: &Rat) -> Result<A::Elem, String> {
    if !e.is_integer() {
        return Err(format!("fractional exponent {} in {}", fmt_rat(e), ring.describe()));
    }
    let k = e.to_integer();
    let n: u64 = k
        .abs()
        .try_into()
        .ok()
        .filter(|n| *n <= MAX_EXPONENT)
        .ok_or_else(|| format!("exponent {k} is too large"))?;
    let mut acc = ring.one();
    let mut base = a.clone();
    let mut m = n;
    while m > 0 {
        if m & 1 == 1 {
            acc = ring.mul(&acc, &base);
        }
        base = ring.mul(&base, &base);
        m >>= 1;
    }
    if k.is_negative() {
        ring.quotient(&ring.one(), &acc)
    } else {
        Ok(acc)
    }
}

pub fn eval<A: Algebra>(ring: &A, e: &Expr) -> Result<A::Elem, ParseError> {
    let at = |msg: String| ParseError { pos: e.pos, msg };
    match &e.node {
        Node::Int(n) => ring.lift_int(n).map_err(at),
        Node::Sqrt(d) => ring.sqrt(*d).map_err(at),
        Node::Var(v) => ring.var(v).map_err(at),
        Node::Neg(x) => Ok(ring.neg(&eval(ring, x)?)),
        Node::Bin(op, l, r) => {
            let (l, r) = (eval(ring, l)?, eval(ring, r)?);
            match op {
                Op::Add => Ok(ring.add(&l, &r)),
                Op::Sub => Ok(ring.sub(&l, &r)),
                Op::Mul => Ok(ring.mul(&l, &r)),
                Op::Div => ring.quotient(&l, &r).map_err(at),
            }
        }
        Node::Pow(b, k) => ring.power(&eval(ring, b)?, k).map_err(at),
    }
}

/// Parses and evaluates without the final membership test.
pub fn parse_raw<A: Algebra>(ring: &A, s: &str) -> Result<A::Elem, ParseError> {
    eval(ring, &parse(s)?)
}

pub fn parse_in<A: Algebra>(ring: &A, s: &str) -> Result<A::Elem, ParseError> {
    let v = parse_raw(ring, s)?;
    ring.admit(v).map_err(|msg| ParseError { pos: 0, msg })
}

/// The field Q, for scalar parameters.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Domain for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn divide(&self, a: &Rat, b: &Rat) -> Option<Rat> {
        (!b.is_zero()).then(|| a / b)
    }
    fn render(&self, a: &Rat) -> String {
        fmt_rat(a)
    }
    fn describe(&self) -> String {
        "Q".into()
    }
}

impl Algebra for Rationals {
    fn lift_int(&self, n: &Int) -> Result<Rat, String> {
        Ok(Rat::from_integer(n.clone()))
    }
}

impl Algebra for Integers {
    fn lift_int(&self, n: &Int) -> Result<Int, String> {
        Ok(n.clone())
    }
}

impl Algebra for QuadOrder {
    fn lift_int(&self, n: &Int) -> Result<Self::Elem, String> {
        Ok(self.int(n.clone()))
    }
    fn sqrt(&self, d: i64) -> Result<Self::Elem, String> {
        if d == self.d() {
            Ok(self.sqrt_d())
        } else {
            Err(format!("sqrt({d}) is not in {}", self.describe()))
        }
    }
}

impl Algebra for RatPolyRing {
    fn lift_int(&self, n: &Int) -> Result<Poly<Rat>, String> {
        Ok(Poly::constant(Rat::from_integer(n.clone())))
    }
    fn var(&self, name: &str) -> Result<Poly<Rat>, String> {
        match name {
            "X" => Ok(Poly::var()),
            _ => Err(format!("no variable '{name}' in Q[X]")),
        }
    }
}

impl Algebra for MonoidRing {
    fn lift_int(&self, n: &Int) -> Result<Self::Elem, String> {
        self.monomial(&Rat::from_integer(n.clone()), &Rat::zero()).map_err(|e| e.to_string())
    }
    fn var(&self, name: &str) -> Result<Self::Elem, String> {
        match name {
            "X" => self.x_pow(&Rat::one()).map_err(|e| e.to_string()),
            _ => Err(format!("no variable '{name}' in {}", self.describe())),
        }
    }
    fn power(&self, a: &Self::Elem, e: &Rat) -> Result<Self::Elem, String> {
        // X^s with coefficient 1: rational powers stay monomials
        let mut terms = a.terms().iter();
        if let (Some((s, c)), None) = (terms.next(), terms.next()) {
            if c.is_one() {
                return self.x_pow(&(s * e)).map_err(|e| e.to_string());
            }
        }
        int_power(self, a, e)
    }
}

impl Algebra for Pullback {
    fn lift_int(&self, n: &Int) -> Result<YFrac, String> {
        Ok(YFrac::constant(Rat::from_integer(n.clone()), Rat::zero(), self.d()))
    }
    fn var(&self, name: &str) -> Result<YFrac, String> {
        match name {
            "Y" => Ok(YFrac::y(self.d())),
            _ => Err(format!("no variable '{name}' in {}", self.describe())),
        }
    }
    fn sqrt(&self, d: i64) -> Result<YFrac, String> {
        if d == self.d() && d != 0 {
            Ok(YFrac::constant(Rat::zero(), Rat::one(), d))
        } else {
            Err(format!("sqrt({d}) is not in {}", self.describe()))
        }
    }
    fn quotient(&self, a: &YFrac, b: &YFrac) -> Result<YFrac, String> {
        a.div(b).map_err(|e| e.to_string())
    }
    fn admit(&self, a: YFrac) -> Result<YFrac, String> {
        self.member(&a).map_err(|e| e.to_string())
    }
}

impl Algebra for LimitRing {
    fn lift_int(&self, n: &Int) -> Result<LimitElem, String> {
        Ok(LimitElem::constant(Rat::from_integer(n.clone())))
    }
    fn var(&self, name: &str) -> Result<LimitElem, String> {
        name.strip_prefix("x_")
            .and_then(|k| k.parse::<u32>().ok())
            .filter(|k| *k >= 1)
            .map(|k| LimitElem::var(k).expect("positive level"))
            .ok_or_else(|| format!("no variable '{name}' in {}; use x_1, x_2, ...", self.describe()))
    }
    fn admit(&self, a: LimitElem) -> Result<LimitElem, String> {
        if self.contains(&a) {
            Ok(a)
        } else {
            Err(format!("{} has coefficients outside {}", a.render(), self.base.describe()))
        }
    }
}

impl Algebra for SphereRing {
    fn lift_int(&self, n: &Int) -> Result<SphereElem, String> {
        Ok(SphereElem::constant(Rat::from_integer(n.clone())))
    }
    fn var(&self, name: &str) -> Result<SphereElem, String> {
        match name {
            "X0" => Ok(SphereElem::var(0)),
            "X1" => Ok(SphereElem::var(1)),
            "X2" => Ok(SphereElem::var(2)),
            _ => Err(format!("no variable '{name}' in B2; use X0, X1, X2")),
        }
    }
}

/// Polynomials in `X` over `Q[y]`; membership in `D[X]` is checked on admission.
impl Algebra for PolyExtRing {
    fn lift_int(&self, n: &Int) -> Result<XPoly, String> {
        Ok(XPoly::constant(YPoly::constant(Rat::from_integer(n.clone()))))
    }
    fn var(&self, name: &str) -> Result<XPoly, String> {
        match name {
            "X" => Ok(XPoly::var()),
            "y" => Ok(XPoly::constant(YPoly::var())),
            _ => Err(format!("no variable '{name}'; use X and y")),
        }
    }
    fn quotient(&self, a: &XPoly, b: &XPoly) -> Result<XPoly, String> {
        // division by nonzero rational constants only
        match b.coeffs() {
            [c] if c.degree() == Some(0) => {
                let k = c.constant_term().recip();
                Ok(Poly::from_coeffs(a.coeffs().iter().map(|p| p.scale(&k)).collect()))
            }
            _ => Err("only division by nonzero rational constants is supported".into()),
        }
    }
    fn admit(&self, a: XPoly) -> Result<XPoly, String> {
        if self.sub.contains_x(&a) {
            Ok(a)
        } else {
            Err(format!("{} is not in {}", self.render(&a), self.describe()))
        }
    }
}

/// A ring selected on the command line.
#[derive(Clone, Debug)]
pub enum RingSpec {
    Z(Integers),
    Quad(QuadOrder),
    Qx(RatPolyRing),
    Monoid(MonoidRing),
    Pullback(Pullback),
    Limit(LimitRing),
    Sphere(SphereRing),
}

fn parse_sqrt_order(s: &str) -> Option<Result<QuadOrder, String>> {
    let d = s.strip_prefix("Z[sqrt(")?.strip_suffix(")]")?;
    Some(
        d.parse::<i64>()
            .map_err(|_| format!("bad radicand '{d}'"))
            .and_then(|d| QuadOrder::new(d).map_err(|e| e.to_string())),
    )
}

fn parse_prime(s: &str) -> Result<Int, String> {
    s.trim().parse::<Int>().map_err(|_| format!("'{s}' is not an integer"))
}

fn parse_base(s: &str) -> Result<BaseRing, String> {
    match s {
        "Z" => Ok(BaseRing::Integers),
        "Q" => Ok(BaseRing::Rationals),
        _ => {
            if let Some(p) = s.strip_prefix("F_").or_else(|| s.strip_prefix('F')) {
                return parse_prime(p).map(BaseRing::PrimeField);
            }
            let inner = s
                .strip_prefix("Z[")
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| format!("unknown coefficient ring '{s}'"))?;
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .strip_prefix("1/")
                        .ok_or_else(|| format!("expected 1/p in '{s}'"))
                        .and_then(parse_prime)
                })
                .collect::<Result<Vec<_>, _>>()
                .map(BaseRing::Localized)
        }
    }
}

pub fn parse_monoid(s: &str, group: bool) -> Result<MonoidDesc, String> {
    let kind = if let Some(p) = s.strip_prefix("p-div:") {
        MonoidKind::PDivisible(parse_prime(p)?)
    } else if let Some(ps) = s.strip_prefix("mult:") {
        let inner = ps
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| format!("expected mult:{{p,q,...}}, got '{s}'"))?;
        MonoidKind::Multiplicative(inner.split(',').map(parse_prime).collect::<Result<_, _>>()?)
    } else {
        return Err(format!("unknown monoid '{s}'; use p-div:P or mult:{{P,Q,...}}"));
    };
    MonoidDesc::new(kind, group).map_err(|e| e.to_string())
}

/// The `p-div:P` / `mult:{..}` part of a monoid description.
pub fn monoid_kind(m: &MonoidDesc) -> String {
    match &m.kind {
        MonoidKind::PDivisible(p) => format!("p-div:{p}"),
        MonoidKind::Multiplicative(ps) => {
            let s: Vec<String> = ps.iter().map(Int::to_string).collect();
            format!("mult:{{{}}}", s.join(","))
        }
    }
}

impl RingSpec {
    pub fn parse(ring: &str, monoid: Option<&str>, group: bool) -> Result<Self, String> {
        let s: String = ring.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(base) = s.strip_suffix("[X;S]") {
            let m = monoid.ok_or("a monoid ring needs --monoid p-div:P or --monoid mult:{P,...}")?;
            let ring = MonoidRing::new(parse_base(base)?, parse_monoid(m, group)?).map_err(|e| e.to_string())?;
            return Ok(RingSpec::Monoid(ring));
        }
        if monoid.is_some() || group {
            return Err(format!("--monoid and --group apply only to D[X;S], not {ring}"));
        }
        if let Some(o) = parse_sqrt_order(&s) {
            return o.map(RingSpec::Quad);
        }
        match s.as_str() {
            "Z" => Ok(RingSpec::Z(Integers)),
            "Q" | "Q[X]" => Ok(RingSpec::Qx(RatPolyRing)),
            "B2" => Ok(RingSpec::Sphere(SphereRing)),
            "pullback:Z" => Ok(RingSpec::Pullback(Pullback::over_integers())),
            "limitring:Q" => Ok(RingSpec::Limit(LimitRing::rationals())),
            "limitring:Z" => Ok(RingSpec::Limit(LimitRing::integers())),
            _ => {
                if let Some(o) = s.strip_prefix("pullback:").and_then(parse_sqrt_order) {
                    return o.map(|o| RingSpec::Pullback(Pullback::new(PbBase::Quad(o))));
                }
                Err(format!(
                    "unknown ring '{ring}'; expected Z, Z[sqrt(d)], Q, D[X;S], pullback:Z, limitring:Q or B2"
                ))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RingSpec::Z(r) => r.describe(),
            RingSpec::Quad(r) => r.describe(),
            RingSpec::Qx(r) => r.describe(),
            RingSpec::Monoid(r) => r.describe(),
            RingSpec::Pullback(r) => r.describe(),
            RingSpec::Limit(r) => r.describe(),
            RingSpec::Sphere(r) => r.describe(),
        }
    }

    pub fn monoid(&self) -> Option<&MonoidDesc> {
        match self {
            RingSpec::Monoid(r) => Some(&r.monoid),
            _ => None,
        }
    }
}

/// Runs `$body` with `$r` bound to the concrete ring of a [`RingSpec`].
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, |$r:ident| $body:expr) => {
        match $spec {
            $crate::rings::RingSpec::Z($r) => $body,
            $crate::rings::RingSpec::Quad($r) => $body,
            $crate::rings::RingSpec::Qx($r) => $body,
            $crate::rings::RingSpec::Monoid($r) => $body,
            $crate::rings::RingSpec::Pullback($r) => $body,
            $crate::rings::RingSpec::Limit($r) => $body,
            $crate::rings::RingSpec::Sphere($r) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use princ_core::quadring::QuadElem;

    #[test]
    fn quadratic_elements() {
        let o = QuadOrder::new(-5).unwrap();
        assert_eq!(parse_in(&o, "1+2*sqrt(-5)").unwrap(), QuadElem { x: 1.into(), y: 2.into(), d: -5 });
        assert!(parse_in(&o, "sqrt(-3)").is_err());
        assert!(parse_in(&o, "1/2").unwrap_err().msg.contains("not divisible"));
    }

    #[test]
    fn monoid_exponents() {
        let r = match RingSpec::parse("Q[X;S]", Some("p-div:2"), false).unwrap() {
            RingSpec::Monoid(r) => r,
            _ => unreachable!(),
        };
        assert_eq!(r.render(&parse_in(&r, "1-X^(1/2)").unwrap()), "1 - X^(1/2)");
        let e = parse_in(&r, "1-X^(1/3)").unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(e.msg.contains("not in S"), "{}", e.msg);
        assert!(parse_in(&r, "X^(-1)").is_err());
        let g = match RingSpec::parse("Q[X;S]", Some("mult:{2,3}"), true).unwrap() {
            RingSpec::Monoid(r) => r,
            _ => unreachable!(),
        };
        assert_eq!(g.render(&parse_in(&g, "X^(-1/6)*X^(1/6)").unwrap()), "1");
    }

    #[test]
    fn pullback_membership() {
        let r = Pullback::over_integers();
        assert!(parse_in(&r, "(1 + Y)/(1 - 2*Y)").is_ok());
        assert!(parse_in(&r, "Y/2").is_ok());
        assert!(parse_in(&r, "1/2 + Y").unwrap_err().msg.contains("outside"));
        assert!(parse_in(&r, "1/Y").unwrap_err().msg.contains("pole"));
    }

    #[test]
    fn ring_grammar() {
        for (s, d) in [
            ("Z", "Z"),
            ("Z[sqrt(-5)]", "Z[sqrt(-5)]"),
            ("Q", "Q[X]"),
            ("pullback:Z", "pullback:Z"),
            ("pullback:Z[sqrt(-5)]", "pullback:Z[sqrt(-5)]"),
            ("limitring:Q", "limitring:Q"),
            ("B2", "B2"),
        ] {
            assert_eq!(RingSpec::parse(s, None, false).unwrap().describe(), d);
        }
        assert!(RingSpec::parse("Q[X;S]", None, false).is_err());
        assert!(RingSpec::parse("Z", Some("p-div:2"), false).is_err());
        assert!(RingSpec::parse("Z[X;S]", Some("p-div:4"), false).is_err());
        let f = RingSpec::parse("F3[X;S]", Some("p-div:2"), false).unwrap();
        assert_eq!(f.describe(), "F3[X;S]");
        let l = RingSpec::parse("Z[1/2,1/3][X;S]", Some("mult:{2,3}"), false).unwrap();
        assert_eq!(l.describe(), "Z[1/2,1/3][X;S]");
    }

    #[test]
    fn limit_and_sphere_variables() {
        let l = LimitRing::rationals();
        assert_eq!(parse_in(&l, "x_2 + x_2^2").unwrap(), LimitElem::var(1).unwrap());
        assert!(parse_in(&l, "x_0").is_err());
        let s = SphereRing;
        assert_eq!(s.render(&parse_in(&s, "X0^2").unwrap()), "1 - X1^2 - X2^2");
    }
}
