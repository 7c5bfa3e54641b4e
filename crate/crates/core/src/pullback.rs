//! The pullback `R = D + M` inside the discrete valuation ring
//! `V = Q[Y]` localized at `(Y)`, where `Q` is the fraction field of `D`
//! (`D = Z` or an imaginary quadratic order) and `M = Y*V`.
//!
//! An element of `R` is a rational function in `Y` over `Q` without a pole
//! at `0` whose value at `0` lies in `D`.

use num_traits::{One, Zero};

use crate::arith::{ExprFmt, Int, Poly, Rat};
use crate::domain::{Domain, Integers};
use crate::error::{Error, Result};
use crate::idem::{verify_pair, IdemPair, Orientation};
use crate::quadring::{ideal_from_pair, PrincipalityVerdict, QuadElem, QuadOrder};

/// Element `(re + im*sqrt(d))/den` of `Q(Y)`, where `Q = Q` (`d = 0`, `im = 0`)
/// or `Q(sqrt(d))`.
///
/// Canonical: `gcd(re, im, den) = 1`; `den(0) = 1` when `den(0) != 0`,
/// otherwise `den` is monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YFrac {
    re: Poly<Rat>,
    im: Poly<Rat>,
    den: Poly<Rat>,
    d: i64,
}

fn rat_d(d: i64) -> Rat {
    Rat::from_integer(Int::from(d))
}

impl YFrac {
    pub fn new(re: Poly<Rat>, im: Poly<Rat>, den: Poly<Rat>, d: i64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d == 0 && !im.is_zero() {
            return Err(Error::RingMismatch("sqrt term over a rational base".into()));
        }
        Ok(Self::normalized(re, im, den, d))
    }

    fn normalized(re: Poly<Rat>, im: Poly<Rat>, den: Poly<Rat>, d: i64) -> Self {
        if re.is_zero() && im.is_zero() {
            return YFrac {
                re,
                im,
                den: Poly::one(),
                d,
            };
        }
        let g = re.primitive_gcd(&im).primitive_gcd(&den);
        let div = |p: &Poly<Rat>| p.divrem(&g).expect("nonzero gcd").0;
        let (re, im, den) = (div(&re), div(&im), div(&den));
        let c = den.constant_term();
        let c = if c.is_zero() {
            den.lead().expect("nonzero").clone()
        } else {
            c
        };
        let ci = c.recip();
        YFrac {
            re: re.scale(&ci),
            im: im.scale(&ci),
            den: den.scale(&ci),
            d,
        }
    }

    pub fn from_poly(p: Poly<Rat>, d: i64) -> Self {
        Self::normalized(p, Poly::zero(), Poly::one(), d)
    }

    pub fn constant(x: Rat, y: Rat, d: i64) -> Self {
        Self::normalized(Poly::constant(x), Poly::constant(y), Poly::one(), d)
    }

    pub fn y(d: i64) -> Self {
        Self::from_poly(Poly::var(), d)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn parts(&self) -> (&Poly<Rat>, &Poly<Rat>, &Poly<Rat>) {
        (&self.re, &self.im, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::normalized(
            &self.re * &o.den + &o.re * &self.den,
            &self.im * &o.den + &o.im * &self.den,
            &self.den * &o.den,
            self.d,
        )
    }

    pub fn neg(&self) -> Self {
        YFrac {
            re: -&self.re,
            im: -&self.im,
            den: self.den.clone(),
            d: self.d,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let dd = Poly::constant(rat_d(self.d));
        Self::normalized(
            &self.re * &o.re + &(&dd * &self.im) * &o.im,
            &self.re * &o.im + &self.im * &o.re,
            &self.den * &o.den,
            self.d,
        )
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = Poly::constant(rat_d(self.d));
        let norm = &self.re * &self.re - &(&dd * &self.im) * &self.im;
        Ok(Self::normalized(&self.re * &self.den, -(&self.im * &self.den), norm, self.d))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// No pole at `Y = 0`.
    pub fn in_valuation_ring(&self) -> bool {
        !self.den.constant_term().is_zero()
    }

    /// Value at `Y = 0` as `(x, y)` meaning `x + y*sqrt(d)`.
    pub fn value_at_zero(&self) -> Result<(Rat, Rat)> {
        if !self.in_valuation_ring() {
            return Err(Error::PoleAtZero(self.render()));
        }
        let c = self.den.constant_term();
        Ok((self.re.constant_term() / &c, self.im.constant_term() / &c))
    }

    pub fn render(&self) -> String {
        let re = self.re.expr(&["Y"]);
        let num = if self.im.is_zero() {
            re
        } else {
            let s = format!("sqrt({})", self.d);
            let im = self.im.expr(&["Y"]);
            let t = crate::arith::poly::term(&im, &s);
            if self.re.is_zero() {
                t
            } else {
                crate::arith::poly::join_terms(&[re, t])
            }
        };
        if self.den.is_one() {
            num
        } else {
            format!("({num})/({})", self.den.expr(&["Y"]))
        }
    }
}

/// The base ring `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbBase {
    Integers,
    Quad(QuadOrder),
}

impl PbBase {
    pub fn d(&self) -> i64 {
        match self {
            PbBase::Integers => 0,
            PbBase::Quad(o) => o.d(),
        }
    }

    fn elem(&self, v: &(Rat, Rat)) -> Option<QuadElem> {
        (v.0.is_integer() && v.1.is_integer()).then(|| QuadElem {
            x: v.0.to_integer(),
            y: v.1.to_integer(),
            d: self.d(),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            PbBase::Integers => "Z".into(),
            PbBase::Quad(o) => format!("Z[sqrt({})]", o.d()),
        }
    }

    fn is_unit(&self, v: &QuadElem) -> bool {
        match self {
            PbBase::Integers => Integers.is_unit(&v.x),
            PbBase::Quad(o) => o.is_unit(v),
        }
    }
}

/// The ring `D + Y*Q[Y]_(Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pullback {
    base: PbBase,
}

impl Pullback {
    pub fn new(base: PbBase) -> Self {
        Pullback { base }
    }

    pub fn over_integers() -> Self {
        Pullback::new(PbBase::Integers)
    }

    pub fn base(&self) -> PbBase {
        self.base
    }

    pub fn d(&self) -> i64 {
        self.base.d()
    }

    /// The value at `0` as an element of `D`, if the element lies in `R`.
    pub fn residue(&self, f: &YFrac) -> Result<QuadElem> {
        let v = f.value_at_zero()?;
        self.base.elem(&v).ok_or_else(|| {
            Error::NotInRing(format!(
                "{} has value {} at 0, outside {}",
                f.render(),
                crate::quadring::QuadFrac {
                    x: v.0.clone(),
                    y: v.1.clone(),
                    d: self.d()
                }
                .render(),
                self.base.describe()
            ))
        })
    }

    /// Accepts `f` iff it has no pole at `0` and its value there lies in `D`.
    pub fn member(&self, f: &YFrac) -> Result<YFrac> {
        if f.d != self.d() {
            return Err(Error::RingMismatch(format!(
                "element over d = {} in a pullback over d = {}",
                f.d,
                self.d()
            )));
        }
        self.residue(f)?;
        Ok(f.clone())
    }

    pub fn contains(&self, f: &YFrac) -> bool {
        self.member(f).is_ok()
    }

    /// Membership in the maximal ideal `M` of `V` (value `0`).
    pub fn in_max_ideal(&self, f: &YFrac) -> bool {
        f.value_at_zero().is_ok_and(|(x, y)| x.is_zero() && y.is_zero())
    }

    pub fn from_base(&self, e: &QuadElem) -> YFrac {
        YFrac::constant(Rat::from_integer(e.x.clone()), Rat::from_integer(e.y.clone()), self.d())
    }

    /// Unit of `R` iff the value at `0` is a unit of `D`.
    pub fn pb_is_unit(&self, f: &YFrac) -> bool {
        self.residue(f).is_ok_and(|v| self.base.is_unit(&v))
    }

    /// The inverse as a rational function, if it lies in `R`.
    pub fn inverse(&self, f: &YFrac) -> Option<YFrac> {
        f.inv().ok().filter(|g| self.contains(g))
    }
}

impl Domain for Pullback {
    type Elem = YFrac;

    fn zero(&self) -> YFrac {
        YFrac::from_poly(Poly::zero(), self.d())
    }
    fn one(&self) -> YFrac {
        YFrac::from_poly(Poly::one(), self.d())
    }
    fn add(&self, a: &YFrac, b: &YFrac) -> YFrac {
        a.add(b)
    }
    fn sub(&self, a: &YFrac, b: &YFrac) -> YFrac {
        a.sub(b)
    }
    fn mul(&self, a: &YFrac, b: &YFrac) -> YFrac {
        a.mul(b)
    }
    fn divide(&self, a: &YFrac, b: &YFrac) -> Option<YFrac> {
        a.div(b).ok().filter(|q| self.contains(q))
    }
    fn render(&self, a: &YFrac) -> String {
        a.render()
    }
    fn describe(&self) -> String {
        format!("pullback:{}", self.base.describe())
    }
    fn is_unit(&self, a: &YFrac) -> bool {
        self.pb_is_unit(a)
    }
}

/// Which branch of the reduction applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbCase {
    /// Exactly one of `a, b` lies in `M`; the other generates.
    OneInMaxIdeal,
    /// Both lie in `M`.
    BothInMaxIdeal,
    /// Neither lies in `M`; reduce to values in `D`.
    NeitherInMaxIdeal,
}

impl PbCase {
    pub fn number(&self) -> u8 {
        match self {
            PbCase::OneInMaxIdeal => 1,
            PbCase::BothInMaxIdeal => 2,
            PbCase::NeitherInMaxIdeal => 3,
        }
    }
}

/// `(a, b)R = gR` with two-way membership.
#[derive(Clone, Debug)]
pub struct PbGenerator {
    pub case: PbCase,
    pub a: YFrac,
    pub b: YFrac,
    pub generator: YFrac,
    /// `generator = coefficients.0 * a + coefficients.1 * b`.
    pub coefficients: (YFrac, YFrac),
    /// `a = generator * quotients.0`, `b = generator * quotients.1`.
    pub quotients: (YFrac, YFrac),
    /// In case 3: values `a', b'` at 0 and the unit factors `a/a'`, `b/b'`.
    pub residual: Option<Residual>,
}

#[derive(Clone, Debug)]
pub struct Residual {
    pub a0: QuadElem,
    pub b0: QuadElem,
    pub d0: QuadElem,
    pub unit_a: YFrac,
    pub unit_b: YFrac,
}

impl PbGenerator {
    pub fn verify(&self, ring: &Pullback) -> bool {
        let all = [
            &self.generator,
            &self.coefficients.0,
            &self.coefficients.1,
            &self.quotients.0,
            &self.quotients.1,
        ];
        all.iter().all(|e| ring.contains(e))
            && self.coefficients.0.mul(&self.a).add(&self.coefficients.1.mul(&self.b)) == self.generator
            && self.generator.mul(&self.quotients.0) == self.a
            && self.generator.mul(&self.quotients.1) == self.b
            && self.residual.as_ref().is_none_or(|r| {
                ring.pb_is_unit(&r.unit_a)
                    && ring.pb_is_unit(&r.unit_b)
                    && self.a == r.unit_a.mul(&ring.from_base(&r.a0))
                    && self.b == r.unit_b.mul(&ring.from_base(&r.b0))
            })
    }
}

#[derive(Clone, Debug)]
pub enum PbReduction {
    Principal(PbGenerator),
    /// Case 3 when the ideal `(a', b')` of `D` is not principal: `D` is not PRINC.
    ResidualNonPrincipal {
        a0: QuadElem,
        b0: QuadElem,
        verdict: PrincipalityVerdict,
    },
}

pub fn pb_reduce_idem_pair(ring: &Pullback, p: &IdemPair<YFrac>) -> Result<PbReduction> {
    for e in [&p.a, &p.b, &p.r] {
        ring.member(e)?;
    }
    if !verify_pair(ring, p) {
        return Err(Error::CertificateFailed(format!(
            "{} fails for a = {}, b = {}",
            p.orientation.label(),
            p.a.render(),
            p.b.render()
        )));
    }
    let (a, b) = (&p.a, &p.b);
    let (zero, one) = (ring.zero(), ring.one());
    let (am, bm) = (ring.in_max_ideal(a), ring.in_max_ideal(b));
    let out = match (am, bm) {
        (false, true) | (true, false) => {
            let (u, other) = if am { (b, a) } else { (a, b) };
            let q = other.div(u)?;
            let (coefficients, quotients) = if am {
                ((zero.clone(), one.clone()), (q, one))
            } else {
                ((one.clone(), zero.clone()), (one, q))
            };
            PbGenerator {
                case: PbCase::OneInMaxIdeal,
                a: a.clone(),
                b: b.clone(),
                generator: u.clone(),
                coefficients,
                quotients,
                residual: None,
            }
        }
        (true, true) => {
            let (x, y) = p.oriented();
            let q = p.r.mul(&ring.one_minus(x).inv()?);
            let (coefficients, quotients) = match p.orientation {
                Orientation::Forward => ((zero.clone(), one.clone()), (q, one)),
                Orientation::Reverse => ((one.clone(), zero.clone()), (one, q)),
            };
            PbGenerator {
                case: PbCase::BothInMaxIdeal,
                a: a.clone(),
                b: b.clone(),
                generator: y.clone(),
                coefficients,
                quotients,
                residual: None,
            }
        }
        (false, false) => {
            let a0 = ring.residue(a)?;
            let b0 = ring.residue(b)?;
            let (d0, (s, t)) = match residual_generator(ring.base, &a0, &b0)? {
                Ok(x) => x,
                Err(verdict) => return Ok(PbReduction::ResidualNonPrincipal { a0, b0, verdict }),
            };
            let (fa0, fb0, fd0) = (ring.from_base(&a0), ring.from_base(&b0), ring.from_base(&d0));
            let unit_a = a.div(&fa0)?;
            let unit_b = b.div(&fb0)?;
            let coefficients = (
                ring.from_base(&s).div(&unit_a)?,
                ring.from_base(&t).div(&unit_b)?,
            );
            let quotients = (a.div(&fd0)?, b.div(&fd0)?);
            PbGenerator {
                case: PbCase::NeitherInMaxIdeal,
                a: a.clone(),
                b: b.clone(),
                generator: fd0,
                coefficients,
                quotients,
                residual: Some(Residual {
                    a0,
                    b0,
                    d0,
                    unit_a,
                    unit_b,
                }),
            }
        }
    };
    if !out.verify(ring) {
        return Err(Error::CertificateFailed(format!(
            "case {} generator fails two-way membership",
            out.case.number()
        )));
    }
    Ok(PbReduction::Principal(out))
}

type ResidualOk = (QuadElem, (QuadElem, QuadElem));

/// Generator `d` of `(a', b')` in `D` with `d = s*a' + t*b'`.
fn residual_generator(
    base: PbBase,
    a0: &QuadElem,
    b0: &QuadElem,
) -> Result<std::result::Result<ResidualOk, PrincipalityVerdict>> {
    match base {
        PbBase::Integers => {
            let (g, s, t) = crate::arith::num::ext_gcd(&a0.x, &b0.x);
            let e = |x: Int| QuadElem { x, y: Int::zero(), d: 0 };
            Ok(Ok((e(g), (e(s), e(t)))))
        }
        PbBase::Quad(_) => {
            let i = ideal_from_pair(a0, b0)?;
            let verdict = i.principality();
            match &verdict {
                PrincipalityVerdict::Principal {
                    generator,
                    coefficients,
                    ..
                } => Ok(Ok((generator.clone(), (coefficients[0].clone(), coefficients[1].clone())))),
                _ => Ok(Err(verdict)),
            }
        }
    }
}

/// `z/d^k` for `k = 1..=n`, each verified to lie in `R`.
pub fn pb_nonufd_chain(ring: &Pullback, z: &YFrac, d: &QuadElem, n: u32) -> Result<Vec<YFrac>> {
    ring.member(z)?;
    if !ring.in_max_ideal(z) {
        return Err(Error::Precondition(format!("{} is not in the maximal ideal", z.render())));
    }
    let de = ring.from_base(d);
    if de.is_zero() || ring.pb_is_unit(&de) {
        return Err(Error::Precondition(format!(
            "{} must be a nonzero nonunit of {}",
            d.render(),
            ring.base.describe()
        )));
    }
    let mut out = Vec::new();
    let mut cur = z.clone();
    for _ in 0..n {
        cur = cur.div(&de)?;
        ring.member(&cur)?;
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::idem::{is_idempotent_pair, pair_with_witness};

    fn yp(cs: &[(i64, i64)]) -> YFrac {
        YFrac::from_poly(Poly::from_coeffs(cs.iter().map(|&(n, d)| rat(n, d)).collect()), 0)
    }

    fn yf(num: &[(i64, i64)], den: &[(i64, i64)]) -> YFrac {
        yp(num).div(&yp(den)).unwrap()
    }

    #[test]
    fn membership() {
        let r = Pullback::over_integers();
        assert!(r.contains(&yf(&[(0, 1), (1, 1)], &[(3, 1), (1, 1)])));
        assert!(r.contains(&yp(&[(5, 1), (0, 1), (1, 1)])));
        assert!(matches!(r.member(&yp(&[(1, 2), (1, 1)])), Err(Error::NotInRing(_))));
        assert!(matches!(r.member(&yf(&[(1, 1)], &[(0, 1), (1, 1)])), Err(Error::PoleAtZero(_))));
    }

    #[test]
    fn units() {
        let r = Pullback::over_integers();
        assert!(r.pb_is_unit(&yp(&[(1, 1), (-1, 1)])));
        assert!(!r.pb_is_unit(&yp(&[(3, 1), (1, 1)])));
        let x = yp(&[(-1, 1)]).add(&yf(&[(0, 1), (1, 1)], &[(1, 1), (1, 1)]));
        assert!(r.pb_is_unit(&x));
        assert!(r.inverse(&x).is_some());
        assert!(r.inverse(&yp(&[(3, 1), (1, 1)])).is_none());
    }

    #[test]
    fn canonical_form() {
        let a = yf(&[(2, 1), (2, 1)], &[(4, 1), (4, 1)]);
        assert_eq!(a, yp(&[(1, 2)]));
        assert_eq!(a.render(), "1/2");
        assert_eq!(yf(&[(0, 1), (1, 1)], &[(3, 1), (1, 1)]).render(), "(1/3*Y)/(1 + 1/3*Y)");
    }

    #[test]
    fn case_two() {
        let r = Pullback::over_integers();
        let p = pair_with_witness(&r, &yp(&[(0, 1), (1, 1)]), &yp(&[(0, 1), (1, 1), (-1, 1)]), &yp(&[(1, 1)]), Orientation::Forward).unwrap();
        let PbReduction::Principal(g) = pb_reduce_idem_pair(&r, &p).unwrap() else { panic!() };
        assert_eq!(g.case, PbCase::BothInMaxIdeal);
        assert_eq!(g.generator, p.b);
    }

    #[test]
    fn case_three() {
        let r = Pullback::over_integers();
        let a = yp(&[(3, 1), (1, 1)]);
        let b = yp(&[(2, 1)]);
        let p = is_idempotent_pair(&r, &a, &b).unwrap();
        assert_eq!(p.r, yp(&[(-3, 1), (-5, 2), (-1, 2)]));
        let PbReduction::Principal(g) = pb_reduce_idem_pair(&r, &p).unwrap() else { panic!() };
        assert_eq!(g.case, PbCase::NeitherInMaxIdeal);
        assert_eq!(g.generator, r.one());
    }

    #[test]
    fn case_one_reverse() {
        let r = Pullback::over_integers();
        let a = yp(&[(3, 1), (1, 1)]);
        let b = yp(&[(0, 1), (0, 1), (1, 1)]);
        let p = is_idempotent_pair(&r, &a, &b).unwrap();
        assert_eq!(p.orientation, Orientation::Reverse);
        let PbReduction::Principal(g) = pb_reduce_idem_pair(&r, &p).unwrap() else { panic!() };
        assert_eq!(g.case, PbCase::OneInMaxIdeal);
        assert_eq!(g.generator, a);
    }

    #[test]
    fn chain() {
        let r = Pullback::over_integers();
        let two = QuadElem { x: 2.into(), y: 0.into(), d: 0 };
        let c = pb_nonufd_chain(&r, &yp(&[(0, 1), (1, 1)]), &two, 5).unwrap();
        assert_eq!(c[4], yp(&[(0, 1), (1, 32)]));
        assert!(pb_nonufd_chain(&r, &yp(&[(1, 1), (1, 1)]), &two, 3).is_err());
    }

    #[test]
    fn quadratic_base() {
        let o = QuadOrder::new(-5).unwrap();
        let r = Pullback::new(PbBase::Quad(o));
        let l = crate::idem::lemma_pair_quad(&o.int(2), &o.elem(1, 1)).unwrap();
        let p = IdemPair {
            a: r.from_base(&l.pair.a),
            b: r.from_base(&l.pair.b),
            orientation: Orientation::Forward,
            r: r.from_base(&l.pair.r),
        };
        assert!(matches!(
            pb_reduce_idem_pair(&r, &p).unwrap(),
            PbReduction::ResidualNonPrincipal { .. }
        ));
    }
}
