//! Idempotent pairs: detection, the associated idempotent matrix, synthesis
//! from a Bezout relation over the inverse ideal, and the complement identity
//! `(a, b)(1 - a, b) = (b)`.

use crate::arith::{Int, Poly, Rat, RatFunc};
use crate::domain::{Domain, FractionDomain, Integers};
use crate::error::{Error, Result};
use crate::quadring::{
    ideal_from_pair, IdealEquality, NormSearch, PrincipalityVerdict, QuadElem, QuadIdeal,
    QuadOrder,
};

/// Which defining membership the witness proves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `a(1 - a) = b*r`.
    Forward,
    /// `b(1 - b) = a*r`.
    Reverse,
}

impl Orientation {
    pub fn label(&self) -> &'static str {
        match self {
            Orientation::Forward => "a(1-a) = b*r",
            Orientation::Reverse => "b(1-b) = a*r",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdemPair<E> {
    pub a: E,
    pub b: E,
    pub orientation: Orientation,
    pub r: E,
}

impl<E: Clone> IdemPair<E> {
    /// `(x, y)` with `x(1 - x) = y*r`.
    pub fn oriented(&self) -> (&E, &E) {
        match self.orientation {
            Orientation::Forward => (&self.a, &self.b),
            Orientation::Reverse => (&self.b, &self.a),
        }
    }
}

/// Both sides of the defining relation.
pub fn relation_sides<D: Domain>(ring: &D, p: &IdemPair<D::Elem>) -> (D::Elem, D::Elem) {
    let (x, y) = p.oriented();
    (ring.mul(x, &ring.one_minus(x)), ring.mul(y, &p.r))
}

pub fn verify_pair<D: Domain>(ring: &D, p: &IdemPair<D::Elem>) -> bool {
    let (l, r) = relation_sides(ring, p);
    l == r
}

/// Tests both memberships; the forward one is preferred when both hold.
pub fn is_idempotent_pair<D: Domain>(ring: &D, a: &D::Elem, b: &D::Elem) -> Option<IdemPair<D::Elem>> {
    let fwd = ring.mul(a, &ring.one_minus(a));
    if let Some(r) = ring.divides_with_zero(&fwd, b) {
        return Some(IdemPair {
            a: a.clone(),
            b: b.clone(),
            orientation: Orientation::Forward,
            r,
        });
    }
    let rev = ring.mul(b, &ring.one_minus(b));
    ring.divides_with_zero(&rev, a).map(|r| IdemPair {
        a: a.clone(),
        b: b.clone(),
        orientation: Orientation::Reverse,
        r,
    })
}

/// Validates a caller-supplied witness without searching.
pub fn pair_with_witness<D: Domain>(
    ring: &D,
    a: &D::Elem,
    b: &D::Elem,
    r: &D::Elem,
    orientation: Orientation,
) -> Result<IdemPair<D::Elem>> {
    let p = IdemPair {
        a: a.clone(),
        b: b.clone(),
        orientation,
        r: r.clone(),
    };
    if verify_pair(ring, &p) {
        Ok(p)
    } else {
        Err(Error::CertificateFailed(format!(
            "{} fails for a = {}, b = {}, r = {}",
            orientation.label(),
            ring.render(a),
            ring.render(b),
            ring.render(r)
        )))
    }
}

pub type Mat2<E> = [[E; 2]; 2];

pub fn mat_mul<D: Domain>(ring: &D, m: &Mat2<D::Elem>, n: &Mat2<D::Elem>) -> Mat2<D::Elem> {
    let e = |i: usize, j: usize| ring.add(&ring.mul(&m[i][0], &n[0][j]), &ring.mul(&m[i][1], &n[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `[[x, y], [r, 1 - x]]` for the oriented pair; checked to satisfy `M^2 = M`.
pub fn idem_matrix<D: Domain>(ring: &D, p: &IdemPair<D::Elem>) -> Result<Mat2<D::Elem>> {
    let (x, y) = p.oriented();
    let m = [
        [x.clone(), y.clone()],
        [p.r.clone(), ring.one_minus(x)],
    ];
    if mat_mul(ring, &m, &m) != m {
        return Err(Error::CertificateFailed("M^2 != M: invalid witness".into()));
    }
    Ok(m)
}

/// Fraction-field elements with `lambda*a + mu*b = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BezoutCert<F> {
    pub lambda: F,
    pub mu: F,
}

/// An idempotent pair `(lambda*a, lambda*b)` with witness `mu*a`.
#[derive(Clone, Debug)]
pub struct LemmaPair<E, F> {
    pub input: (E, E),
    pub cert: BezoutCert<F>,
    pub pair: IdemPair<E>,
    /// `mu*b`, the fourth product that places `mu` in the inverse ideal.
    pub mu_b: E,
}

pub fn pair_from_invertible<D: FractionDomain>(
    ring: &D,
    a: &D::Elem,
    b: &D::Elem,
    cert: &BezoutCert<D::Frac>,
) -> Result<LemmaPair<D::Elem, D::Frac>> {
    let (fa, fb) = (ring.embed(a), ring.embed(b));
    let sum = ring.frac_add(&ring.frac_mul(&cert.lambda, &fa), &ring.frac_mul(&cert.mu, &fb));
    if sum != ring.embed(&ring.one()) {
        return Err(Error::CertificateFailed(format!(
            "lambda*a + mu*b = {} != 1",
            ring.render_frac(&sum)
        )));
    }
    let inside = |l: &D::Frac, x: &D::Frac, what: &str| {
        ring.retract(&ring.frac_mul(l, x)).ok_or_else(|| {
            Error::CertificateFailed(format!("{what} is not in the ring: lambda, mu not in the inverse ideal"))
        })
    };
    let la = inside(&cert.lambda, &fa, "lambda*a")?;
    let lb = inside(&cert.lambda, &fb, "lambda*b")?;
    let ma = inside(&cert.mu, &fa, "mu*a")?;
    let mb = inside(&cert.mu, &fb, "mu*b")?;
    let pair = pair_with_witness(ring, &la, &lb, &ma, Orientation::Forward)?;
    Ok(LemmaPair {
        input: (a.clone(), b.clone()),
        cert: cert.clone(),
        pair,
        mu_b: mb,
    })
}

/// `lambda = s/g`, `mu = t/g` from the extended gcd.
pub fn int_bezout(a: &Int, b: &Int) -> Result<BezoutCert<Rat>> {
    let (g, s, t) = crate::arith::num::ext_gcd(a, b);
    if g == Int::from(0) {
        return Err(Error::ZeroIdeal);
    }
    Ok(BezoutCert {
        lambda: Rat::new(s, g.clone()),
        mu: Rat::new(t, g),
    })
}

/// `lambda, mu` in the inverse ideal `conj(I)/N(I)` of `I = (a, b)`, from
/// expressing `N(I)` over the generators of `I * conj(I)`.
pub fn quad_bezout(a: &QuadElem, b: &QuadElem) -> Result<BezoutCert<crate::quadring::QuadFrac>> {
    let i = ideal_from_pair(a, b)?;
    let inv = i.invertibility();
    if !inv.invertible {
        return Err(Error::Precondition(format!("{} is not invertible", i.render())));
    }
    let order = i.order();
    let n = order.int(inv.norm.clone());
    let k = i
        .mul(&i.conjugate())?
        .express(&n)
        .ok_or_else(|| Error::CertificateFailed("N(I) not in I*conj(I)".into()))?;
    let (ca, cb) = (a.conj(), b.conj());
    let lam = k[0].mul(&ca).add(&k[1].mul(&cb));
    let mu = k[2].mul(&ca).add(&k[3].mul(&cb));
    let nr = Rat::from_integer(inv.norm);
    let frac = |e: &QuadElem| crate::quadring::QuadFrac {
        x: Rat::from_integer(e.x.clone()) / &nr,
        y: Rat::from_integer(e.y.clone()) / &nr,
        d: e.d,
    };
    Ok(BezoutCert {
        lambda: frac(&lam),
        mu: frac(&mu),
    })
}

pub fn lemma_pair_int(a: &Int, b: &Int) -> Result<LemmaPair<Int, Rat>> {
    pair_from_invertible(&Integers, a, b, &int_bezout(a, b)?)
}

pub fn lemma_pair_quad(
    a: &QuadElem,
    b: &QuadElem,
) -> Result<LemmaPair<QuadElem, crate::quadring::QuadFrac>> {
    let order = QuadOrder::new(a.d)?;
    pair_from_invertible(&order, a, b, &quad_bezout(a, b)?)
}

/// `(x, y)(1 - x, y) = (y)` for the oriented pair, as two-way membership:
/// each of the four product generators is `y` times the listed quotient,
/// and `y = xy + y(1 - x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplementCert<E> {
    pub first: (E, E),
    pub second: (E, E),
    /// The claimed generator of the product ideal.
    pub generator: E,
    /// `x(1-x), xy, y(1-x), y^2`.
    pub products: [E; 4],
    pub quotients: [E; 4],
    /// Coefficients of `generator` over `products`.
    pub combination: [E; 4],
}

pub fn complement_identity<D: Domain>(ring: &D, p: &IdemPair<D::Elem>) -> Result<ComplementCert<D::Elem>> {
    if !verify_pair(ring, p) {
        return Err(Error::CertificateFailed("pair witness fails".into()));
    }
    let (x, y) = p.oriented();
    let cx = ring.one_minus(x);
    let cert = ComplementCert {
        first: (x.clone(), y.clone()),
        second: (cx.clone(), y.clone()),
        generator: y.clone(),
        products: [
            ring.mul(x, &cx),
            ring.mul(x, y),
            ring.mul(y, &cx),
            ring.mul(y, y),
        ],
        quotients: [p.r.clone(), x.clone(), cx, y.clone()],
        combination: [ring.zero(), ring.one(), ring.one(), ring.zero()],
    };
    if !verify_complement(ring, &cert) {
        return Err(Error::CertificateFailed("complement identity fails".into()));
    }
    Ok(cert)
}

pub fn verify_complement<D: Domain>(ring: &D, c: &ComplementCert<D::Elem>) -> bool {
    let (x, y) = (&c.first.0, &c.first.1);
    let (u, v) = (&c.second.0, &c.second.1);
    let expected = [ring.mul(x, u), ring.mul(x, v), ring.mul(y, u), ring.mul(y, v)];
    let members = expected
        .iter()
        .zip(&c.products)
        .zip(&c.quotients)
        .all(|((e, p), q)| e == p && *p == ring.mul(&c.generator, q));
    let back = c
        .products
        .iter()
        .zip(&c.combination)
        .fold(ring.zero(), |acc, (p, k)| ring.add(&acc, &ring.mul(k, p)));
    members && back == c.generator
}

/// The complement identity in Z[sqrt(d)] additionally checked on normal forms.
pub fn complement_identity_quad(
    p: &IdemPair<QuadElem>,
) -> Result<(ComplementCert<QuadElem>, Option<IdealEquality>)> {
    let order = QuadOrder::new(p.a.d)?;
    let cert = complement_identity(&order, p)?;
    if cert.generator.is_zero() {
        return Ok((cert, None));
    }
    let i = QuadIdeal::from_generators(&order, &[cert.first.0.clone(), cert.first.1.clone()])?;
    let j = QuadIdeal::from_generators(&order, &[cert.second.0.clone(), cert.second.1.clone()])?;
    let prod = i.mul(&j)?;
    let g = QuadIdeal::principal(&order, &cert.generator)?;
    if prod != g {
        return Err(Error::CertificateFailed("ideal product differs from (b)".into()));
    }
    let eq = prod
        .equality_certificate(&g)
        .ok_or_else(|| Error::CertificateFailed("membership certificate missing".into()))?;
    Ok((cert, Some(eq)))
}

/// Membership in `Q[1/(1+X^2), X/(1+X^2)]`: reduced denominator a scalar
/// times `(1+X^2)^k` and numerator degree at most `2k`. This subring lies in
/// the minimal Dress ring of `Q(X)`, so acceptance is a sound (not complete)
/// membership test for it.
pub fn circle_subring_member(f: &RatFunc) -> bool {
    let q = Poly::from_coeffs(vec![Rat::from_integer(1.into()), Rat::from_integer(0.into()), Rat::from_integer(1.into())]);
    let mut den = f.den().clone();
    let mut k = 0usize;
    while den.degree().unwrap_or(0) > 0 {
        match den.divrem(&q) {
            Ok((quot, rem)) if rem.degree().is_none() => {
                den = quot;
                k += 1;
            }
            _ => return false,
        }
    }
    f.num().degree().is_none_or(|n| n <= 2 * k)
}

/// Verifies `a(1 - a) = b*r` over `Q(X)` and that `r` passes `member`.
pub fn check_with_witness(a: &RatFunc, b: &RatFunc, r: &RatFunc, member: impl Fn(&RatFunc) -> bool) -> bool {
    let one = RatFunc::constant(Rat::from_integer(1.into()));
    a.mul(&one.sub(a)) == b.mul(r) && member(r)
}

/// An idempotent pair of Z[sqrt(d)] whose ideal has been shown
/// non-principal by exhaustive norm search. Only [`NonPrincWitness::establish`]
/// builds one, so holding a value is evidence the ring is not PRINC.
#[derive(Clone, Debug)]
pub struct NonPrincWitness {
    pair: IdemPair<QuadElem>,
    ideal: QuadIdeal,
    search: NormSearch,
}

impl NonPrincWitness {
    pub fn establish(pair: &IdemPair<QuadElem>) -> Result<Option<Self>> {
        let order = QuadOrder::new(pair.a.d)?;
        if !verify_pair(&order, pair) {
            return Err(Error::CertificateFailed("pair witness fails".into()));
        }
        let ideal = ideal_from_pair(&pair.a, &pair.b)?;
        Ok(match ideal.principality() {
            PrincipalityVerdict::NonPrincipal { search } => Some(NonPrincWitness {
                pair: pair.clone(),
                ideal,
                search,
            }),
            _ => None,
        })
    }

    pub fn pair(&self) -> &IdemPair<QuadElem> {
        &self.pair
    }

    pub fn ideal(&self) -> &QuadIdeal {
        &self.ideal
    }

    pub fn search(&self) -> &NormSearch {
        &self.search
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn detection_in_z() {
        let p = is_idempotent_pair(&Integers, &int(-2), &int(-3)).unwrap();
        assert_eq!(p.r, int(2));
        assert_eq!(p.orientation, Orientation::Forward);
        let p = is_idempotent_pair(&Integers, &int(0), &int(7)).unwrap();
        assert_eq!(p.r, int(0));
        assert!(is_idempotent_pair(&Integers, &int(5), &int(3)).is_none());
    }

    #[test]
    fn reverse_orientation() {
        // 3(1-3) = -6 is not a multiple of 4, but 4(1-4) = -12 = 3*(-4)
        let p = is_idempotent_pair(&Integers, &int(3), &int(4)).unwrap();
        assert_eq!(p.orientation, Orientation::Reverse);
        assert_eq!(p.r, int(-4));
        let m = idem_matrix(&Integers, &p).unwrap();
        assert_eq!(m[0], [int(4), int(3)]);
    }

    #[test]
    fn detection_in_quadratic_order() {
        let o = QuadOrder::new(-5).unwrap();
        assert!(is_idempotent_pair(&o, &o.int(2), &o.elem(1, 1)).is_none());
    }

    #[test]
    fn matrices() {
        let p = pair_with_witness(&Integers, &int(-2), &int(-3), &int(2), Orientation::Forward).unwrap();
        let m = idem_matrix(&Integers, &p).unwrap();
        assert_eq!(m, [[int(-2), int(-3)], [int(2), int(3)]]);
        let z = pair_with_witness(&Integers, &int(0), &int(0), &int(0), Orientation::Forward).unwrap();
        assert_eq!(idem_matrix(&Integers, &z).unwrap(), [[int(0), int(0)], [int(0), int(1)]]);
        let bad = IdemPair {
            a: int(2),
            b: int(1),
            orientation: Orientation::Forward,
            r: int(5),
        };
        assert!(idem_matrix(&Integers, &bad).is_err());
    }

    #[test]
    fn lemma_in_z() {
        let l = lemma_pair_int(&int(4), &int(6)).unwrap();
        assert_eq!(l.cert.lambda, rat(-1, 2));
        assert_eq!(l.cert.mu, rat(1, 2));
        assert_eq!((l.pair.a.clone(), l.pair.b.clone(), l.pair.r.clone()), (int(-2), int(-3), int(2)));
        let c = complement_identity(&Integers, &l.pair).unwrap();
        assert_eq!(c.generator, int(-3));
        let bad = BezoutCert {
            lambda: rat(1, 3),
            mu: rat(0, 1),
        };
        assert!(pair_from_invertible(&Integers, &int(3), &int(5), &bad).is_err());
        let bad = BezoutCert {
            lambda: rat(1, 4),
            mu: rat(0, 1),
        };
        assert!(pair_from_invertible(&Integers, &int(4), &int(6), &bad).is_err());
    }

    #[test]
    fn lemma_in_minus_five() {
        let o = QuadOrder::new(-5).unwrap();
        let l = lemma_pair_quad(&o.int(2), &o.elem(1, 1)).unwrap();
        assert!(verify_pair(&o, &l.pair));
        let (_, eq) = complement_identity_quad(&l.pair).unwrap();
        assert!(eq.unwrap().verify());
        let w = NonPrincWitness::establish(&l.pair).unwrap().expect("non-principal");
        assert_eq!(w.ideal().norm(), int(2));
    }

    #[test]
    fn dress_pair() {
        let x = RatFunc::var();
        let one = RatFunc::constant(rat(1, 1));
        let q = one.add(&x.mul(&x));
        let a = one.div(&q).unwrap();
        let b = x.div(&q).unwrap();
        assert!(check_with_witness(&a, &b, &b, circle_subring_member));
        assert!(!check_with_witness(&a, &b, &one, circle_subring_member));
        assert!(check_with_witness(&one, &x, &RatFunc::constant(rat(0, 1)), circle_subring_member));
        assert!(!circle_subring_member(&x));
        assert!(circle_subring_member(&x.mul(&x).div(&q).unwrap()));
    }
}
