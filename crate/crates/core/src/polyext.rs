//! Subrings of `Q[y]` cut out by forbidden monomial degrees, polynomial
//! rings over them, and the non-principal idempotent pair produced by a
//! failure of seminormality.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::arith::{ExactDiv, ExprFmt, Int, Poly, Rat};
use crate::domain::{int_ideal_generator, Domain};
use crate::error::{Error, Result};
use crate::idem::{verify_pair, IdemPair, Orientation};
use crate::quadring::{PrincipalityVerdict, QuadElem, QuadIdeal, QuadOrder};

/// Polynomials in `Q[y]`.
pub type YPoly = Poly<Rat>;
/// Polynomials in `X` with coefficients in `Q[y]`.
pub type XPoly = Poly<YPoly>;

/// The subring of `Q[y]` of polynomials with zero coefficient at every
/// excluded degree. `{1}` gives `Q[y^2, y^3]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubringDesc {
    excluded: BTreeSet<usize>,
}

impl SubringDesc {
    /// Checks that the allowed degrees form an additive monoid.
    pub fn new(excluded: impl IntoIterator<Item = usize>) -> Result<Self> {
        let excluded: BTreeSet<usize> = excluded.into_iter().collect();
        if excluded.contains(&0) {
            return Err(Error::Precondition("degree 0 must be allowed (1 is in every ring)".into()));
        }
        let top = excluded.iter().next_back().copied().unwrap_or(0);
        for a in (1..=top).filter(|a| !excluded.contains(a)) {
            for b in (a..=top).filter(|b| !excluded.contains(b)) {
                if excluded.contains(&(a + b)) {
                    return Err(Error::Precondition(format!(
                        "degrees {a} and {b} are allowed but {} is not: not closed under products",
                        a + b
                    )));
                }
            }
        }
        Ok(SubringDesc { excluded })
    }

    pub fn cusp() -> Self {
        SubringDesc::new([1]).expect("{1} excludes a gap of N")
    }

    pub fn excluded(&self) -> &BTreeSet<usize> {
        &self.excluded
    }

    pub fn contains(&self, f: &YPoly) -> bool {
        self.excluded.iter().all(|&k| f.coeff(k).is_zero())
    }

    pub fn contains_x(&self, f: &XPoly) -> bool {
        f.coeffs().iter().all(|c| self.contains(c))
    }

    pub fn describe(&self) -> String {
        let ks: Vec<String> = self.excluded.iter().map(usize::to_string).collect();
        format!("Q[y] without degrees {{{}}}", ks.join(","))
    }
}

/// `alpha^2, alpha^3` in `D` but `alpha` not in `D`.
pub fn seminormal_witness(alpha: &YPoly, d: &SubringDesc) -> bool {
    let a2 = alpha * alpha;
    let a3 = &a2 * alpha;
    d.contains(&a2) && d.contains(&a3) && !d.contains(alpha)
}

/// `D[X]` for a monomial subring `D` of `Q[y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExtRing {
    pub sub: SubringDesc,
}

impl Domain for PolyExtRing {
    type Elem = XPoly;

    fn zero(&self) -> XPoly {
        XPoly::zero()
    }
    fn one(&self) -> XPoly {
        XPoly::one()
    }
    fn add(&self, a: &XPoly, b: &XPoly) -> XPoly {
        a + b
    }
    fn sub(&self, a: &XPoly, b: &XPoly) -> XPoly {
        a - b
    }
    fn mul(&self, a: &XPoly, b: &XPoly) -> XPoly {
        a * b
    }
    fn divide(&self, a: &XPoly, b: &XPoly) -> Option<XPoly> {
        a.exact_div(b).filter(|q| self.sub.contains_x(q))
    }
    fn render(&self, a: &XPoly) -> String {
        render_x(a)
    }
    fn describe(&self) -> String {
        format!("({})[X]", self.sub.describe())
    }
}

pub fn render_x(a: &XPoly) -> String {
    a.expr(&["X", "y"])
}

fn xpoly(coeffs: Vec<YPoly>) -> XPoly {
    Poly::from_coeffs(coeffs)
}

/// One step of the argument that no single generator exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptStep {
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct PolyExtCounterexample {
    pub alpha: YPoly,
    pub sub: SubringDesc,
    /// `1 - alpha X`, `1 + alpha X`.
    pub a: XPoly,
    pub b: XPoly,
    /// `(1 + alpha^2 X^2) a b = 1 - alpha^4 X^4`.
    pub u: XPoly,
    /// `alpha^2 b`.
    pub v: XPoly,
    /// `u(1 - u) = v w`.
    pub w: XPoly,
    /// `(1 + a^2X^2)(1 - a^2X^2) + a^4X^4`, which must equal 1.
    pub comaximal_lhs: XPoly,
    pub relation_lhs: XPoly,
    pub relation_rhs: XPoly,
    pub transcript: Vec<TranscriptStep>,
}

impl PolyExtCounterexample {
    pub fn pair(&self) -> IdemPair<XPoly> {
        IdemPair {
            a: self.u.clone(),
            b: self.v.clone(),
            orientation: Orientation::Forward,
            r: self.w.clone(),
        }
    }

    pub fn transcript_complete(&self) -> bool {
        !self.transcript.is_empty() && self.transcript.iter().all(|s| s.holds)
    }

    /// Recomputes every identity from `alpha` alone.
    pub fn verify(&self) -> bool {
        let ring = PolyExtRing { sub: self.sub.clone() };
        let fresh = build(&self.alpha, &self.sub);
        fresh.u == self.u
            && fresh.v == self.v
            && fresh.w == self.w
            && self.comaximal_lhs.is_one()
            && self.relation_lhs == self.relation_rhs
            && [&self.u, &self.v, &self.w].iter().all(|e| self.sub.contains_x(e))
            && verify_pair(&ring, &self.pair())
            && self.transcript_complete()
    }
}

fn build(alpha: &YPoly, sub: &SubringDesc) -> PolyExtCounterexample {
    let zero = YPoly::zero();
    let one = YPoly::one();
    let pw = |k: u32| alpha.pow(k);
    let a = xpoly(vec![one.clone(), -alpha.clone()]);
    let b = xpoly(vec![one.clone(), alpha.clone()]);
    let s = xpoly(vec![one.clone(), zero.clone(), pw(2)]);
    let t = xpoly(vec![one.clone(), zero.clone(), -pw(2)]);
    let x4 = xpoly(vec![zero.clone(), zero.clone(), zero.clone(), zero.clone(), pw(4)]);
    let comaximal_lhs = &(&s * &t) + &x4;
    let u = &(&s * &a) * &b;
    let v = &XPoly::constant(pw(2)) * &b;
    let w = xpoly(vec![
        zero.clone(),
        zero.clone(),
        zero.clone(),
        zero,
        pw(2),
        -pw(3),
        pw(4),
        -pw(5),
    ]);
    let relation_lhs = &u * &(&XPoly::one() - &u);
    let relation_rhs = &v * &w;
    let mut out = PolyExtCounterexample {
        alpha: alpha.clone(),
        sub: sub.clone(),
        a,
        b,
        u,
        v,
        w,
        comaximal_lhs,
        relation_lhs,
        relation_rhs,
        transcript: Vec::new(),
    };
    out.transcript = transcript(&out);
    out
}

fn transcript(c: &PolyExtCounterexample) -> Vec<TranscriptStep> {
    let y = |p: &YPoly| p.expr(&["y"]);
    let sa = &xpoly(vec![YPoly::one(), YPoly::zero(), c.alpha.pow(2)]) * &c.a;
    let u_over_b = c.u.exact_div(&c.b);
    let v_over_b = c.v.exact_div(&c.b);
    let step = |claim: String, holds: bool| TranscriptStep { claim, holds };
    vec![
        step(
            format!(
                "(1 + a^2X^2)(1 - a^2X^2) + a^4X^4 = 1 for a = {}",
                y(&c.alpha)
            ),
            c.comaximal_lhs.is_one(),
        ),
        step(
            "both generators are multiples of b = 1 + aX: u = (1 + a^2X^2)(1 - aX) b and v = a^2 b".into(),
            u_over_b.as_ref() == Some(&sa) && v_over_b == Some(XPoly::constant(c.alpha.pow(2))),
        ),
        step(
            "over Frac(D)[X] the cofactors (1 + a^2X^2)(1 - aX) and a^2 generate the unit ideal, since a^2 is a nonzero constant".into(),
            !c.alpha.is_zero(),
        ),
        step(
            "so a generator f of (u, v) satisfies f Frac(D)[X] = b Frac(D)[X]: f = c(1 + aX) with c in Frac(D), and f in D[X] puts c and c*a in D".into(),
            c.b.degree() == Some(1) && c.b.constant_term().is_one(),
        ),
        step(
            "f divides u in D[X] and u(0) = 1, so c divides 1 in D: c is a unit and a = c^-1 (c*a) lies in D".into(),
            c.u.constant_term().is_one(),
        ),
        step(
            format!(
                "but a = {} is not in D while a^2 and a^3 are: no generator exists",
                y(&c.alpha)
            ),
            seminormal_witness(&c.alpha, &c.sub),
        ),
    ]
}

/// The idempotent pair `((1 + a^2X^2)(1 - aX)(1 + aX), a^2(1 + aX))` of
/// `D[X]` generating a non-principal ideal.
pub fn nonprinc_pair_from_alpha(alpha: &YPoly, sub: &SubringDesc) -> Result<PolyExtCounterexample> {
    if !seminormal_witness(alpha, sub) {
        return Err(Error::Precondition(format!(
            "{} does not witness non-seminormality of {}",
            alpha.expr(&["y"]),
            sub.describe()
        )));
    }
    let c = build(alpha, sub);
    if !c.verify() {
        return Err(Error::CertificateFailed("counterexample identities fail".into()));
    }
    Ok(c)
}

#[derive(Clone, Debug)]
pub enum ContractedVerdict {
    Integer(Int),
    Quad(PrincipalityVerdict),
}

impl ContractedVerdict {
    pub fn is_principal(&self) -> bool {
        match self {
            ContractedVerdict::Integer(_) => true,
            ContractedVerdict::Quad(v) => v.is_principal(),
        }
    }
}

/// `(f_1(0), f_2(0))`: the ideal of `D` below an ideal extended to `D[X]`.
/// Extendedness is the caller's claim.
#[derive(Clone, Debug)]
pub struct Contracted<E> {
    pub constants: (E, E),
    pub verdict: ContractedVerdict,
}

pub fn contract_to_constants_int(f1: &Poly<Int>, f2: &Poly<Int>) -> Contracted<Int> {
    let c = (f1.constant_term(), f2.constant_term());
    let g = int_ideal_generator(&[c.0.clone(), c.1.clone()]);
    Contracted {
        constants: c,
        verdict: ContractedVerdict::Integer(g),
    }
}

/// Coefficient lists in ascending degree.
pub fn contract_to_constants_quad(
    order: &QuadOrder,
    f1: &[QuadElem],
    f2: &[QuadElem],
) -> Result<Contracted<QuadElem>> {
    let c0 = |f: &[QuadElem]| f.first().cloned().unwrap_or_else(|| order.int(0));
    let c = (c0(f1), c0(f2));
    let ideal = QuadIdeal::from_generators(order, &[c.0.clone(), c.1.clone()])?;
    Ok(Contracted {
        constants: c,
        verdict: ContractedVerdict::Quad(ideal.principality()),
    })
}
