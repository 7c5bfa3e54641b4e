//! The coordinate ring of the 2-sphere, `B2 = Q[X0,X1,X2]/(X0^2+X1^2+X2^2-1)`.
//!
//! Every class has a unique representative `f + g*X0` with `f, g` in
//! `Q[X1,X2]`, obtained by rewriting `X0^2 -> 1 - X1^2 - X2^2`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::num::fmt_rat;
use crate::arith::poly::{join_terms, power, term};
use crate::arith::{ExactDiv, Poly, Rat};
use crate::domain::Domain;

/// `Q[X1, X2]`, outer variable `X1`.
pub type BiPoly = Poly<Poly<Rat>>;
/// `Q[X0, X1, X2]`, outer variable `X0`.
pub type TriPoly = Poly<BiPoly>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SphereElem {
    /// Component free of `X0`.
    pub f: BiPoly,
    /// Coefficient of `X0`.
    pub g: BiPoly,
}

/// `1 - X1^2 - X2^2`, the value of `X0^2`.
fn rho() -> BiPoly {
    let one = Poly::<Rat>::one();
    let x2sq = Poly::monomial(Rat::one(), 2);
    Poly::from_coeffs(vec![&one - &x2sq, Poly::zero(), -one])
}

impl SphereElem {
    pub fn new(f: BiPoly, g: BiPoly) -> Self {
        SphereElem { f, g }
    }

    pub fn constant(c: Rat) -> Self {
        SphereElem::new(Poly::constant(Poly::constant(c)), BiPoly::zero())
    }

    /// `X_i` for `i` in `0..3`.
    pub fn var(i: usize) -> Self {
        let one = Poly::<Rat>::one();
        match i {
            0 => SphereElem::new(BiPoly::zero(), BiPoly::one()),
            1 => SphereElem::new(Poly::from_coeffs(vec![Poly::zero(), one]), BiPoly::zero()),
            2 => SphereElem::new(Poly::constant(Poly::var()), BiPoly::zero()),
            _ => panic!("B2 has variables X0, X1, X2"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// `f - g*X0`.
    pub fn conj(&self) -> Self {
        SphereElem::new(self.f.clone(), -self.g.clone())
    }

    /// `f^2 - g^2 (1 - X1^2 - X2^2)`, the product with the conjugate.
    pub fn norm(&self) -> BiPoly {
        &(&self.f * &self.f) - &(&(&self.g * &self.g) * &rho())
    }

    pub fn add(&self, o: &Self) -> Self {
        SphereElem::new(&self.f + &o.f, &self.g + &o.g)
    }

    pub fn sub(&self, o: &Self) -> Self {
        SphereElem::new(&self.f - &o.f, &self.g - &o.g)
    }

    pub fn neg(&self) -> Self {
        SphereElem::new(-self.f.clone(), -self.g.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &(&self.f * &o.f) + &(&(&self.g * &o.g) * &rho());
        let g = &(&self.f * &o.g) + &(&self.g * &o.f);
        SphereElem::new(f, g)
    }

    /// Monomials `(i0, i1, i2) -> c` of the reduced representative.
    pub fn monomials(&self) -> BTreeMap<(usize, usize, usize), Rat> {
        let mut out = BTreeMap::new();
        for (i0, part) in [(0, &self.f), (1, &self.g)] {
            for (i1, c1) in part.coeffs().iter().enumerate() {
                for (i2, c) in c1.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        out.insert((i0, i1, i2), c.clone());
                    }
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut monos: Vec<_> = self.monomials().into_iter().collect();
        monos.sort_by_key(|((a, b, c), _)| (a + b + c, *a, std::cmp::Reverse(*b)));
        let terms: Vec<String> = monos
            .iter()
            .map(|((a, b, c), k)| {
                let m: Vec<String> = [("X0", *a), ("X1", *b), ("X2", *c)]
                    .iter()
                    .map(|(v, e)| power(v, *e))
                    .filter(|s| !s.is_empty())
                    .collect();
                term(&fmt_rat(k), &m.join("*"))
            })
            .collect();
        join_terms(&terms)
    }
}

/// Normal form of an arbitrary polynomial in `X0, X1, X2`.
pub fn b2_reduce(p: &TriPoly) -> SphereElem {
    let x0 = SphereElem::var(0);
    p.coeffs().iter().rev().fold(SphereElem::default(), |acc, c| {
        acc.mul(&x0).add(&SphereElem::new(c.clone(), BiPoly::zero()))
    })
}

pub fn b2_mul(u: &SphereElem, v: &SphereElem) -> SphereElem {
    u.mul(v)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SphereRing;

impl Domain for SphereRing {
    type Elem = SphereElem;

    fn zero(&self) -> SphereElem {
        SphereElem::default()
    }
    fn one(&self) -> SphereElem {
        SphereElem::constant(Rat::one())
    }
    fn add(&self, a: &SphereElem, b: &SphereElem) -> SphereElem {
        a.add(b)
    }
    fn sub(&self, a: &SphereElem, b: &SphereElem) -> SphereElem {
        a.sub(b)
    }
    fn mul(&self, a: &SphereElem, b: &SphereElem) -> SphereElem {
        a.mul(b)
    }
    fn divide(&self, a: &SphereElem, b: &SphereElem) -> Option<SphereElem> {
        // a/b = a*conj(b)/N(b), with B2 free over Q[X1,X2] on {1, X0}
        let n = b.norm();
        if n.is_zero() {
            return None;
        }
        let t = a.mul(&b.conj());
        Some(SphereElem::new(t.f.exact_div(&n)?, t.g.exact_div(&n)?))
    }
    fn render(&self, a: &SphereElem) -> String {
        a.render()
    }
    fn describe(&self) -> String {
        "B2".into()
    }
}

pub type Mat3 = [[SphereElem; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(SphereElem::default(), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorCheck {
    pub identity: &'static str,
    pub holds: bool,
}

/// `E = I - x^T x` for `x = (X0, X1, X2)`, with its defining identities.
#[derive(Clone, Debug)]
pub struct TangentProjector {
    pub matrix: Mat3,
    pub square: Mat3,
    pub trace: SphereElem,
    pub checks: Vec<ProjectorCheck>,
}

impl TangentProjector {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn tangent_projector() -> TangentProjector {
    let x: [SphereElem; 3] = std::array::from_fn(SphereElem::var);
    let one = SphereElem::constant(Rat::one());
    let e: Mat3 = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let xx = x[i].mul(&x[j]);
            if i == j {
                one.sub(&xx)
            } else {
                xx.neg()
            }
        })
    });
    let square = mat_mul(&e, &e);
    let trace = (0..3).fold(SphereElem::default(), |acc, i| acc.add(&e[i][i]));
    let ex: Vec<SphereElem> = (0..3)
        .map(|i| (0..3).fold(SphereElem::default(), |acc, j| acc.add(&e[i][j].mul(&x[j]))))
        .collect();
    let xe: Vec<SphereElem> = (0..3)
        .map(|j| (0..3).fold(SphereElem::default(), |acc, i| acc.add(&x[i].mul(&e[i][j]))))
        .collect();
    let xxt = (0..3).fold(SphereElem::default(), |acc, i| acc.add(&x[i].mul(&x[i])));
    let checks = vec![
        ProjectorCheck {
            identity: "E^2 = E",
            holds: square == e,
        },
        ProjectorCheck {
            identity: "E x^T = 0",
            holds: ex.iter().all(SphereElem::is_zero),
        },
        ProjectorCheck {
            identity: "x E = 0",
            holds: xe.iter().all(SphereElem::is_zero),
        },
        ProjectorCheck {
            identity: "trace(E) = 2",
            holds: trace == SphereElem::constant(Rat::from_integer(2.into())),
        },
        ProjectorCheck {
            identity: "x x^T = 1",
            holds: xxt == one,
        },
    ];
    TangentProjector {
        matrix: e,
        square,
        trace,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> SphereElem {
        SphereElem::var(i)
    }

    #[test]
    fn relation() {
        assert_eq!(x(0).mul(&x(0)).render(), "1 - X1^2 - X2^2");
        let s = x(0).mul(&x(0)).add(&x(1).mul(&x(1))).add(&x(2).mul(&x(2)));
        assert_eq!(s.render(), "1");
        let one = SphereElem::constant(Rat::one());
        assert_eq!(one.add(&x(0)).mul(&one.sub(&x(0))).render(), "X1^2 + X2^2");
    }

    #[test]
    fn division() {
        let r = SphereRing;
        let one = r.one();
        let a = one.add(&x(0));
        let b = one.sub(&x(0));
        let p = a.mul(&b);
        assert_eq!(r.divide(&p, &a), Some(b.clone()));
        assert!(r.divide(&one, &a).is_none());
        assert!(r.divide(&x(1), &x(2)).is_none());
    }

    #[test]
    fn projector() {
        let t = tangent_projector();
        assert_eq!(t.checks.len(), 5);
        assert!(t.verified(), "{:?}", t.checks);
        assert_eq!(t.trace.render(), "2");
        assert_eq!(t.matrix[0][0].render(), "X1^2 + X2^2");
        assert_eq!(t.matrix[0][1].render(), "-X0*X1");
    }

    #[test]
    fn reduce_trivariate() {
        // X0^3 -> X0 - X0*X1^2 - X0*X2^2
        let p: TriPoly = Poly::monomial(BiPoly::one(), 3);
        assert_eq!(b2_reduce(&p).render(), "X0 - X0*X1^2 - X0*X2^2");
    }
}
