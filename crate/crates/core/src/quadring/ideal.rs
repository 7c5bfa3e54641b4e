use num_integer::Integer;
use num_traits::{One, Zero};

use super::elem::{divides, generator_key, QuadElem, QuadFrac, QuadOrder};
use super::lattice::{hnf, Hnf};
use crate::arith::num::{is_square, isqrt};
use crate::arith::{Int, Rat};
use crate::error::{Error, Result};

/// A nonzero ideal of Z[sqrt(d)].
///
/// The Z-basis `{A, B + C*sqrt(d)}` is in Hermite normal form (`A, C > 0`,
/// `0 <= B < A`); two ideals are equal iff their bases are. The generating
/// set the ideal was built from is kept for certificates.
#[derive(Clone, Debug)]
pub struct QuadIdeal {
    d: i64,
    a: Int,
    b: Int,
    c: Int,
    generators: Vec<QuadElem>,
}

impl PartialEq for QuadIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.d == o.d && self.a == o.a && self.b == o.b && self.c == o.c
    }
}

impl Eq for QuadIdeal {}

fn spanning_vectors(gens: &[QuadElem], d: i64) -> Vec<[Int; 2]> {
    let sd = QuadElem {
        x: Int::zero(),
        y: Int::one(),
        d,
    };
    gens.iter()
        .flat_map(|g| [g.coords(), g.mul(&sd).coords()])
        .collect()
}

impl QuadIdeal {
    pub fn from_generators(order: &QuadOrder, gens: &[QuadElem]) -> Result<Self> {
        for g in gens {
            order.check(g)?;
        }
        let h = hnf(&spanning_vectors(gens, order.d())).ok_or(Error::ZeroIdeal)?;
        let ideal = QuadIdeal {
            d: order.d(),
            a: h.a,
            b: h.b,
            c: h.c,
            generators: gens.to_vec(),
        };
        let sd = order.sqrt_d();
        for e in ideal.basis() {
            if !ideal.contains(&e.mul(&sd)) {
                return Err(Error::CertificateFailed(
                    "lattice not closed under sqrt(d)".into(),
                ));
            }
        }
        Ok(ideal)
    }

    pub fn principal(order: &QuadOrder, g: &QuadElem) -> Result<Self> {
        Self::from_generators(order, std::slice::from_ref(g))
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn order(&self) -> QuadOrder {
        QuadOrder::new(self.d).expect("validated at construction")
    }

    /// `(A, B, C)` of the normal-form basis.
    pub fn hnf_triple(&self) -> (Int, Int, Int) {
        (self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn generators(&self) -> &[QuadElem] {
        &self.generators
    }

    pub fn basis(&self) -> [QuadElem; 2] {
        [
            QuadElem {
                x: self.a.clone(),
                y: Int::zero(),
                d: self.d,
            },
            QuadElem {
                x: self.b.clone(),
                y: self.c.clone(),
                d: self.d,
            },
        ]
    }

    /// Index `[O : I] = A*C`.
    pub fn norm(&self) -> Int {
        &self.a * &self.c
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm().is_one()
    }

    fn transform(&self) -> Hnf {
        hnf(&spanning_vectors(&self.generators, self.d)).expect("nonzero ideal")
    }

    pub fn contains(&self, t: &QuadElem) -> bool {
        let h = Hnf {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            comb_a: vec![],
            comb_bc: vec![],
        };
        t.d == self.d && h.coordinates(&t.coords()).is_some()
    }

    /// Coefficients `l_i` in the order with `t = sum l_i * g_i` over the stored generators.
    pub fn express(&self, t: &QuadElem) -> Option<Vec<QuadElem>> {
        if t.d != self.d {
            return None;
        }
        let comb = self.transform().express(&t.coords())?;
        Some(
            comb.chunks(2)
                .map(|c| QuadElem {
                    x: c[0].clone(),
                    y: c[1].clone(),
                    d: self.d,
                })
                .collect(),
        )
    }

    /// Generated by all products of generators.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.d != o.d {
            return Err(Error::RingMismatch("ideals of different orders".into()));
        }
        let gens: Vec<QuadElem> = self
            .generators
            .iter()
            .flat_map(|g| o.generators.iter().map(move |h| g.mul(h)))
            .collect();
        Self::from_generators(&self.order(), &gens)
    }

    /// The same ideal with its two-element Z-basis as generators.
    pub fn reduced(&self) -> Self {
        Self::from_generators(&self.order(), &self.basis()).expect("basis of a nonzero ideal")
    }

    /// Generated by the Z-basis of the power.
    pub fn pow(&self, e: u32) -> Result<Self> {
        let base = self.reduced();
        let mut acc = Self::from_generators(&self.order(), &[self.order().int(1)])?;
        for _ in 0..e {
            acc = acc.mul(&base)?.reduced();
        }
        Ok(acc)
    }

    pub fn conjugate(&self) -> Self {
        let gens: Vec<QuadElem> = self.generators.iter().map(QuadElem::conj).collect();
        Self::from_generators(&self.order(), &gens).expect("conjugate of a nonzero ideal")
    }

    pub fn contains_ideal(&self, o: &Self) -> bool {
        o.basis().iter().all(|e| self.contains(e))
    }

    /// For every generator of `self`, its coefficients over the generators
    /// of `other`; then the same with the roles swapped.
    pub fn equality_certificate(&self, other: &Self) -> Option<IdealEquality> {
        let forward = self
            .generators
            .iter()
            .map(|g| other.express(g))
            .collect::<Option<Vec<_>>>()?;
        let backward = other
            .generators
            .iter()
            .map(|g| self.express(g))
            .collect::<Option<Vec<_>>>()?;
        Some(IdealEquality {
            lhs: self.generators.clone(),
            rhs: other.generators.clone(),
            lhs_in_rhs: forward,
            rhs_in_lhs: backward,
        })
    }

    /// Invertibility decided by `I * conj(I) = (N(I))`, together with the
    /// multiplier-ring test against the only possible overorder.
    pub fn invertibility(&self) -> Invertibility {
        let order = self.order();
        let conj = self.conjugate();
        let product = self.mul(&conj).expect("same order");
        let norm = self.norm();
        let principal_norm = QuadIdeal::principal(&order, &order.int(norm.clone())).expect("nonzero");
        let invertible = product == principal_norm;
        let overorder_multiplier = self.overorder_multiplier();
        debug_assert_eq!(invertible, overorder_multiplier.is_none());
        Invertibility {
            invertible,
            conjugate: conj,
            product,
            norm,
            overorder_multiplier,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.invertibility().invertible
    }

    /// When `d = 1 (mod 4)`, returns `(1 + sqrt(d))/2` if it multiplies the
    /// ideal into itself, i.e. when `(I : I)` is strictly larger than the order.
    pub fn overorder_multiplier(&self) -> Option<QuadFrac> {
        if self.d.rem_euclid(4) != 1 {
            return None;
        }
        let half = Rat::new(Int::one(), Int::from(2));
        let w = QuadFrac {
            x: half.clone(),
            y: half,
            d: self.d,
        };
        let stable = self.basis().iter().all(|e| {
            let p = w.mul(&QuadFrac {
                x: Rat::from_integer(e.x.clone()),
                y: Rat::from_integer(e.y.clone()),
                d: self.d,
            });
            p.x.is_integer()
                && p.y.is_integer()
                && self.contains(&QuadElem {
                    x: p.x.to_integer(),
                    y: p.y.to_integer(),
                    d: self.d,
                })
        });
        stable.then_some(w)
    }

    /// Decides principality by enumerating the elements of norm `N(I)`.
    pub fn principality(&self) -> PrincipalityVerdict {
        let inv = self.invertibility();
        if !inv.invertible {
            return PrincipalityVerdict::NotInvertible(Box::new(inv));
        }
        let mut search = norm_search(self.d, &self.norm());
        let mut rejections = Vec::new();
        for g in &search.solutions {
            if self.contains(g) {
                let coefficients = self.express(g).expect("member");
                let quotients = self
                    .generators
                    .iter()
                    .map(|h| divides(g, h).expect("nonzero").expect("(g) = I"))
                    .collect();
                search.rejections = rejections;
                return PrincipalityVerdict::Principal {
                    generator: g.clone(),
                    coefficients,
                    quotients,
                    search,
                };
            }
            let idx = self
                .generators
                .iter()
                .position(|h| divides(g, h).expect("nonzero").is_none())
                .expect("equal norms force some generator outside (g)");
            rejections.push((g.clone(), idx));
        }
        search.rejections = rejections;
        PrincipalityVerdict::NonPrincipal { search }
    }

    pub fn render(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(QuadElem::render).collect();
        format!("({})", gens.join(", "))
    }
}

/// Two-way generator membership proving two ideals equal.
#[derive(Clone, Debug)]
pub struct IdealEquality {
    pub lhs: Vec<QuadElem>,
    pub rhs: Vec<QuadElem>,
    /// `lhs[i] = sum_j lhs_in_rhs[i][j] * rhs[j]`.
    pub lhs_in_rhs: Vec<Vec<QuadElem>>,
    pub rhs_in_lhs: Vec<Vec<QuadElem>>,
}

impl IdealEquality {
    pub fn verify(&self) -> bool {
        fn check(targets: &[QuadElem], gens: &[QuadElem], combs: &[Vec<QuadElem>]) -> bool {
            targets.len() == combs.len()
                && targets.iter().zip(combs).all(|(t, c)| {
                    c.len() == gens.len()
                        && c.iter()
                            .zip(gens)
                            .fold(t.scale(&Int::zero()), |acc, (l, g)| acc.add(&l.mul(g)))
                            == *t
                })
        }
        check(&self.lhs, &self.rhs, &self.lhs_in_rhs) && check(&self.rhs, &self.lhs, &self.rhs_in_lhs)
    }
}

#[derive(Clone, Debug)]
pub struct Invertibility {
    pub invertible: bool,
    pub conjugate: QuadIdeal,
    /// `I * conj(I)`.
    pub product: QuadIdeal,
    pub norm: Int,
    /// `(1 + sqrt(d))/2` when it lies in `(I : I)`.
    pub overorder_multiplier: Option<QuadFrac>,
}

/// Exhaustive solution set of `x^2 - d*y^2 = N` (d < 0).
#[derive(Clone, Debug)]
pub struct NormSearch {
    pub d: i64,
    pub norm: Int,
    /// Largest `|y|` examined.
    pub y_bound: Int,
    /// All solutions, in tie-break order.
    pub solutions: Vec<QuadElem>,
    /// Rejected candidates with the index of a generator they fail to divide.
    pub rejections: Vec<(QuadElem, usize)>,
}

pub fn norm_search(d: i64, n: &Int) -> NormSearch {
    let md = Int::from(-d);
    let y_bound = isqrt(&n.div_floor(&md));
    let mut solutions = Vec::new();
    let mut y = Int::zero();
    while y <= y_bound {
        let rest = n - &md * &y * &y;
        if let Some(x) = is_square(&rest) {
            for sx in [x.clone(), -x.clone()] {
                for sy in [y.clone(), -y.clone()] {
                    let e = QuadElem {
                        x: sx.clone(),
                        y: sy,
                        d,
                    };
                    if !solutions.contains(&e) {
                        solutions.push(e);
                    }
                }
            }
        }
        y += 1;
    }
    solutions.sort_by_key(generator_key);
    NormSearch {
        d,
        norm: n.clone(),
        y_bound,
        solutions,
        rejections: Vec::new(),
    }
}

#[derive(Clone, Debug)]
pub enum PrincipalityVerdict {
    Principal {
        generator: QuadElem,
        /// `generator = sum coefficients[i] * generators[i]`.
        coefficients: Vec<QuadElem>,
        /// `generators[i] = generator * quotients[i]`.
        quotients: Vec<QuadElem>,
        search: NormSearch,
    },
    NonPrincipal {
        search: NormSearch,
    },
    NotInvertible(Box<Invertibility>),
}

impl PrincipalityVerdict {
    pub fn generator(&self) -> Option<&QuadElem> {
        match self {
            PrincipalityVerdict::Principal { generator, .. } => Some(generator),
            _ => None,
        }
    }

    pub fn is_principal(&self) -> bool {
        self.generator().is_some()
    }

    pub fn label(&self) -> &'static str {
        match self {
            PrincipalityVerdict::Principal { .. } => "principal",
            PrincipalityVerdict::NonPrincipal { .. } => "non-principal",
            PrincipalityVerdict::NotInvertible(_) => "not-invertible",
        }
    }
}

/// Ideal `(a, b)`.
pub fn ideal_from_pair(a: &QuadElem, b: &QuadElem) -> Result<QuadIdeal> {
    let order = QuadOrder::new(a.d)?;
    QuadIdeal::from_generators(&order, &[a.clone(), b.clone()])
}

pub fn ideal_mul(i: &QuadIdeal, j: &QuadIdeal) -> Result<QuadIdeal> {
    i.mul(j)
}

pub fn ideal_is_invertible(i: &QuadIdeal) -> Invertibility {
    i.invertibility()
}

pub fn ideal_is_principal(i: &QuadIdeal) -> PrincipalityVerdict {
    i.principality()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o5() -> QuadOrder {
        QuadOrder::new(-5).unwrap()
    }

    #[test]
    fn normal_forms() {
        let o = o5();
        let i = ideal_from_pair(&o.int(2), &o.elem(1, 1)).unwrap();
        assert_eq!(i.hnf_triple(), (2.into(), 1.into(), 1.into()));
        assert_eq!(i.norm(), 2.into());
        let unit = ideal_from_pair(&o.int(1), &o.elem(17, -4)).unwrap();
        assert!(unit.is_unit_ideal());
        let three = ideal_from_pair(&o.int(3), &o.int(0)).unwrap();
        assert_eq!(three.norm(), 9.into());
        assert_eq!(ideal_from_pair(&o.int(0), &o.int(0)), Err(Error::ZeroIdeal));
    }

    #[test]
    fn renormalization_is_idempotent() {
        let o = o5();
        let i = ideal_from_pair(&o.elem(3, 1), &o.elem(7, -2)).unwrap();
        let again = QuadIdeal::from_generators(&o, &i.basis()).unwrap();
        assert_eq!(i, again);
    }

    #[test]
    fn products() {
        let o = o5();
        let p = ideal_from_pair(&o.int(2), &o.elem(1, 1)).unwrap();
        let pc = ideal_from_pair(&o.int(2), &o.elem(1, -1)).unwrap();
        assert_eq!(ideal_mul(&p, &pc).unwrap(), QuadIdeal::principal(&o, &o.int(2)).unwrap());
        let q = ideal_from_pair(&o.int(3), &o.elem(1, 1)).unwrap();
        let qc = ideal_from_pair(&o.int(3), &o.elem(1, -1)).unwrap();
        assert_eq!(ideal_mul(&q, &qc).unwrap(), QuadIdeal::principal(&o, &o.int(3)).unwrap());
        let unit = QuadIdeal::principal(&o, &o.int(1)).unwrap();
        assert_eq!(ideal_mul(&p, &unit).unwrap(), p);
    }

    #[test]
    fn invertibility_examples() {
        let o = o5();
        assert!(ideal_from_pair(&o.int(2), &o.elem(1, 1)).unwrap().is_invertible());
        assert!(QuadIdeal::principal(&o, &o.int(7)).unwrap().is_invertible());
        let o3 = QuadOrder::new(-3).unwrap();
        let bad = ideal_from_pair(&o3.int(2), &o3.elem(1, 1)).unwrap();
        let inv = bad.invertibility();
        assert!(!inv.invertible);
        assert!(inv.overorder_multiplier.is_some());
    }

    #[test]
    fn principality_examples() {
        let o = o5();
        let p = ideal_from_pair(&o.int(2), &o.elem(1, 1)).unwrap();
        match p.principality() {
            PrincipalityVerdict::NonPrincipal { search } => assert!(search.solutions.is_empty()),
            v => panic!("{v:?}"),
        }
        let q = ideal_from_pair(&o.int(3), &o.elem(1, 1)).unwrap();
        assert!(matches!(q.principality(), PrincipalityVerdict::NonPrincipal { .. }));
        let g = QuadIdeal::principal(&o, &o.elem(1, 1)).unwrap();
        assert_eq!(g.principality().generator(), Some(&o.elem(1, 1)));
        let o3 = QuadOrder::new(-3).unwrap();
        let bad = ideal_from_pair(&o3.int(2), &o3.elem(1, 1)).unwrap();
        assert!(matches!(bad.principality(), PrincipalityVerdict::NotInvertible(_)));
    }

    #[test]
    fn generator_tie_break() {
        // norm 21 in Z[sqrt(-5)]: 1 +- 2 sqrt(-5) beats 4 +- sqrt(-5)
        let s = norm_search(-5, &Int::from(21));
        assert_eq!(s.solutions.len(), 8);
        assert_eq!(s.solutions[0], o5().elem(1, 2));
        assert_eq!(s.solutions[1], o5().elem(1, -2));
    }

    #[test]
    fn equality_certificate_verifies() {
        let o = o5();
        let p = ideal_from_pair(&o.int(2), &o.elem(1, 1)).unwrap();
        let pc = ideal_from_pair(&o.int(2), &o.elem(1, -1)).unwrap();
        let prod = p.mul(&pc).unwrap();
        let two = QuadIdeal::principal(&o, &o.int(2)).unwrap();
        let cert = prod.equality_certificate(&two).unwrap();
        assert!(cert.verify());
        assert!(p.equality_certificate(&two).is_none());
    }
}
