//! Complete comaximal factorizations in Z and in maximal imaginary quadratic
//! orders.
//!
//! Two elements of a Dedekind domain are comaximal iff their prime supports
//! are disjoint, so a complete comaximal factorization of `b` is a partition
//! of the prime support of `(b)` (each prime with its full exponent) into
//! blocks whose products are principal and cannot be split further into two
//! principal sub-blocks. Enumerating set partitions is therefore exhaustive.

use std::convert::Infallible;
use std::fmt;

use num_traits::{One, Signed};

use crate::arith::num::{ext_gcd, factor_int};
use crate::arith::Int;
use crate::domain::{Domain, Integers};
use crate::error::{Error, Result};
use crate::quadring::{
    factor_principal, norm_search, PrimeIdeal, PrincipalityVerdict, QuadElem, QuadIdeal, QuadOrder,
};

pub const DEFAULT_SUPPORT_CAP: usize = 8;
/// Integers below 2^64 have at most 15 distinct prime factors.
pub const INT_SUPPORT_CAP: usize = 16;

/// Rings whose principal ideals factor into finitely many prime atoms.
pub trait ComaxRing: Domain {
    type Atom: Clone + fmt::Debug;
    /// Why a block product is not principal.
    type Evidence: Clone + fmt::Debug;

    /// Distinct primes of `(b)` with full exponents.
    fn support(&self, b: &Self::Elem) -> Result<Vec<Self::Atom>>;
    fn atom_label(&self, atom: &Self::Atom) -> String;
    /// A generator of the product of the atoms, or evidence it has none.
    fn block_generator(&self, atoms: &[&Self::Atom]) -> Result<std::result::Result<Self::Elem, Self::Evidence>>;
    /// `(l, m)` with `l*x + m*y = 1`.
    fn bezout(&self, x: &Self::Elem, y: &Self::Elem) -> Option<(Self::Elem, Self::Elem)>;
}

impl ComaxRing for Integers {
    type Atom = (Int, u32);
    type Evidence = Infallible;

    fn support(&self, b: &Int) -> Result<Vec<(Int, u32)>> {
        Ok(factor_int(b))
    }

    fn atom_label(&self, (p, e): &(Int, u32)) -> String {
        if *e == 1 {
            p.to_string()
        } else {
            format!("{p}^{e}")
        }
    }

    fn block_generator(&self, atoms: &[&(Int, u32)]) -> Result<std::result::Result<Int, Infallible>> {
        Ok(Ok(atoms.iter().fold(Int::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))))
    }

    fn bezout(&self, x: &Int, y: &Int) -> Option<(Int, Int)> {
        let (g, s, t) = ext_gcd(x, y);
        g.is_one().then_some((s, t))
    }
}

#[derive(Clone, Debug)]
pub struct QuadAtom {
    pub prime: PrimeIdeal,
    pub exponent: u32,
    /// `prime^exponent`.
    pub ideal: QuadIdeal,
}

/// A block product that is not principal.
#[derive(Clone, Debug)]
pub struct QuadBlockEvidence {
    pub ideal: QuadIdeal,
    pub verdict: PrincipalityVerdict,
}

impl ComaxRing for QuadOrder {
    type Atom = QuadAtom;
    type Evidence = QuadBlockEvidence;

    fn support(&self, b: &QuadElem) -> Result<Vec<QuadAtom>> {
        factor_principal(b)?
            .factors
            .into_iter()
            .map(|(prime, exponent)| {
                let ideal = prime.ideal.pow(exponent)?;
                Ok(QuadAtom {
                    prime,
                    exponent,
                    ideal,
                })
            })
            .collect()
    }

    fn atom_label(&self, a: &QuadAtom) -> String {
        let base = a.prime.ideal.render();
        if a.exponent == 1 {
            base
        } else {
            format!("{base}^{}", a.exponent)
        }
    }

    fn block_generator(
        &self,
        atoms: &[&QuadAtom],
    ) -> Result<std::result::Result<QuadElem, QuadBlockEvidence>> {
        let mut ideal = QuadIdeal::principal(self, &self.int(1))?;
        for a in atoms {
            ideal = ideal.mul(&a.ideal)?.reduced();
        }
        let verdict = ideal.principality();
        Ok(match verdict.generator() {
            Some(g) => Ok(g.clone()),
            None => Err(QuadBlockEvidence { ideal, verdict }),
        })
    }

    fn bezout(&self, x: &QuadElem, y: &QuadElem) -> Option<(QuadElem, QuadElem)> {
        let i = QuadIdeal::from_generators(self, &[x.clone(), y.clone()]).ok()?;
        let c = i.express(&self.int(1))?;
        Some((c[0].clone(), c[1].clone()))
    }
}

/// `lambda*factors[i] + mu*factors[j] = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairBezout<E> {
    pub i: usize,
    pub j: usize,
    pub lambda: E,
    pub mu: E,
}

#[derive(Clone, Debug)]
pub struct SplitRejection<Ev> {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// True when the left sub-block is the non-principal one.
    pub left_fails: bool,
    pub evidence: Ev,
}

/// Every split of a block into two nonempty sub-blocks, each with a
/// non-principal side.
#[derive(Clone, Debug)]
pub struct PseudoTranscript<Ev> {
    pub block: Vec<usize>,
    pub rejected_splits: Vec<SplitRejection<Ev>>,
}

impl<Ev> PseudoTranscript<Ev> {
    /// A block of size k has 2^(k-1) - 1 two-block splits.
    pub fn is_complete(&self) -> bool {
        let k = self.block.len() as u32;
        self.rejected_splits.len() == (1usize << (k - 1)) - 1
            && self.rejected_splits.iter().all(|s| {
                let mut all: Vec<usize> = s.left.iter().chain(&s.right).copied().collect();
                all.sort_unstable();
                all == self.block && !s.left.is_empty() && !s.right.is_empty()
            })
    }
}

#[derive(Clone, Debug)]
pub struct ComaxFactorization<E, Ev> {
    pub element: E,
    /// Labels of the support atoms, indexed by `blocks`.
    pub support: Vec<String>,
    pub blocks: Vec<Vec<usize>>,
    pub factors: Vec<E>,
    /// `element = unit * prod factors`.
    pub unit: E,
    pub bezout: Vec<PairBezout<E>>,
    pub transcripts: Vec<PseudoTranscript<Ev>>,
}

impl<E: Clone + PartialEq, Ev> ComaxFactorization<E, Ev> {
    /// Product, unit, pairwise Bezout identities and transcript completeness.
    pub fn verify<D: Domain<Elem = E>>(&self, ring: &D) -> bool {
        let prod = self.factors.iter().fold(ring.one(), |acc, f| ring.mul(&acc, f));
        let k = self.factors.len();
        ring.mul(&self.unit, &prod) == self.element
            && ring.is_unit(&self.unit)
            && self.factors.iter().all(|f| !ring.is_unit(f))
            && self.bezout.len() == k * (k - 1) / 2
            && self.bezout.iter().all(|c| {
                ring.add(
                    &ring.mul(&c.lambda, &self.factors[c.i]),
                    &ring.mul(&c.mu, &self.factors[c.j]),
                ) == ring.one()
            })
            && self.transcripts.len() == k
            && self.transcripts.iter().all(PseudoTranscript::is_complete)
    }
}

fn mask_indices(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).collect()
}

/// Proper nonempty submasks `s` of `mask` with the lowest bit of `mask` in `s`,
/// listing each unordered split once.
fn splits(mask: usize) -> Vec<(usize, usize)> {
    let low = mask & mask.wrapping_neg();
    let mut out = Vec::new();
    let mut s = (mask - 1) & mask;
    while s > 0 {
        if s & low != 0 {
            out.push((s, mask ^ s));
        }
        s = (s - 1) & mask;
    }
    out.reverse();
    out
}

/// Block analysis over all subsets of the support.
struct Lattice<R: ComaxRing> {
    atoms: Vec<R::Atom>,
    gens: Vec<Option<std::result::Result<R::Elem, R::Evidence>>>,
}

impl<R: ComaxRing> Lattice<R> {
    fn new(ring: &R, b: &R::Elem, cap: usize) -> Result<Self> {
        if ring.is_zero(b) {
            return Err(Error::ZeroIdeal);
        }
        if ring.is_unit(b) {
            return Err(Error::Precondition(format!("{} is a unit", ring.render(b))));
        }
        let atoms = ring.support(b)?;
        if atoms.len() > cap {
            return Err(Error::SupportCapExceeded {
                size: atoms.len(),
                cap,
            });
        }
        let n = atoms.len();
        let mut gens = vec![None];
        for mask in 1..(1usize << n) {
            let sel: Vec<&R::Atom> = mask_indices(mask).into_iter().map(|i| &atoms[i]).collect();
            gens.push(Some(ring.block_generator(&sel)?));
        }
        Ok(Lattice { atoms, gens })
    }

    fn full(&self) -> usize {
        (1usize << self.atoms.len()) - 1
    }

    fn generator(&self, mask: usize) -> std::result::Result<&R::Elem, &R::Evidence> {
        self.gens[mask].as_ref().expect("nonempty mask").as_ref()
    }

    /// The transcript if the block is principal and pseudo-irreducible; otherwise
    /// the first principal split found.
    fn analyze(&self, mask: usize) -> Option<std::result::Result<PseudoTranscript<R::Evidence>, (usize, usize)>> {
        self.generator(mask).ok()?;
        let mut rejected = Vec::new();
        for (s, t) in splits(mask) {
            match (self.generator(s), self.generator(t)) {
                (Ok(_), Ok(_)) => return Some(Err((s, t))),
                (Err(ev), _) | (Ok(_), Err(ev)) => rejected.push(SplitRejection {
                    left: mask_indices(s),
                    right: mask_indices(t),
                    left_fails: self.generator(s).is_err(),
                    evidence: ev.clone(),
                }),
            }
        }
        Some(Ok(PseudoTranscript {
            block: mask_indices(mask),
            rejected_splits: rejected,
        }))
    }

    fn partitions(&self, rest: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, pi: &[bool]) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        let low = rest & rest.wrapping_neg();
        let mut blocks: Vec<usize> = Vec::new();
        let mut s = rest;
        while s > 0 {
            if s & low != 0 && pi[s] {
                blocks.push(s);
            }
            s = (s - 1) & rest;
        }
        blocks.sort_unstable();
        for blk in blocks {
            current.push(blk);
            self.partitions(rest ^ blk, current, out, pi);
            current.pop();
        }
    }
}

/// Whether `b` is pseudo-irreducible, with the full transcript of rejected
/// splits when it is, or a principal split `(c, d)` when it is not.
#[derive(Clone, Debug)]
pub enum PseudoVerdict<E, Ev> {
    Irreducible(PseudoTranscript<Ev>),
    Splits {
        left: E,
        right: E,
        left_block: Vec<usize>,
        right_block: Vec<usize>,
    },
}

impl<E, Ev> PseudoVerdict<E, Ev> {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, PseudoVerdict::Irreducible(_))
    }
}

pub fn is_pseudo_irreducible<R: ComaxRing>(
    ring: &R,
    b: &R::Elem,
    cap: usize,
) -> Result<PseudoVerdict<R::Elem, R::Evidence>> {
    let lat = Lattice::new(ring, b, cap)?;
    match lat.analyze(lat.full()).expect("(b) is principal") {
        Ok(t) => Ok(PseudoVerdict::Irreducible(t)),
        Err((s, t)) => Ok(PseudoVerdict::Splits {
            left: lat.generator(s).ok().expect("principal").clone(),
            right: lat.generator(t).ok().expect("principal").clone(),
            left_block: mask_indices(s),
            right_block: mask_indices(t),
        }),
    }
}

pub fn enumerate_complete_factorizations<R: ComaxRing>(
    ring: &R,
    b: &R::Elem,
    cap: usize,
) -> Result<Vec<ComaxFactorization<R::Elem, R::Evidence>>> {
    let lat = Lattice::new(ring, b, cap)?;
    let full = lat.full();
    let mut transcripts: Vec<Option<PseudoTranscript<R::Evidence>>> = vec![None];
    for mask in 1..=full {
        transcripts.push(lat.analyze(mask).and_then(|r| r.ok()));
    }
    let pi: Vec<bool> = transcripts.iter().map(Option::is_some).collect();
    let mut parts = Vec::new();
    lat.partitions(full, &mut Vec::new(), &mut parts, &pi);
    let support: Vec<String> = lat.atoms.iter().map(|a| ring.atom_label(a)).collect();
    parts
        .into_iter()
        .map(|blocks| {
            let factors: Vec<R::Elem> = blocks
                .iter()
                .map(|&m| lat.generator(m).ok().expect("principal block").clone())
                .collect();
            let prod = factors.iter().fold(ring.one(), |acc, f| ring.mul(&acc, f));
            let unit = ring
                .divide(b, &prod)
                .filter(|u| ring.is_unit(u))
                .ok_or_else(|| Error::CertificateFailed("factors do not multiply to b up to a unit".into()))?;
            let mut bezout = Vec::new();
            for i in 0..factors.len() {
                for j in i + 1..factors.len() {
                    let (lambda, mu) = ring.bezout(&factors[i], &factors[j]).ok_or_else(|| {
                        Error::CertificateFailed(format!(
                            "{} and {} are not comaximal",
                            ring.render(&factors[i]),
                            ring.render(&factors[j])
                        ))
                    })?;
                    bezout.push(PairBezout { i, j, lambda, mu });
                }
            }
            let f = ComaxFactorization {
                element: b.clone(),
                support: support.clone(),
                blocks: blocks.iter().map(|&m| mask_indices(m)).collect(),
                transcripts: blocks
                    .iter()
                    .map(|&m| transcripts[m].clone().expect("pseudo-irreducible block"))
                    .collect(),
                factors,
                unit,
                bezout,
            };
            if !f.verify(ring) {
                return Err(Error::CertificateFailed("factorization fails to re-verify".into()));
            }
            Ok(f)
        })
        .collect()
}

/// The unique complete comaximal factorization of `n` in Z: its prime powers.
pub fn comax_factor_int(n: &Int) -> Result<ComaxFactorization<Int, Infallible>> {
    let mut all = enumerate_complete_factorizations(&Integers, n, INT_SUPPORT_CAP)?;
    if all.len() != 1 {
        return Err(Error::CertificateFailed(format!(
            "{} complete comaximal factorizations of {n} in Z",
            all.len()
        )));
    }
    Ok(all.remove(0))
}

#[derive(Clone, Debug)]
pub struct HuntResult<E, Ev> {
    pub element: E,
    pub norm: Int,
    pub factorizations: Vec<ComaxFactorization<E, Ev>>,
    /// Nonzero nonunits examined, including the witness.
    pub scanned: u64,
}

/// First element, by increasing norm and then lexicographic `(x, y)`, with at
/// least two complete comaximal factorizations.
pub fn find_nonunique_witness(
    order: &QuadOrder,
    norm_bound: &Int,
    cap: usize,
) -> Result<Option<HuntResult<QuadElem, QuadBlockEvidence>>> {
    if !order.is_maximal() {
        return Err(Error::UnsupportedRing(format!(
            "Z[sqrt({})] is not the maximal order",
            order.d()
        )));
    }
    let mut scanned = 0;
    let mut n = Int::from(2);
    while n <= *norm_bound {
        let mut elems = norm_search(order.d(), &n).solutions;
        elems.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
        for e in elems {
            scanned += 1;
            let fs = enumerate_complete_factorizations(order, &e, cap)?;
            if fs.len() >= 2 {
                return Ok(Some(HuntResult {
                    element: e,
                    norm: n,
                    factorizations: fs,
                    scanned,
                }));
            }
        }
        n += 1;
    }
    Ok(None)
}

/// The same scan in Z (by increasing `|n|`, positive first); never succeeds
/// since Z is a UFD, but the scan is carried out.
pub fn find_nonunique_witness_int(bound: &Int) -> Result<Option<HuntResult<Int, Infallible>>> {
    let mut scanned = 0;
    let mut n = Int::from(2);
    while n <= *bound {
        for e in [-n.clone(), n.clone()] {
            scanned += 1;
            let fs = enumerate_complete_factorizations(&Integers, &e, INT_SUPPORT_CAP)?;
            if fs.len() >= 2 {
                return Ok(Some(HuntResult {
                    norm: e.abs(),
                    element: e,
                    factorizations: fs,
                    scanned,
                }));
            }
        }
        n += 1;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn int_prime_powers() {
        let f = comax_factor_int(&int(360)).unwrap();
        assert_eq!(f.factors, vec![int(8), int(9), int(5)]);
        assert_eq!(f.unit, int(1));
        assert!(f.verify(&Integers));
        let f = comax_factor_int(&int(-8)).unwrap();
        assert_eq!(f.factors, vec![int(8)]);
        assert_eq!(f.unit, int(-1));
        assert!(comax_factor_int(&int(1)).is_err());
        assert!(comax_factor_int(&int(0)).is_err());
    }

    #[test]
    fn pseudo_irreducibility() {
        let o = QuadOrder::new(-5).unwrap();
        assert!(is_pseudo_irreducible(&o, &o.int(2), 8).unwrap().is_irreducible());
        match is_pseudo_irreducible(&o, &o.int(3), 8).unwrap() {
            PseudoVerdict::Irreducible(t) => {
                assert_eq!(t.rejected_splits.len(), 1);
                assert!(t.is_complete());
            }
            v => panic!("{v:?}"),
        }
        assert!(!is_pseudo_irreducible(&Integers, &int(6), 8).unwrap().is_irreducible());
    }

    #[test]
    fn six_and_twenty_one() {
        let o = QuadOrder::new(-5).unwrap();
        let six = enumerate_complete_factorizations(&o, &o.int(6), 8).unwrap();
        assert_eq!(six.len(), 1);
        let mut fs = six[0].factors.clone();
        fs.sort_by_key(|e| e.x.clone());
        assert_eq!(fs, vec![o.int(2), o.int(3)]);
        let tw = enumerate_complete_factorizations(&o, &o.int(21), 8).unwrap();
        assert_eq!(tw.len(), 3);
        let mut sets: Vec<Vec<QuadElem>> = tw
            .iter()
            .map(|f| {
                let mut v = f.factors.clone();
                v.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
                v
            })
            .collect();
        sets.sort_by(|a, b| (&a[0].x, &a[0].y).cmp(&(&b[0].x, &b[0].y)));
        assert_eq!(
            sets,
            vec![
                vec![o.elem(1, -2), o.elem(1, 2)],
                vec![o.int(3), o.int(7)],
                vec![o.elem(4, -1), o.elem(4, 1)],
            ]
        );
    }

    #[test]
    fn support_cap() {
        let n = int(2 * 3 * 5 * 7 * 11);
        assert_eq!(
            enumerate_complete_factorizations(&Integers, &n, 4).unwrap_err(),
            Error::SupportCapExceeded { size: 5, cap: 4 }
        );
    }

    #[test]
    fn hunting() {
        let o = QuadOrder::new(-5).unwrap();
        assert!(find_nonunique_witness(&o, &int(5), 8).unwrap().is_none());
        assert!(find_nonunique_witness_int(&int(200)).unwrap().is_none());
    }

    #[test]
    fn split_listing() {
        assert_eq!(splits(0b111).len(), 3);
        assert_eq!(splits(0b1).len(), 0);
        assert_eq!(splits(0b1111).len(), 7);
    }
}
