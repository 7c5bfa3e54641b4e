//! Prime ideals of the maximal order Z[sqrt(d)] (d = 2, 3 mod 4) and the
//! factorization of principal ideals into them.

use num_integer::Integer;
use num_traits::One;

use super::elem::{QuadElem, QuadOrder};
use super::ideal::QuadIdeal;
use crate::arith::num::{factor_int, sqrt_mod};
use crate::arith::Int;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    Ramified,
    Split,
    Inert,
}

impl Splitting {
    pub fn label(&self) -> &'static str {
        match self {
            Splitting::Ramified => "ramified",
            Splitting::Split => "split",
            Splitting::Inert => "inert",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    /// The rational prime below.
    pub p: Int,
    pub splitting: Splitting,
    pub ideal: QuadIdeal,
}

impl PrimeIdeal {
    pub fn norm(&self) -> Int {
        self.ideal.norm()
    }
}

fn require_maximal(order: &QuadOrder) -> Result<()> {
    if order.is_maximal() {
        Ok(())
    } else {
        Err(Error::UnsupportedRing(format!(
            "Z[sqrt({})] is not the maximal order (d = 1 mod 4)",
            order.d()
        )))
    }
}

/// The prime ideals lying over the rational prime `p`, from the
/// decomposition of `x^2 - d` modulo `p`.
pub fn primes_above(order: &QuadOrder, p: &Int) -> Result<Vec<PrimeIdeal>> {
    require_maximal(order)?;
    let d = Int::from(order.d());
    let pe = order.int(p.clone());
    let make = |g: QuadElem, splitting| -> Result<PrimeIdeal> {
        Ok(PrimeIdeal {
            p: p.clone(),
            splitting,
            ideal: QuadIdeal::from_generators(order, &[pe.clone(), g])?,
        })
    };
    if *p == Int::from(2) {
        let g = if order.d().rem_euclid(4) == 3 {
            order.elem(1, 1)
        } else {
            order.sqrt_d()
        };
        return Ok(vec![make(g, Splitting::Ramified)?]);
    }
    if d.is_multiple_of(p) {
        return Ok(vec![make(order.sqrt_d(), Splitting::Ramified)?]);
    }
    match sqrt_mod(&d, p) {
        Some(r) => Ok(vec![
            make(order.elem(r.clone(), 1), Splitting::Split)?,
            make(order.elem(r, -1), Splitting::Split)?,
        ]),
        None => Ok(vec![PrimeIdeal {
            p: p.clone(),
            splitting: Splitting::Inert,
            ideal: QuadIdeal::principal(order, &pe)?,
        }]),
    }
}

/// `(b) = prod P_i^{e_i}`, verified by re-multiplying.
#[derive(Clone, Debug)]
pub struct PrimeFactorization {
    pub element: QuadElem,
    pub factors: Vec<(PrimeIdeal, u32)>,
}

impl PrimeFactorization {
    pub fn product(&self) -> Result<QuadIdeal> {
        let order = QuadOrder::new(self.element.d)?;
        let mut acc = QuadIdeal::principal(&order, &order.int(1))?;
        for (p, e) in &self.factors {
            acc = acc.mul(&p.ideal.pow(*e)?)?;
        }
        Ok(acc)
    }

    pub fn verify(&self) -> Result<bool> {
        let order = QuadOrder::new(self.element.d)?;
        Ok(self.product()? == QuadIdeal::principal(&order, &self.element)?)
    }

    /// Total number of prime factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

/// Valuation of `b` at `P`: the largest `k` with `b` in `P^k`.
fn valuation(p: &QuadIdeal, b: &QuadElem) -> Result<u32> {
    let mut k = 0;
    let mut power = p.clone();
    while power.contains(b) {
        k += 1;
        power = power.mul(p)?;
    }
    Ok(k)
}

pub fn factor_principal(b: &QuadElem) -> Result<PrimeFactorization> {
    let order = QuadOrder::new(b.d)?;
    require_maximal(&order)?;
    if b.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = b.norm();
    if n.is_one() {
        return Err(Error::Precondition(format!("{} is a unit", b.render())));
    }
    let mut factors = Vec::new();
    for (p, _) in factor_int(&n) {
        for prime in primes_above(&order, &p)? {
            let e = valuation(&prime.ideal, b)?;
            if e > 0 {
                factors.push((prime, e));
            }
        }
    }
    let fact = PrimeFactorization {
        element: b.clone(),
        factors,
    };
    if !fact.verify()? {
        return Err(Error::CertificateFailed(format!(
            "prime factors of {} do not multiply back",
            b.render()
        )));
    }
    Ok(fact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_in_minus_five() {
        let o = QuadOrder::new(-5).unwrap();
        let f = factor_principal(&o.int(6)).unwrap();
        let p = QuadIdeal::from_generators(&o, &[o.int(2), o.elem(1, 1)]).unwrap();
        let q = QuadIdeal::from_generators(&o, &[o.int(3), o.elem(1, 1)]).unwrap();
        let qc = QuadIdeal::from_generators(&o, &[o.int(3), o.elem(1, -1)]).unwrap();
        let got: Vec<(QuadIdeal, u32)> = f.factors.iter().map(|(p, e)| (p.ideal.clone(), *e)).collect();
        assert_eq!(got.len(), 3);
        assert!(got.contains(&(p, 2)));
        assert!(got.contains(&(q, 1)));
        assert!(got.contains(&(qc, 1)));
    }

    #[test]
    fn ramified_and_inert() {
        let o = QuadOrder::new(-5).unwrap();
        let f = factor_principal(&o.sqrt_d()).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].0.splitting, Splitting::Ramified);
        assert_eq!(f.factors[0].1, 1);
        let f = factor_principal(&o.int(11)).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].0.splitting, Splitting::Inert);
    }

    #[test]
    fn rejects_non_maximal_and_units() {
        let o3 = QuadOrder::new(-3).unwrap();
        assert!(matches!(factor_principal(&o3.int(2)), Err(Error::UnsupportedRing(_))));
        let o = QuadOrder::new(-5).unwrap();
        assert!(factor_principal(&o.int(-1)).is_err());
        assert_eq!(factor_principal(&o.int(0)).unwrap_err(), Error::ZeroIdeal);
    }

    #[test]
    fn d_two_mod_four() {
        let o = QuadOrder::new(-6).unwrap();
        let f = factor_principal(&o.int(2)).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].1, 2);
        assert!(f.verify().unwrap());
    }
}
