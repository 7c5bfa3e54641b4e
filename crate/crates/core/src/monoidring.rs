//! Monoid domains `D[X; S]` with `S` a submonoid of `(Q>=0, +)` (or a
//! subgroup of `Q`) of the form `Z_T ∩ Q>=0`: exponents whose denominators
//! only involve the primes of `T`.
//!
//! Every finite set of elements lives in a polynomial (or Laurent) ring
//! `D[Z]`, `Z = X^t`, for a common generator `t`; division and certificate
//! checks go through that representation.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::num::{denominator_primes, fmt_rat, inv_mod, is_prime, rat_gcd};
use crate::arith::poly::{join_terms, term};
use crate::arith::{Int, Poly, Rat};
use crate::domain::Domain;
use crate::error::{Error, Result};

/// The coefficient domain `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseRing {
    Integers,
    Rationals,
    /// `Z[1/p : p in primes]`.
    Localized(Vec<Int>),
    /// `F_p`.
    PrimeField(Int),
}

impl BaseRing {
    pub fn characteristic(&self) -> Int {
        match self {
            BaseRing::PrimeField(p) => p.clone(),
            _ => Int::zero(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BaseRing::Integers => "Z".into(),
            BaseRing::Rationals => "Q".into(),
            BaseRing::Localized(ps) => {
                let inv: Vec<String> = ps.iter().map(|p| format!("1/{p}")).collect();
                format!("Z[{}]", inv.join(","))
            }
            BaseRing::PrimeField(p) => format!("F{p}"),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, BaseRing::Rationals | BaseRing::PrimeField(_))
    }

    /// Canonical representative, or `None` if `c` is not in the ring.
    pub fn coeff(&self, c: &Rat) -> Option<Rat> {
        match self {
            BaseRing::Integers => c.is_integer().then(|| c.clone()),
            BaseRing::Rationals => Some(c.clone()),
            BaseRing::Localized(ps) => denominator_primes(c)
                .iter()
                .all(|q| ps.contains(q))
                .then(|| c.clone()),
            BaseRing::PrimeField(p) => {
                let inv = inv_mod(c.denom(), p)?;
                Some(Rat::from_integer((c.numer() * inv).mod_floor(p)))
            }
        }
    }

    pub fn is_unit(&self, c: &Rat) -> bool {
        if c.is_zero() {
            return false;
        }
        match self {
            BaseRing::Integers => c.abs().is_one(),
            BaseRing::Rationals | BaseRing::PrimeField(_) => self.coeff(c).is_some_and(|x| !x.is_zero()),
            BaseRing::Localized(_) => self.coeff(c).is_some() && self.coeff(&c.recip()).is_some(),
        }
    }

    pub fn inverse(&self, c: &Rat) -> Option<Rat> {
        if !self.is_unit(c) {
            return None;
        }
        match self {
            BaseRing::PrimeField(p) => inv_mod(&c.to_integer(), p).map(Rat::from_integer),
            _ => Some(c.recip()),
        }
    }
}

/// Denominator description of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    /// Denominators are powers of one prime.
    PDivisible(Int),
    /// Denominators are products of the listed primes.
    Multiplicative(Vec<Int>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidDesc {
    pub kind: MonoidKind,
    /// Exponents range over the group `Z_T` rather than `Z_T ∩ Q>=0`.
    pub group: bool,
}

impl MonoidDesc {
    pub fn new(kind: MonoidKind, group: bool) -> Result<Self> {
        let primes = match &kind {
            MonoidKind::PDivisible(p) => vec![p.clone()],
            MonoidKind::Multiplicative(ps) => ps.clone(),
        };
        if primes.is_empty() {
            return Err(Error::Precondition("the monoid needs at least one prime denominator".into()));
        }
        if let Some(q) = primes.iter().find(|q| !is_prime(q)) {
            return Err(Error::Precondition(format!("{q} is not prime")));
        }
        Ok(MonoidDesc { kind, group })
    }

    pub fn p_divisible(p: i64) -> Result<Self> {
        Self::new(MonoidKind::PDivisible(Int::from(p)), false)
    }

    pub fn primes(&self) -> Vec<Int> {
        let mut v = match &self.kind {
            MonoidKind::PDivisible(p) => vec![p.clone()],
            MonoidKind::Multiplicative(ps) => ps.clone(),
        };
        v.sort();
        v.dedup();
        v
    }

    pub fn contains(&self, s: &Rat) -> bool {
        (self.group || !s.is_negative()) && denominator_primes(s).iter().all(|q| self.primes().contains(q))
    }

    /// S is q-divisible: `s/q` in S for every s.
    pub fn divisible_by(&self, q: &Int) -> bool {
        self.primes().contains(q)
    }

    pub fn describe(&self) -> String {
        let k = match &self.kind {
            MonoidKind::PDivisible(p) => format!("p-div:{p}"),
            MonoidKind::Multiplicative(ps) => {
                let s: Vec<String> = ps.iter().map(Int::to_string).collect();
                format!("mult:{{{}}}", s.join(","))
            }
        };
        if self.group {
            format!("{k} group")
        } else {
            k
        }
    }
}

/// A finite sum of `c * X^s`, keyed by exponent, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MonoidElem {
    terms: BTreeMap<Rat, Rat>,
}

impl fmt::Debug for MonoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoidElem({})", render_terms(self))
    }
}

fn render_exp(s: &Rat) -> String {
    if s.is_one() {
        "X".into()
    } else if s.is_integer() && s.is_positive() {
        format!("X^{s}")
    } else {
        format!("X^({})", fmt_rat(s))
    }
}

fn render_terms(e: &MonoidElem) -> String {
    let terms: Vec<String> = e
        .terms
        .iter()
        .map(|(s, c)| {
            let m = if s.is_zero() { String::new() } else { render_exp(s) };
            term(&fmt_rat(c), &m)
        })
        .collect();
    join_terms(&terms)
}

impl MonoidElem {
    pub fn terms(&self) -> &BTreeMap<Rat, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Rat> {
        self.terms.keys()
    }
}

/// The ring `D[X; S]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidRing {
    pub base: BaseRing,
    pub monoid: MonoidDesc,
}

/// Rational gcd of the nonzero exponents: the largest `t` with every
/// exponent an integer multiple of `t`.
pub fn mr_common_generator(elems: &[MonoidElem]) -> Result<Rat> {
    elems
        .iter()
        .flat_map(|e| e.exponents())
        .filter(|s| !s.is_zero())
        .fold(None, |g: Option<Rat>, s| Some(g.map_or_else(|| s.abs(), |g| rat_gcd(&g, s))))
        .ok_or_else(|| Error::Precondition("no nonzero exponent: common generator undefined".into()))
}

fn mod_poly_divrem(f: &[Int], g: &[Int], p: &Int) -> Option<(Vec<Int>, Vec<Int>)> {
    let g: Vec<Int> = g.iter().map(|c| c.mod_floor(p)).collect();
    let dg = g.iter().rposition(|c| !c.is_zero())?;
    let li = inv_mod(&g[dg], p)?;
    let mut r: Vec<Int> = f.iter().map(|c| c.mod_floor(p)).collect();
    let mut q = vec![Int::zero(); r.len().saturating_sub(dg).max(1)];
    while let Some(dr) = r.iter().rposition(|c| !c.is_zero()) {
        if dr < dg {
            break;
        }
        let c = (&r[dr] * &li).mod_floor(p);
        for (j, gc) in g.iter().enumerate().take(dg + 1) {
            r[dr - dg + j] = (&r[dr - dg + j] - &c * gc).mod_floor(p);
        }
        q[dr - dg] = c;
    }
    Some((q, r))
}

impl MonoidRing {
    pub fn new(base: BaseRing, monoid: MonoidDesc) -> Result<Self> {
        let chi = base.characteristic();
        if !chi.is_zero() && monoid.primes() == vec![chi.clone()] {
            return Err(Error::Hypothesis {
                case: "(3)".into(),
                detail: format!("S must be {chi}-pure over a base of characteristic {chi}"),
            });
        }
        Ok(MonoidRing { base, monoid })
    }

    pub fn elem(&self, terms: impl IntoIterator<Item = (Rat, Rat)>) -> Result<MonoidElem> {
        let mut acc = MonoidElem::default();
        for (s, c) in terms {
            acc = self.add(&acc, &self.monomial(&c, &s)?);
        }
        Ok(acc)
    }

    /// `c * X^s`, checked against `S` and `D`.
    pub fn monomial(&self, c: &Rat, s: &Rat) -> Result<MonoidElem> {
        if !self.monoid.contains(s) {
            return Err(Error::NotInRing(format!(
                "exponent {} is not in S = {}",
                fmt_rat(s),
                self.monoid.describe()
            )));
        }
        let c = self.base.coeff(c).ok_or_else(|| {
            Error::NotInRing(format!("coefficient {} is not in {}", fmt_rat(c), self.base.describe()))
        })?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(s.clone(), c);
        }
        Ok(MonoidElem { terms })
    }

    pub fn constant(&self, c: i64) -> MonoidElem {
        self.monomial(&Rat::from_integer(c.into()), &Rat::zero()).expect("integers are in every base")
    }

    pub fn x_pow(&self, s: &Rat) -> Result<MonoidElem> {
        self.monomial(&Rat::one(), s)
    }

    fn norm_coeff(&self, c: Rat) -> Rat {
        match &self.base {
            BaseRing::PrimeField(p) => Rat::from_integer(c.to_integer().mod_floor(p)),
            _ => c,
        }
    }

    fn from_map(&self, raw: BTreeMap<Rat, Rat>) -> MonoidElem {
        MonoidElem {
            terms: raw
                .into_iter()
                .map(|(s, c)| (s, self.norm_coeff(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, a: &MonoidElem, c: &Rat) -> MonoidElem {
        self.from_map(a.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect())
    }

    /// Coefficients of `a * X^(-shift)` as a polynomial in `Z = X^t`.
    fn to_poly(&self, a: &MonoidElem, t: &Rat, shift: &Rat) -> Vec<Rat> {
        let mut v: Vec<Rat> = Vec::new();
        for (s, c) in &a.terms {
            let k = ((s - shift) / t).to_integer();
            let k: usize = k.try_into().expect("exponent index");
            if v.len() <= k {
                v.resize(k + 1, Rat::zero());
            }
            v[k] = c.clone();
        }
        v
    }

    fn from_poly(&self, coeffs: &[Rat], t: &Rat, shift: &Rat) -> MonoidElem {
        self.from_map(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (shift + t * Rat::from_integer(k.into()), c.clone()))
                .collect(),
        )
    }

    /// `a` as a polynomial in `Z = X^t` over `Q` (or `F_p`), with no shift.
    pub fn in_generator(&self, a: &MonoidElem, t: &Rat) -> Result<Poly<Rat>> {
        if a.terms.keys().any(|s| s.is_negative() || !(s / t).is_integer()) {
            return Err(Error::Precondition(format!(
                "{} is not a polynomial in X^({})",
                render_terms(a),
                fmt_rat(t)
            )));
        }
        Ok(Poly::from_coeffs(self.to_poly(a, t, &Rat::zero())))
    }

    fn min_exp(&self, a: &MonoidElem) -> Rat {
        if self.monoid.group {
            a.terms.keys().next().cloned().unwrap_or_else(Rat::zero)
        } else {
            Rat::zero()
        }
    }

    fn exact_divide(&self, a: &MonoidElem, b: &MonoidElem) -> Option<MonoidElem> {
        if b.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(MonoidElem::default());
        }
        let t = mr_common_generator(&[a.clone(), b.clone()]).unwrap_or_else(|_| Rat::one());
        let (ma, mb) = (self.min_exp(a), self.min_exp(b));
        let (pa, pb) = (self.to_poly(a, &t, &ma), self.to_poly(b, &t, &mb));
        let q = match &self.base {
            BaseRing::PrimeField(p) => {
                let ia: Vec<Int> = pa.iter().map(Rat::to_integer).collect();
                let ib: Vec<Int> = pb.iter().map(Rat::to_integer).collect();
                let (q, r) = mod_poly_divrem(&ia, &ib, p)?;
                if r.iter().any(|c| !c.is_zero()) {
                    return None;
                }
                q.into_iter().map(Rat::from_integer).collect::<Vec<_>>()
            }
            _ => {
                let (q, r) = Poly::from_coeffs(pa).divrem(&Poly::from_coeffs(pb)).ok()?;
                if !r.is_zero() {
                    return None;
                }
                q.into_coeffs()
            }
        };
        if q.iter().any(|c| self.base.coeff(c).is_none()) {
            return None;
        }
        let out = self.from_poly(&q, &t, &(ma - mb));
        out.terms.keys().all(|s| self.monoid.contains(s)).then_some(out)
    }
}

impl Domain for MonoidRing {
    type Elem = MonoidElem;

    fn zero(&self) -> MonoidElem {
        MonoidElem::default()
    }
    fn one(&self) -> MonoidElem {
        self.constant(1)
    }
    fn add(&self, a: &MonoidElem, b: &MonoidElem) -> MonoidElem {
        let mut m = a.terms.clone();
        for (s, c) in &b.terms {
            let e = m.entry(s.clone()).or_insert_with(Rat::zero);
            *e = &*e + c;
        }
        self.from_map(m)
    }
    fn sub(&self, a: &MonoidElem, b: &MonoidElem) -> MonoidElem {
        self.add(a, &self.scale(b, &-Rat::one()))
    }
    fn mul(&self, a: &MonoidElem, b: &MonoidElem) -> MonoidElem {
        let mut m: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (s, c) in &a.terms {
            for (u, d) in &b.terms {
                let e = m.entry(s + u).or_insert_with(Rat::zero);
                *e = &*e + c * d;
            }
        }
        self.from_map(m)
    }
    fn divide(&self, a: &MonoidElem, b: &MonoidElem) -> Option<MonoidElem> {
        self.exact_divide(a, b)
    }
    fn render(&self, a: &MonoidElem) -> String {
        render_terms(a)
    }
    fn describe(&self) -> String {
        format!("{}[X;S]", self.base.describe())
    }
}

/// `lambda*f + mu*g = 1` in the monoid ring.
#[derive(Clone, Debug, PartialEq)]
pub struct MonoidBezout {
    pub i: usize,
    pub j: usize,
    pub lambda: MonoidElem,
    pub mu: MonoidElem,
}

/// `1 - X^s = (1 - X^t)(1 + X^t + ... + X^((n-1)t))`, `t = s/n`.
#[derive(Clone, Debug)]
pub struct MrSplit {
    pub s: Rat,
    pub n: Int,
    pub t: Rat,
    /// Which hypothesis makes `n` a unit of `D`.
    pub case: &'static str,
    pub f1: MonoidElem,
    pub f2: MonoidElem,
    /// `f2 = f1*q + n` in `D[Z]`, `Z = X^t`.
    pub quotient: MonoidElem,
    pub remainder: Int,
    /// `lambda*f1 + mu*f2 = 1` with `lambda = -q/n`, `mu = 1/n`.
    pub lambda: MonoidElem,
    pub mu: MonoidElem,
}

impl MrSplit {
    pub fn verify(&self, ring: &MonoidRing) -> bool {
        let one = ring.one();
        let lhs = ring.sub(&one, &ring.x_pow(&self.s).expect("s in S"));
        let n = ring.constant_int(&self.remainder);
        ring.mul(&self.f1, &self.f2) == lhs
            && ring.add(&ring.mul(&self.f1, &self.quotient), &n) == self.f2
            && ring.add(&ring.mul(&self.lambda, &self.f1), &ring.mul(&self.mu, &self.f2)) == one
    }
}

impl MonoidRing {
    pub fn constant_int(&self, n: &Int) -> MonoidElem {
        self.monomial(&Rat::from_integer(n.clone()), &Rat::zero()).expect("integer")
    }

    fn case_label(&self, n: &Int) -> &'static str {
        if !self.base.characteristic().is_zero() {
            "(3)"
        } else if is_prime(n) && self.monoid.divisible_by(n) {
            "(1)"
        } else {
            "(2)"
        }
    }

    fn check_unit(&self, n: &Int) -> Result<&'static str> {
        let case = self.case_label(n);
        if self.base.is_unit(&Rat::from_integer(n.clone())) {
            return Ok(case);
        }
        let detail = match case {
            "(1)" => format!(
                "{n} is not a unit of {}: S is {n}-divisible, which needs Z[1/{n}] in D",
                self.base.describe()
            ),
            "(3)" => format!(
                "{n} is not coprime to the characteristic {}",
                self.base.characteristic()
            ),
            _ => format!("{n} is not a unit of {}: D must contain Q", self.base.describe()),
        };
        Err(Error::Hypothesis {
            case: case.into(),
            detail,
        })
    }

    /// The geometric sum `1 + Z + ... + Z^(n-1)` with `Z = X^t`.
    fn geometric(&self, t: &Rat, n: &Int) -> Result<MonoidElem> {
        let k: u64 = n.try_into().map_err(|_| Error::Precondition("n too large".into()))?;
        self.elem((0..k).map(|i| (t * Rat::from_integer(i.into()), Rat::one())))
    }
}

pub fn mr_split(ring: &MonoidRing, s: &Rat, n: &Int) -> Result<MrSplit> {
    if !s.is_positive() || !ring.monoid.contains(s) {
        return Err(Error::Precondition(format!(
            "s = {} must be a positive element of S",
            fmt_rat(s)
        )));
    }
    if *n < Int::from(2) {
        return Err(Error::Precondition(format!("n = {n} must exceed 1")));
    }
    let t = s / Rat::from_integer(n.clone());
    if !ring.monoid.contains(&t) {
        return Err(Error::Precondition(format!(
            "s/n = {} is not in S = {}",
            fmt_rat(&t),
            ring.monoid.describe()
        )));
    }
    let case = ring.check_unit(n)?;
    let one = ring.one();
    let zt = ring.x_pow(&t)?;
    let f1 = ring.sub(&one, &zt);
    let f2 = ring.geometric(&t, n)?;
    // f2 = (1 - Z) q + n with q = -sum_{k<n-1} (n-1-k) Z^k
    let k: i64 = n.try_into().map_err(|_| Error::Precondition("n too large".into()))?;
    let quotient = ring.elem((0..k - 1).map(|i| (&t * Rat::from_integer(i.into()), Rat::from_integer((i + 1 - k).into()))))?;
    let remainder = n.clone();
    let ninv = ring
        .base
        .inverse(&Rat::from_integer(remainder.clone()))
        .ok_or_else(|| Error::CertificateFailed("remainder is not a unit".into()))?;
    let split = MrSplit {
        s: s.clone(),
        n: n.clone(),
        t,
        case,
        lambda: ring.scale(&quotient, &-ninv.clone()),
        mu: ring.monomial(&ninv, &Rat::zero())?,
        f1,
        f2,
        quotient,
        remainder,
    };
    if !split.verify(ring) {
        return Err(Error::CertificateFailed("split identities fail".into()));
    }
    Ok(split)
}

/// Smallest prime of `T` that is a unit of `D`, used as the default split degree.
pub fn default_split_degree(ring: &MonoidRing) -> Result<Int> {
    let primes = ring.monoid.primes();
    primes
        .iter()
        .find(|q| ring.base.is_unit(&Rat::from_integer((*q).clone())))
        .cloned()
        .map_or_else(|| ring.check_unit(&primes[0]).map(|_| primes[0].clone()), Ok)
}

/// `m` pairwise comaximal factors of `1 - X^s`, obtained by splitting the
/// `1 - X^t` factor again and again.
#[derive(Clone, Debug)]
pub struct MrChain {
    pub s: Rat,
    pub n: Int,
    pub splits: Vec<MrSplit>,
    /// `1 - X^(s/n^(m-1))` first, then the geometric factors from finest to coarsest.
    pub factors: Vec<MonoidElem>,
    pub certificates: Vec<MonoidBezout>,
    /// Exponent generating every factor.
    pub generator: Rat,
}

impl MrChain {
    /// Product identity and every pairwise certificate, both in the ring and
    /// as polynomials in `Z = X^generator`.
    pub fn verify(&self, ring: &MonoidRing) -> Result<bool> {
        let one = ring.one();
        let prod = self.factors.iter().fold(one.clone(), |acc, f| ring.mul(&acc, f));
        let target = ring.sub(&one, &ring.x_pow(&self.s)?);
        if prod != target {
            return Ok(false);
        }
        let m = self.factors.len();
        if self.certificates.len() != m * (m - 1) / 2 {
            return Ok(false);
        }
        let mut all = self.factors.clone();
        for c in &self.certificates {
            all.push(c.lambda.clone());
            all.push(c.mu.clone());
        }
        let t = mr_common_generator(&all)?;
        if !(&t / &self.generator).is_integer() && !(&self.generator / &t).is_integer() {
            return Ok(false);
        }
        let z = |e: &MonoidElem| ring.in_generator(e, &t);
        for c in &self.certificates {
            if ring.add(&ring.mul(&c.lambda, &self.factors[c.i]), &ring.mul(&c.mu, &self.factors[c.j])) != one {
                return Ok(false);
            }
            let poly = &(&z(&c.lambda)? * &z(&self.factors[c.i])?) + &(&z(&c.mu)? * &z(&self.factors[c.j])?);
            let poly = Poly::from_coeffs(
                poly.into_coeffs().into_iter().map(|x| ring.norm_coeff(x)).collect(),
            );
            if poly != Poly::one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn mr_comax_chain(ring: &MonoidRing, s: &Rat, m: usize, n: Option<&Int>) -> Result<MrChain> {
    if m == 0 {
        return Err(Error::Precondition("chain length must be at least 1".into()));
    }
    let n = match n {
        Some(n) => n.clone(),
        None => default_split_degree(ring)?,
    };
    let mut splits = Vec::new();
    let mut cur = s.clone();
    for _ in 1..m {
        let sp = mr_split(ring, &cur, &n)?;
        cur = sp.t.clone();
        splits.push(sp);
    }
    if splits.is_empty() && !(s.is_positive() && ring.monoid.contains(s)) {
        return Err(Error::Precondition(format!("s = {} must be a positive element of S", fmt_rat(s))));
    }
    let one = ring.one();
    // factors[0] = 1 - X^cur, factors[k] = splits[m-1-k].f2
    let mut factors = vec![ring.sub(&one, &ring.x_pow(&cur)?)];
    for sp in splits.iter().rev() {
        factors.push(sp.f2.clone());
    }
    let mut certificates = Vec::new();
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            // factors[j] is the coarser geometric factor of splits[m-1-j];
            // factors[i] divides that split's 1 - X^t.
            let sp = &splits[m - 1 - j];
            let cof = ring
                .divide(&sp.f1, &factors[i])
                .ok_or_else(|| Error::CertificateFailed("finer factor does not divide 1 - X^t".into()))?;
            certificates.push(MonoidBezout {
                i,
                j,
                lambda: ring.mul(&sp.lambda, &cof),
                mu: sp.mu.clone(),
            });
        }
    }
    let chain = MrChain {
        s: s.clone(),
        n,
        splits,
        factors,
        certificates,
        generator: cur,
    };
    if !chain.verify(ring)? {
        return Err(Error::CertificateFailed("chain certificates fail".into()));
    }
    Ok(chain)
}

/// `X^t - b = b(Z - 1)(1 + Z + ... + Z^(p-1))` with `Z = X^(t/p)/beta`,
/// `beta^p = b`, in a group ring over a field.
#[derive(Clone, Debug)]
pub struct JuettSplit {
    pub t: Rat,
    pub b: Rat,
    pub p: Int,
    pub beta: Rat,
    pub z: MonoidElem,
    pub unit: MonoidElem,
    pub linear: MonoidElem,
    pub geometric: MonoidElem,
    /// `lambda*(Z - 1) + mu*geometric = 1`.
    pub lambda: MonoidElem,
    pub mu: MonoidElem,
}

impl JuettSplit {
    pub fn verify(&self, ring: &MonoidRing) -> Result<bool> {
        let lhs = ring.sub(&ring.x_pow(&self.t)?, &ring.monomial(&self.b, &Rat::zero())?);
        let rhs = ring.mul(&self.unit, &ring.mul(&self.linear, &self.geometric));
        let bez = ring.add(&ring.mul(&self.lambda, &self.linear), &ring.mul(&self.mu, &self.geometric));
        Ok(lhs == rhs && bez == ring.one())
    }
}

pub fn juett_split(ring: &MonoidRing, t: &Rat, b: &Rat, p: &Int, beta: &Rat) -> Result<JuettSplit> {
    if !ring.monoid.group {
        return Err(Error::Precondition("exponents must form a group".into()));
    }
    if !ring.base.is_field() {
        return Err(Error::Precondition(format!("{} is not a field", ring.base.describe())));
    }
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if *p == ring.base.characteristic() {
        return Err(Error::Hypothesis {
            case: "p != char".into(),
            detail: format!("p = {p} equals the characteristic"),
        });
    }
    let (b, beta) = (
        ring.base.coeff(b).ok_or_else(|| Error::NotInRing(fmt_rat(b)))?,
        ring.base.coeff(beta).ok_or_else(|| Error::NotInRing(fmt_rat(beta)))?,
    );
    let pk: u32 = p.try_into().map_err(|_| Error::Precondition("p too large".into()))?;
    let bp = ring.base.coeff(&num_traits::pow(beta.clone(), pk as usize)).expect("in base");
    if bp != b || b.is_zero() {
        return Err(Error::Precondition(format!(
            "beta^{p} = {} differs from b = {}",
            fmt_rat(&bp),
            fmt_rat(&b)
        )));
    }
    let tp = t / Rat::from_integer(p.clone());
    if !ring.monoid.contains(&tp) {
        return Err(Error::Precondition(format!("t/p = {} is not in the group", fmt_rat(&tp))));
    }
    let binv = ring.base.inverse(&beta).expect("nonzero in a field");
    let z = ring.monomial(&binv, &tp)?;
    let one = ring.one();
    let linear = ring.sub(&z, &one);
    let mut geometric = ring.zero();
    let mut zi = one.clone();
    for _ in 0..pk {
        geometric = ring.add(&geometric, &zi);
        zi = ring.mul(&zi, &z);
    }
    // geometric = (Z - 1) q(Z) + p with q = sum_{k<p-1} (k+1) Z^(p-2-k)
    let mut q = ring.zero();
    let mut zk = one.clone();
    for k in (0..pk.saturating_sub(1)).rev() {
        q = ring.add(&q, &ring.scale(&zk, &Rat::from_integer((k + 1).into())));
        zk = ring.mul(&zk, &z);
    }
    let pinv = ring
        .base
        .inverse(&Rat::from_integer(p.clone()))
        .expect("p is a unit when p != char");
    let split = JuettSplit {
        t: t.clone(),
        b: b.clone(),
        p: p.clone(),
        beta,
        z,
        unit: ring.monomial(&b, &Rat::zero())?,
        lambda: ring.scale(&q, &-pinv.clone()),
        mu: ring.monomial(&pinv, &Rat::zero())?,
        linear,
        geometric,
    };
    if !split.verify(ring)? {
        return Err(Error::CertificateFailed("X^t - b factorization fails".into()));
    }
    Ok(split)
}

/// `X^(-s)`, the inverse of `X^s` in group mode.
pub fn monomial_inverse(ring: &MonoidRing, s: &Rat) -> Result<MonoidElem> {
    if !ring.monoid.group {
        return Err(Error::Precondition("X^s is a unit only when exponents form a group".into()));
    }
    ring.x_pow(&-s)
}
