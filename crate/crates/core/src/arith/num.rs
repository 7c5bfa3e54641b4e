//! Integer and rational helpers on top of `num-bigint` / `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

/// Renders a rational as `p` or `p/q`; parseable by the expression grammar.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

pub fn is_square(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Prime factorization of |n| by trial division, primes ascending.
pub fn factor_int(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = Int::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == Int::from(2u32) { 1 } else { 2 };
    }
    if n > Int::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: &Int) -> bool {
    if *n < Int::from(2) {
        return false;
    }
    let f = factor_int(n);
    f.len() == 1 && f[0].1 == 1
}

pub fn is_squarefree(n: &Int) -> bool {
    !n.is_zero() && factor_int(n).iter().all(|(_, e)| *e == 1)
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo the prime `p`, in `[0, p)`.
pub fn inv_mod(a: &Int, p: &Int) -> Option<Int> {
    let (g, s, _) = ext_gcd(&a.mod_floor(p), p);
    g.is_one().then(|| s.mod_floor(p))
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: &Int, p: &Int) -> i32 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Least nonnegative square root of `a` modulo the prime `p`, by search.
pub fn sqrt_mod(a: &Int, p: &Int) -> Option<Int> {
    let a = a.mod_floor(p);
    let bound = p.to_u64()?;
    (0..bound)
        .map(Int::from)
        .find(|r| (r * r).mod_floor(p) == a)
}

/// Primes dividing a rational's denominator.
pub fn denominator_primes(r: &Rat) -> Vec<Int> {
    factor_int(r.denom()).into_iter().map(|(p, _)| p).collect()
}

/// gcd of rationals: gcd of numerators over lcm of denominators.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let n = a.numer().gcd(b.numer());
    let d = a.denom().lcm(b.denom());
    Rat::new(n, d)
}
