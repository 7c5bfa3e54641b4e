//! Random generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use princ_core::arith::{Int, Poly, Rat};
use princ_core::domain::Domain;
use princ_core::idem::{IdemPair, Orientation};
use princ_core::limitring::{LimitElem, LimitRing};
use princ_core::pullback::YFrac;
use princ_core::quadring::{QuadElem, QuadOrder};

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

pub fn small_int<R: Rng>(rng: &mut R, k: i64) -> Int {
    int(rng.gen_range(-k..=k))
}

pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn qpoly<R: Rng>(rng: &mut R, max_deg: usize) -> Poly<Rat> {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| small_rat(rng)).collect())
}

pub fn quad<R: Rng>(rng: &mut R, o: &QuadOrder, k: i64) -> QuadElem {
    o.elem(rng.gen_range(-k..=k), rng.gen_range(-k..=k))
}

/// Element of `Z + Y*Q[Y]_(Y)`: integer value at 0, denominator `1 + Y*s(Y)`.
pub fn pullback_elem<R: Rng>(rng: &mut R, in_max: bool) -> YFrac {
    let c0 = if in_max { Rat::zero() } else { Rat::from_integer(small_int(rng, 4)) };
    let tail = qpoly(rng, 2);
    let num = &Poly::constant(c0) + &(&Poly::var() * &tail);
    let den = if rng.gen_bool(0.5) {
        Poly::one()
    } else {
        &Poly::one() + &(&Poly::var() * &Poly::constant(small_rat(rng)))
    };
    YFrac::new(num, Poly::zero(), den, 0).expect("nonzero denominator")
}

pub fn limit_elem<R: Rng>(rng: &mut R) -> LimitElem {
    LimitElem::new(rng.gen_range(1..=3), qpoly(rng, 2)).expect("positive level")
}

pub fn integral_limit_elem<R: Rng>(rng: &mut R) -> LimitElem {
    let deg = rng.gen_range(0..=2);
    let p = Poly::from_coeffs((0..=deg).map(|_| Rat::from_integer(small_int(rng, 5))).collect());
    LimitElem::new(rng.gen_range(1..=3), p).expect("positive level")
}

/// An idempotent pair built from random ring elements by one of two
/// families with a known witness:
/// `x = c*e*f, y = c*e*(1-x)` (`x(1-x) = y*f`) or
/// `x = 1 + y*t` (`x(1-x) = y*(-t*x)`), in a random orientation.
pub fn random_pair<D: Domain, R: Rng>(
    ring: &D,
    rng: &mut R,
    mut gen: impl FnMut(&mut R) -> D::Elem,
) -> IdemPair<D::Elem> {
    loop {
        let (x, y, r) = if rng.gen_bool(0.5) {
            let (c, e, f) = (gen(rng), gen(rng), gen(rng));
            let ce = ring.mul(&c, &e);
            let x = ring.mul(&ce, &f);
            let y = ring.mul(&ce, &ring.one_minus(&x));
            (x, y, f)
        } else {
            let (y, t) = (gen(rng), gen(rng));
            let x = ring.add(&ring.one(), &ring.mul(&y, &t));
            let r = ring.neg(&ring.mul(&t, &x));
            (x, y, r)
        };
        if ring.is_zero(&y) {
            continue;
        }
        return if rng.gen_bool(0.5) {
            IdemPair {
                a: x,
                b: y,
                orientation: Orientation::Forward,
                r,
            }
        } else {
            IdemPair {
                a: y,
                b: x,
                orientation: Orientation::Reverse,
                r,
            }
        };
    }
}

/// Index in `Z^2` of the lattice spanned by the rows: gcd of all 2x2 minors.
pub fn lattice_index(rows: &[[Int; 2]]) -> Int {
    let mut g = Int::zero();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let m = &rows[i][0] * &rows[j][1] - &rows[i][1] * &rows[j][0];
            g = g.gcd(&m);
        }
    }
    g
}

/// `[Z[sqrt d] : (gens)]`, from the Z-spanning set `{g, g*sqrt(d)}`.
pub fn ideal_index(gens: &[QuadElem]) -> Int {
    let rows: Vec<[Int; 2]> = gens
        .iter()
        .flat_map(|g| [[g.x.clone(), g.y.clone()], [Int::from(g.d) * &g.y, g.x.clone()]])
        .collect();
    lattice_index(&rows)
}

/// `b | a` in `Z[sqrt d]` via `a*conj(b)/N(b)`.
pub fn quad_divides(b: &QuadElem, a: &QuadElem) -> bool {
    let n = b.x.clone() * &b.x - Int::from(b.d) * &b.y * &b.y;
    if n.is_zero() {
        return a.x.is_zero() && a.y.is_zero();
    }
    let (cx, cy) = (b.x.clone(), -b.y.clone());
    let px = &a.x * &cx + Int::from(a.d) * &a.y * &cy;
    let py = &a.x * &cy + &a.y * &cx;
    px.is_multiple_of(&n) && py.is_multiple_of(&n)
}

/// `(gens) = (g)` by divisibility one way and equal index the other.
pub fn quad_ideal_is_principal_by(gens: &[QuadElem], g: &QuadElem) -> bool {
    let n = (g.x.clone() * &g.x - Int::from(g.d) * &g.y * &g.y).abs();
    gens.iter().all(|p| quad_divides(g, p)) && ideal_index(gens) == n
}

/// Prime-power grouping by trial division.
pub fn prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All elements of `Z[sqrt d]` (d < 0) of norm exactly `n`.
pub fn elements_of_norm(d: i64, n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut y = 0i64;
    while -d * y * y <= n {
        let rest = n + d * y * y;
        let x = (rest as f64).sqrt().round() as i64;
        for xx in [x - 1, x, x + 1] {
            if xx >= 0 && xx * xx == rest {
                for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let e = (sx * xx, sy * y);
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
        }
        y += 1;
    }
    out
}

fn qmul(d: i64, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 * b.0 + d * a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn qnorm(d: i64, a: (i64, i64)) -> i64 {
    a.0 * a.0 - d * a.1 * a.1
}

fn qdiv(d: i64, a: (i64, i64), b: (i64, i64)) -> Option<(i64, i64)> {
    let n = qnorm(d, b);
    let p = qmul(d, a, (b.0, -b.1));
    (p.0 % n == 0 && p.1 % n == 0).then(|| (p.0 / n, p.1 / n))
}

/// `(a, b) = (1)`: the Z-lattice of `aR + bR` has index 1.
fn qcomax(d: i64, a: (i64, i64), b: (i64, i64)) -> bool {
    let e = |t: (i64, i64)| QuadElem { x: int(t.0), y: int(t.1), d };
    ideal_index(&[e(a), e(b)]).is_one()
}

/// Brute-force complete comaximal factorizations of `b` in `Z[sqrt d]`,
/// `d < -1`, up to order and units. Each factorization is a sorted list of
/// normalized factors (sign chosen so the first nonzero coordinate is positive).
pub fn brute_comax_factorizations(d: i64, b: (i64, i64)) -> Vec<Vec<(i64, i64)>> {
    let nb = qnorm(d, b);
    let normalize = |t: (i64, i64)| if t.0 < 0 || (t.0 == 0 && t.1 < 0) { (-t.0, -t.1) } else { t };
    let mut divisors: Vec<(i64, i64)> = Vec::new();
    for n in 2..=nb {
        if nb % n != 0 {
            continue;
        }
        for e in elements_of_norm(d, n) {
            let e = normalize(e);
            if qdiv(d, b, e).is_some() && !divisors.contains(&e) {
                divisors.push(e);
            }
        }
    }
    let pseudo: Vec<(i64, i64)> = divisors
        .iter()
        .copied()
        .filter(|&c| {
            !divisors.iter().any(|&u| {
                qnorm(d, u) < qnorm(d, c)
                    && qdiv(d, c, u).is_some_and(|v| qnorm(d, v) > 1 && qcomax(d, u, v))
            })
        })
        .collect();
    let mut out: Vec<Vec<(i64, i64)>> = Vec::new();
    fn search(
        d: i64,
        rest: (i64, i64),
        from: usize,
        pseudo: &[(i64, i64)],
        cur: &mut Vec<(i64, i64)>,
        out: &mut Vec<Vec<(i64, i64)>>,
    ) {
        if qnorm(d, rest) == 1 {
            let mut f = cur.clone();
            f.sort();
            if !out.contains(&f) {
                out.push(f);
            }
            return;
        }
        for (i, &p) in pseudo.iter().enumerate().skip(from) {
            if cur.iter().all(|&c| qcomax(d, c, p)) {
                if let Some(q) = qdiv(d, rest, p) {
                    cur.push(p);
                    search(d, q, i + 1, pseudo, cur, out);
                    cur.pop();
                }
            }
        }
    }
    search(d, b, 0, &pseudo, &mut Vec::new(), &mut out);
    out
}

/// Value of `x_i` at a point where `x_m = t`, by iterating `x_i = x_{i+1}(1 + x_{i+1})`.
pub fn limit_value(i: u32, m: u32, t: &Rat) -> Rat {
    let mut v = t.clone();
    for _ in i..m {
        v = &v * (Rat::one() + &v);
    }
    v
}

pub fn eval_limit(e: &LimitElem, m: u32, t: &Rat) -> Rat {
    e.poly().eval(&limit_value(e.level(), m, t))
}

pub fn limit_rings() -> [LimitRing; 2] {
    [LimitRing::rationals(), LimitRing::integers()]
}
