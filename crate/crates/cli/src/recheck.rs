//! Independent re-verification of a report.
//!
//! Every element is re-parsed from its string form and every claimed identity
//! is recomputed with plain ring arithmetic. None of the producing routines
//! (pair decision, certificate builders, norm searches) are called.
//! Non-principality in `Z[sqrt(d)]`, `d < 0`, is rechecked by an own
//! enumeration of the elements of norm `[O : I]`, with the index taken from a
//! Hermite normal form of the ideal lattice.
//!
//! Comaximal completeness is rechecked through its evidence: over `Z` every
//! factor must be a prime power with distinct primes; over a quadratic order
//! every recorded rejected split must carry a non-principal ideal.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use princ_core::arith::num::fmt_rat;
use princ_core::arith::{Int, Rat};
use princ_core::domain::{Domain, Integers, RatPolyRing};
use princ_core::polyext::{PolyExtRing, SubringDesc};
use princ_core::quadring::{QuadElem, QuadOrder};
use princ_core::sphere::SphereRing;

use crate::commands::{CliError, CliResult};
use crate::report::{Report, SCHEMA};
use crate::rings::{parse_in, parse_raw, Algebra, Rationals, RingSpec};
use crate::with_ring;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Recheck(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(bad(msg()))
    }
}

fn at<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field '{key}'")))
}

fn text<'a>(v: &'a Value, key: &str) -> CliResult<&'a str> {
    at(v, key)?.as_str().ok_or_else(|| bad(format!("'{key}' is not a string")))
}

fn list<'a>(v: &'a Value, key: &str) -> CliResult<&'a [Value]> {
    at(v, key)?
        .as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| bad(format!("'{key}' is not an array")))
}

fn flag(v: &Value, key: &str) -> CliResult<bool> {
    at(v, key)?.as_bool().ok_or_else(|| bad(format!("'{key}' is not a boolean")))
}

fn elem<A: Algebra>(ring: &A, v: &Value, what: &str) -> CliResult<A::Elem> {
    let s = v.as_str().ok_or_else(|| bad(format!("{what} is not a string")))?;
    parse_in(ring, s).map_err(|e| bad(format!("{what} = '{s}' in {}: {e}", ring.describe())))
}

fn get<A: Algebra>(ring: &A, v: &Value, key: &str) -> CliResult<A::Elem> {
    elem(ring, at(v, key)?, key)
}

fn get_all<A: Algebra>(ring: &A, v: &Value, key: &str) -> CliResult<Vec<A::Elem>> {
    list(v, key)?
        .iter()
        .enumerate()
        .map(|(i, x)| elem(ring, x, &format!("{key}[{i}]")))
        .collect()
}

fn int(v: &Value, key: &str) -> CliResult<Int> {
    get(&Integers, v, key)
}

fn index(v: &Value, what: &str) -> CliResult<usize> {
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(format!("{what} is not an index")))
}

fn eq<A: Domain>(ring: &A, a: &A::Elem, b: &A::Elem) -> bool {
    ring.is_zero(&ring.sub(a, b))
}

fn product<A: Domain>(ring: &A, xs: &[A::Elem]) -> A::Elem {
    xs.iter().fold(ring.one(), |acc, x| ring.mul(&acc, x))
}

fn bezout<A: Domain>(ring: &A, lambda: &A::Elem, f: &A::Elem, mu: &A::Elem, g: &A::Elem) -> bool {
    eq(ring, &ring.add(&ring.mul(lambda, f), &ring.mul(mu, g)), &ring.one())
}

/// Pairwise certificates `lambda*f_i + mu*f_j = 1`, one for every `i < j`.
fn pairwise<A: Algebra>(ring: &A, factors: &[A::Elem], certs: &[Value]) -> CliResult<()> {
    let n = factors.len();
    let mut seen = vec![vec![false; n]; n];
    for (k, c) in certs.iter().enumerate() {
        let (i, j) = (index(at(c, "i")?, "i")?, index(at(c, "j")?, "j")?);
        ensure(i < j && j < n, || format!("certificate {k}: bad indices ({i}, {j})"))?;
        let (l, m) = (get(ring, c, "lambda")?, get(ring, c, "mu")?);
        ensure(bezout(ring, &l, &factors[i], &m, &factors[j]), || {
            format!("certificate ({i}, {j}): lambda*f_i + mu*f_j != 1")
        })?;
        seen[i][j] = true;
    }
    for (i, row) in seen.iter().enumerate() {
        for (j, &ok) in row.iter().enumerate().skip(i + 1) {
            ensure(ok, || format!("no certificate for ({i}, {j})"))?;
        }
    }
    Ok(())
}

pub fn recheck(r: &Report) -> CliResult<()> {
    ensure(r.schema == SCHEMA, || format!("unknown schema '{}'", r.schema))?;
    let cmd: Vec<&str> = r.command.iter().map(String::as_str).collect();
    let v = &r.result;
    match cmd.as_slice() {
        ["idem", "check"] | ["idem", "matrix"] => {
            let spec = ring_spec(r)?;
            with_ring!(&spec, |ring| pair(ring, v, r.negative))
        }
        ["idem", "from-ideal"] => from_ideal(&ring_spec(r)?, v),
        ["ideal", "principal"] => {
            let o = quad(&ring_spec(r)?)?;
            ideal_verdict(&o, v)
        }
        ["ideal", "invertible"] => invertible(&quad(&ring_spec(r)?)?, v, r.negative),
        ["ideal", "factor"] => factor(&quad(&ring_spec(r)?)?, v),
        ["comax", which] => comax(&ring_spec(r)?, which, v, r.negative),
        ["pullback", "reduce"] => match ring_spec(r)? {
            RingSpec::Pullback(p) => pullback_reduce(&p, v, r.negative),
            s => Err(bad(format!("pullback report over {}", s.describe()))),
        },
        ["pullback", "nonufd"] => match ring_spec(r)? {
            RingSpec::Pullback(p) => {
                let (z, d) = (get(&p, v, "z")?, get(&p, v, "d")?);
                ensure(!p.is_zero(&d) && !p.is_unit(&d), || "d is zero or a unit".into())?;
                let mut power = p.one();
                for (k, c) in get_all(&p, v, "chain")?.iter().enumerate() {
                    power = p.mul(&power, &d);
                    ensure(eq(&p, &p.mul(&power, c), &z), || format!("z != d^{} * chain[{k}]", k + 1))?;
                }
                Ok(())
            }
            s => Err(bad(format!("pullback report over {}", s.describe()))),
        },
        ["mring", which] => match ring_spec(r)? {
            RingSpec::Monoid(m) => mring(&m, which, v),
            s => Err(bad(format!("monoid ring report over {}", s.describe()))),
        },
        ["limitring", which] => match ring_spec(r)? {
            RingSpec::Limit(l) => limitring(&l, which, v),
            s => Err(bad(format!("limit ring report over {}", s.describe()))),
        },
        ["polyext", which] => polyext(which, v, r.negative),
        ["sphere", which] => sphere(which, v, r.negative),
        _ => Err(bad(format!("unknown command {:?}", r.command))),
    }
}

fn ring_spec(r: &Report) -> CliResult<RingSpec> {
    let e = r.ring.as_ref().ok_or_else(|| bad("report has no ring"))?;
    RingSpec::parse(&e.ring, e.monoid.as_deref(), e.group).map_err(bad)
}

fn quad(spec: &RingSpec) -> CliResult<QuadOrder> {
    match spec {
        RingSpec::Quad(o) => Ok(*o),
        s => Err(bad(format!("expected a quadratic order, found {}", s.describe()))),
    }
}

fn oriented<A: Domain>(v: &Value, a: A::Elem, b: A::Elem) -> CliResult<(A::Elem, A::Elem)> {
    match text(v, "orientation")? {
        "forward" => Ok((a, b)),
        "reverse" => Ok((b, a)),
        o => Err(bad(format!("unknown orientation '{o}'"))),
    }
}

fn matrix<A: Algebra>(ring: &A, v: &Value, key: &str) -> CliResult<Vec<Vec<A::Elem>>> {
    list(v, key)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| bad(format!("{key}[{i}] is not a row")))?
                .iter()
                .enumerate()
                .map(|(j, x)| elem(ring, x, &format!("{key}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

fn mat_square<A: Domain>(ring: &A, m: &[Vec<A::Elem>]) -> Vec<Vec<A::Elem>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&m[i][k], &m[k][j]))))
                .collect()
        })
        .collect()
}

fn mat_eq<A: Domain>(ring: &A, m: &[Vec<A::Elem>], n: &[Vec<A::Elem>]) -> bool {
    m.len() == n.len()
        && m.iter()
            .zip(n)
            .all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| eq(ring, x, y)))
}

fn pair<A: Algebra>(ring: &A, v: &Value, negative: bool) -> CliResult<()> {
    let (a, b) = (get(ring, v, "a")?, get(ring, v, "b")?);
    if negative {
        let fwd = ring.divides_with_zero(&ring.mul(&a, &ring.one_minus(&a)), &b).is_some();
        let rev = ring.divides_with_zero(&ring.mul(&b, &ring.one_minus(&b)), &a).is_some();
        return ensure(!fwd && !rev, || "the pair relation holds in one orientation".into());
    }
    let r = get(ring, v, "r")?;
    let (x, y) = oriented::<A>(v, a, b)?;
    let cx = ring.one_minus(&x);
    ensure(eq(ring, &ring.mul(&x, &cx), &ring.mul(&y, &r)), || "x(1-x) != y*r".into())?;
    if let Some(c) = v.get("complement") {
        let first = get_all(ring, c, "first")?;
        let second = get_all(ring, c, "second")?;
        ensure(
            first.len() == 2 && second.len() == 2 && eq(ring, &first[0], &x) && eq(ring, &first[1], &y),
            || "complement: first ideal is not (x, y)".into(),
        )?;
        ensure(eq(ring, &second[0], &cx) && eq(ring, &second[1], &y), || {
            "complement: second ideal is not (1-x, y)".into()
        })?;
        let g = get(ring, c, "generator")?;
        ensure(eq(ring, &g, &y), || "complement: generator is not y".into())?;
        let expect = [ring.mul(&x, &cx), ring.mul(&x, &y), ring.mul(&y, &cx), ring.mul(&y, &y)];
        let products = get_all(ring, c, "products")?;
        let quotients = get_all(ring, c, "quotients")?;
        let comb = get_all(ring, c, "combination")?;
        ensure(products.len() == 4 && quotients.len() == 4 && comb.len() == 4, || {
            "complement: expected four products".into()
        })?;
        for i in 0..4 {
            ensure(eq(ring, &products[i], &expect[i]), || format!("complement: product {i} is wrong"))?;
            ensure(eq(ring, &products[i], &ring.mul(&g, &quotients[i])), || {
                format!("complement: product {i} != generator * quotient")
            })?;
        }
        let sum = (0..4).fold(ring.zero(), |acc, i| ring.add(&acc, &ring.mul(&comb[i], &products[i])));
        ensure(eq(ring, &sum, &g), || "complement: combination does not give the generator".into())?;
    }
    if v.get("matrix").is_some() {
        let m = matrix(ring, v, "matrix")?;
        let expect = vec![vec![x.clone(), y.clone()], vec![r.clone(), cx.clone()]];
        ensure(mat_eq(ring, &m, &expect), || "matrix is not [[x, y], [r, 1-x]]".into())?;
        let sq = mat_square(ring, &m);
        ensure(mat_eq(ring, &sq, &m), || "M^2 != M".into())?;
        if v.get("square").is_some() {
            ensure(mat_eq(ring, &matrix(ring, v, "square")?, &sq), || "reported square is wrong".into())?;
        }
    }
    Ok(())
}

/// `g = sum c_i gens_i` and `gens_i = g q_i`.
fn principal_generic<A: Algebra>(ring: &A, v: &Value) -> CliResult<()> {
    let gens = get_all(ring, v, "generators")?;
    let g = get(ring, v, "generator")?;
    let cs = get_all(ring, v, "coefficients")?;
    let qs = get_all(ring, v, "quotients")?;
    ensure(cs.len() == gens.len() && qs.len() == gens.len(), || "coefficient count mismatch".into())?;
    let comb = gens.iter().zip(&cs).fold(ring.zero(), |acc, (h, c)| ring.add(&acc, &ring.mul(c, h)));
    ensure(eq(ring, &comb, &g), || "generator is not the stated combination".into())?;
    for (i, (h, q)) in gens.iter().zip(&qs).enumerate() {
        ensure(eq(ring, h, &ring.mul(&g, q)), || format!("generator {i} != g * quotient"))?;
    }
    Ok(())
}

fn from_ideal(spec: &RingSpec, v: &Value) -> CliResult<()> {
    fn common<A: Algebra>(ring: &A, v: &Value) -> CliResult<()> {
        let input = get_all(ring, v, "input")?;
        ensure(input.len() == 2, || "expected two inputs".into())?;
        let p = at(v, "pair")?;
        pair(ring, p, false)?;
        ensure(text(p, "orientation")? == "forward", || "lemma pairs are forward".into())?;
        let (a, b, r) = (get(ring, p, "a")?, get(ring, p, "b")?, get(ring, p, "r")?);
        let mu_b = get(ring, v, "mu_b")?;
        ensure(eq(ring, &ring.add(&a, &mu_b), &ring.one()), || "a + mu*b0 != 1".into())?;
        ensure(eq(ring, &ring.mul(&a, &input[1]), &ring.mul(&b, &input[0])), || {
            "(a, b) is not proportional to the input".into()
        })?;
        ensure(eq(ring, &ring.mul(&r, &input[1]), &ring.mul(&mu_b, &input[0])), || {
            "r != mu*a0".into()
        })?;
        let ideal = at(v, "ideal")?;
        let gens = get_all(ring, ideal, "generators")?;
        ensure(gens.len() == 2 && eq(ring, &gens[0], &a) && eq(ring, &gens[1], &b), || {
            "ideal generators are not the pair".into()
        })
    }
    match spec {
        RingSpec::Z(z) => {
            common(z, v)?;
            principal_generic(z, at(v, "ideal")?)
        }
        RingSpec::Quad(o) => {
            common(o, v)?;
            ideal_verdict(o, at(v, "ideal")?)
        }
        s => Err(bad(format!("from-ideal report over {}", s.describe()))),
    }
}

/// Hermite basis `(a, 0), (x0, c)` of a sublattice of `Z^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Hnf {
    a: Int,
    x0: Int,
    c: Int,
}

impl Hnf {
    fn of(vs: &[[Int; 2]]) -> Hnf {
        let (mut a, mut x0, mut c) = (Int::zero(), Int::zero(), Int::zero());
        for [x, y] in vs {
            if y.is_zero() && c.is_zero() {
                a = a.gcd(x);
                continue;
            }
            let e = c.extended_gcd(y);
            let g = e.gcd;
            let nx = &e.x * &x0 + &e.y * x;
            let zx = &(y / &g) * &x0 - &(&c / &g) * x;
            a = a.gcd(&zx);
            x0 = nx;
            c = g;
            if c.is_negative() {
                c = -c;
                x0 = -x0;
            }
            if !a.is_zero() {
                x0 = x0.mod_floor(&a);
            }
        }
        Hnf { a, x0, c }
    }

    fn index(&self) -> Int {
        &self.a * &self.c
    }

    fn contains(&self, [x, y]: &[Int; 2]) -> bool {
        if self.c.is_zero() {
            return y.is_zero() && (if self.a.is_zero() { x.is_zero() } else { x.is_multiple_of(&self.a) });
        }
        if !y.is_multiple_of(&self.c) {
            return false;
        }
        let r = x - &(y / &self.c) * &self.x0;
        if self.a.is_zero() {
            r.is_zero()
        } else {
            r.is_multiple_of(&self.a)
        }
    }

    fn is_scalar(&self) -> bool {
        !self.a.is_zero() && self.a == self.c && self.x0.is_zero()
    }

    /// Basis as elements `a`, `x0 + c*sqrt(d)`.
    fn basis(&self, d: i64) -> [QuadElem; 2] {
        [
            QuadElem {
                x: self.a.clone(),
                y: Int::zero(),
                d,
            },
            QuadElem {
                x: self.x0.clone(),
                y: self.c.clone(),
                d,
            },
        ]
    }
}

fn qmul(o: &QuadOrder, a: &QuadElem, b: &QuadElem) -> QuadElem {
    o.mul(a, b)
}

/// Lattice of the ideal generated by `gens`: spanned by `g` and `g*sqrt(d)`.
fn lattice(o: &QuadOrder, gens: &[QuadElem]) -> Hnf {
    let s = QuadElem {
        x: Int::zero(),
        y: Int::one(),
        d: o.d(),
    };
    let vs: Vec<[Int; 2]> = gens
        .iter()
        .flat_map(|g| {
            let h = qmul(o, g, &s);
            [[g.x.clone(), g.y.clone()], [h.x, h.y]]
        })
        .collect();
    Hnf::of(&vs)
}

fn ideal_product(o: &QuadOrder, a: &[QuadElem], b: &[QuadElem]) -> Hnf {
    let gens: Vec<QuadElem> = a.iter().flat_map(|x| b.iter().map(|y| qmul(o, x, y))).collect();
    lattice(o, &gens)
}

fn conj(e: &QuadElem) -> QuadElem {
    QuadElem {
        x: e.x.clone(),
        y: -e.y.clone(),
        d: e.d,
    }
}

/// No element of norm `[O : I]` lies in `I`, by enumeration over `|y| <= sqrt(N/|d|)`.
fn nonprincipal(o: &QuadOrder, gens: &[QuadElem], norm: &Int) -> CliResult<()> {
    let d = o.d();
    ensure(d < 0, || format!("non-principality recheck needs d < 0, found {d}"))?;
    let h = lattice(o, gens);
    ensure(h.index() == *norm && !norm.is_zero(), || {
        format!("ideal index is {}, not the reported norm {norm}", h.index())
    })?;
    let md = Int::from(-d);
    let mut y = Int::zero();
    while &md * &y * &y <= *norm {
        let rest = norm - &md * &y * &y;
        let x = rest.sqrt();
        if &x * &x == rest {
            for sx in [x.clone(), -x.clone()] {
                for sy in [y.clone(), -y.clone()] {
                    ensure(!h.contains(&[sx.clone(), sy.clone()]), || {
                        let e = QuadElem { x: sx.clone(), y: sy.clone(), d };
                        format!("{} has norm {norm} and lies in the ideal", o.render(&e))
                    })?;
                }
            }
        }
        y += 1;
    }
    Ok(())
}

fn ideal_verdict(o: &QuadOrder, v: &Value) -> CliResult<()> {
    let gens = get_all(o, v, "generators")?;
    match text(v, "status")? {
        "principal" => principal_generic(o, v),
        "non-principal" => nonprincipal(o, &gens, &int(v, "norm")?),
        "not invertible" => {
            let conj_gens: Vec<QuadElem> = gens.iter().map(conj).collect();
            let p = ideal_product(o, &gens, &conj_gens);
            ensure(!p.is_scalar(), || "I * conj(I) is principal".into())
        }
        s => Err(bad(format!("unknown status '{s}'"))),
    }
}

fn invertible(o: &QuadOrder, v: &Value, negative: bool) -> CliResult<()> {
    let gens = get_all(o, v, "generators")?;
    let conj_gens: Vec<QuadElem> = gens.iter().map(conj).collect();
    let p = ideal_product(o, &gens, &conj_gens);
    ensure(flag(v, "invertible")? != negative, || "verdict and flag disagree".into())?;
    if negative {
        return ensure(!p.is_scalar(), || "I * conj(I) is principal".into());
    }
    let n = int(v, "norm")?;
    ensure(lattice(o, &gens).index() == n, || "norm is not the index".into())?;
    ensure(p.is_scalar() && p.a == n, || "I * conj(I) != (N(I))".into())
}

fn is_prime(p: &Int) -> bool {
    if *p < Int::from(2) {
        return false;
    }
    let mut k = Int::from(2);
    while &k * &k <= *p {
        if p.is_multiple_of(&k) {
            return false;
        }
        k += 1;
    }
    true
}

fn factor(o: &QuadOrder, v: &Value) -> CliResult<()> {
    let e = get(o, v, "element")?;
    let d = o.d();
    let mut acc = Hnf::of(&[[Int::one(), Int::zero()], [Int::zero(), Int::one()]]);
    for (i, pv) in list(v, "primes")?.iter().enumerate() {
        let p = int(pv, "p")?;
        let gens = get_all(o, pv, "ideal")?;
        let norm = int(pv, "norm")?;
        let k = index(at(pv, "exponent")?, "exponent")?;
        let h = lattice(o, &gens);
        ensure(is_prime(&p), || format!("prime {i}: {p} is not prime"))?;
        ensure(h.index() == norm, || format!("prime {i}: norm is not the index"))?;
        if norm == p {
        } else if norm == &p * &p {
            ensure(h.is_scalar() && h.a == p, || format!("prime {i}: norm p^2 but not pO"))?;
            let dm = Int::from(d).mod_floor(&p);
            let mut x = Int::zero();
            while x < p {
                ensure((&x * &x).mod_floor(&p) != dm, || format!("prime {i}: d is a square mod {p}"))?;
                x += 1;
            }
        } else {
            return Err(bad(format!("prime {i}: norm {norm} is neither p nor p^2")));
        }
        for _ in 0..k {
            acc = ideal_product(o, &acc.basis(d), &gens);
        }
    }
    let target = lattice(o, std::slice::from_ref(&e));
    ensure(acc == target, || "product of prime powers is not (element)".into())
}

fn associates<A: Domain>(ring: &A, a: &A::Elem, b: &A::Elem) -> bool {
    ring.divide(a, b).is_some_and(|q| ring.is_unit(&q))
}

fn same_factors<A: Domain>(ring: &A, f: &[A::Elem], g: &[A::Elem]) -> bool {
    let mut used = vec![false; g.len()];
    f.len() == g.len()
        && f.iter().all(|x| {
            (0..g.len())
                .find(|&j| !used[j] && associates(ring, x, &g[j]))
                .map(|j| used[j] = true)
                .is_some()
        })
}

fn prime_power_base(n: &Int) -> Option<Int> {
    let n = n.abs();
    let mut k = Int::from(2);
    while &k * &k <= n {
        if n.is_multiple_of(&k) {
            let mut m = n.clone();
            while m.is_multiple_of(&k) {
                m /= &k;
            }
            return m.is_one().then_some(k);
        }
        k += 1;
    }
    (n > Int::one()).then_some(n)
}

/// Checks one element entry; returns its factorization count.
fn comax_entry<A: Algebra>(ring: &A, v: &Value, evidence: &dyn Fn(&Value) -> CliResult<()>) -> CliResult<usize> {
    let e = get(ring, v, "element")?;
    let fs = list(v, "factorizations")?;
    let count = index(at(v, "count")?, "count")?;
    ensure(count == fs.len() && count > 0, || "factorization count mismatch".into())?;
    let mut all: Vec<Vec<A::Elem>> = Vec::new();
    for (n, f) in fs.iter().enumerate() {
        let factors = get_all(ring, f, "factors")?;
        let unit = get(ring, f, "unit")?;
        ensure(ring.is_unit(&unit), || format!("factorization {n}: unit is not a unit"))?;
        ensure(eq(ring, &ring.mul(&product(ring, &factors), &unit), &e), || {
            format!("factorization {n}: product * unit != element")
        })?;
        for (i, x) in factors.iter().enumerate() {
            ensure(!ring.is_unit(x) && !ring.is_zero(x), || format!("factorization {n}: factor {i} is a unit"))?;
        }
        pairwise(ring, &factors, list(f, "bezout")?)?;
        for t in list(f, "transcripts")? {
            for s in list(t, "rejected_splits")? {
                evidence(at(s, "evidence")?)?;
            }
        }
        for (i, prev) in all.iter().enumerate() {
            ensure(!same_factors(ring, prev, &factors), || {
                format!("factorizations {i} and {n} agree up to units and order")
            })?;
        }
        all.push(factors);
    }
    Ok(count)
}

fn comax(spec: &RingSpec, which: &str, v: &Value, negative: bool) -> CliResult<()> {
    let counts: Vec<usize> = match spec {
        RingSpec::Z(z) => {
            let entries = comax_entries(v, which)?;
            let mut counts = Vec::new();
            for e in entries {
                counts.push(comax_entry(z, e, &|_| Err(bad("Z has no rejected splits")))?);
                for f in list(e, "factorizations")? {
                    let bases = get_all(z, f, "factors")?
                        .iter()
                        .map(|x| prime_power_base(x).ok_or_else(|| bad(format!("{x} is not a prime power"))))
                        .collect::<CliResult<Vec<_>>>()?;
                    let mut sorted = bases.clone();
                    sorted.sort();
                    sorted.dedup();
                    ensure(sorted.len() == bases.len(), || "two factors share a prime".into())?;
                }
            }
            counts
        }
        RingSpec::Quad(o) => {
            let ev = |e: &Value| nonprincipal(o, &get_all(o, e, "ideal")?, &int(e, "norm")?);
            comax_entries(v, which)?
                .into_iter()
                .map(|e| comax_entry(o, e, &ev))
                .collect::<CliResult<_>>()?
        }
        s => return Err(bad(format!("comax report over {}", s.describe()))),
    };
    match which {
        "factor" => Ok(()),
        "unique" => {
            let unique = counts.iter().all(|&c| c == 1);
            ensure(unique != negative, || "uniqueness verdict disagrees with the counts".into())
        }
        "hunt" => ensure(negative == !counts.is_empty() && counts.iter().all(|&c| c >= 2), || {
            "hunt witness needs two or more factorizations".into()
        }),
        w => Err(bad(format!("unknown comax command '{w}'"))),
    }
}

fn comax_entries<'a>(v: &'a Value, which: &str) -> CliResult<Vec<&'a Value>> {
    if which == "hunt" {
        let w = at(v, "witness")?;
        Ok(if w.is_null() { vec![] } else { vec![w] })
    } else {
        Ok(list(v, "elements")?.iter().collect())
    }
}

fn pullback_reduce(p: &princ_core::pullback::Pullback, v: &Value, negative: bool) -> CliResult<()> {
    if v.get("case").is_none() {
        return pair(p, v, negative);
    }
    pair(p, v, false)?;
    let (a, b) = (get(p, v, "a")?, get(p, v, "b")?);
    if negative {
        let ideal = at(v, "residual_ideal")?;
        let o = QuadOrder::new(p.d()).map_err(|e| bad(e.to_string()))?;
        ensure(text(ideal, "status")? != "principal", || "residual ideal is principal".into())?;
        return ideal_verdict(&o, ideal);
    }
    let g = get(p, v, "generator")?;
    let cs = get_all(p, v, "coefficients")?;
    let qs = get_all(p, v, "quotients")?;
    ensure(cs.len() == 2 && qs.len() == 2, || "expected two coefficients and quotients".into())?;
    ensure(
        eq(p, &p.add(&p.mul(&cs[0], &a), &p.mul(&cs[1], &b)), &g),
        || "g != c0*a + c1*b".into(),
    )?;
    ensure(eq(p, &p.mul(&g, &qs[0]), &a) && eq(p, &p.mul(&g, &qs[1]), &b), || {
        "a or b is not g times its quotient".into()
    })
}

fn rat(v: &Value, key: &str) -> CliResult<Rat> {
    get(&Rationals, v, key)
}

fn mring(ring: &princ_core::monoidring::MonoidRing, which: &str, v: &Value) -> CliResult<()> {
    let term = |s: String| parse_in(ring, &s).map_err(|e| bad(format!("'{s}': {e}")));
    let one_minus = |s: &Rat| term(format!("1 - X^({})", fmt_rat(s)));
    match which {
        "split" => {
            let (s, t, n) = (rat(v, "s")?, rat(v, "t")?, int(v, "n")?);
            ensure(&t * Rat::from_integer(n.clone()) == s, || "t * n != s".into())?;
            let (f1, f2) = (get(ring, v, "f1")?, get(ring, v, "f2")?);
            ensure(eq(ring, &f1, &one_minus(&t)?), || "f1 != 1 - X^t".into())?;
            ensure(eq(ring, &ring.mul(&f1, &f2), &one_minus(&s)?), || "f1*f2 != 1 - X^s".into())?;
            let q = get(ring, v, "quotient")?;
            ensure(int(v, "remainder")? == n, || "remainder is not n".into())?;
            let nn = term(n.to_string())?;
            ensure(eq(ring, &f2, &ring.add(&ring.mul(&f1, &q), &nn)), || "f2 != f1*q + n".into())?;
            let (l, m) = (get(ring, v, "lambda")?, get(ring, v, "mu")?);
            ensure(bezout(ring, &l, &f1, &m, &f2), || "lambda*f1 + mu*f2 != 1".into())?;
            ensure(!ring.is_unit(&f1) && !ring.is_unit(&f2), || "a factor is a unit".into())
        }
        "chain" => {
            let s = rat(v, "s")?;
            let factors = get_all(ring, v, "factors")?;
            ensure(index(at(v, "m")?, "m")? == factors.len(), || "m != number of factors".into())?;
            ensure(eq(ring, &product(ring, &factors), &one_minus(&s)?), || "product != 1 - X^s".into())?;
            ensure(factors.iter().all(|f| !ring.is_unit(f)), || "a factor is a unit".into())?;
            pairwise(ring, &factors, list(v, "certificates")?)
        }
        "juett" => {
            let (t, b, beta) = (rat(v, "t")?, rat(v, "b")?, rat(v, "beta")?);
            let p = int(v, "p")?;
            let pe: u32 = (&p).try_into().map_err(|_| bad("p out of range"))?;
            ensure(num_traits::pow(beta.clone(), pe as usize) == b, || "beta^p != b".into())?;
            let z = get(ring, v, "z")?;
            let tp = t.clone() / Rat::from_integer(p.clone());
            ensure(eq(ring, &z, &term(format!("X^({})/({})", fmt_rat(&tp), fmt_rat(&beta)))?), || {
                "z != X^(t/p)/beta".into()
            })?;
            let (unit, linear, geo) = (get(ring, v, "unit")?, get(ring, v, "linear")?, get(ring, v, "geometric")?);
            ensure(eq(ring, &linear, &ring.sub(&z, &ring.one())), || "linear != Z - 1".into())?;
            let lhs = term(format!("X^({}) - ({})", fmt_rat(&t), fmt_rat(&b)))?;
            ensure(eq(ring, &ring.mul(&unit, &ring.mul(&linear, &geo)), &lhs), || {
                "unit*linear*geometric != X^t - b".into()
            })?;
            ensure(ring.is_unit(&unit), || "unit is not a unit".into())?;
            let (l, m) = (get(ring, v, "lambda")?, get(ring, v, "mu")?);
            ensure(bezout(ring, &l, &linear, &m, &geo), || "lambda*linear + mu*geometric != 1".into())
        }
        w => Err(bad(format!("unknown mring command '{w}'"))),
    }
}

fn limitring(ring: &princ_core::limitring::LimitRing, which: &str, v: &Value) -> CliResult<()> {
    match which {
        "chain" => {
            let factors = get_all(ring, v, "factors")?;
            ensure(index(at(v, "m")?, "m")? == factors.len(), || "m != number of factors".into())?;
            let x1 = parse_in(ring, "x_1").map_err(|e| bad(e.to_string()))?;
            ensure(eq(ring, &product(ring, &factors), &x1), || "product of factors != x_1".into())?;
            ensure(factors.iter().all(|f| !ring.is_unit(f)), || "a factor is a unit".into())?;
            pairwise(ring, &factors, list(v, "certificates")?)
        }
        "eval" => {
            let input = get(ring, v, "input")?;
            let level = index(at(v, "level")?, "level")?;
            let lifted = text(v, "lifted")?;
            let le = parse_in(ring, lifted).map_err(|e| bad(format!("lifted: {e}")))?;
            ensure(eq(ring, &input, &le), || "lifted form differs from the input".into())?;
            if let Some(t) = at(v, "at")?.as_str() {
                let var = format!("x_{level}");
                let poly = parse_raw(&RatPolyRing, &lifted.replace(&var, "X"))
                    .map_err(|e| bad(format!("lifted is not a polynomial in {var}: {e}")))?;
                let t = parse_in(&Rationals, t).map_err(|e| bad(e.to_string()))?;
                let value = rat(v, "value")?;
                ensure(poly.eval(&t) == value, || "value is wrong".into())?;
            }
            Ok(())
        }
        w => Err(bad(format!("unknown limitring command '{w}'"))),
    }
}

fn polyext(which: &str, v: &Value, negative: bool) -> CliResult<()> {
    let excluded = list(v, "excluded")?
        .iter()
        .map(|x| index(x, "excluded"))
        .collect::<CliResult<Vec<_>>>()?;
    let sub = SubringDesc::new(excluded).map_err(|e| bad(e.to_string()))?;
    let ring = PolyExtRing { sub };
    let alpha = text(v, "alpha")?;
    let member = |s: String| parse_in(&ring, &s).is_ok();
    let (in1, in2, in3) = (
        member(format!("({alpha})")),
        member(format!("({alpha})^2")),
        member(format!("({alpha})^3")),
    );
    let witness = !in1 && in2 && in3;
    match which {
        "witness" => {
            ensure(flag(v, "alpha_in_D")? == in1, || "alpha membership is wrong".into())?;
            ensure(flag(v, "alpha2_in_D")? == in2, || "alpha^2 membership is wrong".into())?;
            ensure(flag(v, "alpha3_in_D")? == in3, || "alpha^3 membership is wrong".into())?;
            ensure(witness != negative, || "witness verdict disagrees with the memberships".into())
        }
        "counterexample" => {
            ensure(witness, || "alpha is not a seminormality witness".into())?;
            let raw = |s: String| parse_raw(&ring, &s).map_err(|e| bad(format!("'{s}': {e}")));
            let (u, w) = (get(&ring, v, "u")?, get(&ring, v, "w")?);
            let vv = get(&ring, v, "v")?;
            ensure(eq(&ring, &u, &raw(format!("1 - ({alpha})^4*X^4"))?), || "u != 1 - alpha^4 X^4".into())?;
            ensure(eq(&ring, &vv, &raw(format!("({alpha})^2*(1 + ({alpha})*X)"))?), || {
                "v != alpha^2 (1 + alpha X)".into()
            })?;
            ensure(eq(&ring, &ring.mul(&u, &ring.one_minus(&u)), &ring.mul(&vv, &w)), || {
                "u(1-u) != v*w".into()
            })?;
            let a = raw(format!("1 - ({alpha})*X"))?;
            ensure(eq(&ring, &get_raw(&ring, v, "a")?, &a), || "a != 1 - alpha X".into())?;
            ensure(parse_in(&ring, text(v, "b")?).is_err(), || "b = 1 + alpha X lies in D[X]".into())
        }
        w => Err(bad(format!("unknown polyext command '{w}'"))),
    }
}

fn get_raw<A: Algebra>(ring: &A, v: &Value, key: &str) -> CliResult<A::Elem> {
    parse_raw(ring, text(v, key)?).map_err(|e| bad(format!("{key}: {e}")))
}

fn sphere(which: &str, v: &Value, negative: bool) -> CliResult<()> {
    let ring = SphereRing;
    match which {
        "projector" => {
            let m = matrix(&ring, v, "matrix")?;
            ensure(m.len() == 3, || "expected a 3x3 matrix".into())?;
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let delta = if i == j { "1" } else { "0" };
                    let expect = parse_in(&ring, &format!("{delta} - X{i}*X{j}")).map_err(|e| bad(e.to_string()))?;
                    ensure(eq(&ring, x, &expect), || format!("entry ({i}, {j}) != delta - X{i} X{j}"))?;
                }
            }
            let sq = mat_square(&ring, &m);
            ensure(mat_eq(&ring, &sq, &m), || "P^2 != P".into())?;
            ensure(mat_eq(&ring, &matrix(&ring, v, "square")?, &sq), || "reported square is wrong".into())?;
            let tr = get(&ring, v, "trace")?;
            let own = (0..3).fold(ring.zero(), |acc, i| ring.add(&acc, &m[i][i]));
            ensure(eq(&ring, &tr, &own) && eq(&ring, &tr, &parse_in(&ring, "2").expect("constant")), || {
                "trace is not 2".into()
            })?;
            ensure(!negative, || "all identities recheck, yet the verdict is negative".into())
        }
        "reduce" => {
            let input = parse_in(&ring, text(v, "input")?).map_err(|e| bad(e.to_string()))?;
            ensure(eq(&ring, &input, &get(&ring, v, "normal_form")?), || "normal form differs".into())
        }
        w => Err(bad(format!("unknown sphere command '{w}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> [Int; 2] {
        [Int::from(x), Int::from(y)]
    }

    #[test]
    fn hnf_of_small_lattices() {
        let h = Hnf::of(&[v(3, 0), v(1, 1)]);
        assert_eq!((h.a.clone(), h.x0.clone(), h.c.clone()), (3.into(), 1.into(), 1.into()));
        assert_eq!(h.index(), Int::from(3));
        assert!(h.contains(&v(4, 1)) && h.contains(&v(-2, 1)) && !h.contains(&v(0, 1)));
        let h = Hnf::of(&[v(4, 6), v(2, 2), v(0, 2)]);
        assert_eq!(h.index(), Int::from(4));
        assert!(Hnf::of(&[v(5, 0), v(0, 5)]).is_scalar());
    }

    #[test]
    fn lattice_index_is_the_norm() {
        let o = QuadOrder::new(-5).unwrap();
        let g = [o.int(3), o.elem(1, 1)];
        assert_eq!(lattice(&o, &g).index(), Int::from(3));
        assert!(nonprincipal(&o, &g, &Int::from(3)).is_ok());
        let p = [o.int(3), o.elem(3, 1)];
        assert!(nonprincipal(&o, &p, &lattice(&o, &p).index()).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(&Int::from(-8)), Some(Int::from(2)));
        assert_eq!(prime_power_base(&Int::from(12)), None);
        assert_eq!(prime_power_base(&Int::from(1)), None);
        assert!(is_prime(&Int::from(97)) && !is_prime(&Int::from(91)));
    }
}
