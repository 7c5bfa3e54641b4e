//! Subcommand implementations. Each builds a [`Report`] from core results.

use std::convert::Infallible;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use princ_core::arith::num::{ext_gcd, fmt_rat};
use princ_core::arith::{ExprFmt, Int, Rat};
use princ_core::comax::{
    enumerate_complete_factorizations, find_nonunique_witness, find_nonunique_witness_int, ComaxFactorization,
    ComaxRing, QuadBlockEvidence, DEFAULT_SUPPORT_CAP, INT_SUPPORT_CAP,
};
use princ_core::domain::{Domain, Integers};
use princ_core::idem::{
    complement_identity, idem_matrix, is_idempotent_pair, lemma_pair_int, lemma_pair_quad, mat_mul, IdemPair,
    NonPrincWitness, Orientation,
};
use princ_core::limitring::{lr_chain, lr_lift, LimitRing};
use princ_core::monoidring::{default_split_degree, juett_split, mr_comax_chain, mr_split, MonoidRing};
use princ_core::polyext::{nonprinc_pair_from_alpha, render_x, seminormal_witness, PolyExtRing, SubringDesc, YPoly};
use princ_core::pullback::{pb_nonufd_chain, pb_reduce_idem_pair, PbReduction, Pullback};
use princ_core::quadring::{factor_principal, ideal_from_pair, PrincipalityVerdict, QuadElem, QuadIdeal, QuadOrder};
use princ_core::sphere::{tangent_projector, SphereElem, SphereRing};

use crate::expr::ParseError;
use crate::report::{num, Report, RingEcho};
use crate::rings::{monoid_kind, parse_in, parse_raw, Algebra, Rationals, RingSpec};
use crate::with_ring;

pub const SUPPORT_CAP_VAR: &str = "PRINC_LAB_SUPPORT_CAP";

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Parse { input: String, err: ParseError },
    Recheck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Recheck(_) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Parse { input, err } => write!(f, "cannot parse '{input}' {}", err.annotate(input)),
            CliError::Recheck(m) => write!(f, "recheck failed: {m}"),
        }
    }
}

impl From<princ_core::Error> for CliError {
    fn from(e: princ_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn el<A: Algebra>(ring: &A, s: &str) -> CliResult<A::Elem> {
    parse_in(ring, s).map_err(|err| CliError::Parse {
        input: s.to_string(),
        err,
    })
}

fn rd<A: Domain>(ring: &A, e: &A::Elem) -> Value {
    Value::String(ring.render(e))
}

fn rds<'a, A: Domain + 'a>(ring: &A, es: impl IntoIterator<Item = &'a A::Elem>) -> Value {
    Value::Array(es.into_iter().map(|e| rd(ring, e)).collect())
}

pub fn echo(spec: &RingSpec) -> RingEcho {
    RingEcho {
        ring: spec.describe(),
        monoid: spec.monoid().map(monoid_kind),
        group: spec.monoid().is_some_and(|m| m.group),
    }
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Forward => "forward",
        Orientation::Reverse => "reverse",
    }
}

fn matrix_json<A: Domain>(ring: &A, m: &[[A::Elem; 2]; 2]) -> Value {
    Value::Array(m.iter().map(|row| rds(ring, row)).collect())
}

fn pair_json<A: Domain>(ring: &A, p: &IdemPair<A::Elem>) -> CliResult<Value> {
    let c = complement_identity(ring, p)?;
    let m = idem_matrix(ring, p)?;
    Ok(json!({
        "a": rd(ring, &p.a),
        "b": rd(ring, &p.b),
        "orientation": orientation_name(p.orientation),
        "relation": p.orientation.label(),
        "r": rd(ring, &p.r),
        "complement": {
            "first": rds(ring, [&c.first.0, &c.first.1]),
            "second": rds(ring, [&c.second.0, &c.second.1]),
            "generator": rd(ring, &c.generator),
            "products": rds(ring, &c.products),
            "quotients": rds(ring, &c.quotients),
            "combination": rds(ring, &c.combination),
        },
        "matrix": matrix_json(ring, &m),
    }))
}

pub fn idem_check<A: Algebra>(ring: &A, echo: RingEcho, a: &str, b: &str) -> CliResult<Report> {
    let (x, y) = (el(ring, a)?, el(ring, b)?);
    let cmd = ["idem", "check"];
    Ok(match is_idempotent_pair(ring, &x, &y) {
        None => Report::new(
            &cmd,
            Some(echo),
            "not an idempotent pair",
            true,
            json!({"a": rd(ring, &x), "b": rd(ring, &y)}),
        ),
        Some(p) => Report::new(&cmd, Some(echo), "idempotent pair", false, pair_json(ring, &p)?),
    })
}

pub fn idem_matrix_cmd<A: Algebra>(ring: &A, echo: RingEcho, a: &str, b: &str) -> CliResult<Report> {
    let (x, y) = (el(ring, a)?, el(ring, b)?);
    let cmd = ["idem", "matrix"];
    Ok(match is_idempotent_pair(ring, &x, &y) {
        None => Report::new(
            &cmd,
            Some(echo),
            "not an idempotent pair",
            true,
            json!({"a": rd(ring, &x), "b": rd(ring, &y)}),
        ),
        Some(p) => {
            let m = idem_matrix(ring, &p)?;
            let sq = mat_mul(ring, &m, &m);
            Report::new(
                &cmd,
                Some(echo),
                "idempotent matrix",
                false,
                json!({
                    "a": rd(ring, &p.a),
                    "b": rd(ring, &p.b),
                    "orientation": orientation_name(p.orientation),
                    "r": rd(ring, &p.r),
                    "matrix": matrix_json(ring, &m),
                    "square": matrix_json(ring, &sq),
                }),
            )
        }
    })
}

/// Principality verdict of a quadratic ideal; the flag marks a negative verdict.
pub fn principality_json(ideal: &QuadIdeal, v: &PrincipalityVerdict) -> (Value, bool) {
    let o = ideal.order();
    let gens = rds(&o, ideal.generators());
    let norm = num(ideal.norm());
    match v {
        PrincipalityVerdict::Principal {
            generator,
            coefficients,
            quotients,
            ..
        } => (
            json!({
                "status": "principal",
                "generators": gens,
                "norm": norm,
                "generator": rd(&o, generator),
                "coefficients": rds(&o, coefficients),
                "quotients": rds(&o, quotients),
            }),
            false,
        ),
        PrincipalityVerdict::NonPrincipal { search } => (
            json!({
                "status": "non-principal",
                "generators": gens,
                "norm": norm,
                "y_bound": num(&search.y_bound),
                "candidates": search.rejections.iter().map(|(g, i)| json!({
                    "element": rd(&o, g),
                    "fails_to_divide": num(i),
                })).collect::<Vec<_>>(),
            }),
            true,
        ),
        PrincipalityVerdict::NotInvertible(inv) => (
            json!({
                "status": "not invertible",
                "generators": gens,
                "norm": norm,
                "conjugate": rds(&o, inv.conjugate.generators()),
                "product": rds(&o, inv.product.generators()),
            }),
            true,
        ),
    }
}

pub fn idem_from_ideal(spec: &RingSpec, a: &str, b: &str) -> CliResult<Report> {
    let cmd = ["idem", "from-ideal"];
    match spec {
        RingSpec::Z(z) => {
            let (x, y) = (el(z, a)?, el(z, b)?);
            let lp = lemma_pair_int(&x, &y)?;
            let (pa, pb) = (&lp.pair.a, &lp.pair.b);
            let (g, s, t) = ext_gcd(pa, pb);
            let (g, s, t) = if g < Int::zero() { (-g, -s, -t) } else { (g, s, t) };
            let ideal = json!({
                "status": "principal",
                "generators": rds(z, [pa, pb]),
                "generator": num(&g),
                "coefficients": [num(&s), num(&t)],
                "quotients": [num(pa / &g), num(pb / &g)],
            });
            let result = json!({
                "input": rds(z, [&x, &y]),
                "lambda": fmt_rat(&lp.cert.lambda),
                "mu": fmt_rat(&lp.cert.mu),
                "pair": pair_json(z, &lp.pair)?,
                "mu_b": rd(z, &lp.mu_b),
                "ideal": ideal,
            });
            Ok(Report::new(&cmd, Some(echo(spec)), "idempotent pair; principal ideal", false, result))
        }
        RingSpec::Quad(o) => {
            let (x, y) = (el(o, a)?, el(o, b)?);
            let lp = lemma_pair_quad(&x, &y)?;
            let ideal = ideal_from_pair(&lp.pair.a, &lp.pair.b)?;
            let (ij, negative) = principality_json(&ideal, &ideal.principality());
            let witness = NonPrincWitness::establish(&lp.pair)?.is_some();
            let result = json!({
                "input": rds(o, [&x, &y]),
                "lambda": lp.cert.lambda.render(),
                "mu": lp.cert.mu.render(),
                "pair": pair_json(o, &lp.pair)?,
                "mu_b": rd(o, &lp.mu_b),
                "ideal": ij,
                "ring_not_princ": witness,
            });
            let verdict = if negative {
                "idempotent pair; non-principal ideal"
            } else {
                "idempotent pair; principal ideal"
            };
            Ok(Report::new(&cmd, Some(echo(spec)), verdict, negative, result))
        }
        _ => Err(CliError::Input(format!(
            "idem from-ideal needs Z or Z[sqrt(d)], not {}",
            spec.describe()
        ))),
    }
}

fn quad_order(spec: &RingSpec, what: &str) -> CliResult<QuadOrder> {
    match spec {
        RingSpec::Quad(o) => Ok(*o),
        _ => Err(CliError::Input(format!("{what} needs Z[sqrt(d)], not {}", spec.describe()))),
    }
}

fn quad_ideal(o: &QuadOrder, gens: &[String]) -> CliResult<QuadIdeal> {
    let gs = gens.iter().map(|g| el(o, g)).collect::<CliResult<Vec<_>>>()?;
    Ok(QuadIdeal::from_generators(o, &gs)?)
}

pub fn ideal_principal(spec: &RingSpec, gens: &[String]) -> CliResult<Report> {
    let o = quad_order(spec, "ideal principal")?;
    let i = quad_ideal(&o, gens)?;
    let (v, negative) = principality_json(&i, &i.principality());
    let verdict = v["status"].as_str().expect("status").to_string();
    Ok(Report::new(&["ideal", "principal"], Some(echo(spec)), verdict, negative, v))
}

pub fn ideal_invertible(spec: &RingSpec, gens: &[String]) -> CliResult<Report> {
    let o = quad_order(spec, "ideal invertible")?;
    let i = quad_ideal(&o, gens)?;
    let inv = i.invertibility();
    let result = json!({
        "generators": rds(&o, i.generators()),
        "norm": num(&inv.norm),
        "invertible": inv.invertible,
        "conjugate": rds(&o, inv.conjugate.generators()),
        "product": rds(&o, inv.product.generators()),
        "overorder_multiplier": inv.overorder_multiplier.as_ref().map(|w| w.render()),
    });
    let verdict = if inv.invertible { "invertible" } else { "not invertible" };
    Ok(Report::new(&["ideal", "invertible"], Some(echo(spec)), verdict, !inv.invertible, result))
}

pub fn ideal_factor(spec: &RingSpec, elem: &str) -> CliResult<Report> {
    let o = quad_order(spec, "ideal factor")?;
    let e = el(&o, elem)?;
    let f = factor_principal(&e)?;
    if !f.verify()? {
        return Err(CliError::Input("prime factorization fails to re-verify".into()));
    }
    let primes: Vec<Value> = f
        .factors
        .iter()
        .map(|(p, k)| {
            json!({
                "p": num(&p.p),
                "splitting": p.splitting.label(),
                "ideal": rds(&o, p.ideal.generators()),
                "norm": num(p.norm()),
                "exponent": num(k),
            })
        })
        .collect();
    let result = json!({"element": rd(&o, &e), "norm": num(e.norm()), "primes": primes});
    Ok(Report::new(&["ideal", "factor"], Some(echo(spec)), "factored", false, result))
}

/// Serialized reason a block product is not principal.
pub trait EvidenceJson {
    fn to_json(&self) -> Value;
}

impl EvidenceJson for Infallible {
    fn to_json(&self) -> Value {
        match *self {}
    }
}

impl EvidenceJson for QuadBlockEvidence {
    fn to_json(&self) -> Value {
        let o = self.ideal.order();
        json!({
            "ideal": rds(&o, self.ideal.generators()),
            "norm": num(self.ideal.norm()),
        })
    }
}

fn indices(v: &[usize]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

fn factorization_json<R: ComaxRing>(ring: &R, f: &ComaxFactorization<R::Elem, R::Evidence>) -> Value
where
    R::Evidence: EvidenceJson,
{
    json!({
        "factors": rds(ring, &f.factors),
        "unit": rd(ring, &f.unit),
        "blocks": f.blocks.iter().map(|b| indices(b)).collect::<Vec<_>>(),
        "bezout": f.bezout.iter().map(|c| json!({
            "i": num(c.i),
            "j": num(c.j),
            "lambda": rd(ring, &c.lambda),
            "mu": rd(ring, &c.mu),
        })).collect::<Vec<_>>(),
        "transcripts": f.transcripts.iter().map(|t| json!({
            "block": indices(&t.block),
            "rejected_splits": t.rejected_splits.iter().map(|s| json!({
                "left": indices(&s.left),
                "right": indices(&s.right),
                "left_fails": s.left_fails,
                "evidence": s.evidence.to_json(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn comax_element<R: ComaxRing + Algebra>(ring: &R, s: &str, cap: usize) -> CliResult<(Value, usize)>
where
    R::Evidence: EvidenceJson,
{
    let b = el(ring, s)?;
    let fs = enumerate_complete_factorizations(ring, &b, cap)?;
    let support = fs.first().map(|f| f.support.clone()).unwrap_or_default();
    let v = json!({
        "element": rd(ring, &b),
        "support": support,
        "count": num(fs.len()),
        "factorizations": fs.iter().map(|f| factorization_json(ring, f)).collect::<Vec<_>>(),
    });
    Ok((v, fs.len()))
}

/// The support cap from the environment, or `default`.
pub fn support_cap(default: usize) -> CliResult<usize> {
    match std::env::var(SUPPORT_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|c| (1..=usize::BITS as usize - 1).contains(c))
            .ok_or_else(|| CliError::Input(format!("{SUPPORT_CAP_VAR}='{v}' is not a valid support cap"))),
        Err(_) => Ok(default),
    }
}

fn comax_batch<R: ComaxRing + Algebra + Sync>(
    ring: &R,
    elems: &[String],
    cap: usize,
    jobs: usize,
) -> CliResult<Vec<(Value, usize)>>
where
    R::Evidence: EvidenceJson,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(e.to_string()))?;
    pool.install(|| elems.par_iter().map(|s| comax_element(ring, s, cap)).collect())
}

pub fn comax_enumerate(spec: &RingSpec, elems: &[String], jobs: usize, unique: bool) -> CliResult<Report> {
    if elems.is_empty() {
        return Err(CliError::Input("no elements given".into()));
    }
    let (rows, cap) = match spec {
        RingSpec::Z(z) => {
            let cap = support_cap(INT_SUPPORT_CAP)?;
            (comax_batch(z, elems, cap, jobs)?, cap)
        }
        RingSpec::Quad(o) => {
            let cap = support_cap(DEFAULT_SUPPORT_CAP)?;
            (comax_batch(o, elems, cap, jobs)?, cap)
        }
        _ => {
            return Err(CliError::Input(format!(
                "comax needs Z or Z[sqrt(d)], not {}",
                spec.describe()
            )))
        }
    };
    let all_unique = rows.iter().all(|(_, n)| *n == 1);
    let result = json!({
        "support_cap": num(cap),
        "elements": rows.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
    });
    let (cmd, verdict, negative) = if unique {
        let v = if all_unique { "unique" } else { "non-unique" };
        (["comax", "unique"], v, !all_unique)
    } else {
        (["comax", "factor"], "enumerated", false)
    };
    Ok(Report::new(&cmd, Some(echo(spec)), verdict, negative, result))
}

pub fn comax_hunt(spec: &RingSpec, bound: &str) -> CliResult<Report> {
    let bound = el(&Integers, bound)?;
    let (witness, scanned) = match spec {
        RingSpec::Z(z) => {
            let h = find_nonunique_witness_int(&bound)?;
            let scanned = h.as_ref().map(|h| h.scanned);
            (
                h.map(|h| json!({
                    "element": rd(z, &h.element),
                    "norm": num(&h.norm),
                    "count": num(h.factorizations.len()),
                    "factorizations": h.factorizations.iter().map(|f| factorization_json(z, f)).collect::<Vec<_>>(),
                })),
                scanned,
            )
        }
        RingSpec::Quad(o) => {
            let cap = support_cap(DEFAULT_SUPPORT_CAP)?;
            let h = find_nonunique_witness(o, &bound, cap)?;
            let scanned = h.as_ref().map(|h| h.scanned);
            (
                h.map(|h| json!({
                    "element": rd(o, &h.element),
                    "norm": num(&h.norm),
                    "count": num(h.factorizations.len()),
                    "factorizations": h.factorizations.iter().map(|f| factorization_json(o, f)).collect::<Vec<_>>(),
                })),
                scanned,
            )
        }
        _ => {
            return Err(CliError::Input(format!(
                "comax hunt needs Z or Z[sqrt(d)], not {}",
                spec.describe()
            )))
        }
    };
    let found = witness.is_some();
    let result = json!({
        "bound": num(&bound),
        "scanned": scanned.map(num),
        "witness": witness,
    });
    let verdict = if found { "non-unique" } else { "no witness within the bound" };
    Ok(Report::new(&["comax", "hunt"], Some(echo(spec)), verdict, found, result))
}

fn pullback_ring<'a>(spec: &'a RingSpec, what: &str) -> CliResult<&'a Pullback> {
    match spec {
        RingSpec::Pullback(p) => Ok(p),
        _ => Err(CliError::Input(format!("{what} needs pullback:Z or pullback:Z[sqrt(d)], not {}", spec.describe()))),
    }
}

pub fn pullback_reduce(spec: &RingSpec, a: &str, b: &str) -> CliResult<Report> {
    let ring = pullback_ring(spec, "pullback reduce")?;
    let (x, y) = (el(ring, a)?, el(ring, b)?);
    let cmd = ["pullback", "reduce"];
    let Some(p) = is_idempotent_pair(ring, &x, &y) else {
        return Ok(Report::new(
            &cmd,
            Some(echo(spec)),
            "not an idempotent pair",
            true,
            json!({"a": rd(ring, &x), "b": rd(ring, &y)}),
        ));
    };
    let base = json!({
        "a": rd(ring, &p.a),
        "b": rd(ring, &p.b),
        "orientation": orientation_name(p.orientation),
        "r": rd(ring, &p.r),
    });
    Ok(match pb_reduce_idem_pair(ring, &p)? {
        PbReduction::Principal(g) => {
            let mut v = base;
            let residual = g.residual.as_ref().map(|r| {
                json!({
                    "a0": r.a0.render(),
                    "b0": r.b0.render(),
                    "d0": r.d0.render(),
                    "unit_a": rd(ring, &r.unit_a),
                    "unit_b": rd(ring, &r.unit_b),
                })
            });
            v["case"] = num(g.case.number());
            v["generator"] = rd(ring, &g.generator);
            v["coefficients"] = rds(ring, [&g.coefficients.0, &g.coefficients.1]);
            v["quotients"] = rds(ring, [&g.quotients.0, &g.quotients.1]);
            v["residual"] = residual.unwrap_or(Value::Null);
            Report::new(&cmd, Some(echo(spec)), "principal", false, v)
        }
        PbReduction::ResidualNonPrincipal { a0, b0, verdict } => {
            let ideal = ideal_from_pair(&a0, &b0)?;
            let (ij, _) = principality_json(&ideal, &verdict);
            let mut v = base;
            v["case"] = num(3);
            v["residual_ideal"] = ij;
            Report::new(&cmd, Some(echo(spec)), "non-principal", true, v)
        }
    })
}

pub fn pullback_nonufd(spec: &RingSpec, z: &str, d: &str, n: u32) -> CliResult<Report> {
    let ring = pullback_ring(spec, "pullback nonufd")?;
    let ze = el(ring, z)?;
    let de = match spec {
        RingSpec::Pullback(p) if p.d() != 0 => el(&QuadOrder::new(p.d())?, d)?,
        _ => QuadElem {
            x: el(&Integers, d)?,
            y: Int::zero(),
            d: 0,
        },
    };
    let chain = pb_nonufd_chain(ring, &ze, &de, n)?;
    let result = json!({
        "z": rd(ring, &ze),
        "d": de.render(),
        "n": num(n),
        "chain": rds(ring, &chain),
    });
    Ok(Report::new(
        &["pullback", "nonufd"],
        Some(echo(spec)),
        "divisible by every power",
        false,
        result,
    ))
}

fn monoid_ring<'a>(spec: &'a RingSpec, what: &str) -> CliResult<&'a MonoidRing> {
    match spec {
        RingSpec::Monoid(m) => Ok(m),
        _ => Err(CliError::Input(format!("{what} needs a ring D[X;S], not {}", spec.describe()))),
    }
}

fn rational(s: &str) -> CliResult<Rat> {
    el(&Rationals, s)
}

fn split_degree(ring: &MonoidRing, n: Option<&str>) -> CliResult<Int> {
    match n {
        Some(n) => el(&Integers, n),
        None => Ok(default_split_degree(ring)?),
    }
}

pub fn mring_split(spec: &RingSpec, s: &str, n: Option<&str>) -> CliResult<Report> {
    let ring = monoid_ring(spec, "mring split")?;
    let s = rational(s)?;
    let n = split_degree(ring, n)?;
    let sp = mr_split(ring, &s, &n)?;
    let result = json!({
        "s": fmt_rat(&sp.s),
        "n": num(&sp.n),
        "t": fmt_rat(&sp.t),
        "case": sp.case,
        "f1": rd(ring, &sp.f1),
        "f2": rd(ring, &sp.f2),
        "quotient": rd(ring, &sp.quotient),
        "remainder": num(&sp.remainder),
        "lambda": rd(ring, &sp.lambda),
        "mu": rd(ring, &sp.mu),
    });
    Ok(Report::new(&["mring", "split"], Some(echo(spec)), "comaximal split", false, result))
}

pub fn mring_chain(spec: &RingSpec, s: &str, m: usize, n: Option<&str>) -> CliResult<Report> {
    let ring = monoid_ring(spec, "mring chain")?;
    let s = rational(s)?;
    let n = n.map(|n| el(&Integers, n)).transpose()?;
    let c = mr_comax_chain(ring, &s, m, n.as_ref())?;
    let result = json!({
        "s": fmt_rat(&c.s),
        "n": num(&c.n),
        "m": num(m),
        "generator": fmt_rat(&c.generator),
        "factors": rds(ring, &c.factors),
        "certificates": c.certificates.iter().map(|b| json!({
            "i": num(b.i),
            "j": num(b.j),
            "lambda": rd(ring, &b.lambda),
            "mu": rd(ring, &b.mu),
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new(&["mring", "chain"], Some(echo(spec)), "comaximal chain", false, result))
}

pub fn mring_juett(spec: &RingSpec, t: &str, b: &str, p: &str, beta: &str) -> CliResult<Report> {
    let ring = monoid_ring(spec, "mring juett")?;
    let (t, b, beta) = (rational(t)?, rational(b)?, rational(beta)?);
    let p = el(&Integers, p)?;
    let j = juett_split(ring, &t, &b, &p, &beta)?;
    let result = json!({
        "t": fmt_rat(&j.t),
        "b": fmt_rat(&j.b),
        "p": num(&j.p),
        "beta": fmt_rat(&j.beta),
        "z": rd(ring, &j.z),
        "unit": rd(ring, &j.unit),
        "linear": rd(ring, &j.linear),
        "geometric": rd(ring, &j.geometric),
        "lambda": rd(ring, &j.lambda),
        "mu": rd(ring, &j.mu),
    });
    Ok(Report::new(&["mring", "juett"], Some(echo(spec)), "comaximal split", false, result))
}

fn limit_ring<'a>(spec: &'a RingSpec, what: &str) -> CliResult<&'a LimitRing> {
    match spec {
        RingSpec::Limit(l) => Ok(l),
        _ => Err(CliError::Input(format!("{what} needs limitring:Q or limitring:Z, not {}", spec.describe()))),
    }
}

pub fn limitring_chain(spec: &RingSpec, m: u32) -> CliResult<Report> {
    let ring = limit_ring(spec, "limitring chain")?;
    let c = lr_chain(ring, m)?;
    let result = json!({
        "m": num(m),
        "factors": rds(ring, &c.factors),
        "certificates": c.certificates.iter().map(|b| json!({
            "i": num(b.i),
            "j": num(b.j),
            "lambda": rd(ring, &b.lambda),
            "mu": rd(ring, &b.mu),
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new(&["limitring", "chain"], Some(echo(spec)), "comaximal chain", false, result))
}

pub fn limitring_eval(spec: &RingSpec, expr: &str, level: Option<u32>, at: Option<&str>) -> CliResult<Report> {
    let ring = limit_ring(spec, "limitring eval")?;
    let e = el(ring, expr)?;
    let level = level.unwrap_or(0).max(e.level());
    let lifted = lr_lift(&e, level)?;
    let value = at
        .map(|t| rational(t).map(|t| fmt_rat(&lifted.poly().eval(&t))))
        .transpose()?;
    let result = json!({
        "input": rd(ring, &e),
        "level": num(level),
        "lifted": lifted.poly().expr(&[format!("x_{level}").as_str()]),
        "at": at,
        "value": value,
    });
    Ok(Report::new(&["limitring", "eval"], Some(echo(spec)), "evaluated", false, result))
}

fn subring(exclude: &[usize]) -> CliResult<SubringDesc> {
    if exclude.is_empty() {
        Ok(SubringDesc::cusp())
    } else {
        Ok(SubringDesc::new(exclude.iter().copied())?)
    }
}

fn parse_alpha(sub: &SubringDesc, s: &str) -> CliResult<YPoly> {
    let ring = PolyExtRing { sub: sub.clone() };
    let p = parse_raw(&ring, s).map_err(|err| CliError::Parse {
        input: s.to_string(),
        err,
    })?;
    match p.coeffs() {
        [] => Ok(YPoly::zero()),
        [c] => Ok(c.clone()),
        _ => Err(CliError::Input(format!("alpha = {s} must not involve X"))),
    }
}

fn polyext_echo(sub: &SubringDesc) -> RingEcho {
    RingEcho {
        ring: PolyExtRing { sub: sub.clone() }.describe(),
        monoid: None,
        group: false,
    }
}

pub fn polyext_witness(alpha: &str, exclude: &[usize]) -> CliResult<Report> {
    let sub = subring(exclude)?;
    let a = parse_alpha(&sub, alpha)?;
    let holds = seminormal_witness(&a, &sub);
    let result = json!({
        "alpha": a.expr(&["y"]),
        "excluded": indices(&sub.excluded().iter().copied().collect::<Vec<_>>()),
        "alpha_in_D": sub.contains(&a),
        "alpha2_in_D": sub.contains(&(&a * &a)),
        "alpha3_in_D": sub.contains(&a.pow(3)),
    });
    let verdict = if holds { "D is not seminormal" } else { "not a seminormality witness" };
    Ok(Report::new(&["polyext", "witness"], Some(polyext_echo(&sub)), verdict, !holds, result))
}

pub fn polyext_counterexample(alpha: &str, exclude: &[usize]) -> CliResult<Report> {
    let sub = subring(exclude)?;
    let a = parse_alpha(&sub, alpha)?;
    let c = nonprinc_pair_from_alpha(&a, &sub)?;
    let result = json!({
        "alpha": c.alpha.expr(&["y"]),
        "excluded": indices(&sub.excluded().iter().copied().collect::<Vec<_>>()),
        "a": render_x(&c.a),
        "b": render_x(&c.b),
        "u": render_x(&c.u),
        "v": render_x(&c.v),
        "w": render_x(&c.w),
        "comaximal_lhs": render_x(&c.comaximal_lhs),
        "relation_lhs": render_x(&c.relation_lhs),
        "relation_rhs": render_x(&c.relation_rhs),
        "transcript": c.transcript.iter().map(|s| json!({"claim": s.claim, "holds": s.holds})).collect::<Vec<_>>(),
    });
    Ok(Report::new(
        &["polyext", "counterexample"],
        Some(polyext_echo(&sub)),
        "non-principal",
        true,
        result,
    ))
}

fn sphere_echo() -> RingEcho {
    RingEcho {
        ring: SphereRing.describe(),
        monoid: None,
        group: false,
    }
}

pub fn sphere_projector() -> CliResult<Report> {
    let t = tangent_projector();
    let m = |x: &[[SphereElem; 3]; 3]| Value::Array(x.iter().map(|row| rds(&SphereRing, row)).collect());
    let result = json!({
        "matrix": m(&t.matrix),
        "square": m(&t.square),
        "trace": rd(&SphereRing, &t.trace),
        "checks": t.checks.iter().map(|c| json!({"identity": c.identity, "holds": c.holds})).collect::<Vec<_>>(),
    });
    let ok = t.verified();
    let verdict = if ok { "idempotent projector" } else { "identity failed" };
    Ok(Report::new(&["sphere", "projector"], Some(sphere_echo()), verdict, !ok, result))
}

pub fn sphere_reduce(expr: &str) -> CliResult<Report> {
    let e = el(&SphereRing, expr)?;
    let part = |p| SphereElem::new(p, Default::default());
    let result = json!({
        "input": expr,
        "normal_form": rd(&SphereRing, &e),
        "f": rd(&SphereRing, &part(e.f.clone())),
        "g": rd(&SphereRing, &part(e.g.clone())),
    });
    Ok(Report::new(&["sphere", "reduce"], Some(sphere_echo()), "reduced", false, result))
}

pub fn idem_dispatch(spec: &RingSpec, which: &str, a: &str, b: &str) -> CliResult<Report> {
    let e = echo(spec);
    match which {
        "check" => with_ring!(spec, |r| idem_check(r, e, a, b)),
        _ => with_ring!(spec, |r| idem_matrix_cmd(r, e, a, b)),
    }
}
