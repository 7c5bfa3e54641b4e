//! Rank-2 integer lattices in Z^2 in Hermite normal form.
//!
//! A full-rank lattice has a unique basis `{(A, 0), (B, C)}` with `A, C > 0`
//! and `0 <= B < A`. The reduction tracks, for each basis vector, its integer
//! combination of the input spanning vectors so membership can be certified.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::num::ext_gcd;
use crate::arith::Int;

#[derive(Clone, Debug)]
struct Row {
    v: [Int; 2],
    comb: Vec<Int>,
}

impl Row {
    fn lin(a: &Int, r: &Row, b: &Int, s: &Row) -> Row {
        Row {
            v: [a * &r.v[0] + b * &s.v[0], a * &r.v[1] + b * &s.v[1]],
            comb: r
                .comb
                .iter()
                .zip(&s.comb)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }

    fn negate(&mut self) {
        self.v = [-&self.v[0], -&self.v[1]];
        self.comb.iter_mut().for_each(|c| *c = -&*c);
    }
}

#[derive(Clone, Debug)]
pub struct Hnf {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    /// Combination of the inputs producing `(A, 0)`.
    pub comb_a: Vec<Int>,
    /// Combination of the inputs producing `(B, C)`.
    pub comb_bc: Vec<Int>,
}

/// Folds all rows into `rows[0]` along coordinate `k` by unimodular steps;
/// afterwards every other row has coordinate `k` equal to zero.
fn gcd_column(rows: &mut [Row], k: usize) {
    for i in 1..rows.len() {
        if rows[i].v[k].is_zero() {
            continue;
        }
        if rows[0].v[k].is_zero() {
            rows.swap(0, i);
            continue;
        }
        let (g, s, t) = ext_gcd(&rows[0].v[k], &rows[i].v[k]);
        let u = &rows[i].v[k] / &g;
        let w = &rows[0].v[k] / &g;
        let r0 = Row::lin(&s, &rows[0], &t, &rows[i]);
        let ri = Row::lin(&u, &rows[0], &(-w), &rows[i]);
        rows[0] = r0;
        rows[i] = ri;
    }
}

/// Hermite normal form of the lattice spanned by `vecs`; `None` if rank < 2.
pub fn hnf(vecs: &[[Int; 2]]) -> Option<Hnf> {
    let n = vecs.len();
    let mut rows: Vec<Row> = vecs
        .iter()
        .enumerate()
        .map(|(i, v)| Row {
            v: v.clone(),
            comb: (0..n).map(|j| Int::from((i == j) as u8)).collect(),
        })
        .collect();
    if rows.len() < 2 {
        return None;
    }
    gcd_column(&mut rows, 1);
    let (bc, rest) = rows.split_first_mut().expect("nonempty");
    if bc.v[1].is_zero() {
        return None;
    }
    gcd_column(rest, 0);
    let mut a_row = rest[0].clone();
    if a_row.v[0].is_zero() {
        return None;
    }
    if a_row.v[0].is_negative() {
        a_row.negate();
    }
    let mut bc = bc.clone();
    if bc.v[1].is_negative() {
        bc.negate();
    }
    let q = bc.v[0].div_floor(&a_row.v[0]);
    let bc = Row::lin(&Int::from(1), &bc, &(-q), &a_row);
    Some(Hnf {
        a: a_row.v[0].clone(),
        b: bc.v[0].clone(),
        c: bc.v[1].clone(),
        comb_a: a_row.comb,
        comb_bc: bc.comb,
    })
}

impl Hnf {
    /// Integer coordinates `(m, k)` with `t = m*(A,0) + k*(B,C)`.
    pub fn coordinates(&self, t: &[Int; 2]) -> Option<(Int, Int)> {
        let (k, r) = t[1].div_rem(&self.c);
        if !r.is_zero() {
            return None;
        }
        let (m, r) = (&t[0] - &k * &self.b).div_rem(&self.a);
        r.is_zero().then_some((m, k))
    }

    /// Combination of the input vectors producing `t`, if `t` is in the lattice.
    pub fn express(&self, t: &[Int; 2]) -> Option<Vec<Int>> {
        let (m, k) = self.coordinates(t)?;
        Some(
            self.comb_a
                .iter()
                .zip(&self.comb_bc)
                .map(|(x, y)| &m * x + &k * y)
                .collect(),
        )
    }

    pub fn index(&self) -> Int {
        &self.a * &self.c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> [Int; 2] {
        [Int::from(x), Int::from(y)]
    }

    #[test]
    fn hnf_and_express() {
        let vecs = [v(2, 0), v(0, 2), v(1, 1), v(-5, 1)];
        let h = hnf(&vecs).unwrap();
        assert_eq!((h.a.clone(), h.b.clone(), h.c.clone()), (2.into(), 1.into(), 1.into()));
        let t = v(7, 3);
        let comb = h.express(&t).unwrap();
        let mut sum = v(0, 0);
        for (c, w) in comb.iter().zip(&vecs) {
            sum[0] += c * &w[0];
            sum[1] += c * &w[1];
        }
        assert_eq!(sum, t);
        assert!(h.express(&v(1, 0)).is_none());
    }

    #[test]
    fn rank_deficient() {
        assert!(hnf(&[v(1, 1), v(2, 2)]).is_none());
        assert!(hnf(&[v(3, 0)]).is_none());
    }
}
