//! Test-side oracles and generators, independent of the library algorithms.
#![allow(dead_code)]

use cagv_core::poly::{rat, rat_frac};
use cagv_core::{BiPoly, Rat};
use num_traits::Zero;
use rand::Rng;

/// Rank over the rationals by dense Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                let p = rows[rank].clone();
                for (x, y) in rows[r][c..].iter_mut().zip(&p[c..]) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by dense elimination with row swaps.
pub fn det_dense(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = rat(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Monomials `x^a y^b` with `a + b < k`, listed by degree.
fn monomials(k: u32) -> Vec<(u32, u32)> {
    (0..k)
        .flat_map(|d| (0..=d).map(move |b| (d - b, b)))
        .collect()
}

/// `dim Q[x,y] / ((p, q) + m^k)`.
pub fn jet_codim(p: &BiPoly, q: &BiPoly, k: u32) -> u64 {
    let basis = monomials(k);
    let index = |a: u32, b: u32| basis.iter().position(|&m| m == (a, b));
    let mut rows = Vec::new();
    for g in [p, q] {
        for &(a, b) in &basis {
            let mut row = vec![Rat::zero(); basis.len()];
            for (e, c) in g.terms() {
                if let Some(ix) = index(e.0 + a, e.1 + b) {
                    row[ix] += c;
                }
            }
            rows.push(row);
        }
    }
    (basis.len() - dense_rank(rows)) as u64
}

/// Certified local multiplicity, or `None` if `d_K` does not settle by `k_max`.
pub fn oracle_mult(p: &BiPoly, q: &BiPoly, k_max: u32) -> Option<u64> {
    let mut prev = jet_codim(p, q, 1);
    for k in 2..=k_max {
        let cur = jet_codim(p, q, k);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

/// Small nonzero rational.
pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    let mut n = rng.gen_range(1..=3i64);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    if rng.gen_bool(0.2) {
        rat_frac(n, 2)
    } else {
        rat(n)
    }
}

/// Random polynomial of total degree at most `max_deg` vanishing at the origin.
pub fn rand_germ<R: Rng>(rng: &mut R, max_deg: u32) -> BiPoly {
    loop {
        let mut terms = Vec::new();
        for d in 1..=max_deg {
            for b in 0..=d {
                if rng.gen_bool(if d == 1 { 0.5 } else { 0.25 }) {
                    terms.push(((d - b, b), small_rat(rng)));
                }
            }
        }
        let p = BiPoly::from_terms(terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random polynomial that is a unit with probability `unit_p`, else a germ.
pub fn rand_factor<R: Rng>(rng: &mut R, max_deg: u32, unit_p: f64) -> BiPoly {
    let g = rand_germ(rng, max_deg);
    if rng.gen_bool(unit_p) {
        &g + &BiPoly::one()
    } else {
        g
    }
}

/// Random smooth germ: a multiple of `x`, `y`, `x + y` or `x - y` plus higher terms.
pub fn rand_smooth<R: Rng>(rng: &mut R, max_deg: u32) -> BiPoly {
    let dir = match rng.gen_range(0..4) {
        0 => BiPoly::x(),
        1 => BiPoly::y(),
        2 => &BiPoly::x() + &BiPoly::y(),
        _ => &BiPoly::x() - &BiPoly::y(),
    };
    let lin = dir.scale(&small_rat(rng));
    let mut higher = Vec::new();
    for d in 2..=max_deg {
        for b in 0..=d {
            if rng.gen_bool(0.2) {
                higher.push(((d - b, b), small_rat(rng)));
            }
        }
    }
    &lin + &BiPoly::from_terms(higher)
}
