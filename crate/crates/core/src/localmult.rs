//! Local intersection multiplicity `dim Q[[x,y]]/(p,q)` at the origin.

use std::collections::HashMap;

use num_traits::Zero;

use crate::count::ExtCount;
use crate::error::{Error, Result};
use crate::poly::{poly_gcd, BiPoly, Rat, TruncSeries2};

/// Intersection multiplicity by gcd detection plus the classical reduction.
pub fn mult(p: &BiPoly, q: &BiPoly) -> ExtCount {
    if !p.vanishes_at_origin() || !q.vanishes_at_origin() {
        return ExtCount::Finite(0);
    }
    if p.is_zero() || q.is_zero() {
        return ExtCount::Infinite;
    }
    let r = poly_gcd(p, q);
    let (mut p, mut q) = (p.clone(), q.clone());
    if !r.is_constant() {
        if r.vanishes_at_origin() {
            return ExtCount::Infinite;
        }
        p = p.exact_div(&r).expect("gcd divides");
        q = q.exact_div(&r).expect("gcd divides");
    }
    ExtCount::Finite(reduce(p, q))
}

/// Reduction on a coprime pair.
fn reduce(mut p: BiPoly, mut q: BiPoly) -> u64 {
    let mut total = 0u64;
    loop {
        if !p.vanishes_at_origin() || !q.vanishes_at_origin() {
            return total;
        }
        let f = p.restrict_y0();
        let g = q.restrict_y0();
        if f.is_zero() {
            total += g.low_degree().expect("coprime pair") as u64;
            p = p.div_y().expect("y divides p");
            continue;
        }
        if g.is_zero() {
            total += f.low_degree().expect("coprime pair") as u64;
            q = q.div_y().expect("y divides q");
            continue;
        }
        let (mut df, mut dg) = (f.degree().unwrap(), g.degree().unwrap());
        let (mut lf, mut lg) = (f.lc(), g.lc());
        if df > dg {
            std::mem::swap(&mut p, &mut q);
            std::mem::swap(&mut df, &mut dg);
            std::mem::swap(&mut lf, &mut lg);
        }
        let c = -(lg / lf);
        q = &q + &p.shift((dg - df) as u32, 0, &c);
    }
}

fn monomial_index(a: u32, b: u32) -> usize {
    let d = (a + b) as usize;
    d * (d + 1) / 2 + b as usize
}

/// Dimension of `Q[x,y] / ((p, q) + m^k)`.
fn jet_codim(p: &BiPoly, q: &BiPoly, k: u32) -> u64 {
    let ncols = monomial_index(k, 0);
    let mut basis: HashMap<usize, Vec<(usize, Rat)>> = HashMap::new();
    for g in [p, q] {
        let low = match g.low_degree() {
            Some(d) if d < k => d,
            _ => continue,
        };
        for deg in 0..(k - low) {
            for b in 0..=deg {
                let a = deg - b;
                let mut row: Vec<(usize, Rat)> = g
                    .terms()
                    .filter(|(e, _)| e.0 + e.1 + deg < k)
                    .map(|(e, c)| (monomial_index(e.0 + a, e.1 + b), c.clone()))
                    .collect();
                row.sort_by_key(|t| t.0);
                insert_row(&mut basis, row);
            }
        }
    }
    (ncols - basis.len()) as u64
}

/// Reduces a sorted sparse row against the echelon basis and stores the remainder.
fn insert_row(basis: &mut HashMap<usize, Vec<(usize, Rat)>>, mut row: Vec<(usize, Rat)>) {
    while let Some((c, v)) = row.first().cloned() {
        let Some(piv) = basis.get(&c) else {
            basis.insert(c, row);
            return;
        };
        let factor = v / &piv[0].1;
        row = axpy(&row, piv, &factor);
    }
}

/// `row - factor * piv` on sorted sparse rows.
fn axpy(row: &[(usize, Rat)], piv: &[(usize, Rat)], factor: &Rat) -> Vec<(usize, Rat)> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |t| t.0);
        let cj = piv.get(j).map_or(usize::MAX, |t| t.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(factor * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &piv[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Independent oracle: jet codimensions `d_K` for `K = 1, 2, …, k_max`.
///
/// `d_K = d_{K+1}` means `m^K ⊆ (p, q) + m^{K+1}`, hence `m^K ⊆ (p, q)` in the
/// local ring, and the value is certified. Otherwise only `AtLeast(d_{k_max})`.
pub fn mult_jet_oracle(p: &BiPoly, q: &BiPoly, k_max: u32) -> ExtCount {
    let k_max = k_max.max(2);
    let mut prev = jet_codim(p, q, 1);
    for k in 2..=k_max {
        let cur = jet_codim(p, q, k);
        if cur == prev {
            return ExtCount::Finite(cur);
        }
        prev = cur;
    }
    ExtCount::AtLeast(prev)
}

/// Multiplicity of two series known to the same precision `D`.
pub fn mult_series(p: &TruncSeries2, q: &TruncSeries2) -> Result<ExtCount> {
    if p.trunc() != q.trunc() {
        return Err(Error::TruncMismatch(p.trunc() as usize, q.trunc() as usize));
    }
    Ok(mult_jet_oracle(p.poly(), q.poly(), p.trunc()))
}
