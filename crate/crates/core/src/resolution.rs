//! Crepant partial resolutions of cA_n singularities modelled as flags of
//! plane-curve germs `(g_0, …, g_m)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::count::ExtCount;
use crate::curveclass::CurveClass;
use crate::error::{Error, Result};
use crate::localmult::{mult, mult_series};
use crate::poly::{BiPoly, TruncSeries2};

/// A plane-curve germ that a flag can be built from.
pub trait Germ: Clone + PartialEq + fmt::Display {
    fn mult_with(&self, other: &Self) -> ExtCount;
    fn times(&self, other: &Self) -> Self;
    fn order(&self) -> ExtCount;
    fn is_zero(&self) -> bool;
    fn vanishes_at_origin(&self) -> bool;
}

impl Germ for BiPoly {
    fn mult_with(&self, other: &Self) -> ExtCount {
        mult(self, other)
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn order(&self) -> ExtCount {
        BiPoly::order(self)
    }

    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }

    fn vanishes_at_origin(&self) -> bool {
        BiPoly::vanishes_at_origin(self)
    }
}

impl Germ for TruncSeries2 {
    /// Series of different precision are compared at the smaller one.
    fn mult_with(&self, other: &Self) -> ExtCount {
        let d = self.trunc().min(other.trunc());
        let a = TruncSeries2::new(self.poly(), d);
        let b = TruncSeries2::new(other.poly(), d);
        mult_series(&a, &b).expect("equal precision")
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn order(&self) -> ExtCount {
        TruncSeries2::order(self)
    }

    fn is_zero(&self) -> bool {
        TruncSeries2::is_zero(self)
    }

    fn vanishes_at_origin(&self) -> bool {
        self.poly().vanishes_at_origin()
    }
}

/// Ordered germs `g_0, …, g_m`, optionally with a factorisation of each.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag<G = BiPoly> {
    gs: Vec<G>,
    factors: Option<Vec<Vec<G>>>,
}

/// Table of `N_ij` for `1 <= i <= j <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvTable {
    m: usize,
    vals: BTreeMap<(usize, usize), ExtCount>,
}

/// All pairs `i <= j` in display order: by length, then by start.
pub fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .flat_map(|len| (1..=m - len).map(move |i| (i, i + len)))
        .collect()
}

fn check_pair(m: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || i > j || j > m {
        return Err(Error::index(format!(
            "pair ({i},{j}) needs 1 <= i <= j <= {m}"
        )));
    }
    Ok(())
}

fn product<G: Germ>(it: &[G]) -> G {
    let mut acc = it[0].clone();
    for g in &it[1..] {
        acc = acc.times(g);
    }
    acc
}

impl<G: Germ> Flag<G> {
    pub fn new(gs: Vec<G>) -> Result<Self> {
        if gs.len() < 2 {
            return Err(Error::invalid("a flag needs at least two germs"));
        }
        for (k, g) in gs.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::invalid(format!("g_{k} is zero")));
            }
            if !g.vanishes_at_origin() {
                return Err(Error::invalid(format!(
                    "g_{k} = {g} does not vanish at the origin"
                )));
            }
        }
        Ok(Flag { gs, factors: None })
    }

    /// Flag whose germs are the products of the given factor lists.
    pub fn from_factors(factors: Vec<Vec<G>>) -> Result<Self> {
        if factors.iter().any(Vec::is_empty) {
            return Err(Error::invalid("empty factor list"));
        }
        let gs = factors.iter().map(|fs| product(fs)).collect();
        let mut flag = Self::new(gs)?;
        flag.factors = Some(factors);
        Ok(flag)
    }

    /// Attaches factor lists, checking each product.
    pub fn with_factors(mut self, factors: Vec<Vec<G>>) -> Result<Self> {
        if factors.len() != self.gs.len() {
            return Err(Error::invalid("factor lists do not match the flag length"));
        }
        for (k, (g, fs)) in self.gs.iter().zip(&factors).enumerate() {
            if fs.is_empty() || product(fs) != *g {
                return Err(Error::invalid(format!(
                    "factors of g_{k} do not multiply to {g}"
                )));
            }
        }
        self.factors = Some(factors);
        Ok(self)
    }

    /// Number of exceptional curves.
    pub fn m(&self) -> usize {
        self.gs.len() - 1
    }

    pub fn gs(&self) -> &[G] {
        &self.gs
    }

    pub fn factors(&self) -> Option<&[Vec<G>]> {
        self.factors.as_deref()
    }

    pub fn n_ij(&self, i: usize, j: usize) -> Result<ExtCount> {
        check_pair(self.m(), i, j)?;
        Ok(self.gs[i - 1].mult_with(&self.gs[j]))
    }

    /// `N_β`: `N_ij` for `β = C_i + … + C_j`, zero for every other class.
    pub fn n_beta(&self, beta: &CurveClass) -> Result<ExtCount> {
        if beta.len() != self.m() {
            return Err(Error::invalid(format!(
                "class {beta} has length {} but the flag has {} curves",
                beta.len(),
                self.m()
            )));
        }
        match beta.contiguous_block() {
            Some((i, j)) => self.n_ij(i, j),
            None => Ok(ExtCount::Finite(0)),
        }
    }

    /// `dim e_s Λ e_t = mult(g_0⋯g_{s−1}, g_t⋯g_m)`, summed pairwise over the factors.
    pub fn toda_dim(&self, s: usize, t: usize) -> Result<ExtCount> {
        check_pair(self.m(), s, t)?;
        // bilinear in the factors, and far cheaper than reducing the products
        Ok(self.gs[..s]
            .iter()
            .flat_map(|a| self.gs[t..].iter().map(move |b| a.mult_with(b)))
            .sum())
    }

    /// `Σ (j − i + 1)² N_ij`.
    pub fn total_dim(&self) -> ExtCount {
        self.gv_table().total_dim()
    }

    /// Exchanges `g_{i−1}` and `g_i`.
    pub fn flop(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.m() {
            return Err(Error::index(format!(
                "flop index {i} outside 1..={}",
                self.m()
            )));
        }
        let mut out = self.clone();
        out.gs.swap(i - 1, i);
        if let Some(fs) = out.factors.as_mut() {
            fs.swap(i - 1, i);
        }
        Ok(out)
    }

    /// Contracts every curve not in `keep`.
    pub fn contract(&self, keep: &[usize]) -> Result<Self> {
        let bounds = contraction_bounds(self.m(), keep)?;
        let merge = |xs: &[G]| -> G { product(xs) };
        let gs = bounds
            .windows(2)
            .map(|w| merge(&self.gs[w[0]..w[1]]))
            .collect();
        let factors = self
            .factors
            .as_ref()
            .map(|fs| bounds.windows(2).map(|w| fs[w[0]..w[1]].concat()).collect());
        Ok(Flag { gs, factors })
    }

    /// Reverses the flag.
    pub fn reflect(&self) -> Self {
        let mut out = self.clone();
        out.gs.reverse();
        if let Some(fs) = out.factors.as_mut() {
            fs.reverse();
        }
        out
    }

    /// True iff every supplied factor has order one.
    pub fn is_crepant_resolution(&self) -> Result<bool> {
        let fs = self
            .factors
            .as_ref()
            .ok_or_else(|| Error::invalid("crepancy needs factor lists"))?;
        Ok(fs
            .iter()
            .flatten()
            .all(|f| f.order() == ExtCount::Finite(1)))
    }

    pub fn gv_table(&self) -> GvTable {
        let m = self.m();
        let vals = pairs(m)
            .into_iter()
            .map(|(i, j)| ((i, j), self.gs[i - 1].mult_with(&self.gs[j])))
            .collect();
        GvTable { m, vals }
    }

    /// GV invariants; only defined on crepant resolutions.
    pub fn to_gv(&self) -> Result<BTreeMap<(usize, usize), i64>> {
        if !self.is_crepant_resolution()? {
            return Err(Error::NotResolution(
                "some factor is singular, GV invariants need a smooth source".into(),
            ));
        }
        self.gv_table().to_gv()
    }
}

/// Boundaries `0 = J(0) < J(1) < … < J(|J|) < J(|J|+1) = m + 1`.
pub fn contraction_bounds(m: usize, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::invalid("kept set is empty"));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("kept set must be strictly increasing"));
    }
    if keep[0] == 0 || keep[keep.len() - 1] > m {
        return Err(Error::index(format!("kept curves must lie in 1..={m}")));
    }
    let mut b = vec![0];
    b.extend_from_slice(keep);
    b.push(m + 1);
    Ok(b)
}

impl GvTable {
    pub fn from_values(m: usize, vals: BTreeMap<(usize, usize), ExtCount>) -> Result<Self> {
        let want = pairs(m);
        if vals.len() != want.len() || want.iter().any(|p| !vals.contains_key(p)) {
            return Err(Error::invalid(
                "table must have exactly the pairs i <= j <= m",
            ));
        }
        Ok(GvTable { m, vals })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Result<ExtCount> {
        check_pair(self.m, i, j)?;
        Ok(self.vals[&(i, j)])
    }

    /// Entries in display order.
    pub fn entries(&self) -> Vec<((usize, usize), ExtCount)> {
        pairs(self.m)
            .into_iter()
            .map(|p| (p, self.vals[&p]))
            .collect()
    }

    pub fn total_dim(&self) -> ExtCount {
        self.vals
            .iter()
            .map(|(&(i, j), v)| v.scale(((j - i + 1) * (j - i + 1)) as u64))
            .sum()
    }

    /// Replaces `Infinite` by `-1`.
    pub fn to_gv(&self) -> Result<BTreeMap<(usize, usize), i64>> {
        self.vals
            .iter()
            .map(|(&p, v)| match v {
                ExtCount::Finite(n) => Ok((p, *n as i64)),
                ExtCount::Infinite => Ok((p, -1)),
                ExtCount::AtLeast(_) => Err(Error::invalid(format!(
                    "N_{{{}{}}} is only bounded below",
                    p.0, p.1
                ))),
            })
            .collect()
    }

    /// Inverse of `to_gv`.
    pub fn from_gv(m: usize, gv: &BTreeMap<(usize, usize), i64>) -> Result<Self> {
        let vals = gv
            .iter()
            .map(|(&p, &v)| match v {
                -1 => Ok((p, ExtCount::Infinite)),
                v if v >= 0 => Ok((p, ExtCount::Finite(v as u64))),
                v => Err(Error::invalid(format!(
                    "GV value {v} is neither -1 nor natural"
                ))),
            })
            .collect::<Result<_>>()?;
        Self::from_values(m, vals)
    }
}
