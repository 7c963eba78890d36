use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::{format_rat, is_negative, Rat};
use super::unipoly::UniPoly;
use crate::count::ExtCount;

/// Exponent pair `(a, b)` of the monomial `x^a y^b`.
pub type Exp = (u32, u32);

/// Graded-lex comparison: total degree first, then the power of `x`.
pub fn grlex(u: &Exp, v: &Exp) -> Ordering {
    (u.0 + u.1, u.0, u.1).cmp(&(v.0 + v.1, v.0, v.1))
}

/// Sparse bivariate polynomial in `x`, `y` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exp, Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(a: u32, b: u32, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BiPoly { terms }
    }

    /// Builds from terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exp, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&(0, 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Least total degree of a nonzero term.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).min()
    }

    /// Order of the power series; `Infinite` for zero.
    pub fn order(&self) -> ExtCount {
        match self.low_degree() {
            Some(d) => ExtCount::Finite(d as u64),
            None => ExtCount::Infinite,
        }
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(Exp, &Rat)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (*e, c))
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 + e.1 == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn linear_part(&self) -> Self {
        self.homogeneous_part(1)
    }

    /// `p(x, 0)` as a polynomial in `x`.
    pub fn restrict_y0(&self) -> UniPoly {
        self.restrict(|e| (e.1 == 0).then_some(e.0))
    }

    /// `p(0, y)` as a polynomial in `y`.
    pub fn restrict_x0(&self) -> UniPoly {
        self.restrict(|e| (e.0 == 0).then_some(e.1))
    }

    fn restrict(&self, pick: impl Fn(&Exp) -> Option<u32>) -> UniPoly {
        let mut cs: Vec<Rat> = Vec::new();
        for (e, c) in &self.terms {
            if let Some(k) = pick(e) {
                let k = k as usize;
                if cs.len() <= k {
                    cs.resize(k + 1, Rat::zero());
                }
                cs[k] = c.clone();
            }
        }
        UniPoly::from_coeffs(cs)
    }

    /// Embeds a polynomial in `x`.
    pub fn from_uni_x(u: &UniPoly) -> Self {
        Self::from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// Coefficients in `y`, each a polynomial in `x`.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        let Some(dy) = self.deg_y() else {
            return Vec::new();
        };
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); dy as usize + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut rows[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, Rat::zero());
            }
            row[a as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_y_coeffs(cs: &[UniPoly]) -> Self {
        let mut p = Self::zero();
        for (b, u) in cs.iter().enumerate() {
            for (a, c) in u.coeffs().iter().enumerate() {
                p.add_term((a as u32, b as u32), c.clone());
            }
        }
        p
    }

    /// `p / y`, or `None` if some term has no factor `y`.
    pub fn div_y(&self) -> Option<Self> {
        if self.terms.keys().any(|e| e.1 == 0) {
            return None;
        }
        Some(BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0, e.1 - 1), c.clone()))
                .collect(),
        })
    }

    /// `p / x`, or `None` if some term has no factor `x`.
    pub fn div_x(&self) -> Option<Self> {
        if self.terms.keys().any(|e| e.0 == 0) {
            return None;
        }
        Some(BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 - 1, e.1), c.clone()))
                .collect(),
        })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (ld, lc) = d.leading_term()?;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((lr, cr)) = rem.leading_term() {
            if lr.0 < ld.0 || lr.1 < ld.1 {
                return None;
            }
            let t = Self::monomial(lr.0 - ld.0, lr.1 - ld.1, cr / &lc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c x^a y^b`.
    pub fn shift(&self, a: u32, b: u32, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| ((e.0 + a, e.1 + b), v * c))
                .collect(),
        }
    }

    /// Drops every term of total degree `>= trunc`.
    pub fn truncate(&self, trunc: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 + e.1 < trunc)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Product keeping only terms of total degree `< trunc`.
    pub fn mul_trunc(&self, other: &Self, trunc: u32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let d = e.0 + e.1;
            if d >= trunc {
                continue;
            }
            for (f, k) in &other.terms {
                if d + f.0 + f.1 >= trunc {
                    continue;
                }
                out.add_term((e.0 + f.0, e.1 + f.1), c * k);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_trunc(&self, e: u32, trunc: u32) -> Self {
        let mut acc = Self::one().truncate(trunc);
        for _ in 0..e {
            acc = acc.mul_trunc(self, trunc);
        }
        acc
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c
                * num_traits::pow(x.clone(), e.0 as usize)
                * num_traits::pow(y.clone(), e.1 as usize);
        }
        acc
    }

    /// Canonical text form, terms in descending graded-lex order.
    pub fn render(&self) -> String {
        let mut ts: Vec<(&Exp, &Rat)> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex(b.0, a.0));
        let mut out = String::new();
        for (e, c) in ts {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *e == (0, 0) {
                factors.push(format_rat(&abs));
            }
            for (v, k) in [("x", e.0), ("y", e.1)] {
                match k {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for BiPoly {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse(s)
    }
}

impl From<Rat> for BiPoly {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e, c) in &self.terms {
            for (f, k) in &rhs.terms {
                out.add_term((e.0 + f.0, e.1 + f.1), c * k);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

forward_owned_ops!(BiPoly);

impl std::iter::Product for BiPoly {
    fn product<I: Iterator<Item = BiPoly>>(it: I) -> BiPoly {
        it.fold(BiPoly::one(), |acc, p| &acc * &p)
    }
}

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(it: I) -> BiPoly {
        it.fold(BiPoly::zero(), |acc, p| &acc + &p)
    }
}
