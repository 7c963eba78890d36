use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{format_rat, Rat};

/// The symbol `ε_{index,degree}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub index: usize,
    pub degree: u32,
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}_{}", self.index, self.degree)
    }
}

/// Sparse monomial: symbols in increasing order with positive exponents.
pub type Mono = Vec<(Sym, u32)>;

fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|t| t.1).sum()
}

/// Graded lex with earlier symbols ranking higher.
fn mono_cmp(a: &Mono, b: &Mono) -> Ordering {
    mono_degree(a).cmp(&mono_degree(b)).then_with(|| {
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match x.1.cmp(&y.1) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    })
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out: Mono = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                out.push((x.0, x.1 + y.1));
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                out.push(*x);
                i += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (_, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// `a / b` when `b` divides `a`.
fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut out = Vec::new();
    let mut j = 0;
    for &(s, e) in a {
        if j < b.len() && b[j].0 < s {
            return None;
        }
        if j < b.len() && b[j].0 == s {
            if b[j].1 > e {
                return None;
            }
            if e > b[j].1 {
                out.push((s, e - b[j].1));
            }
            j += 1;
        } else {
            out.push((s, e));
        }
    }
    (j == b.len()).then_some(out)
}

/// Polynomial with rational coefficients in the symbols `ε_{i,d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    pub fn sym(index: usize, degree: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(Sym { index, degree }, 1)], Rat::one());
        p
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Vec::is_empty)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    /// Coefficient of the given monomial.
    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms.keys().flatten().map(|t| t.0).collect()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().max_by(|a, b| mono_cmp(a.0, b.0))
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (ld, lc) = d.leading()?;
        let (ld, lc) = (ld.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((lr, cr)) = rem.leading() {
            let m = mono_div(lr, &ld)?;
            let c = cr / &lc;
            let mut t = Self::zero();
            t.add_term(m, c);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Substitutes a value for every symbol selected by `pick`; others are kept.
    pub fn substitute(&self, pick: impl Fn(Sym) -> Option<Rat>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(s, e) in m {
                match pick(s) {
                    Some(v) => coeff *= num_traits::pow(v, e as usize),
                    None => rest.push((s, e)),
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Sets the selected symbols to zero.
    pub fn zero_out(&self, pick: impl Fn(Sym) -> bool) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.iter().any(|t| pick(t.0)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Full evaluation.
    pub fn eval(&self, val: impl Fn(Sym) -> Rat) -> Rat {
        let v = self.substitute(|s| Some(val(s)));
        v.coeff(&Vec::new())
    }

    /// True when every term is divisible by one of the given monomials.
    pub fn in_monomial_ideal(&self, gens: &[Mono]) -> bool {
        self.terms
            .keys()
            .all(|m| gens.iter().any(|g| mono_div(m, g).is_some()))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ts: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        ts.sort_by(|a, b| mono_cmp(b.0, a.0));
        if ts.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in ts.into_iter().enumerate() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts = Vec::new();
            if !abs.is_one() || m.is_empty() {
                parts.push(format_rat(&abs));
            }
            for (s, e) in m {
                parts.push(if *e == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{e}")
                });
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut acc: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (a, c) in &self.terms {
            for (b, k) in &rhs.terms {
                *acc.entry(mono_mul(a, b)).or_insert_with(Rat::zero) += c * k;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MPoly { terms: acc }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

forward_owned_ops!(MPoly);
