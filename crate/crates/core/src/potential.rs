//! Monomialised Type A potentials on `Q_n` and their invariants.
//!
//! A potential is the sparse table `k_ij` (row `1 <= i <= 2n-1`, exponent
//! `j >= 2`) of `Σ x_i' x_{i+1} + Σ k_ij x_i^j`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::count::ExtCount;
use crate::error::{Error, Result};
use crate::poly::{format_rat, parse_rat, BiPoly, Rat, TruncSeries2, UniPoly};
use crate::resolution::Flag;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PotentialDoc", into = "PotentialDoc")]
pub struct Potential {
    n: usize,
    coeffs: BTreeMap<(usize, u32), Rat>,
}

/// Wire form: `{"n": 2, "coeffs": [{"i": 1, "j": 3, "k": "1/2"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialDoc {
    pub n: usize,
    #[serde(default)]
    pub coeffs: Vec<CoeffDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffDoc {
    pub i: usize,
    pub j: u32,
    pub k: String,
}

impl TryFrom<PotentialDoc> for Potential {
    type Error = Error;

    fn try_from(doc: PotentialDoc) -> Result<Self> {
        let mut pot = Potential::new(doc.n)?;
        for c in doc.coeffs {
            let k = parse_rat(&c.k)?;
            pot.add(c.i, c.j, &k)?;
        }
        Ok(pot)
    }
}

impl From<Potential> for PotentialDoc {
    fn from(p: Potential) -> Self {
        PotentialDoc {
            n: p.n,
            coeffs: p
                .coeffs
                .iter()
                .map(|(&(i, j), k)| CoeffDoc {
                    i,
                    j,
                    k: format_rat(k),
                })
                .collect(),
        }
    }
}

impl Potential {
    /// The potential with every `k_ij = 0`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a potential needs n >= 1"));
        }
        Ok(Potential {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builder form of [`Potential::set`] for literal tables; panics on bad indices.
    pub fn from_table(n: usize, entries: &[(usize, u32, Rat)]) -> Self {
        let mut p = Self::new(n).expect("n >= 1");
        for (i, j, k) in entries {
            p.set(*i, *j, k.clone()).expect("valid index");
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows, `2n - 1`.
    pub fn rows(&self) -> usize {
        2 * self.n - 1
    }

    fn check(&self, i: usize, j: u32) -> Result<()> {
        if i == 0 || i > self.rows() {
            return Err(Error::index(format!("row {i} outside 1..={}", self.rows())));
        }
        if j < 2 {
            return Err(Error::index(format!("exponent {j} must be at least 2")));
        }
        Ok(())
    }

    /// Sets `k_ij`; a zero value removes the entry.
    pub fn set(&mut self, i: usize, j: u32, k: Rat) -> Result<()> {
        self.check(i, j)?;
        if k.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), k);
        }
        Ok(())
    }

    /// Adds to `k_ij`.
    pub fn add(&mut self, i: usize, j: u32, k: &Rat) -> Result<()> {
        let v = self.k(i, j) + k;
        self.set(i, j, v)
    }

    pub fn k(&self, i: usize, j: u32) -> Rat {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// `ε_{i,d} = d · k_{i,d}`.
    pub fn epsilon(&self, i: usize, d: u32) -> Rat {
        self.k(i, d) * Rat::from_integer(d.into())
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, u32, &Rat)> {
        self.coeffs.iter().map(|(&(i, j), k)| (i, j, k))
    }

    /// Nonzero entries `(j, k_ij)` of row `i`, by increasing `j`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (u32, &Rat)> {
        self.coeffs
            .range((i, 0)..(i + 1, 0))
            .map(|(&(_, j), k)| (j, k))
    }

    /// Least exponent with a nonzero coefficient in each row.
    pub fn support_tuple(&self) -> PTuple {
        PTuple(
            (1..=self.rows())
                .map(|i| self.row(i).next().map(|(j, _)| j))
                .collect(),
        )
    }

    pub fn to_doc(&self) -> PotentialDoc {
        self.clone().into()
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs()
            .map(|(i, j, k)| format!("k{i}_{j}={}", format_rat(k)))
            .collect();
        write!(f, "n={} {{{}}}", self.n, terms.join(", "))
    }
}

/// Support thresholds `p_1, …, p_{2n-1}`; `None` stands for an empty row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PTuple(pub Vec<Option<u32>>);

impl PTuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        self.0[i - 1]
    }

    /// `d_ij(p)`: 2 when `j - i` is odd, else `min(p_i, p_{i+2}, …, p_j)`.
    pub fn d_ij(&self, i: usize, j: usize) -> Result<Option<u32>> {
        d_ij_p(self, i, j)
    }
}

impl fmt::Display for PTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| fmt_thresh(*p)).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `"inf"` for `None`.
pub fn fmt_thresh(p: Option<u32>) -> String {
    p.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

pub fn d_ij_p(p: &PTuple, i: usize, j: usize) -> Result<Option<u32>> {
    if i == 0 || i > j || j > p.len() {
        return Err(Error::index(format!(
            "({i},{j}) outside 1 <= i <= j <= {}",
            p.len()
        )));
    }
    if (j - i) % 2 == 1 {
        return Ok(Some(2));
    }
    Ok((i..=j).step_by(2).filter_map(|t| p.get(t)).min())
}

/// How the one-variable recursion treats growing degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HMode {
    /// Exact polynomials; fails with `DegreeGuard` above `max_degree`.
    Exact { max_degree: usize },
    /// Every product reduced modulo `x^trunc`.
    Capped { trunc: usize },
}

impl Default for HMode {
    fn default() -> Self {
        HMode::Exact {
            max_degree: 100_000,
        }
    }
}

/// `h_{base,base}, h_{base,base+1}, …, h_{base,upto}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSequence {
    pub base: usize,
    pub entries: Vec<UniPoly>,
    pub mode: HMode,
}

impl HSequence {
    /// `h_{base,t}`.
    pub fn get(&self, t: usize) -> &UniPoly {
        &self.entries[t - self.base]
    }

    pub fn upto(&self) -> usize {
        self.base + self.entries.len() - 1
    }
}

/// Solves `h_{t+1} = -h_{t-1} - Σ_j j k_tj h_t^{j-1}` from `h_base = 0`, `h_{base+1} = x`.
pub fn h_sequence(pot: &Potential, base: usize, upto: usize, mode: HMode) -> Result<HSequence> {
    let top = 2 * pot.n;
    if base >= top || upto > top || upto <= base {
        return Err(Error::index(format!(
            "h sequence needs base < upto <= {top}, got base {base}, upto {upto}"
        )));
    }
    let mut entries = vec![UniPoly::zero(), UniPoly::x()];
    for t in (base + 1)..upto {
        let cur = &entries[entries.len() - 1];
        let mut next = -&entries[entries.len() - 2];
        for (j, k) in pot.row(t) {
            let c = k * Rat::from_integer(j.into());
            let term = match mode {
                HMode::Exact { max_degree } => {
                    let deg = cur.degree().unwrap_or(0) * (j as usize - 1);
                    if deg > max_degree {
                        return Err(Error::DegreeGuard {
                            degree: deg,
                            max: max_degree,
                        });
                    }
                    cur.pow(j - 1)
                }
                HMode::Capped { trunc } => cur.pow_trunc(j - 1, trunc),
            };
            next = &next - &term.scale(&c);
        }
        if let HMode::Capped { trunc } = mode {
            next = next.truncate(trunc);
        }
        entries.push(next);
    }
    Ok(HSequence {
        base,
        entries,
        mode,
    })
}

/// `N_st(f)`: the order of `h_{2s-2,2t}`.
pub fn n_st(pot: &Potential, s: usize, t: usize, mode: HMode) -> Result<ExtCount> {
    if s == 0 || s > t || t > pot.n {
        return Err(Error::index(format!(
            "({s},{t}) outside 1 <= s <= t <= {}",
            pot.n
        )));
    }
    let seq = h_sequence(pot, 2 * s - 2, 2 * t, mode)?;
    let h = seq.get(2 * t);
    Ok(match (h.low_degree(), mode) {
        (Some(d), _) => ExtCount::Finite(d as u64),
        (None, HMode::Exact { .. }) => ExtCount::Infinite,
        (None, HMode::Capped { trunc }) => ExtCount::AtLeast(trunc.saturating_sub(1) as u64),
    })
}

/// `N_st` for every `1 <= s <= t <= n`, keyed by `(s, t)`.
pub fn n_table(pot: &Potential, mode: HMode) -> Result<BTreeMap<(usize, usize), ExtCount>> {
    crate::resolution::pairs(pot.n)
        .into_iter()
        .map(|(s, t)| Ok(((s, t), n_st(pot, s, t, mode)?)))
        .collect()
}

fn step(pot: &Potential, t: usize, far: &TruncSeries2, cur: &TruncSeries2) -> TruncSeries2 {
    let trunc = cur.trunc();
    let mut next = -far;
    for (j, k) in pot.row(t) {
        if j > trunc {
            continue;
        }
        let c = k * Rat::from_integer(j.into());
        next = &next - &cur.pow(j - 1).scale(&c);
    }
    next
}

/// Solves the two-variable system with `g_seed = y`, `g_{seed+1} = x`, forwards and
/// backwards, modulo terms of degree `>= trunc`. Returns `g_0, …, g_{2n}`.
pub fn solve_system(pot: &Potential, seed: usize, trunc: u32) -> Result<Vec<TruncSeries2>> {
    let top = 2 * pot.n;
    if seed >= top {
        return Err(Error::index(format!("seed {seed} must be below {top}")));
    }
    if trunc < 3 {
        return Err(Error::invalid("truncation order must be at least 3"));
    }
    let mut g: Vec<Option<TruncSeries2>> = vec![None; top + 1];
    g[seed] = Some(TruncSeries2::new(&BiPoly::y(), trunc));
    g[seed + 1] = Some(TruncSeries2::new(&BiPoly::x(), trunc));
    for t in (seed + 1)..top {
        let next = step(pot, t, g[t - 1].as_ref().unwrap(), g[t].as_ref().unwrap());
        g[t + 1] = Some(next);
    }
    for t in (1..=seed).rev() {
        let prev = step(pot, t, g[t + 1].as_ref().unwrap(), g[t].as_ref().unwrap());
        g[t - 1] = Some(prev);
    }
    Ok(g.into_iter().map(Option::unwrap).collect())
}

/// The flag `(g_0, g_2, …, g_{2n})` realising the potential, seeded at 0.
pub fn realize_flag(pot: &Potential, trunc: u32) -> Result<Flag<TruncSeries2>> {
    realize_flag_seeded(pot, trunc, 0)
}

/// As [`realize_flag`] with `g_seed = y`, `g_{seed+1} = x`.
pub fn realize_flag_seeded(pot: &Potential, trunc: u32, seed: usize) -> Result<Flag<TruncSeries2>> {
    let g = solve_system(pot, seed, trunc)?;
    Flag::new(g.into_iter().step_by(2).collect())
}
