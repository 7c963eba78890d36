//! Filtration predictions, the q_min obstruction, witnesses, and the cA_2 classification.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::count::ExtCount;
use crate::curveclass::{word_apply, CurveClass, FlopWord};
use crate::error::{Error, Result};
use crate::poly::{rat, rat_frac, Rat};
use crate::potential::{n_st, realize_flag, HMode, Potential};
use crate::typeamat::det_a_at;

/// Prescribed single-curve invariants `N_ii = q_i` for `s <= i <= t` on `Q_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSpec {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub q: Vec<ExtCount>,
}

impl QSpec {
    pub fn new(n: usize, s: usize, t: usize, q: Vec<ExtCount>) -> Result<Self> {
        if s == 0 || s > t || t > n {
            return Err(Error::index(format!(
                "(s,t) = ({s},{t}) outside 1 <= s <= t <= {n}"
            )));
        }
        if q.len() != t - s + 1 {
            return Err(Error::invalid(format!(
                "expected {} values of q",
                t - s + 1
            )));
        }
        for v in &q {
            match v {
                ExtCount::AtLeast(_) => return Err(Error::invalid("q values must be exact")),
                ExtCount::Finite(0) => return Err(Error::invalid("q values are at least 1")),
                _ => {}
            }
        }
        Ok(QSpec { n, s, t, q })
    }

    /// The whole chain `1..=n`.
    pub fn chain(q: Vec<ExtCount>) -> Result<Self> {
        let n = q.len();
        Self::new(n, 1, n, q)
    }

    pub fn q_min(&self) -> ExtCount {
        ExtCount::min_exact(self.q.iter().copied()).expect("exact values")
    }

    /// How many `q_i` equal `q_min`.
    pub fn min_multiplicity(&self) -> usize {
        let m = self.q_min();
        self.q.iter().filter(|&&v| v == m).count()
    }

    /// `q_i` for curve `i`.
    pub fn q_of(&self, i: usize) -> ExtCount {
        self.q[i - self.s]
    }

    /// Support threshold `q_i + 1` of the constrained row `2i - 1`, if any.
    fn forced_row(&self, row: usize) -> Option<Option<u32>> {
        if row.is_multiple_of(2) {
            return None;
        }
        let i = row.div_ceil(2);
        (self.s <= i && i <= self.t).then(|| self.q_of(i).finite().map(|v| v as u32 + 1))
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.q.iter().map(ExtCount::to_string).collect();
        write!(
            f,
            "n={} s={} t={} q=({})",
            self.n,
            self.s,
            self.t,
            parts.join(",")
        )
    }
}

/// Outcome of the filtration prediction for `N_st`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prediction {
    /// Generic stratum: the value is forced.
    Exact(ExtCount),
    /// `det A = 0`: stratum 2 or deeper, only `N_st >= d` is known.
    LowerBound(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictReport {
    pub d: Option<u32>,
    pub det: Option<String>,
    pub prediction: Prediction,
    /// 1 for the generic stratum, 2 for "2 or deeper"; `None` when `d` is infinite.
    pub stratum: Option<u8>,
}

/// Predicts `N_st` from the support tuple and `det A_{2s-1,2t-1}^d`.
pub fn predict_nst(pot: &Potential, s: usize, t: usize) -> Result<PredictReport> {
    if s == 0 || s > t || t > pot.n() {
        return Err(Error::index(format!(
            "({s},{t}) outside 1 <= s <= t <= {}",
            pot.n()
        )));
    }
    let (i, j) = (2 * s - 1, 2 * t - 1);
    let Some(d) = pot.support_tuple().d_ij(i, j)? else {
        return Ok(PredictReport {
            d: None,
            det: None,
            prediction: Prediction::Exact(ExtCount::Infinite),
            stratum: None,
        });
    };
    let det = det_a_at(pot, i, j, d)?;
    let (prediction, stratum) = if det.is_zero() {
        (Prediction::LowerBound(d as u64), 2)
    } else {
        (Prediction::Exact(ExtCount::Finite(d as u64 - 1)), 1)
    };
    Ok(PredictReport {
        d: Some(d),
        det: Some(crate::poly::format_rat(&det)),
        prediction,
        stratum: Some(stratum),
    })
}

/// `N_ss` from row `2s - 1` alone: its least exponent minus one.
pub fn strata_ss(pot: &Potential, s: usize) -> Result<ExtCount> {
    if s == 0 || s > pot.n() {
        return Err(Error::index(format!("s = {s} outside 1..={}", pot.n())));
    }
    Ok(match pot.row(2 * s - 1).next() {
        Some((j, _)) => ExtCount::Finite(j as u64 - 1),
        None => ExtCount::Infinite,
    })
}

fn draw_rat<R: Rng>(rng: &mut R) -> Rat {
    let mut num = rng.gen_range(1..=9i64);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    rat_frac(num, rng.gen_range(1..=3))
}

fn geometric<R: Rng>(rng: &mut R, cap: usize) -> usize {
    let mut k = 0;
    while k < cap && rng.gen_bool(0.5) {
        k += 1;
    }
    k
}

/// Exponent range used for unconstrained rows.
const FREE_EXPONENTS: std::ops::RangeInclusive<u32> = 2..=4;

fn fill_free_row<R: Rng>(pot: &mut Potential, row: usize, rng: &mut R) {
    for _ in 0..geometric(rng, 3) {
        let j = rng.gen_range(FREE_EXPONENTS);
        pot.set(row, j, draw_rat(rng)).expect("valid row");
    }
}

/// A random potential with every row unconstrained.
pub fn random_potential<R: Rng>(n: usize, rng: &mut R) -> Potential {
    let mut pot = Potential::new(n).expect("n >= 1");
    for row in 1..=pot.rows() {
        fill_free_row(&mut pot, row, rng);
    }
    pot
}

/// A random point of `MA_p°` for the spec: row `2i - 1` starts exactly at `q_i + 1`.
pub fn sample_map<R: Rng>(spec: &QSpec, rng: &mut R, extras: bool) -> Potential {
    let mut pot = Potential::new(spec.n).expect("n >= 1");
    for row in 1..=pot.rows() {
        match spec.forced_row(row) {
            None => fill_free_row(&mut pot, row, rng),
            Some(None) => {}
            Some(Some(p)) => {
                pot.set(row, p, draw_rat(rng)).expect("valid row");
                if extras {
                    for _ in 0..geometric(rng, 2) {
                        let j = rng.gen_range(p + 1..=p + 2);
                        pot.set(row, j, draw_rat(rng)).expect("valid row");
                    }
                }
            }
        }
    }
    pot
}

/// Moves a sample onto `det A_{2s-1,2t-1}^d = 0` by solving for one coefficient.
///
/// The determinant is affine in each symbol, so `det = a ε + b` and `ε = -b / a`.
/// Unconstrained rows are tried first; a forced leading coefficient may only be
/// moved to a nonzero value. Returns `None` when no symbol can be solved for.
pub fn degenerate(spec: &QSpec, pot: &Potential) -> Result<Option<Potential>> {
    let (i, j) = (2 * spec.s - 1, 2 * spec.t - 1);
    let Some(d) = pot.support_tuple().d_ij(i, j)? else {
        return Ok(None);
    };
    let rows: Vec<usize> = if d == 2 {
        (i..=j).collect()
    } else {
        (i..=j).step_by(2).collect()
    };
    let (free, forced): (Vec<usize>, Vec<usize>) = rows
        .into_iter()
        .partition(|&r| spec.forced_row(r).is_none());
    let dr = Rat::from_integer(d.into());
    for row in free.into_iter().chain(forced) {
        let lead = spec.forced_row(row).flatten();
        if spec.forced_row(row).is_some() && lead != Some(d) {
            continue;
        }
        let mut at = pot.clone();
        at.set(row, d, Rat::zero())?;
        let b = det_a_at(&at, i, j, d)?;
        at.set(row, d, rat(1) / &dr)?;
        let a = det_a_at(&at, i, j, d)? - &b;
        if a.is_zero() {
            continue;
        }
        let eps = -b / a;
        if lead.is_some() && eps.is_zero() {
            continue;
        }
        at.set(row, d, eps / &dr)?;
        return Ok(Some(at));
    }
    Ok(None)
}

/// What the obstruction theorem asserts about `N_st`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObsVerdict {
    /// `q_min` attained once: `N_st = q_min`.
    Forced(ExtCount),
    /// `N_st >= q_min`, and larger values occur.
    Bounded(ExtCount),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub spec: QSpec,
    pub seed: u64,
    pub samples: usize,
    pub q_min: ExtCount,
    pub verdict: ObsVerdict,
    pub min_observed: Option<ExtCount>,
    pub max_observed: Option<ExtCount>,
    pub all_at_least_q_min: bool,
    pub all_equal_q_min: bool,
    pub found_above_q_min: bool,
    /// A sample with `N_st > q_min`, when one was found.
    pub witness_above: Option<Potential>,
    /// Samples that landed on the degenerate locus.
    pub degenerate_draws: usize,
}

impl ObstructionReport {
    /// True when the observations are consistent with the verdict.
    pub fn consistent(&self) -> bool {
        match self.verdict {
            ObsVerdict::Forced(_) => self.all_equal_q_min,
            ObsVerdict::Bounded(_) => self.all_at_least_q_min,
        }
    }
}

fn max_exact(a: ExtCount, b: ExtCount) -> ExtCount {
    match a.cmp_exact(&b) {
        Some(std::cmp::Ordering::Less) => b,
        _ => a,
    }
}

fn min_exact(a: ExtCount, b: ExtCount) -> ExtCount {
    match a.cmp_exact(&b) {
        Some(std::cmp::Ordering::Greater) => b,
        _ => a,
    }
}

/// Samples `MA_p°` and compares `N_st` against `q_min`.
///
/// When `q_min` is finite and attained more than once, every other draw is
/// moved onto the locus `det A = 0` (see [`degenerate`]).
pub fn check_obstruction(spec: &QSpec, samples: usize, seed: u64) -> Result<ObstructionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q_min = spec.q_min();
    let verdict = if spec.min_multiplicity() == 1 {
        ObsVerdict::Forced(q_min)
    } else {
        ObsVerdict::Bounded(q_min)
    };
    let push_degenerate = q_min.is_finite() && spec.min_multiplicity() > 1;
    let mut report = ObstructionReport {
        spec: spec.clone(),
        seed,
        samples,
        q_min,
        verdict,
        min_observed: None,
        max_observed: None,
        all_at_least_q_min: true,
        all_equal_q_min: true,
        found_above_q_min: false,
        witness_above: None,
        degenerate_draws: 0,
    };
    for k in 0..samples {
        let mut pot = sample_map(spec, &mut rng, true);
        if push_degenerate && k % 2 == 1 {
            if let Some(p) = degenerate(spec, &pot)? {
                pot = p;
                report.degenerate_draws += 1;
            }
        }
        let v = n_st(&pot, spec.s, spec.t, HMode::default())?;
        report.min_observed = Some(report.min_observed.map_or(v, |m| min_exact(m, v)));
        report.max_observed = Some(report.max_observed.map_or(v, |m| max_exact(m, v)));
        let cmp = v.cmp_exact(&q_min);
        if cmp == Some(std::cmp::Ordering::Less) {
            report.all_at_least_q_min = false;
        }
        if cmp != Some(std::cmp::Ordering::Equal) {
            report.all_equal_q_min = false;
        }
        if cmp == Some(std::cmp::Ordering::Greater) {
            report.found_above_q_min = true;
            report.witness_above.get_or_insert(pot);
        }
    }
    Ok(report)
}

/// Default retry budget of [`witness_min`].
pub const WITNESS_BUDGET: usize = 64;

/// A potential in `MA_p°` with `N_ii = q_i` and `N_st = q_min`.
pub fn witness_min(spec: &QSpec, seed: u64, budget: usize) -> Result<Potential> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let pot = sample_map(spec, &mut rng, false);
        if let Some(d) = pot.support_tuple().d_ij(2 * spec.s - 1, 2 * spec.t - 1)? {
            if det_a_at(&pot, 2 * spec.s - 1, 2 * spec.t - 1, d)?.is_zero() {
                continue;
            }
        }
        if n_st(&pot, spec.s, spec.t, HMode::default())? != spec.q_min() {
            continue;
        }
        let diag_ok =
            (spec.s..=spec.t).all(|i| n_st(&pot, i, i, HMode::default()) == Ok(spec.q_of(i)));
        if diag_ok {
            return Ok(pot);
        }
    }
    Err(Error::RetryExhausted(budget))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ca2Form {
    /// `(p, q, min(p, q))` with `p != q`.
    Form1,
    /// `(p, p, r)` with `r >= p`.
    Form2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ca2Verdict {
    Valid(Ca2Form),
    Invalid(String),
}

/// Checks a triple `(N11, N22, N12)` against the two cA_2 forms.
pub fn classify_ca2(triple: (ExtCount, ExtCount, ExtCount)) -> Ca2Verdict {
    let (a, b, c) = triple;
    if !(a.is_exact() && b.is_exact() && c.is_exact()) {
        return Ca2Verdict::Invalid("entries must be exact".into());
    }
    if a != b {
        let m = min_exact(a, b);
        if c == m {
            Ca2Verdict::Valid(Ca2Form::Form1)
        } else {
            Ca2Verdict::Invalid(format!(
                "N11 != N22 forces N12 = min(N11, N22) = {m}, got {c}"
            ))
        }
    } else if c.cmp_exact(&a) != Some(std::cmp::Ordering::Less) {
        Ca2Verdict::Valid(Ca2Form::Form2)
    } else {
        Ca2Verdict::Invalid(format!("N11 = N22 = {a} forces N12 >= {a}, got {c}"))
    }
}

/// A constructive realisation of a cA_2 triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ca2Witness {
    pub triple: (ExtCount, ExtCount, ExtCount),
    pub potential: Potential,
    /// Flops applied to the realised flag.
    pub flops: FlopWord,
    /// Truncation used to verify the flopped table.
    pub trunc: u32,
}

/// Verification precision for flopped witnesses.
pub const CA2_TRUNC: u32 = 32;

/// Realises `(N11, N22, N12)`: form 1 by [`witness_min`], form 2 with `r > p`
/// by flopping curve 1 of the form-1 witness for `(p, r)`.
pub fn ca2_witness(triple: (ExtCount, ExtCount, ExtCount), seed: u64) -> Result<Ca2Witness> {
    let Ca2Verdict::Valid(form) = classify_ca2(triple) else {
        return Err(Error::invalid(format!("{triple:?} is not a cA_2 table")));
    };
    let (p, q, r) = triple;
    let direct = form == Ca2Form::Form1 || r == p;
    let (spec, flops) = if direct {
        (QSpec::chain(vec![p, q])?, FlopWord::default())
    } else {
        (QSpec::chain(vec![p, r])?, FlopWord(vec![1]))
    };
    let potential = witness_min(&spec, seed, WITNESS_BUDGET)?;
    let flag = realize_flag(&potential, CA2_TRUNC)?;
    let flag = flops.0.iter().try_fold(flag, |f, &i| f.flop(i))?;
    let got = (flag.n_ij(1, 1)?, flag.n_ij(2, 2)?, flag.n_ij(1, 2)?);
    let same = |x: ExtCount, y: ExtCount| match (x, y) {
        (ExtCount::Infinite, ExtCount::AtLeast(_)) => true,
        _ => x == y,
    };
    if !(same(p, got.0) && same(q, got.1) && same(r, got.2)) {
        return Err(Error::invalid(format!(
            "witness table {got:?} does not match {triple:?}"
        )));
    }
    Ok(Ca2Witness {
        triple,
        potential,
        flops,
        trunc: CA2_TRUNC,
    })
}

/// Transports prescribed classes along a flop word, keeping the values.
pub fn transport_q(
    classes: &[(CurveClass, ExtCount)],
    word: &FlopWord,
) -> Result<Vec<(CurveClass, ExtCount)>> {
    classes
        .iter()
        .map(|(b, q)| Ok((word_apply(word, b)?, *q)))
        .collect()
}
