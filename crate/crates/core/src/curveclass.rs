//! Curve classes under flops: the matrices `F_i`, `|F|`, and reduction words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer vector in the basis of exceptional curves `C_1, …, C_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass(pub Vec<i64>);

/// Flop indices `r_1, …, r_k`, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FlopWord(pub Vec<usize>);

pub type IntMatrix = Vec<Vec<i64>>;

impl CurveClass {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(i, j)` when the class is `C_i + … + C_j`.
    pub fn contiguous_block(&self) -> Option<(usize, usize)> {
        let first = self.0.iter().position(|&v| v != 0)?;
        let last = self.0.iter().rposition(|&v| v != 0)?;
        self.0[first..=last]
            .iter()
            .all(|&v| v == 1)
            .then_some((first + 1, last + 1))
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for FlopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The class `C_i + … + C_j` in rank `n`.
pub fn v_class(n: usize, i: usize, j: usize) -> Result<CurveClass> {
    if i == 0 || i > j || j > n {
        return Err(Error::index(format!(
            "v_{{{i}{j}}} needs 1 <= i <= j <= {n}"
        )));
    }
    Ok(CurveClass(
        (1..=n).map(|k| (i <= k && k <= j) as i64).collect(),
    ))
}

/// The matrix `F_i` describing classes after flopping curve `i`.
pub fn f_matrix(n: usize, i: usize) -> Result<IntMatrix> {
    if i == 0 || i > n {
        return Err(Error::index(format!("flop index {i} outside 1..={n}")));
    }
    let mut f: IntMatrix = (0..n)
        .map(|r| (0..n).map(|c| (r == c) as i64).collect())
        .collect();
    let r = i - 1;
    f[r][r] = -1;
    if r > 0 {
        f[r][r - 1] += 1;
    }
    if r + 1 < n {
        f[r][r + 1] += 1;
    }
    Ok(f)
}

/// `|F β|`, the componentwise absolute value of the image.
pub fn abs_apply(f: &IntMatrix, beta: &CurveClass) -> Result<CurveClass> {
    if f.len() != beta.len() || f.iter().any(|row| row.len() != beta.len()) {
        return Err(Error::invalid(format!(
            "matrix shape does not match class of length {}",
            beta.len()
        )));
    }
    Ok(CurveClass(
        f.iter()
            .map(|row| {
                row.iter()
                    .zip(&beta.0)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    .abs()
            })
            .collect(),
    ))
}

/// `|F_{r_k}| ∘ … ∘ |F_{r_1}|`.
pub fn word_apply(word: &FlopWord, beta: &CurveClass) -> Result<CurveClass> {
    let n = beta.len();
    word.0
        .iter()
        .try_fold(beta.clone(), |b, &r| abs_apply(&f_matrix(n, r)?, &b))
}

/// A word sending `v_ij` to `v_11`.
pub fn reduction_word(n: usize, i: usize, j: usize) -> Result<FlopWord> {
    v_class(n, i, j)?;
    let tail = (2..=j).rev();
    if i == 1 {
        return Ok(FlopWord(tail.collect()));
    }
    Ok(FlopWord((1..i).rev().chain(tail).collect()))
}
