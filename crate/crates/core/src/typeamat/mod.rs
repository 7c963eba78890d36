//! The matrices `A_ij^d` over polynomials in the symbols `ε_{i,d}`.

mod mpoly;

use std::fmt;

use num_traits::{One, Zero};

pub use mpoly::{MPoly, Mono, Sym};

use crate::error::{Error, Result};
use crate::poly::Rat;
use crate::potential::Potential;

/// Rectangular matrix of [`MPoly`] entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMatrix {
    rows: Vec<Vec<MPoly>>,
}

impl AMatrix {
    pub fn new(rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let w = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || w == 0 || rows.iter().any(|r| r.len() != w) {
            return Err(Error::invalid("matrix must be non-empty and rectangular"));
        }
        Ok(AMatrix { rows })
    }

    pub fn zeros(r: usize, c: usize) -> Self {
        AMatrix {
            rows: vec![vec![MPoly::zero(); c]; r],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, r: usize, c: usize) -> &MPoly {
        &self.rows[r][c]
    }

    pub fn rows(&self) -> &[Vec<MPoly>] {
        &self.rows
    }

    fn set(&mut self, r: usize, c: usize, v: MPoly) {
        self.rows[r][c] = v;
    }

    /// `A ⊞ B`: `B` placed below and right of `A`, sharing `A`'s last corner.
    pub fn glue(&self, b: &AMatrix) -> Result<AMatrix> {
        let (p, q) = (self.nrows(), self.ncols());
        if self.get(p - 1, q - 1) != b.get(0, 0) {
            return Err(Error::invalid(format!(
                "corner mismatch: {} vs {}",
                self.get(p - 1, q - 1),
                b.get(0, 0)
            )));
        }
        let mut out = AMatrix::zeros(p + b.nrows() - 1, q + b.ncols() - 1);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                out.set(r, c, v.clone());
            }
        }
        for (r, row) in b.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                out.set(p - 1 + r, q - 1 + c, v.clone());
            }
        }
        Ok(out)
    }

    /// Exact determinant: cofactor expansion below size 6, Bareiss otherwise.
    pub fn det_sym(&self) -> Result<MPoly> {
        if self.nrows() != self.ncols() {
            return Err(Error::invalid(format!(
                "determinant of a {}x{} matrix",
                self.nrows(),
                self.ncols()
            )));
        }
        if self.nrows() < 6 {
            let cols: Vec<usize> = (0..self.ncols()).collect();
            Ok(cofactor(&self.rows, 0, &cols))
        } else {
            Ok(bareiss(self.rows.clone()))
        }
    }

    /// Substitutes `ε_{i,d} ↦ d k_{i,d}`.
    pub fn eval_at(&self, pot: &Potential) -> Vec<Vec<Rat>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|v| eval_at(v, pot)).collect())
            .collect()
    }
}

impl fmt::Display for AMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(MPoly::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn cofactor(rows: &[Vec<MPoly>], r: usize, cols: &[usize]) -> MPoly {
    if cols.len() == 1 {
        return rows[r][cols[0]].clone();
    }
    let mut acc = MPoly::zero();
    for (k, &c) in cols.iter().enumerate() {
        let v = &rows[r][c];
        if v.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = v * &cofactor(rows, r + 1, &rest);
        acc = if k % 2 == 0 {
            &acc + &minor
        } else {
            &acc - &minor
        };
    }
    acc
}

fn bareiss(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MPoly::zero();
            };
            m.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Determinant over the rationals by Gaussian elimination.
pub fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rat::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            let (top, bottom) = a.split_at_mut(i);
            for (x, p) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// Substitutes `ε_{i,d} ↦ d k_{i,d}`; absent coefficients give zero.
pub fn eval_at(p: &MPoly, pot: &Potential) -> Rat {
    p.eval(|s| pot.epsilon(s.index, s.degree))
}

/// Whether `(i, j, d)` indexes a matrix: `j - i` odd needs `d = 2`, even needs `d >= 2`.
pub fn admissible(i: usize, j: usize, d: u32) -> bool {
    i >= 1 && i <= j && d >= 2 && ((j - i).is_multiple_of(2) || d == 2)
}

fn block2(i: usize) -> AMatrix {
    AMatrix {
        rows: vec![
            vec![MPoly::sym(i, 2), MPoly::one()],
            vec![MPoly::one(), MPoly::sym(i + 1, 2)],
        ],
    }
}

/// The `(d+1) x (d+1)` band block `A_{i,i+2}^d` for `d > 2`.
fn band(i: usize, d: u32) -> AMatrix {
    let n = d as usize + 1;
    let mut a = AMatrix::zeros(n, n);
    a.set(0, 0, MPoly::sym(i, d));
    a.set(0, n - 2, MPoly::one());
    for r in 1..n - 2 {
        a.set(r, r - 1, MPoly::one());
        a.set(r, r, MPoly::one());
    }
    a.set(n - 2, n - 3, MPoly::one());
    a.set(n - 2, n - 1, MPoly::one());
    a.set(n - 1, n - 2, MPoly::one());
    a.set(n - 1, n - 1, MPoly::sym(i + 2, d));
    a
}

/// `A_ij^d` on `Q_n`, so `j <= 2n - 1`.
pub fn build_a(n: usize, i: usize, j: usize, d: u32) -> Result<AMatrix> {
    if !admissible(i, j, d) || j > 2 * n - 1 {
        return Err(Error::invalid(format!(
            "(i,j,d) = ({i},{j},{d}) is not admissible on n = {n}"
        )));
    }
    if i == j {
        return Ok(AMatrix {
            rows: vec![vec![MPoly::sym(i, d)]],
        });
    }
    let blocks: Vec<AMatrix> = if d == 2 {
        (i..j).map(block2).collect()
    } else {
        (i..j).step_by(2).map(|k| band(k, d)).collect()
    };
    let mut acc = blocks[0].clone();
    for b in &blocks[1..] {
        acc = acc.glue(b)?;
    }
    Ok(acc)
}

/// `det A_ij^d` as a polynomial in the symbols.
pub fn det_a(i: usize, j: usize, d: u32) -> Result<MPoly> {
    build_a((j + 2) / 2, i, j, d)?.det_sym()
}

/// `det A_ij^d(f)` by numeric elimination.
pub fn det_a_at(pot: &Potential, i: usize, j: usize, d: u32) -> Result<Rat> {
    let a = build_a(pot.n(), i, j, d)?;
    Ok(det_rat(&a.eval_at(pot)))
}
