use std::ops::{Add, Mul, Neg, Sub};

use super::bipoly::BiPoly;
use super::rat::Rat;
use crate::count::ExtCount;

/// Bivariate power series known modulo terms of total degree `>= trunc`.
///
/// Binary operations between series of different precision keep the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries2 {
    poly: BiPoly,
    trunc: u32,
}

impl TruncSeries2 {
    pub fn new(poly: &BiPoly, trunc: u32) -> Self {
        TruncSeries2 {
            poly: poly.truncate(trunc),
            trunc,
        }
    }

    pub fn zero(trunc: u32) -> Self {
        Self::new(&BiPoly::zero(), trunc)
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Order of the known part; `AtLeast(trunc)` when nothing below the cap survives.
    pub fn order(&self) -> ExtCount {
        match self.poly.low_degree() {
            Some(d) => ExtCount::Finite(d as u64),
            None => ExtCount::AtLeast(self.trunc as u64),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncSeries2 {
            poly: self.poly.scale(c),
            trunc: self.trunc,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        TruncSeries2 {
            poly: self.poly.pow_trunc(e, self.trunc),
            trunc: self.trunc,
        }
    }
}

impl std::fmt::Display for TruncSeries2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + O({})", self.poly, self.trunc)
    }
}

impl Add for &TruncSeries2 {
    type Output = TruncSeries2;

    fn add(self, rhs: &TruncSeries2) -> TruncSeries2 {
        let trunc = self.trunc.min(rhs.trunc);
        TruncSeries2::new(&(&self.poly + &rhs.poly), trunc)
    }
}

impl Sub for &TruncSeries2 {
    type Output = TruncSeries2;

    fn sub(self, rhs: &TruncSeries2) -> TruncSeries2 {
        let trunc = self.trunc.min(rhs.trunc);
        TruncSeries2::new(&(&self.poly - &rhs.poly), trunc)
    }
}

impl Mul for &TruncSeries2 {
    type Output = TruncSeries2;

    fn mul(self, rhs: &TruncSeries2) -> TruncSeries2 {
        let trunc = self.trunc.min(rhs.trunc);
        TruncSeries2 {
            poly: self.poly.mul_trunc(&rhs.poly, trunc),
            trunc,
        }
    }
}

impl Neg for &TruncSeries2 {
    type Output = TruncSeries2;

    fn neg(self) -> TruncSeries2 {
        TruncSeries2 {
            poly: -&self.poly,
            trunc: self.trunc,
        }
    }
}

forward_owned_ops!(TruncSeries2);
