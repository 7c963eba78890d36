//! Benchmark fixtures.

use cagv_core::poly::rat;
use cagv_core::{parse, BiPoly, Flag, Potential};

/// A pair meeting with multiplicity `n * (n + 1)`: a cusp-like curve against its twist.
pub fn cusp_pair(n: u32) -> (BiPoly, BiPoly) {
    let p = parse(&format!("y^{n} - x^{}", n + 1)).expect("valid");
    let q = parse(&format!("y^{n} + x^{} + x*y", n + 1)).expect("valid");
    (p, q)
}

/// `(x, y, x + y^k, y + x^k, ...)` with `m + 1` germs.
pub fn chain_flag(m: usize, k: u32) -> Flag {
    let gs = (0..=m)
        .map(|i| match i {
            0 => parse("x"),
            1 => parse("y"),
            _ if i % 2 == 0 => parse(&format!("x + y^{}", k + i as u32)),
            _ => parse(&format!("y + x^{}", k + i as u32)),
        })
        .map(|p| vec![p.expect("valid")])
        .collect();
    Flag::from_factors(gs).expect("valid flag")
}

/// Potential on `Q_n` with every row `k_{i,2} = 1, k_{i,3} = i`.
pub fn dense_potential(n: usize) -> Potential {
    let mut table = Vec::new();
    for i in 1..=2 * n - 1 {
        table.push((i, 2, rat(1)));
        table.push((i, 3, rat(i as i64)));
    }
    Potential::from_table(n, &table)
}
