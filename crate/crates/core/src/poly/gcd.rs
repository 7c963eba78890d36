//! Bivariate gcd: content in `x` times a subresultant PRS in `y` over `Q[x]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bipoly::BiPoly;
use super::rat::Rat;
use super::unipoly::UniPoly;

/// Polynomial in `y` with coefficients in `Q[x]`, lowest degree first.
type YPoly = Vec<UniPoly>;

fn ydeg(p: &YPoly) -> usize {
    p.len() - 1
}

fn trim(mut p: YPoly) -> YPoly {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
    p
}

fn content(p: &YPoly) -> UniPoly {
    p.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
}

fn div_coeffs(p: &YPoly, d: &UniPoly) -> YPoly {
    p.iter()
        .map(|c| c.exact_div(d).expect("coefficient divisible by content"))
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = ydeg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = ydeg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k - db + i] = &r[k - db + i] - &(&lr * bc);
        }
        r = trim(r);
        steps -= 1;
    }
    let extra = lb.pow(steps as u32);
    trim(r.iter().map(|c| c * &extra).collect())
}

/// A greatest common divisor, scaled to integer coefficients with content 1
/// and positive graded-lex leading coefficient. `gcd(0, q)` is `q` normalised.
pub fn poly_gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return normalise(q);
    }
    if q.is_zero() {
        return normalise(p);
    }
    let (mut a, mut b) = (p.y_coeffs(), q.y_coeffs());
    if ydeg(&a) < ydeg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let (ca, cb) = (content(&a), content(&b));
    let c = ca.gcd(&cb);
    a = div_coeffs(&a, &ca);
    b = div_coeffs(&b, &cb);

    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    let core = loop {
        if ydeg(&b) == 0 {
            break vec![UniPoly::one()];
        }
        let delta = (ydeg(&a) - ydeg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break b;
        }
        let denom = &g * &h.pow(delta);
        a = b;
        b = div_coeffs(&r, &denom);
        g = a[ydeg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant h divides")
        };
    };
    let pp = div_coeffs(&core, &content(&core));
    let gx = BiPoly::from_uni_x(&c);
    normalise(&(&gx * &BiPoly::from_y_coeffs(&pp)))
}

/// Integer coefficients, content 1, positive leading coefficient; constants become 1.
pub(crate) fn normalise(p: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return BiPoly::zero();
    }
    if p.is_constant() {
        return BiPoly::one();
    }
    let den = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scaled = p.scale(&Rat::from_integer(den));
    let mut g = scaled
        .terms()
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()));
    let (_, lc) = scaled.leading_term().expect("nonzero");
    if lc.is_negative() {
        g = -g;
    }
    scaled.scale(&Rat::new(BigInt::one(), g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p(s: &str) -> BiPoly {
        parse(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(poly_gcd(&p("x*y"), &p("x*(x+y)")), p("x"));
        assert_eq!(poly_gcd(&p("x"), &p("y")), p("1"));
        assert_eq!(poly_gcd(&p("x^2-y^2"), &p("x^2+2*x*y+y^2")), p("x+y"));
        assert_eq!(poly_gcd(&BiPoly::zero(), &p("-2*x - 4*y")), p("x + 2*y"));
    }

    #[test]
    fn mixed_content_and_primitive_part() {
        let f = p("(x^2 + 1)*(y - x)*(x*y + 1)");
        let g = p("(x^2 + 1)*(y - x)^2*(y + 3)");
        assert_eq!(poly_gcd(&f, &g), p("x^3 - x^2*y + x - y"));
        let h = p("(y^3 + x*y + x^2)*(2*x + y^2)");
        let k = p("(y^3 + x*y + x^2)*(x - y)*(x + y)");
        assert_eq!(poly_gcd(&h, &k), p("y^3 + x^2 + x*y"));
    }

    #[test]
    fn normalisation_clears_denominators() {
        assert_eq!(normalise(&p("1/2*x - 1/3*y")), p("3*x - 2*y"));
        assert_eq!(normalise(&p("-5")), p("1"));
    }
}
