//! Exact polynomial arithmetic over the rationals.

mod bipoly;
mod gcd;
mod parse;
pub mod rat;
mod series;
mod unipoly;

pub use bipoly::BiPoly;
pub use gcd::poly_gcd;
pub use parse::parse;
pub use rat::{format_rat, parse_rat, rat, rat_frac, Rat};
pub use series::TruncSeries2;
pub use unipoly::UniPoly;
