//! Generalised Gopakumar–Vafa invariants of crepant partial resolutions of
//! cA_n singularities.
//!
//! The crate computes local intersection multiplicities of plane-curve germs,
//! invariant tables of flags under flops and contractions, the invariants of
//! monomialised Type A potentials, and the symbolic matrices `A_ij^d` whose
//! determinants control them.

#[macro_use]
mod macros;

pub mod classify;
pub mod count;
pub mod curveclass;
pub mod error;
pub mod localmult;
pub mod poly;
pub mod potential;
pub mod resolution;
pub mod typeamat;

pub use classify::{
    check_obstruction, classify_ca2, predict_nst, strata_ss, transport_q, witness_min, Ca2Form,
    Ca2Verdict, ObstructionReport, Prediction, QSpec,
};
pub use count::ExtCount;
pub use curveclass::{
    abs_apply, f_matrix, reduction_word, v_class, word_apply, CurveClass, FlopWord,
};
pub use error::{Error, Result};
pub use localmult::{mult, mult_jet_oracle, mult_series};
pub use poly::{parse, poly_gcd, BiPoly, Rat, TruncSeries2, UniPoly};
pub use potential::{h_sequence, n_st, realize_flag, HMode, PTuple, Potential};
pub use resolution::{Flag, Germ, GvTable};
pub use typeamat::{build_a, AMatrix, MPoly};
