//! One function per subcommand, each producing a [`Report`].

use cagv_core::classify::{ca2_witness, ObsVerdict, Prediction};
use cagv_core::potential::n_table;
use cagv_core::resolution::{contraction_bounds, pairs};
use cagv_core::{
    abs_apply, check_obstruction, classify_ca2, f_matrix, predict_nst, realize_flag, strata_ss,
    v_class, witness_min, Ca2Form, Ca2Verdict, ExtCount, Flag, Germ, Potential, QSpec,
    TruncSeries2,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::{Job, QInput, Settings};
use crate::report::{count, Report};

type Out = Result<Report, CliError>;

fn germs<G: Germ>(f: &Flag<G>) -> Value {
    Value::from(f.gs().iter().map(|g| g.to_string()).collect::<Vec<_>>())
}

fn n_cells<G: Germ>(f: &Flag<G>) -> Vec<((usize, usize), Value)> {
    let t = f.gv_table();
    pairs(f.m())
        .into_iter()
        .map(|(i, j)| ((i, j), count(t.get(i, j).expect("in range"))))
        .collect()
}

fn wrong_kind(cmd: &str, job: &Job, want: &str) -> CliError {
    CliError::Semantic(format!(
        "{cmd} expects a {want} document, got kind {:?}",
        job.kind()
    ))
}

/// `a` is consistent with `b` when they agree or one is a bound the other meets.
fn compatible(a: ExtCount, b: ExtCount) -> bool {
    match (a, b) {
        (ExtCount::AtLeast(x), v) | (v, ExtCount::AtLeast(x)) => v.is_at_least(x),
        _ => a == b,
    }
}

// invariants ---------------------------------------------------------------

pub fn invariants(job: &Job, s: &Settings) -> Out {
    match job {
        Job::Flag(f) => flag_invariants(f),
        Job::Potential(p) => potential_invariants(p, s),
        other => Err(wrong_kind("invariants", other, "flag or potential")),
    }
}

fn flag_invariants<G: Germ>(f: &Flag<G>) -> Out {
    let mut r = Report::new("invariants");
    let m = f.m();
    r.field("kind", "flag")
        .field("m", m)
        .field("germs", germs(f));
    let crepant = f.is_crepant_resolution();
    match &crepant {
        Ok(c) => r.field("crepant", *c),
        Err(_) => r.field("crepant", "unknown (no factor lists)"),
    };
    r.field("total_dim", count(f.total_dim()));
    r.pairs("N", m, n_cells(f));
    match f.to_gv() {
        Ok(gv) => {
            let cells = pairs(m)
                .into_iter()
                .map(|k| (k, Value::from(gv[&k])))
                .collect();
            r.pairs("GV", m, cells);
        }
        Err(e) => {
            r.field("gv", e.to_string());
        }
    }
    let table = f.gv_table();
    let mut toda = Vec::new();
    for (a, b) in pairs(m) {
        let v = f.toda_dim(a, b)?;
        let sum: ExtCount = (1..=a)
            .flat_map(|i| (b..=m).map(move |j| (i, j)))
            .map(|(i, j)| table.get(i, j).expect("in range"))
            .sum();
        if v != sum {
            return Err(CliError::Invariant(format!(
                "dim e_{a} L e_{b} = {v} but the N table sums to {sum}"
            )));
        }
        toda.push(((a, b), count(v)));
    }
    r.pairs("Toda", m, toda);
    Ok(r)
}

fn potential_invariants(pot: &Potential, s: &Settings) -> Out {
    let mut r = Report::new("invariants");
    let n = pot.n();
    let t = n_table(pot, s.h_mode())?;
    r.field("kind", "potential")
        .field("n", n)
        .field("potential", pot.to_string())
        .field("support", pot.support_tuple().to_string());
    let total: ExtCount = t
        .iter()
        .map(|(&(i, j), v)| v.scale(((j - i + 1) * (j - i + 1)) as u64))
        .sum();
    r.field("total_dim", count(total));
    r.pairs(
        "N",
        n,
        pairs(n).into_iter().map(|k| (k, count(t[&k]))).collect(),
    );
    let toda = pairs(n)
        .into_iter()
        .map(|(a, b)| {
            let t = &t;
            let v: ExtCount = (1..=a).flat_map(|i| (b..=n).map(move |j| t[&(i, j)])).sum();
            ((a, b), count(v))
        })
        .collect();
    r.pairs("Toda", n, toda);
    let rows = prediction_rows(pot, &t)?;
    r.rows(
        "predictions",
        &["s", "t", "d", "det", "predicted", "stratum", "computed"],
        rows,
    );
    Ok(r)
}

fn prediction_rows(
    pot: &Potential,
    t: &std::collections::BTreeMap<(usize, usize), ExtCount>,
) -> Result<Vec<Vec<Value>>, CliError> {
    let mut rows = Vec::new();
    for (a, b) in pairs(pot.n()) {
        let pr = predict_nst(pot, a, b)?;
        let computed = t[&(a, b)];
        let (shown, ok) = match pr.prediction {
            Prediction::Exact(v) => (count(v), compatible(v, computed)),
            Prediction::LowerBound(d) => (Value::from(format!(">={d}")), computed.is_at_least(d)),
        };
        if !ok {
            return Err(CliError::Invariant(format!(
                "N_{a}{b} = {computed} contradicts the prediction {shown}"
            )));
        }
        if a == b && !compatible(strata_ss(pot, a)?, computed) {
            return Err(CliError::Invariant(format!(
                "N_{a}{a} = {computed} disagrees with its stratum"
            )));
        }
        rows.push(vec![
            Value::from(a),
            Value::from(b),
            pr.d.map_or(Value::from("inf"), Value::from),
            pr.det.map_or(Value::Null, Value::from),
            shown,
            pr.stratum.map_or(Value::Null, Value::from),
            count(computed),
        ]);
    }
    Ok(rows)
}

// flop, contract, reflect ---------------------------------------------------

enum AnyFlag {
    Poly(Flag),
    Series(Flag<TruncSeries2>),
}

fn any_flag(cmd: &str, job: &Job, s: &Settings) -> Result<AnyFlag, CliError> {
    match job {
        Job::Flag(f) => Ok(AnyFlag::Poly(f.clone())),
        Job::Potential(p) => Ok(AnyFlag::Series(realize_flag(p, s.trunc)?)),
        other => Err(wrong_kind(cmd, other, "flag or potential")),
    }
}

fn before_after<G: Germ>(r: &mut Report, before: &Flag<G>, after: &Flag<G>) {
    r.field("germs", germs(before))
        .field("germs_after", germs(after));
    r.pairs("N", before.m(), n_cells(before));
    r.pairs("N_after", after.m(), n_cells(after));
}

pub fn flop(job: &Job, s: &Settings, index: usize) -> Out {
    match any_flag("flop", job, s)? {
        AnyFlag::Poly(f) => flop_on(&f, index),
        AnyFlag::Series(f) => flop_on(&f, index),
    }
}

fn flop_on<G: Germ>(f: &Flag<G>, index: usize) -> Out {
    let m = f.m();
    let g = f.flop(index)?;
    let fi = f_matrix(m, index)?;
    let mut r = Report::new("flop");
    r.field("index", index);
    before_after(&mut r, f, &g);
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (i, j) in pairs(m) {
        let beta = v_class(m, i, j)?;
        let image = abs_apply(&fi, &beta)?;
        let (a, b) = (f.n_beta(&beta)?, g.n_beta(&image)?);
        let ok = compatible(a, b);
        if !ok {
            bad.push(format!("N_{beta} = {a} but N'_{image} = {b}"));
        }
        rows.push(vec![
            json!(beta.to_string()),
            json!(image.to_string()),
            count(a),
            count(b),
            json!(ok),
        ]);
    }
    r.rows("covariance", &["beta", "image", "N", "N_after", "ok"], rows);
    finish(r, "covariance", bad)
}

fn finish(mut r: Report, what: &str, bad: Vec<String>) -> Out {
    if !bad.is_empty() {
        return Err(CliError::Invariant(format!(
            "{what} check failed: {}",
            bad.join("; ")
        )));
    }
    r.field("check", "ok");
    Ok(r)
}

pub fn contract(job: &Job, s: &Settings, keep: &[usize]) -> Out {
    match any_flag("contract", job, s)? {
        AnyFlag::Poly(f) => contract_on(&f, keep),
        AnyFlag::Series(f) => contract_on(&f, keep),
    }
}

fn contract_on<G: Germ>(f: &Flag<G>, keep: &[usize]) -> Out {
    let c = f.contract(keep)?;
    let bounds = contraction_bounds(f.m(), keep)?;
    let t = f.gv_table();
    let mut r = Report::new("contract");
    r.field("keep", Value::from(keep.to_vec()));
    before_after(&mut r, f, &c);
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (a, b) in pairs(keep.len()) {
        let (i0, i1) = (bounds[a - 1] + 1, bounds[a]);
        let (j0, j1) = (bounds[b], bounds[b + 1] - 1);
        let sum: ExtCount = (i0..=i1)
            .flat_map(|i| (j0..=j1).map(move |j| (i, j)))
            .map(|(i, j)| t.get(i, j).expect("in range"))
            .sum();
        let v = c.n_ij(a, b)?;
        let ok = compatible(v, sum);
        if !ok {
            bad.push(format!("N'_{a}{b} = {v} but the range sum is {sum}"));
        }
        rows.push(vec![
            json!(a),
            json!(b),
            json!(format!("{i0}..={i1}")),
            json!(format!("{j0}..={j1}")),
            count(sum),
            count(v),
            json!(ok),
        ]);
    }
    r.rows("sums", &["s", "t", "i", "j", "sum", "N_after", "ok"], rows);
    finish(r, "contraction", bad)
}

pub fn reflect(job: &Job, s: &Settings) -> Out {
    match any_flag("reflect", job, s)? {
        AnyFlag::Poly(f) => reflect_on(&f),
        AnyFlag::Series(f) => reflect_on(&f),
    }
}

fn reflect_on<G: Germ>(f: &Flag<G>) -> Out {
    let g = f.reflect();
    let m = f.m();
    let mut r = Report::new("reflect");
    before_after(&mut r, f, &g);
    let bad: Vec<String> = pairs(m)
        .into_iter()
        .filter_map(|(i, j)| {
            let (a, b) = (g.n_ij(i, j).ok()?, f.n_ij(m + 1 - j, m + 1 - i).ok()?);
            (!compatible(a, b))
                .then(|| format!("N'_{i}{j} = {a} but N_{}{} = {b}", m + 1 - j, m + 1 - i))
        })
        .collect();
    finish(r, "reflection", bad)
}

// potential, predict --------------------------------------------------------

pub fn potential(job: &Job, s: &Settings) -> Out {
    let Job::Potential(pot) = job else {
        return Err(wrong_kind("potential", job, "potential"));
    };
    let n = pot.n();
    let t = n_table(pot, s.h_mode())?;
    let f = realize_flag(pot, s.trunc)?;
    let mut r = Report::new("potential");
    r.field("n", n)
        .field("potential", pot.to_string())
        .field("document", serde_json::to_value(pot).expect("serialisable"))
        .field("trunc", s.trunc)
        .field("germs", germs(&f));
    r.pairs(
        "N",
        n,
        pairs(n).into_iter().map(|k| (k, count(t[&k]))).collect(),
    );
    r.pairs("N_geometric", n, n_cells(&f));
    let bad: Vec<String> = pairs(n)
        .into_iter()
        .filter_map(|(i, j)| {
            let (a, b) = (t[&(i, j)], f.n_ij(i, j).ok()?);
            (!compatible(a, b)).then(|| format!("N_{i}{j} = {a} from h but {b} from the flag"))
        })
        .collect();
    finish(r, "potential/geometry", bad)
}

pub fn predict(job: &Job, s: &Settings) -> Out {
    let Job::Potential(pot) = job else {
        return Err(wrong_kind("predict", job, "potential"));
    };
    let t = n_table(pot, s.h_mode())?;
    let mut r = Report::new("predict");
    r.field("n", pot.n())
        .field("potential", pot.to_string())
        .field("support", pot.support_tuple().to_string());
    let rows = prediction_rows(pot, &t)?;
    r.rows(
        "predictions",
        &["s", "t", "d", "det", "predicted", "stratum", "computed"],
        rows,
    );
    Ok(r)
}

// check-q, check-ca2 ----------------------------------------------------------

pub fn qspec_of(q: &QInput) -> Result<QSpec, CliError> {
    match q {
        QInput::Q { n, s, t, q } => {
            let s0 = s.unwrap_or(1);
            let t0 = t.unwrap_or(s0 + q.len().max(1) - 1);
            Ok(QSpec::new(n.unwrap_or(t0), s0, t0, q.clone())?)
        }
        QInput::Triple(..) => Err(CliError::Semantic("a triple belongs to check-ca2".into())),
    }
}

pub fn check_q(spec: &QSpec, s: &Settings) -> Out {
    let rep = check_obstruction(spec, s.samples, s.seed)?;
    let (st, q_min) = (format!("{}{}", spec.s, spec.t), rep.q_min);
    let mut r = Report::new("check-q");
    let verdict = match rep.verdict {
        ObsVerdict::Forced(_) => "forced",
        ObsVerdict::Bounded(_) => "bounded",
    };
    let summary = match rep.verdict {
        ObsVerdict::Forced(_) if rep.all_equal_q_min => format!("all samples N_{st} = {q_min}"),
        _ if rep.found_above_q_min => format!("all samples N_{st} >= {q_min}, larger values found"),
        _ => format!("all samples N_{st} >= {q_min}"),
    };
    r.field("spec", spec.to_string())
        .field("seed", s.seed)
        .field("samples", rep.samples)
        .field("q_min", count(q_min))
        .field("verdict", verdict)
        .field("summary", format!("{summary}; theorem verdict: {verdict}"))
        .field("min_observed", rep.min_observed.map_or(Value::Null, count))
        .field("max_observed", rep.max_observed.map_or(Value::Null, count))
        .field("all_at_least_q_min", rep.all_at_least_q_min)
        .field("all_equal_q_min", rep.all_equal_q_min)
        .field("found_above_q_min", rep.found_above_q_min)
        .field("degenerate_draws", rep.degenerate_draws);
    if !rep.all_at_least_q_min || !rep.consistent() {
        return Err(CliError::Invariant(format!(
            "samples contradict the obstruction bound for {spec}"
        )));
    }
    let w = witness_min(spec, s.seed, cagv_core::classify::WITNESS_BUDGET)?;
    let wv = cagv_core::n_st(&w, spec.s, spec.t, s.h_mode())?;
    r.field(
        "witness_min",
        serde_json::to_value(&w).expect("serialisable"),
    )
    .field("witness_min_value", count(wv));
    if let Some(above) = &rep.witness_above {
        let v = cagv_core::n_st(above, spec.s, spec.t, s.h_mode())?;
        r.field(
            "witness_above",
            serde_json::to_value(above).expect("serialisable"),
        )
        .field("witness_above_value", count(v));
    }
    Ok(r)
}

pub fn check_ca2(triple: (ExtCount, ExtCount, ExtCount), s: &Settings) -> Out {
    let mut r = Report::new("check-ca2");
    let (a, b, c) = triple;
    r.field("triple", format!("({a},{b},{c})"));
    match classify_ca2(triple) {
        Ca2Verdict::Invalid(why) => {
            r.field("verdict", "invalid").field("reason", why);
        }
        Ca2Verdict::Valid(form) => {
            let form = match form {
                Ca2Form::Form1 => "form 1: (p, q, min(p, q)) with p != q",
                Ca2Form::Form2 => "form 2: (p, p, r) with r >= p",
            };
            let w = ca2_witness(triple, s.seed)?;
            let f = realize_flag(&w.potential, w.trunc)?;
            let f = w.flops.0.iter().try_fold(f, |f, &i| f.flop(i))?;
            r.field("verdict", "valid")
                .field("form", form)
                .field("seed", s.seed)
                .field(
                    "witness",
                    serde_json::to_value(&w.potential).expect("serialisable"),
                )
                .field("flops", w.flops.to_string())
                .field("trunc", w.trunc);
            r.pairs("N", 2, n_cells(&f));
        }
    }
    Ok(r)
}

// selftest -------------------------------------------------------------------

pub fn selftest() -> Out {
    type Check = fn() -> Result<(), String>;
    let checks: Vec<(&str, Check)> = vec![
        ("example flags (x, y, x + y^n)", selftest::example_flags),
        ("flop permutation for m = 2", selftest::flop_table),
        ("reduction against the jet oracle", selftest::oracle),
        ("determinant recurrence", selftest::recurrence),
        ("potential against its flag", selftest::potential),
        ("cA_2 triples", selftest::ca2),
    ];
    let mut r = Report::new("selftest");
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (name, run) in checks {
        let res = run();
        rows.push(vec![
            json!(name),
            json!(res
                .as_ref()
                .map_or_else(|e| format!("fail: {e}"), |_| "ok".into())),
        ]);
        if let Err(e) = res {
            bad.push(format!("{name}: {e}"));
        }
    }
    r.rows("checks", &["check", "result"], rows);
    finish(r, "selftest", bad)
}

mod selftest {
    use cagv_core::poly::rat;
    use cagv_core::typeamat::det_a;
    use cagv_core::{mult, mult_jet_oracle, parse, BiPoly, ExtCount, Flag, MPoly, Potential};

    use super::*;

    fn p(s: &str) -> BiPoly {
        parse(s).expect("valid literal")
    }

    pub fn example_flags() -> Result<(), String> {
        for n in 1..=6u64 {
            let f = Flag::from_factors(vec![
                vec![p("x")],
                vec![p("y")],
                vec![p(&format!("x + y^{n}"))],
            ])
            .map_err(|e| e.to_string())?;
            let gv = f.to_gv().map_err(|e| e.to_string())?;
            if (gv[&(1, 1)], gv[&(2, 2)], gv[&(1, 2)]) != (1, 1, n as i64) {
                return Err(format!("n = {n}: GV {gv:?}"));
            }
            if f.total_dim() != ExtCount::Finite(2 + 4 * n) {
                return Err(format!("n = {n}: total {}", f.total_dim()));
            }
        }
        Ok(())
    }

    pub fn flop_table() -> Result<(), String> {
        let f = Flag::new(vec![p("x"), p("y"), p("x + y^3")]).map_err(|e| e.to_string())?;
        let n = |f: &Flag, i, j| f.n_ij(i, j).expect("in range");
        let g = f.flop(1).map_err(|e| e.to_string())?;
        let h = f.flop(2).map_err(|e| e.to_string())?;
        let ok = n(&g, 1, 1) == n(&f, 1, 1)
            && n(&g, 2, 2) == n(&f, 1, 2)
            && n(&g, 1, 2) == n(&f, 2, 2)
            && n(&h, 1, 1) == n(&f, 1, 2)
            && n(&h, 2, 2) == n(&f, 2, 2)
            && n(&h, 1, 2) == n(&f, 1, 1);
        ok.then_some(())
            .ok_or_else(|| "permutation pattern broken".into())
    }

    pub fn oracle() -> Result<(), String> {
        let cases = [
            ("y^2 - x^3", "x^2 - y^3", 4),
            ("y - x^5", "y", 5),
            ("x*y", "x + y", 2),
            ("y^2 - x^3", "y^2 + x^3", 6),
        ];
        for (a, b, want) in cases {
            let (a, b) = (p(a), p(b));
            let m = mult(&a, &b);
            if m != ExtCount::Finite(want) || mult_jet_oracle(&a, &b, 14) != m {
                return Err(format!("mult({a}, {b}) = {m}, expected {want}"));
            }
        }
        Ok(())
    }

    pub fn recurrence() -> Result<(), String> {
        for (i, j) in [(1, 3), (1, 4), (2, 5), (1, 6)] {
            let d = |i, j| det_a(i, j, 2).map_err(|e| e.to_string());
            let rhs = &(&MPoly::sym(j, 2) * &d(i, j - 1)?) - &d(i, j - 2)?;
            if d(i, j)? != rhs {
                return Err(format!("({i},{j})"));
            }
        }
        Ok(())
    }

    pub fn potential() -> Result<(), String> {
        let pot = Potential::from_table(2, &[(1, 3, rat(1)), (3, 3, rat(2))]);
        let t = n_table(&pot, Default::default()).map_err(|e| e.to_string())?;
        let f = realize_flag(&pot, 32).map_err(|e| e.to_string())?;
        for (&(i, j), &v) in &t {
            if v != ExtCount::Finite(2) || f.n_ij(i, j).map_err(|e| e.to_string())? != v {
                return Err(format!("N_{i}{j} = {v}"));
            }
        }
        Ok(())
    }

    pub fn ca2() -> Result<(), String> {
        let f = ExtCount::Finite;
        if matches!(classify_ca2((f(2), f(3), f(3))), Ca2Verdict::Valid(_)) {
            return Err("(2,3,3) accepted".into());
        }
        for tr in [(f(1), f(2), f(1)), (f(2), f(2), f(3))] {
            ca2_witness(tr, 0).map_err(|e| e.to_string())?;
        }
        Ok(())
    }
}
