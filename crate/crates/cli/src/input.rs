//! Job documents: `{"kind": ..., "payload": {...}, "options": {...}}`.

use std::io::Read;
use std::path::Path;

use cagv_core::{parse, BiPoly, ExtCount, Flag, HMode, Potential};
use clap::ValueEnum;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Capped,
}

/// Options as they may appear in a document or on the command line.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub format: Option<Format>,
    pub trunc: Option<u32>,
    pub mode: Option<Mode>,
    pub seed: Option<u64>,
    pub max_degree: Option<usize>,
    pub samples: Option<usize>,
}

impl Options {
    /// Fills unset fields from `other`.
    pub fn or(self, other: &Options) -> Options {
        Options {
            format: self.format.or(other.format),
            trunc: self.trunc.or(other.trunc),
            mode: self.mode.or(other.mode),
            seed: self.seed.or(other.seed),
            max_degree: self.max_degree.or(other.max_degree),
            samples: self.samples.or(other.samples),
        }
    }
}

/// Resolved settings for one run.
#[derive(Clone, Debug)]
pub struct Settings {
    pub format: Format,
    pub trunc: u32,
    pub mode: Mode,
    pub seed: u64,
    pub max_degree: usize,
    pub samples: usize,
}

impl Settings {
    pub const DEFAULT_TRUNC: u32 = 64;

    pub fn resolve(opts: &Options) -> Result<Settings, CliError> {
        let trunc = opts.trunc.unwrap_or(Self::DEFAULT_TRUNC);
        if trunc < 2 {
            return Err(CliError::Semantic(format!("truncation {trunc} is below 2")));
        }
        Ok(Settings {
            format: opts.format.unwrap_or(Format::Table),
            trunc,
            mode: opts.mode.unwrap_or(Mode::Exact),
            seed: opts.seed.unwrap_or(0),
            max_degree: opts.max_degree.unwrap_or(100_000),
            samples: opts.samples.unwrap_or(50),
        })
    }

    pub fn h_mode(&self) -> HMode {
        match self.mode {
            Mode::Exact => HMode::Exact {
                max_degree: self.max_degree,
            },
            Mode::Capped => HMode::Capped {
                trunc: self.trunc as usize,
            },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    kind: String,
    payload: Value,
    #[serde(default)]
    options: Options,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagPayload {
    factors: Option<Vec<Vec<String>>>,
    gs: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QSpecPayload {
    n: Option<usize>,
    s: Option<usize>,
    t: Option<usize>,
    q: Option<Vec<ExtCount>>,
    triple: Option<Vec<ExtCount>>,
}

/// Prescribed values: either `q_s..q_t` on a chain or a cA_2 triple.
#[derive(Clone, Debug)]
pub enum QInput {
    Q {
        n: Option<usize>,
        s: Option<usize>,
        t: Option<usize>,
        q: Vec<ExtCount>,
    },
    Triple(ExtCount, ExtCount, ExtCount),
}

#[derive(Clone, Debug)]
pub enum Job {
    Flag(Flag),
    Potential(Potential),
    QSpec(QInput),
}

impl Job {
    pub fn kind(&self) -> &'static str {
        match self {
            Job::Flag(_) => "flag",
            Job::Potential(_) => "potential",
            Job::QSpec(_) => "qspec",
        }
    }
}

fn poly(field: &str, s: &str) -> Result<BiPoly, CliError> {
    parse(s).map_err(|e| CliError::Parse(format!("{field} = {s:?}: {e}")))
}

fn flag_from(payload: FlagPayload) -> Result<Flag, CliError> {
    match (payload.factors, payload.gs) {
        (Some(fs), None) => {
            let factors = fs
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    f.iter()
                        .enumerate()
                        .map(|(l, s)| poly(&format!("factors[{k}][{l}]"), s))
                        .collect()
                })
                .collect::<Result<Vec<Vec<BiPoly>>, _>>()?;
            Ok(Flag::from_factors(factors)?)
        }
        (None, Some(gs)) => {
            let gs = gs
                .iter()
                .enumerate()
                .map(|(k, s)| poly(&format!("gs[{k}]"), s))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Flag::new(gs)?)
        }
        _ => Err(CliError::Parse(
            "a flag payload needs exactly one of \"factors\" or \"gs\"".into(),
        )),
    }
}

/// Germs separated by `;`, each taken as a single factor.
pub fn flag_from_list(list: &str) -> Result<Flag, CliError> {
    let factors = list
        .split(';')
        .enumerate()
        .map(|(k, s)| poly(&format!("germ {k}"), s.trim()).map(|p| vec![p]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Flag::from_factors(factors)?)
}

pub fn counts_from_list(field: &str, list: &[String]) -> Result<Vec<ExtCount>, CliError> {
    list.iter()
        .map(|s| {
            s.parse::<ExtCount>()
                .map_err(|e| CliError::Parse(format!("{field}: {e}")))
        })
        .collect()
}

fn qspec_from(p: QSpecPayload) -> Result<QInput, CliError> {
    match (p.q, p.triple) {
        (Some(q), None) => Ok(QInput::Q {
            n: p.n,
            s: p.s,
            t: p.t,
            q,
        }),
        (None, Some(tr)) if p.n.is_none() && p.s.is_none() && p.t.is_none() => match tr[..] {
            [a, b, c] => Ok(QInput::Triple(a, b, c)),
            _ => Err(CliError::Parse(format!(
                "a triple has 3 entries, got {}",
                tr.len()
            ))),
        },
        _ => Err(CliError::Parse(
            "a qspec payload needs either \"q\" (with optional n, s, t) or \"triple\"".into(),
        )),
    }
}

/// Parses a job document.
pub fn parse_document(text: &str) -> Result<(Job, Options), CliError> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let bad = |e: serde_json::Error| CliError::Parse(format!("{} payload: {e}", env.kind));
    let job = match env.kind.as_str() {
        "flag" => Job::Flag(flag_from(
            serde_json::from_value(env.payload.clone()).map_err(bad)?,
        )?),
        "potential" => {
            // a document with a bad coefficient string fails inside try_from
            let pot: Potential = serde_json::from_value(env.payload.clone()).map_err(bad)?;
            Job::Potential(pot)
        }
        "qspec" => Job::QSpec(qspec_from(
            serde_json::from_value(env.payload.clone()).map_err(bad)?,
        )?),
        other => {
            return Err(CliError::Parse(format!(
                "unknown kind {other:?}; expected flag, potential or qspec"
            )))
        }
    };
    Ok((job, env.options))
}

/// Reads a document from a path, or standard input for `None` and `-`.
pub fn read_document(path: Option<&Path>) -> Result<(Job, Options), CliError> {
    let text = match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Parse(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    parse_document(&text)
}
