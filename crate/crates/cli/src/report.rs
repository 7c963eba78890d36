//! Structured output and its three renderings.

use std::fmt::Write as _;

use cagv_core::ExtCount;
use serde_json::{json, Map, Value};

use crate::input::Format;

/// A block of tabular output.
#[derive(Clone, Debug)]
pub enum Block {
    /// Upper-triangular table indexed by `1 <= i <= j <= m`.
    Pairs {
        name: String,
        m: usize,
        cells: Vec<((usize, usize), Value)>,
    },
    /// Plain rows under a header.
    Rows {
        name: String,
        header: Vec<String>,
        rows: Vec<Vec<Value>>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, Value)>,
    pub blocks: Vec<Block>,
}

/// `N` entries: numbers, `"inf"` or `">=D"`.
pub fn count(v: ExtCount) -> Value {
    serde_json::to_value(v).expect("counts serialise")
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn field(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.push((key.into(), v.into()));
        self
    }

    pub fn pairs(
        &mut self,
        name: &str,
        m: usize,
        cells: Vec<((usize, usize), Value)>,
    ) -> &mut Self {
        self.blocks.push(Block::Pairs {
            name: name.into(),
            m,
            cells,
        });
        self
    }

    pub fn rows(&mut self, name: &str, header: &[&str], rows: Vec<Vec<Value>>) -> &mut Self {
        let header = header.iter().map(|s| s.to_string()).collect();
        self.blocks.push(Block::Rows {
            name: name.into(),
            header,
            rows,
        });
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::from(self.command.clone()));
        for (k, v) in &self.fields {
            doc.insert(k.clone(), v.clone());
        }
        let mut tables = Map::new();
        for b in &self.blocks {
            match b {
                Block::Pairs { name, cells, .. } => {
                    let list = cells
                        .iter()
                        .map(|((i, j), v)| json!({"i": i, "j": j, "value": v}))
                        .collect();
                    tables.insert(name.clone(), Value::Array(list));
                }
                Block::Rows { name, header, rows } => {
                    let list = rows
                        .iter()
                        .map(|r| {
                            let obj: Map<String, Value> =
                                header.iter().cloned().zip(r.iter().cloned()).collect();
                            Value::Object(obj)
                        })
                        .collect();
                    tables.insert(name.clone(), Value::Array(list));
                }
            }
        }
        if !tables.is_empty() {
            doc.insert("tables".into(), Value::Object(tables));
        }
        Value::Object(doc)
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            let _ = writeln!(out, "  {k:<width$}  {}", plain(v));
        }
        for b in &self.blocks {
            out.push('\n');
            match b {
                Block::Pairs { name, m, cells } => {
                    let mut grid = vec![vec![String::new(); m + 1]; m + 1];
                    grid[0] = std::iter::once(name.clone())
                        .chain((1..=*m).map(|k| format!("j={k}")))
                        .collect();
                    for (k, row) in grid.iter_mut().enumerate().skip(1) {
                        row[0] = format!("i={k}");
                    }
                    for ((i, j), v) in cells {
                        grid[*i][*j] = plain(v);
                    }
                    aligned(&mut out, &grid);
                }
                Block::Rows { name, header, rows } => {
                    let _ = writeln!(out, "{name}");
                    let mut grid = vec![header.clone()];
                    grid.extend(rows.iter().map(|r| r.iter().map(plain).collect()));
                    aligned(&mut out, &grid);
                }
            }
        }
        out
    }

    fn to_csv(&self) -> String {
        let mut sections: Vec<Vec<Vec<String>>> = Vec::new();
        // csv is for tables; reports without any fall back to key/value rows
        let has_pairs = self.blocks.iter().any(|b| matches!(b, Block::Pairs { .. }));
        if !has_pairs && !self.fields.is_empty() {
            let mut rows = vec![vec!["field".to_string(), "value".to_string()]];
            rows.extend(self.fields.iter().map(|(k, v)| vec![k.clone(), plain(v)]));
            sections.push(rows);
        }
        let mut pairs = vec![["table", "i", "j", "value"].map(String::from).to_vec()];
        for b in &self.blocks {
            if let Block::Pairs { name, cells, .. } = b {
                pairs.extend(
                    cells.iter().map(|((i, j), v)| {
                        vec![name.clone(), i.to_string(), j.to_string(), plain(v)]
                    }),
                );
            }
        }
        if has_pairs {
            sections.push(pairs);
        }
        for b in &self.blocks {
            if let Block::Rows { name, header, rows } = b {
                let mut out = vec![std::iter::once("table".to_string())
                    .chain(header.iter().cloned())
                    .collect()];
                out.extend(rows.iter().map(|r| {
                    std::iter::once(name.clone())
                        .chain(r.iter().map(plain))
                        .collect()
                }));
                sections.push(out);
            }
        }
        sections
            .into_iter()
            .map(|rows| {
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in rows {
                    w.write_record(&r).expect("csv");
                }
                String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Strings unquoted, lists joined by `;`, everything else as compact JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) => xs.iter().map(plain).collect::<Vec<_>>().join("; "),
        other => other.to_string(),
    }
}

fn aligned(out: &mut String, grid: &[Vec<String>]) {
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            grid.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in grid {
        let mut line = String::from(" ");
        for (c, cell) in row.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            line.push(' ');
            line.push_str(cell);
            line.push_str(&" ".repeat(pad));
            line.push(' ');
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}
