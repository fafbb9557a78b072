//! Reports: a machine-readable payload plus human tables.
//!
//! Payloads are `serde_json::Value` trees whose maps are ordered by key, so
//! serializing the same report twice gives the same bytes.

use std::fmt::Write as _;

use mfcat::{MatrixFactorization, QDim};
use serde_json::{json, Map, Value};

#[derive(Debug, Default)]
pub struct Report {
    pub payload: Map<String, Value>,
    pub text: String,
    /// False when a check the command exists to perform did not hold.
    pub pass: bool,
}

impl Report {
    pub fn new() -> Self {
        Report { pass: true, ..Default::default() }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.payload.insert(key.to_string(), v);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn table<S: AsRef<str>>(&mut self, headers: &[&str], rows: &[Vec<S>]) {
        let t = table(headers, rows);
        self.text.push_str(&t);
    }

    pub fn check(&mut self, ok: bool) {
        self.pass &= ok;
    }
}

pub fn qdim(d: QDim) -> Value {
    match d {
        QDim::Finite(n) => json!(n),
        QDim::Infinite => json!("infinite"),
    }
}

pub fn dims(d: [QDim; 2]) -> Value {
    json!({ "even": qdim(d[0]), "odd": qdim(d[1]) })
}

pub fn dims_cell(d: [QDim; 2]) -> String {
    format!("({}, {})", d[0], d[1])
}

pub fn factorization(p: &MatrixFactorization) -> Value {
    serde_json::to_value(p.to_json()).expect("factorizations serialize")
}

/// Renders `p1` and `p0` as aligned matrices.
pub fn describe(p: &MatrixFactorization) -> String {
    let mut s = String::new();
    let ring = p.ring();
    let _ = writeln!(s, "ring Q[{}], W = {}", ring.vars().join(", "), ring.format(p.curvature()));
    let _ = writeln!(s, "ranks (even, odd) = ({}, {})", p.rank_even(), p.rank_odd());
    for (name, m) in [("p1", p.p1()), ("p0", p.p0())] {
        let _ = writeln!(s, "{name} =");
        let lits = m.to_literals();
        if lits.is_empty() || lits[0].is_empty() {
            let _ = writeln!(s, "  ({} x {} zero matrix)", m.rows(), m.cols());
            continue;
        }
        let width = lits.iter().flatten().map(|e| e.chars().count()).max().unwrap_or(0);
        for row in lits {
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
            let _ = writeln!(s, "  [ {} ]", cells.join("  "));
        }
    }
    s
}

/// A left-aligned text table with one space of padding.
pub fn table<S: AsRef<str>>(headers: &[&str], rows: &[Vec<S>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.as_ref().chars().count());
        }
    }
    let render = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = render(headers.to_vec());
    out.push('\n');
    out.push_str(&render(
        width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect(),
    ));
    out.push('\n');
    for row in rows {
        out.push_str(&render(row.iter().map(AsRef::as_ref).collect()));
        out.push('\n');
    }
    out
}
