//! Report documents and their JSON, text and LaTeX renderings.

use std::fmt::Write as _;

use cpstokes_core::Matrix;
use serde_json::{json, Map, Value};

use crate::refs::paper_ref;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub pass: bool,
}

impl Identity {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Identity {
            name: name.into(),
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub k: usize,
    pub section: &'static str,
    /// Symbol of the main matrix in text and LaTeX output.
    pub symbol: &'static str,
    pub matrix: Matrix,
    pub matrices: Vec<(String, Matrix)>,
    pub identities: Vec<Identity>,
    pub data: Map<String, Value>,
    pub notes: Vec<String>,
}

impl Document {
    pub fn new(k: usize, section: &'static str, symbol: &'static str, matrix: Matrix) -> Self {
        Document {
            k,
            section,
            symbol,
            matrix,
            matrices: Vec::new(),
            identities: Vec::new(),
            data: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool) {
        self.identities.push(Identity::new(name, pass));
    }

    pub fn with_matrix(&mut self, name: impl Into<String>, m: Matrix) {
        self.matrices.push((name.into(), m));
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    pub fn to_value(&self) -> Value {
        let identities: Vec<Value> = self
            .identities
            .iter()
            .map(|i| json!({"name": i.name, "paper_ref": paper_ref(&i.name), "pass": i.pass}))
            .collect();
        let mut top = Map::new();
        top.insert("k".into(), json!(self.k));
        top.insert("section".into(), json!(self.section));
        top.insert("matrix".into(), matrix_value(&self.matrix));
        top.insert("identities".into(), Value::Array(identities));
        if !self.matrices.is_empty() {
            let m: Map<String, Value> = self
                .matrices
                .iter()
                .map(|(n, m)| (n.clone(), matrix_value(m)))
                .collect();
            top.insert("matrices".into(), Value::Object(m));
        }
        if !self.data.is_empty() {
            top.insert("data".into(), Value::Object(self.data.clone()));
        }
        if !self.notes.is_empty() {
            top.insert("notes".into(), json!(self.notes));
        }
        Value::Object(top)
    }
}

/// Rows of exact rational strings.
pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        m.to_string_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(Value::String).collect()))
            .collect(),
    )
}

pub fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn render(docs: &[Document], format: Format, as_array: bool) -> String {
    match format {
        Format::Json if as_array => {
            json_string(&Value::Array(docs.iter().map(Document::to_value).collect()))
        }
        Format::Json => docs.iter().map(|d| json_string(&d.to_value())).collect(),
        Format::Text => docs.iter().map(render_text).collect::<Vec<_>>().join("\n"),
        Format::Latex => docs.iter().map(render_latex).collect::<Vec<_>>().join("\n"),
    }
}

fn text_matrix(out: &mut String, name: &str, m: &Matrix) {
    let rows = m.to_string_rows();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let _ = writeln!(out, "{name} =");
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  [ {} ]", cells.join("  "));
    }
}

fn render_text(d: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} (k = {})", d.section, d.k);
    text_matrix(&mut out, d.symbol, &d.matrix);
    for (n, m) in &d.matrices {
        text_matrix(&mut out, n, m);
    }
    if !d.identities.is_empty() {
        let _ = writeln!(out, "identities:");
        let width = d.identities.iter().map(|i| i.name.len()).max().unwrap_or(0);
        for i in &d.identities {
            let status = if i.pass { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {status}  {:<width$}  [{}]",
                i.name,
                paper_ref(&i.name)
            );
        }
    }
    for (key, v) in &d.data {
        let _ = writeln!(out, "{key}: {}", compact(v));
    }
    for n in &d.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn latex_entry(s: &str) -> String {
    match s.split_once('/') {
        Some((n, d)) => match n.strip_prefix('-') {
            Some(n) => format!("-\\frac{{{n}}}{{{d}}}"),
            None => format!("\\frac{{{n}}}{{{d}}}"),
        },
        None => s.to_string(),
    }
}

fn latex_symbol(name: &str) -> String {
    let fixed = match name {
        "chi" => Some("\\chi"),
        "J_beta_chi_J" => Some("J (\\beta \\cdot \\chi) J"),
        "coxeter" => Some("C"),
        "L_inv" => Some("L^{-1}"),
        "S_r1" => Some("S_{r=1}"),
        _ => None,
    };
    if let Some(f) = fixed {
        return f.to_string();
    }
    let tex = name.replace("omega", "\\omega").replace("inf", "\\infty");
    match tex.split_once('_') {
        Some((head, tail)) => format!("{head}_{{{tail}}}"),
        None => tex,
    }
}

fn latex_matrix(out: &mut String, name: &str, m: &Matrix) {
    let _ = writeln!(out, "\\[");
    let _ = writeln!(out, "{} = \\begin{{pmatrix}}", latex_symbol(name));
    let rows = m.to_string_rows();
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        let cells: Vec<String> = r.iter().map(|c| latex_entry(c)).collect();
        let end = if i + 1 < n { " \\\\" } else { "" };
        let _ = writeln!(out, "{}{end}", cells.join(" & "));
    }
    let _ = writeln!(out, "\\end{{pmatrix}}");
    let _ = writeln!(out, "\\]");
}

pub const LATEX_ORIENTATION: &str =
    "% orientation: matrices act on column vectors from the left; transpose for the row-vector displays";

fn render_latex(d: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% {} (k = {})", d.section, d.k);
    let _ = writeln!(out, "{LATEX_ORIENTATION}");
    latex_matrix(&mut out, d.symbol, &d.matrix);
    for (n, m) in &d.matrices {
        latex_matrix(&mut out, n, m);
    }
    for i in &d.identities {
        let status = if i.pass { "pass" } else { "FAIL" };
        let _ = writeln!(out, "% {status}: {} [{}]", i.name, paper_ref(&i.name));
    }
    for n in &d.notes {
        let _ = writeln!(out, "% note: {n}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        let mut d = Document::new(2, "test", "S", Matrix::from_i64_rows(&[&[1, 0], &[-2, 1]]));
        d.push("stokes_closed_form", true);
        d.set("r", json!("-1"));
        d
    }

    #[test]
    fn json_keys_sorted_and_stable() {
        let s = render(&[sample()], Format::Json, false);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(json_string(&v), s);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(v["identities"][0]["paper_ref"], "Thm. 1.2");
        assert_eq!(v["matrix"][1][0], "-2");
    }

    #[test]
    fn latex_fractions() {
        assert_eq!(latex_entry("-3/2"), "-\\frac{3}{2}");
        assert_eq!(latex_entry("7"), "7");
        assert_eq!(latex_symbol("M_omega^2"), "M_{\\omega^2}");
        assert_eq!(latex_symbol("h_inf"), "h_{\\infty}");
        assert_eq!(latex_symbol("chi"), "\\chi");
        let s = render(&[sample()], Format::Latex, false);
        assert!(s.contains("1 & 0 \\\\\n-2 & 1\n\\end{pmatrix}"));
        assert!(s.contains(LATEX_ORIENTATION));
    }

    #[test]
    fn text_lists_identities() {
        let s = render(&[sample()], Format::Text, false);
        assert!(s.contains("pass  stokes_closed_form  [Thm. 1.2]"));
        assert!(s.contains("  [  1   0 ]"));
    }
}
