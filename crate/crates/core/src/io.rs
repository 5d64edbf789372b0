//! Context files, output formats and terrain rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gamma::{build_gamma_set, GammaContext};
use crate::loading::{format_rational, parse_rational};
use crate::mp::{Multipartition, ParamContext, Partition, QuantumChar, Residue};
use crate::terrain::{DecoratedTerrain, StepKind, Terrain};

/// The on-disk form of a context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextFile {
    pub e: Value,
    pub multicharge: Vec<i64>,
    pub theta: Vec<String>,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiset: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_display: Option<String>,
}

#[derive(Debug, Clone)]
pub struct LoadedContext {
    pub params: ParamContext,
    pub gamma: Option<GammaContext>,
    pub epsilon_display: Option<BigRational>,
}

impl LoadedContext {
    pub fn gamma_context(&self) -> Result<&GammaContext> {
        self.gamma.as_ref().ok_or_else(|| Error::validation("gamma", "this command needs gamma, residues and multiset in the context"))
    }
}

fn parse_e(v: &Value) -> Result<QuantumChar> {
    let bad = || Error::validation("e", format!("expected an integer >= 3 or \"infinity\", got {v}"));
    match v {
        Value::Number(n) => {
            let e = n.as_u64().ok_or_else(bad)?;
            QuantumChar::finite(u32::try_from(e).map_err(|_| bad())?).map_err(|_| bad())
        }
        Value::String(s) if s == "infinity" || s == "∞" => Ok(QuantumChar::Infinite),
        Value::String(s) => s.parse::<u32>().map_err(|_| bad()).and_then(|e| QuantumChar::finite(e).map_err(|_| bad())),
        _ => Err(bad()),
    }
}

fn field_rational(field: String, s: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|e| Error::validation(field, e.to_string()))
}

/// Parses and validates a JSON context document.
pub fn parse_context(text: &str) -> Result<LoadedContext> {
    let file: ContextFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    load_context(&file)
}

pub fn load_context(file: &ContextFile) -> Result<LoadedContext> {
    let e = parse_e(&file.e)?;
    let theta = file.theta.iter().enumerate().map(|(k, t)| field_rational(format!("theta[{k}]"), t)).collect::<Result<Vec<_>>>()?;
    let g = field_rational("g".into(), &file.g)?;
    let params = ParamContext::new(e, file.multicharge.clone(), theta, g)?;
    let epsilon_display = file.epsilon_display.as_deref().map(|s| field_rational("epsilon_display".into(), s)).transpose()?;

    let gamma = match &file.gamma {
        None => {
            if file.residues.is_some() || file.multiset.is_some() {
                return Err(Error::validation("gamma", "residues and multiset need gamma"));
            }
            None
        }
        Some(parts) => {
            let comps = parts
                .iter()
                .enumerate()
                .map(|(k, p)| Partition::new(p.clone()).map_err(|e| Error::validation(format!("gamma[{k}]"), e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            let gamma = Multipartition::new(comps)?;
            if gamma.level() != params.level() {
                return Err(Error::validation("gamma", format!("has {} components but the level is {}", gamma.level(), params.level())));
            }
            let mut multiset = BTreeMap::new();
            for (key, &count) in file.multiset.iter().flatten() {
                let r: i64 = key.trim().parse().map_err(|_| Error::validation(format!("multiset.{key}"), "key is not an integer residue"))?;
                *multiset.entry(params.reduce(r)).or_insert(0) += count;
            }
            let residues: BTreeSet<Residue> = match &file.residues {
                Some(rs) => rs.iter().map(|&r| params.reduce(r)).collect(),
                None => multiset.keys().copied().collect(),
            };
            if let Some(r) = multiset.keys().find(|r| !residues.contains(r)) {
                return Err(Error::validation(format!("multiset.{r}"), "residue is not in residues"));
            }
            Some(build_gamma_set(&gamma, &residues, &multiset, &params)?)
        }
    };
    Ok(LoadedContext { params, gamma, epsilon_display })
}

pub fn context_file(params: &ParamContext, gamma: Option<&GammaContext>) -> ContextFile {
    let e = match params.e() {
        QuantumChar::Finite(e) => Value::from(e),
        QuantumChar::Infinite => Value::from("infinity"),
    };
    ContextFile {
        e,
        multicharge: params.kappa().iter().map(|r| r.0).collect(),
        theta: params.theta().iter().map(format_rational).collect(),
        g: format_rational(params.g()),
        gamma: gamma.map(|gc| gc.gamma().clone().into()),
        residues: gamma.map(|gc| gc.residues().iter().map(|r| r.0).collect()),
        multiset: gamma.map(|gc| gc.multiset().iter().map(|(r, m)| (r.0.to_string(), *m)).collect()),
        epsilon_display: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Latex,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            _ => Err(Error::validation("format", format!("unknown format {s:?}"))),
        }
    }
}

/// A command result in every output shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Preformatted LaTeX; when absent the table is set as a tabular.
    pub latex: Option<String>,
    /// Preformatted text; when absent the table is aligned in columns.
    pub text: Option<String>,
}

impl Output {
    pub fn new(json: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Output { json, headers: headers.iter().map(|h| h.to_string()).collect(), rows, latex: None, text: None }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn with_latex(mut self, latex: String) -> Self {
        self.latex = Some(latex);
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).map(|s| s + "\n").map_err(|e| Error::Io(e.to_string())),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).map_err(|e| Error::Io(e.to_string()))?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| Error::Io(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
            }
            Format::Latex => Ok(self.latex.clone().unwrap_or_else(|| latex_table(&self.headers, &self.rows))),
            Format::Text => Ok(self.text.clone().unwrap_or_else(|| text_table(&self.headers, &self.rows))),
        }
    }
}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}").replace('&', "\\&").replace('%', "\\%").replace('_', "\\_").replace('#', "\\#")
}

fn latex_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut out = format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(headers.len().max(1)));
    let _ = writeln!(out, "{} \\\\ \\hline", headers.iter().map(|h| latex_escape(h)).collect::<Vec<_>>().join(" & "));
    for r in rows {
        let _ = writeln!(out, "{} \\\\", r.iter().map(|c| latex_escape(c)).collect::<Vec<_>>().join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn text_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let width = |j: usize| std::iter::once(&headers[j]).chain(rows.iter().filter_map(|r| r.get(j))).map(|c| c.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..headers.len()).map(width).collect();
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

/// The terrain as a mountain range of `/` and `\`, with the decoration and
/// 1-based edge numbers underneath.
pub fn render_ascii(terrain: &Terrain, decoration: Option<&DecoratedTerrain>) -> String {
    let steps = terrain.generic();
    let mut h = 0i64;
    let mut cells = Vec::with_capacity(steps.len());
    for &s in &steps {
        if s > 0 {
            cells.push((h, '/'));
            h += 1;
        } else {
            h -= 1;
            cells.push((h, '\\'));
        }
    }
    let top = cells.iter().map(|c| c.0).max().unwrap_or(0);
    let bottom = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let mut out = String::new();
    for level in (bottom..=top).rev() {
        let row: String = cells.iter().map(|&(l, ch)| if l == level { ch } else { ' ' }).collect();
        out.push_str(row.trim_end());
        out.push('\n');
    }
    if let Some(dt) = decoration {
        out.push_str(&dt.parenthesis_string());
        out.push('\n');
    }
    let numbers: String = (1..=steps.len()).map(|j| char::from_digit((j % 10) as u32, 10).unwrap()).collect();
    out.push_str(&numbers);
    out.push('\n');
    out
}

pub fn render_svg(terrain: &Terrain, decoration: Option<&DecoratedTerrain>) -> String {
    const U: i64 = 30;
    let steps = terrain.generic();
    let mut heights = vec![0i64];
    for &s in &steps {
        heights.push(heights.last().unwrap() + s as i64);
    }
    let top = *heights.iter().max().unwrap();
    let bottom = *heights.iter().min().unwrap();
    let width = (steps.len() as i64 + 2) * U;
    let height = (top - bottom + 3) * U;
    let y = |h: i64| (top - h + 1) * U;
    let mut out = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n");
    let points: Vec<String> = heights.iter().enumerate().map(|(j, &h)| format!("{},{}", (j as i64 + 1) * U, y(h))).collect();
    let _ = writeln!(out, "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"{}\"/>", points.join(" "));
    for (j, &h) in heights.iter().enumerate() {
        let _ = writeln!(out, "  <circle cx=\"{}\" cy=\"{}\" r=\"3\"/>", (j as i64 + 1) * U, y(h));
    }
    if let Some(dt) = decoration {
        for (j, ch) in dt.parenthesis_string().chars().enumerate() {
            if ch == '.' {
                continue;
            }
            let mid = (heights[j] + heights[j + 1]) as f64 / 2.0;
            let cx = (j as f64 + 1.5) * U as f64;
            let cy = (top as f64 - mid + 1.0) * U as f64 + U as f64 * 0.6;
            let _ = writeln!(out, "  <text x=\"{cx}\" y=\"{cy}\" font-size=\"16\" text-anchor=\"middle\">{ch}</text>");
        }
    }
    for (j, s) in terrain.steps.iter().enumerate() {
        let kind = if s.kind == StepKind::Up { "removable" } else { "addable" };
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\"><title>{kind} {}</title>{}</text>",
            (j as f64 + 1.5) * U as f64,
            height - U / 3,
            s.node,
            j + 1
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEVEL_ONE: &str = r#"{"e":5,"multicharge":[0],"theta":["0"],"g":"1","gamma":[[5,1,1,1,1]],"residues":[0],"multiset":{"0":1}}"#;

    #[test]
    fn minimal_level_one() {
        let lc = parse_context(LEVEL_ONE).unwrap();
        assert_eq!(lc.gamma_context().unwrap().len(), 3);
    }

    #[test]
    fn rejects_e_two() {
        let text = LEVEL_ONE.replace("\"e\":5", "\"e\":2");
        assert!(matches!(parse_context(&text), Err(Error::Validation { field, .. }) if field == "e"));
    }

    #[test]
    fn rejects_integer_multiple_of_g() {
        let text = r#"{"e":5,"multicharge":[0,0],"theta":["0","2"],"g":"1"}"#;
        match parse_context(text) {
            Err(Error::Validation { field, message }) => {
                assert_eq!(field, "theta[1]");
                assert!(message.contains("integer multiple of g"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn located_diagnostics() {
        let bad_theta = LEVEL_ONE.replace("\"theta\":[\"0\"]", "\"theta\":[\"x\"]");
        assert!(matches!(parse_context(&bad_theta), Err(Error::Validation { field, .. }) if field == "theta[0]"));
        let bad_gamma = LEVEL_ONE.replace("[[5,1,1,1,1]]", "[[1,2]]");
        assert!(matches!(parse_context(&bad_gamma), Err(Error::Validation { field, .. }) if field == "gamma[0]"));
        let bad_key = LEVEL_ONE.replace("{\"0\":1}", "{\"zero\":1}");
        assert!(matches!(parse_context(&bad_key), Err(Error::Validation { field, .. }) if field == "multiset.zero"));
        assert!(matches!(parse_context("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_context(&LEVEL_ONE.replace("\"g\"", "\"h\"")), Err(Error::Parse(_))));
    }

    #[test]
    fn context_round_trip() {
        let lc = parse_context(LEVEL_ONE).unwrap();
        let file = context_file(&lc.params, lc.gamma.as_ref());
        let again = load_context(&file).unwrap();
        assert_eq!(context_file(&again.params, again.gamma.as_ref()), file);
        assert_eq!(again.gamma.unwrap().elements(), lc.gamma.unwrap().elements());
    }

    #[test]
    fn formats() {
        let out = Output::new(serde_json::json!({"a": 1}), &["x", "y"], vec![vec!["1".into(), "t^2 + 1".into()]]);
        assert_eq!(out.render(Format::Csv).unwrap(), "x,y\n1,t^2 + 1\n");
        assert_eq!(out.render(Format::Text).unwrap(), "x  y\n1  t^2 + 1\n");
        assert!(out.render(Format::Latex).unwrap().contains("1 & t^2 + 1 \\\\"));
        assert_eq!(out.render(Format::Json).unwrap(), "{\n  \"a\": 1\n}\n");
    }
}
