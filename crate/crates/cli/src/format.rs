//! The `.hyp` text format and its JSON equivalent.
//!
//! ```text
//! # comments run to end of line
//! name: krasner
//! elements: 0 1
//! row 0: {0} {1}
//! row 1: {1} {0, 1}
//! ```

use std::collections::HashSet;
use std::path::Path;

use hyperkernel::{fixtures, ElementSet, HyperTable};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("line {line}: empty cell in row `{row}`, column {col}")]
    EmptyCell { line: usize, row: String, col: usize },
    #[error("line {line}, column {column}: unknown label `{label}`")]
    UnknownLabel {
        line: usize,
        column: usize,
        label: String,
    },
    #[error("invalid table: {0}")]
    Table(#[from] hyperkernel::Error),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("`{0}` is neither a file nor a built-in fixture")]
    UnknownSource(String),
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A parsed document: the table plus its optional name.
#[derive(Debug, Clone, PartialEq)]
pub struct HypFile {
    pub name: Option<String>,
    pub table: HyperTable,
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || "{},#:".contains(c))
}

pub fn parse_hyp(text: &str) -> Result<HyperTable, FormatError> {
    parse_hyp_file(text).map(|f| f.table)
}

pub fn parse_hyp_file(text: &str) -> Result<HypFile, FormatError> {
    let mut name = None;
    let mut elements: Option<(usize, Vec<String>)> = None;
    let mut rows: Vec<(usize, usize, String, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        let Some((key, rest)) = body.split_once(':') else {
            return Err(parse_err(line, indent + 1, "expected `key: value`"));
        };
        let rest_col = indent + key.len() + 2;
        match key.trim() {
            "name" => name = Some(rest.trim().to_string()),
            "elements" => {
                if elements.is_some() {
                    return Err(parse_err(line, indent + 1, "second `elements:` header"));
                }
                let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if labels.is_empty() {
                    return Err(parse_err(line, rest_col, "no elements listed"));
                }
                let mut seen = HashSet::new();
                for l in &labels {
                    if !valid_label(l) {
                        return Err(parse_err(line, rest_col, format!("invalid label `{l}`")));
                    }
                    if !seen.insert(l.as_str()) {
                        return Err(FormatError::DuplicateLabel(l.clone()));
                    }
                }
                elements = Some((line, labels));
            }
            k if k.starts_with("row ") => {
                let label = k["row ".len()..].trim().to_string();
                rows.push((line, rest_col, label, rest));
            }
            other => {
                return Err(parse_err(line, indent + 1, format!("unknown key `{other}`")));
            }
        }
    }
    let Some((_, labels)) = elements else {
        return Err(parse_err(1, 1, "missing `elements:` header"));
    };
    let n = labels.len();
    let index = |l: &str| labels.iter().position(|x| x == l);
    let mut cells: Vec<Option<ElementSet>> = vec![None; n * n];
    let mut row_seen = vec![false; n];
    for (line, col, label, rest) in rows {
        let r = index(&label).ok_or_else(|| FormatError::UnknownLabel {
            line,
            column: 5,
            label: label.clone(),
        })?;
        if std::mem::replace(&mut row_seen[r], true) {
            return Err(parse_err(line, 1, format!("second row for `{label}`")));
        }
        let parsed = parse_cells(rest, line, col, &label, &index)?;
        if parsed.len() != n {
            return Err(parse_err(
                line,
                col,
                format!("row `{label}` has {} cells, expected {n}", parsed.len()),
            ));
        }
        for (c, s) in parsed.into_iter().enumerate() {
            cells[r * n + c] = Some(s);
        }
    }
    if let Some(missing) = row_seen.iter().position(|&s| !s) {
        return Err(parse_err(
            text.lines().count().max(1),
            1,
            format!("missing row for `{}`", labels[missing]),
        ));
    }
    let table = HyperTable::new(labels, cells.into_iter().map(Option::unwrap).collect())?;
    Ok(HypFile { name, table })
}

fn parse_cells(
    rest: &str,
    line: usize,
    col0: usize,
    row: &str,
    index: &dyn Fn(&str) -> Option<usize>,
) -> Result<Vec<ElementSet>, FormatError> {
    let mut out = Vec::new();
    let mut chars = rest.char_indices().peekable();
    let col = |byte: usize| col0 + rest[..byte].chars().count();
    while let Some((i, ch)) = chars.next() {
        if ch.is_whitespace() {
            continue;
        }
        if ch != '{' {
            return Err(parse_err(line, col(i), format!("expected `{{`, found `{ch}`")));
        }
        let start = i + 1;
        let end = loop {
            match chars.next() {
                Some((j, '}')) => break j,
                Some((j, '{')) => return Err(parse_err(line, col(j), "nested `{`")),
                Some(_) => {}
                None => return Err(parse_err(line, col(i), "unclosed `{`")),
            }
        };
        let inner = &rest[start..end];
        let mut set = ElementSet::EMPTY;
        let mut offset = start;
        for part in inner.split(',') {
            let label = part.trim();
            if !label.is_empty() {
                let at = offset + (part.len() - part.trim_start().len());
                let x = index(label).ok_or_else(|| FormatError::UnknownLabel {
                    line,
                    column: col(at),
                    label: label.to_string(),
                })?;
                set.insert(x);
            } else if inner.trim().is_empty() {
                return Err(FormatError::EmptyCell {
                    line,
                    row: row.to_string(),
                    col: out.len(),
                });
            } else {
                return Err(parse_err(line, col(offset), "empty label in cell"));
            }
            offset += part.len() + 1;
        }
        out.push(set);
    }
    Ok(out)
}

/// Writes the `.hyp` text form; [`parse_hyp_file`] reads it back unchanged.
pub fn emit_hyp(file: &HypFile) -> String {
    let h = &file.table;
    let mut out = String::new();
    if let Some(name) = &file.name {
        out.push_str(&format!("name: {name}\n"));
    }
    out.push_str(&format!("elements: {}\n", h.names().join(" ")));
    for x in 0..h.n() {
        let cells: Vec<String> = (0..h.n())
            .map(|y| format!("{{{}}}", h.labels_of(h.cell(x, y)).join(", ")))
            .collect();
        out.push_str(&format!("row {}: {}\n", h.name(x), cells.join(" ")));
    }
    out
}

pub fn to_json(file: &HypFile) -> Value {
    let h = &file.table;
    let table: Vec<Vec<Vec<&str>>> = (0..h.n())
        .map(|x| (0..h.n()).map(|y| h.labels_of(h.cell(x, y))).collect())
        .collect();
    let mut v = json!({ "elements": h.names(), "table": table });
    if let Some(name) = &file.name {
        v["name"] = json!(name);
    }
    v
}

pub fn parse_json(text: &str) -> Result<HypFile, FormatError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    let bad = |m: &str| parse_err(1, 1, m.to_string());
    let name = v.get("name").and_then(Value::as_str).map(str::to_string);
    let labels: Vec<String> = v
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `elements` array"))?
        .iter()
        .map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("labels must be strings")))
        .collect::<Result<_, _>>()?;
    let mut seen = HashSet::new();
    for l in &labels {
        if !seen.insert(l.as_str()) {
            return Err(FormatError::DuplicateLabel(l.clone()));
        }
    }
    let rows = v
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `table` array"))?;
    let n = labels.len();
    if rows.len() != n {
        return Err(bad("table must have one row per element"));
    }
    let mut cells = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|a| a.len() == n).ok_or_else(|| bad("row of wrong length"))?;
        for (c, cell) in row.iter().enumerate() {
            let members = cell.as_array().ok_or_else(|| bad("cells must be arrays"))?;
            if members.is_empty() {
                return Err(FormatError::EmptyCell {
                    line: 1,
                    row: labels[r].clone(),
                    col: c,
                });
            }
            let mut set = ElementSet::EMPTY;
            for m in members {
                let label = m.as_str().ok_or_else(|| bad("labels must be strings"))?;
                let x = labels.iter().position(|l| l == label).ok_or_else(|| {
                    FormatError::UnknownLabel {
                        line: 1,
                        column: 1,
                        label: label.to_string(),
                    }
                })?;
                set.insert(x);
            }
            cells.push(set);
        }
    }
    Ok(HypFile {
        name,
        table: HyperTable::new(labels, cells)?,
    })
}

/// Resolves a command-line source: an existing file (`.json` or `.hyp`
/// text), otherwise a built-in fixture name.
pub fn load(source: &str) -> Result<HypFile, FormatError> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
            path: source.to_string(),
            message: e.to_string(),
        })?;
        return if path.extension().is_some_and(|e| e == "json") {
            parse_json(&text)
        } else {
            parse_hyp_file(&text)
        };
    }
    fixtures::by_name(source)
        .map(|table| HypFile {
            name: Some(source.to_string()),
            table,
        })
        .ok_or_else(|| FormatError::UnknownSource(source.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_file() {
        let h = parse_hyp("elements: e\nrow e: {e}\n").unwrap();
        assert_eq!(h.n(), 1);
        assert!(h.is_hypergroup());
    }

    #[test]
    fn comments_names_and_row_order() {
        let text = "# Krasner\nname: k\nelements: 0 1\nrow 1: {1} {0,1}  # last\nrow 0: {0} {1}\n";
        let f = parse_hyp_file(text).unwrap();
        assert_eq!(f.name.as_deref(), Some("k"));
        assert_eq!(f.table, fixtures::krasner());
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_hyp("elements: e\nrow e: {}\n"),
            Err(FormatError::EmptyCell {
                line: 2,
                row: "e".into(),
                col: 0
            })
        );
        assert_eq!(
            parse_hyp("elements: e e\n"),
            Err(FormatError::DuplicateLabel("e".into()))
        );
        assert_eq!(
            parse_hyp("elements: e\nrow e: {f}\n"),
            Err(FormatError::UnknownLabel {
                line: 2,
                column: 9,
                label: "f".into()
            })
        );
        assert!(matches!(
            parse_hyp("elements: e\nrow e: e\n"),
            Err(FormatError::Parse { line: 2, column: 8, .. })
        ));
        assert!(matches!(parse_hyp("row e: {e}\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(
            parse_hyp("elements: a b\nrow a: {a} {b}\n"),
            Err(FormatError::Parse { .. })
        ));
    }

    #[test]
    fn round_trips() {
        for (name, table) in fixtures::corpus() {
            let f = HypFile {
                name: Some(name),
                table,
            };
            assert_eq!(parse_hyp_file(&emit_hyp(&f)).unwrap(), f);
            assert_eq!(parse_json(&to_json(&f).to_string()).unwrap(), f);
        }
    }

    #[test]
    fn fixture_sources() {
        assert_eq!(load("h9").unwrap().table, fixtures::h9());
        assert!(matches!(load("no-such-thing"), Err(FormatError::UnknownSource(_))));
    }
}
