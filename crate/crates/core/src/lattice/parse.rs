//! Cover-list lattice documents.
//!
//! ```text
//! # divisors of 12
//! elements: 1 2 3 4 6 12
//! cover: 1 2
//! cover: 1 3
//! ...
//! ```
//!
//! The same content is accepted as JSON: `{"elements": [...], "covers": [[u, v], ...]}`.

use serde::{Deserialize, Serialize};

use super::{Lattice, LatticeError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

fn parse_error(line: usize, message: impl Into<String>) -> LatticeError {
    LatticeError::Parse {
        line,
        message: message.into(),
    }
}

impl LatticeDocument {
    pub fn from_text(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()));
        }
        let mut elements: Option<Vec<String>> = None;
        let mut covers = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| {
                parse_error(line_no, format!("expected `key: value`, got {line:?}"))
            })?;
            let fields: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            match key.trim() {
                "elements" => {
                    if elements.is_some() {
                        return Err(parse_error(line_no, "duplicate `elements` line"));
                    }
                    elements = Some(fields);
                }
                "cover" => {
                    if fields.len() != 2 {
                        return Err(parse_error(
                            line_no,
                            format!("`cover` takes two elements, got {}", fields.len()),
                        ));
                    }
                    let mut it = fields.into_iter();
                    covers.push((it.next().unwrap(), it.next().unwrap()));
                }
                other => return Err(parse_error(line_no, format!("unknown key {other:?}"))),
            }
        }
        let elements = elements.ok_or_else(|| parse_error(0, "missing `elements` line"))?;
        Ok(LatticeDocument { elements, covers })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("elements: {}\n", self.elements.join(" "));
        for (u, v) in &self.covers {
            out.push_str(&format!("cover: {u} {v}\n"));
        }
        out
    }

    pub fn into_lattice(self) -> Result<Lattice> {
        Lattice::from_covers(self.elements, &self.covers)
    }
}

/// Parses a text or JSON lattice document and validates the lattice.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    LatticeDocument::from_text(text)?.into_lattice()
}

impl Lattice {
    pub fn to_document(&self) -> LatticeDocument {
        LatticeDocument {
            elements: self.labels().to_vec(),
            covers: self
                .poset()
                .cover_pairs()
                .into_iter()
                .map(|(u, v)| (self.label(u).to_string(), self.label(v).to_string()))
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_document().to_text()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D12: &str = "# divisors of 12\nelements: 1 2 3 4 6 12\n\
        cover: 1 2\ncover: 1 3\ncover: 2 4\ncover: 2 6\ncover: 3 6\ncover: 4 12\ncover: 6 12\n";

    #[test]
    fn parses_text_and_json_alike() {
        let a = parse_lattice(D12).unwrap();
        let json = r#"{"elements":["1","2","3","4","6","12"],
            "covers":[["1","2"],["1","3"],["2","4"],["2","6"],["3","6"],["4","12"],["6","12"]]}"#;
        let b = parse_lattice(json).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_lattice(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn transitive_edges_are_tolerated() {
        let l = parse_lattice("elements: 0 a 1\ncover: 0 a\ncover: a 1\ncover: 0 1\n").unwrap();
        assert_eq!(l.to_document().covers.len(), 2);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_lattice("elements: 0 1\ncover: 0\n").unwrap_err();
        assert_eq!(
            err,
            LatticeError::Parse {
                line: 2,
                message: "`cover` takes two elements, got 1".into()
            }
        );
        assert!(matches!(
            parse_lattice("cover: 0 1\n"),
            Err(LatticeError::Parse { line: 0, .. })
        ));
        assert!(matches!(
            parse_lattice("elements: 0 1\nedge: 0 1\n"),
            Err(LatticeError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_lattice("{not json"),
            Err(LatticeError::Parse { .. })
        ));
    }

    #[test]
    fn inline_comments() {
        let l = parse_lattice("elements: 0 1 # two\ncover: 0 1 # only cover\n").unwrap();
        assert_eq!(l.len(), 2);
    }
}
