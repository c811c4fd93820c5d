//! Complex input and output. The text format is one facet per line,
//! whitespace-separated positive integers, `#` starting a comment; the JSON
//! format is an object with an optional `name` and a `facets` array of
//! integer arrays. Export is canonical and byte-stable, so parse ∘ export
//! is the identity.

use std::collections::BTreeSet;

use serde::Deserialize;
use thiserror::Error;

use crate::complex::{Complex, Simplex, VertexId};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InputFormat {
    Text,
    Json,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("duplicate facet {0}")]
    DuplicateFacet(Simplex),
    #[error("facet {inner} is a face of facet {outer}")]
    NonMaximalFacet { inner: Simplex, outer: Simplex },
    #[error("input contains no facets")]
    EmptyInput,
}

pub fn parse_complex(
    source: &str,
    format: InputFormat,
) -> Result<(Option<String>, Complex), ParseError> {
    match format {
        InputFormat::Text => parse_text(source).map(|c| (None, c)),
        InputFormat::Json => parse_json(source),
    }
}

fn parse_text(source: &str) -> Result<Complex, ParseError> {
    let mut facets = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut vertices = Vec::new();
        for token in content.split_whitespace() {
            let value: u32 = token.parse().map_err(|_| ParseError::Syntax {
                line,
                message: format!("`{token}` is not a positive integer"),
            })?;
            if value == 0 {
                return Err(ParseError::Syntax {
                    line,
                    message: "vertex labels must be positive".to_string(),
                });
            }
            vertices.push(VertexId(value));
        }
        let facet = Simplex::new(vertices).map_err(|e| ParseError::Syntax {
            line,
            message: e.to_string(),
        })?;
        facets.push(facet);
    }
    build_complex(facets)
}

#[derive(Deserialize)]
struct JsonComplex {
    #[serde(default)]
    name: Option<String>,
    facets: Vec<Vec<u32>>,
}

fn parse_json(source: &str) -> Result<(Option<String>, Complex), ParseError> {
    let raw: JsonComplex =
        serde_json::from_str(source).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut facets = Vec::new();
    for (idx, vs) in raw.facets.iter().enumerate() {
        if vs.iter().any(|&v| v == 0) {
            return Err(ParseError::Json(format!(
                "facet {idx}: vertex labels must be positive"
            )));
        }
        let facet = Simplex::new(vs.iter().map(|&v| VertexId(v)).collect())
            .map_err(|e| ParseError::Json(format!("facet {idx}: {e}")))?;
        facets.push(facet);
    }
    build_complex(facets).map(|c| (raw.name, c))
}

fn build_complex(facets: Vec<Simplex>) -> Result<Complex, ParseError> {
    if facets.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let mut seen: BTreeSet<&Simplex> = BTreeSet::new();
    for f in &facets {
        if !seen.insert(f) {
            return Err(ParseError::DuplicateFacet(f.clone()));
        }
    }
    for a in &facets {
        for b in &facets {
            if a != b && a.is_face_of(b) {
                return Err(ParseError::NonMaximalFacet {
                    inner: a.clone(),
                    outer: b.clone(),
                });
            }
        }
    }
    Ok(Complex::from_maximal(facets))
}

/// One facet per line, canonical order, trailing newline.
pub fn export_text(c: &Complex) -> String {
    let mut out = String::new();
    for f in c.facets() {
        let line: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Canonical JSON with a `name` and sorted `facets`, trailing newline.
pub fn export_json(name: Option<&str>, c: &Complex) -> String {
    let facets: Vec<Vec<u32>> = c
        .facets()
        .map(|f| f.vertices().iter().map(|v| v.0).collect())
        .collect();
    let value = match name {
        Some(name) => serde_json::json!({ "name": name, "facets": facets }),
        None => serde_json::json!({ "facets": facets }),
    };
    let mut out = serde_json::to_string_pretty(&value).expect("serializable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex;

    #[test]
    fn parses_two_facets_with_comments() {
        let (_, c) = parse_complex("# a comment\n1 2 3 4\n2 3 4 5  # trailing\n\n", InputFormat::Text)
            .unwrap();
        assert_eq!(c, complex(&[&[1, 2, 3, 4], &[2, 3, 4, 5]]));
    }

    #[test]
    fn rejects_non_maximal_and_duplicate_facets() {
        assert!(matches!(
            parse_complex("1 2 3 4\n1 2 3\n", InputFormat::Text),
            Err(ParseError::NonMaximalFacet { .. })
        ));
        assert!(matches!(
            parse_complex("1 2 3\n3 2 1\n", InputFormat::Text),
            Err(ParseError::DuplicateFacet(_))
        ));
    }

    #[test]
    fn rejects_bad_tokens_and_empty_input() {
        assert!(matches!(
            parse_complex("1 2 x\n", InputFormat::Text),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_complex("1 0 2\n", InputFormat::Text),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_complex("1 2 2\n", InputFormat::Text),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert_eq!(
            parse_complex("# nothing\n", InputFormat::Text),
            Err(ParseError::EmptyInput)
        );
    }

    #[test]
    fn json_roundtrip_with_name() {
        let c = complex(&[&[1, 2, 3, 4], &[2, 3, 4, 5]]);
        let exported = export_json(Some("pair"), &c);
        let (name, parsed) = parse_complex(&exported, InputFormat::Json).unwrap();
        assert_eq!(name.as_deref(), Some("pair"));
        assert_eq!(parsed, c);
    }

    #[test]
    fn text_roundtrip() {
        let c = complex(&[&[2, 3, 4, 5], &[1, 2, 3, 4]]);
        let exported = export_text(&c);
        let (_, parsed) = parse_complex(&exported, InputFormat::Text).unwrap();
        assert_eq!(parsed, c);
        assert_eq!(export_text(&parsed), exported);
    }
}
