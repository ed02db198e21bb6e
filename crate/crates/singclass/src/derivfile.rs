//! Text format for derivations.
//!
//! ```text
//! # the A_2 derivation on uv = w^3
//! u -> 0
//! w -> u
//! v -> 3*w^2
//! ```
//!
//! One `var -> expression` line per ring variable, in ring order. Blank lines
//! and `#` comments are skipped. Error offsets are bytes into the whole file.

use singclass_core::exactmath::Vars;
use singclass_core::lnd::Derivation;

use crate::parse::{common_field, parse_expr, ParseError};

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "sqrt"
}

pub fn parse_derivation(text: &str) -> Result<Derivation, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut rhs = Vec::new();
    let mut line_start = 0;
    for raw in text.split_inclusive('\n') {
        let start = line_start;
        line_start += raw.len();
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(arrow) = line.find("->") else {
            return Err(ParseError {
                offset: start,
                message: "expected `var -> expression`".into(),
            });
        };
        let name = line[..arrow].trim();
        if !is_name(name) {
            return Err(ParseError {
                offset: start,
                message: format!("bad variable name {name:?}"),
            });
        }
        if names.iter().any(|n| n == name) {
            return Err(ParseError {
                offset: start,
                message: format!("variable {name:?} given twice"),
            });
        }
        names.push(name.to_string());
        let body_at = start + arrow + 2;
        let parsed = parse_expr(&line[arrow + 2..]).map_err(|e| e.shifted(body_at))?;
        rhs.push((body_at, parsed));
    }
    if names.is_empty() {
        return Err(ParseError {
            offset: 0,
            message: "no derivation lines".into(),
        });
    }
    let ring: Vars = names.into_iter().collect();
    let field = common_field(rhs.iter().map(|(_, p)| p.field))?;
    let images = rhs
        .iter()
        .map(|(at, p)| p.to_poly(field, &ring).map_err(|e| e.shifted(*at)))
        .collect::<Result<Vec<_>, _>>()?;
    Derivation::new(field, ring, images).map_err(|e| ParseError {
        offset: 0,
        message: e.to_string(),
    })
}
