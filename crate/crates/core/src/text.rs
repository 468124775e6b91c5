//! Plain-text ideal format.
//!
//! ```text
//! # comment
//! vars: x1 x2 x3
//! x1^2 x2
//! x2 x3
//! ```
//!
//! One monomial per line, factors separated by whitespace, `name^e` for
//! exponents, `1` for the unit monomial. Serialization writes the minimal
//! generators in canonical order.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

/// Parses an ideal file. Generators are minimalized.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let (vars, list) = parse_monomial_list(text)?;
    MonomialIdeal::new(vars, list)
}

/// Parses a file in the ideal format but keeps the listed monomials in file
/// order, without minimalizing. Used for ordering files.
pub fn parse_monomial_list(text: &str) -> Result<(Arc<VariableSet>, Vec<Monomial>)> {
    let mut vars: Option<Arc<VariableSet>> = None;
    let mut list = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        match &vars {
            None => vars = Some(Arc::new(parse_header(line, line_no)?)),
            Some(v) => list.push(parse_monomial_at(line, v, line_no)?),
        }
    }
    let vars = vars.ok_or_else(|| Error::parse(1, 1, "missing `vars:` header"))?;
    Ok((vars, list))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<VariableSet> {
    let trimmed = line.trim_start();
    let offset = line.len() - trimmed.len();
    let rest = trimmed
        .strip_prefix("vars:")
        .ok_or_else(|| Error::parse(line_no, offset + 1, "expected `vars:` header"))?;
    let names: Vec<&str> = rest.split_whitespace().collect();
    if names.is_empty() {
        return Err(Error::parse(line_no, offset + 6, "header lists no variables"));
    }
    VariableSet::new(names.iter().copied()).map_err(|e| match e {
        Error::InvalidSpec(msg) => Error::parse(line_no, offset + 1, msg),
        other => other,
    })
}

/// Parses a single monomial such as `x1^2 x3` against `vars`.
pub fn parse_monomial(text: &str, vars: &VariableSet) -> Result<Monomial> {
    parse_monomial_at(text, vars, 1)
}

fn parse_monomial_at(line: &str, vars: &VariableSet, line_no: usize) -> Result<Monomial> {
    let mut exps = vec![0u32; vars.len()];
    let tokens = tokens_with_columns(line);
    if tokens.len() == 1 && tokens[0].1 == "1" {
        return Ok(Monomial::new(exps));
    }
    for (col, tok) in tokens {
        let (name, exp) = match tok.split_once('^') {
            Some((name, e)) => {
                let e: u32 = e.parse().map_err(|_| {
                    Error::parse(line_no, col + name.len() + 1, format!("bad exponent `{e}`"))
                })?;
                (name, e)
            }
            None => (tok, 1),
        };
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::parse(line_no, col, format!("unknown variable `{name}`")))?;
        exps[idx] = exps[idx]
            .checked_add(exp)
            .ok_or_else(|| Error::parse(line_no, col, "exponent overflow"))?;
    }
    Ok(Monomial::new(exps))
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn write_header(vars: &VariableSet) -> String {
    format!("vars: {}\n", vars.names().join(" "))
}

/// Serializes an ideal: header line, then one generator per line.
pub fn write_ideal(ideal: &MonomialIdeal) -> String {
    write_monomial_list(ideal.vars(), ideal.gens())
}

/// Serializes a list of monomials in the given order.
pub fn write_monomial_list(vars: &VariableSet, list: &[Monomial]) -> String {
    let mut out = write_header(vars);
    for g in list {
        let _ = writeln!(out, "{}", g.display(vars));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let text = "# an ideal\nvars: x1 x2 x3\n\nx1^2 x2  # first\nx2 x3\nx1^2 x2 x3\n";
        let i = parse_ideal(text).unwrap();
        assert_eq!(i.num_gens(), 2);
        assert_eq!(write_ideal(&i), "vars: x1 x2 x3\nx2 x3\nx1^2 x2\n");
    }

    #[test]
    fn canonical_text_round_trips_exactly() {
        let text = "vars: a b c d e f\na^6\na^5 b\na b^5\nb^6\na^4 b^4 c\na^4 b^4 d\na^4 e^2 f^3\nb^4 e^3 f^2\n";
        assert_eq!(write_ideal(&parse_ideal(text).unwrap()), text);
    }

    #[test]
    fn unit_and_zero() {
        let i = parse_ideal("vars: x y\n1\n").unwrap();
        assert!(i.is_unit());
        let z = parse_ideal("vars: x y\n").unwrap();
        assert!(z.is_zero());
        assert_eq!(write_ideal(&z), "vars: x y\n");
    }

    #[test]
    fn errors_report_line_and_column() {
        assert_eq!(
            parse_ideal("vars: x y\nx z\n"),
            Err(Error::parse(2, 3, "unknown variable `z`"))
        );
        assert!(matches!(
            parse_ideal("vars: x y\nx^q\n"),
            Err(Error::Parse { line: 2, column: 3, .. })
        ));
        assert!(matches!(parse_ideal("x y\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_ideal("vars: x x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn monomial_list_keeps_order() {
        let (_, list) = parse_monomial_list("vars: x y\ny\nx\nx y\n").unwrap();
        assert_eq!(list.len(), 3);
        assert_eq!(list[0].exponents(), &[0, 1]);
    }
}
