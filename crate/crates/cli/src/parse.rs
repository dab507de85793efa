//! Text formats for ideals and Betti tables.
//!
//! Ideal files start with `ring <n>` followed by one monomial per line, such
//! as `x1^2*x3`. Table files start with `betti <n>` followed by `i j value`
//! lines. In both, `#` starts a comment and blank lines are skipped.

use std::collections::BTreeSet;
use std::fmt::Write;

use bettibound::{GradedBettiTable, Monomial, MonomialIdeal};

use crate::CliError;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, line)| (k + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty())
}

fn err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("line {line}: {msg}"))
}

fn header(text: &str, keyword: &str) -> Result<(usize, usize), CliError> {
    let Some((line, first)) = content_lines(text).next() else {
        return Err(CliError::Parse(format!("missing `{keyword} <n>` header")));
    };
    let mut words = first.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(err(line, format_args!("expected `{keyword} <n>`")));
    }
    let n = words
        .next()
        .and_then(|w| w.parse::<usize>().ok())
        .filter(|n| *n >= 1)
        .ok_or_else(|| err(line, "expected a positive variable count"))?;
    if words.next().is_some() {
        return Err(err(line, "trailing text after header"));
    }
    Ok((line, n))
}

fn parse_number<T: std::str::FromStr>(s: &str) -> Option<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `x<idx>(^<exp>)?(*x<idx>(^<exp>)?)*` in `n` variables.
pub fn parse_monomial(s: &str, n: usize) -> Result<Monomial, String> {
    let mut exponents = vec![0u32; n];
    for term in s.split('*') {
        let term = term.trim();
        let body = term
            .strip_prefix('x')
            .ok_or_else(|| format!("bad term `{term}`"))?;
        let (idx, exp) = match body.split_once('^') {
            Some((idx, exp)) => (idx, Some(exp)),
            None => (body, None),
        };
        let idx: usize = parse_number(idx).ok_or_else(|| format!("bad variable in `{term}`"))?;
        if idx == 0 || idx > n {
            return Err(format!("variable x{idx} outside x1..x{n}"));
        }
        let exp: u32 = match exp {
            Some(e) => parse_number(e)
                .filter(|e| *e >= 1)
                .ok_or_else(|| format!("bad exponent in `{term}`"))?,
            None => 1,
        };
        exponents[idx - 1] = exponents[idx - 1]
            .checked_add(exp)
            .ok_or_else(|| format!("exponent overflow in `{s}`"))?;
    }
    Ok(Monomial::new(exponents))
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal, CliError> {
    let (header_line, n) = header(text, "ring")?;
    let mut gens = Vec::new();
    for (line, body) in content_lines(text).filter(|(l, _)| *l != header_line) {
        gens.push(parse_monomial(body, n).map_err(|m| err(line, m))?);
    }
    MonomialIdeal::minimalize(gens, n).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn parse_betti(text: &str) -> Result<GradedBettiTable, CliError> {
    let (header_line, n) = header(text, "betti")?;
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for (line, body) in content_lines(text).filter(|(l, _)| *l != header_line) {
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [i, j, v] = fields[..] else {
            return Err(err(line, "expected `i j value`"));
        };
        let (Some(i), Some(j), Some(v)) = (
            parse_number::<usize>(i),
            parse_number::<u32>(j),
            parse_number::<u64>(v),
        ) else {
            return Err(err(line, "entries must be nonnegative integers"));
        };
        if v == 0 {
            return Err(err(line, "values must be at least 1"));
        }
        if !seen.insert((i, j)) {
            return Err(err(line, format_args!("duplicate entry ({i}, {j})")));
        }
        entries.push((i, j, v));
    }
    if !seen.contains(&(0, 0)) {
        return Err(CliError::Parse("missing mandatory entry `0 0 1`".into()));
    }
    GradedBettiTable::new(n, entries).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn write_betti(table: &GradedBettiTable) -> String {
    let mut out = format!("betti {}\n", table.n());
    for (i, j, v) in table.entries() {
        writeln!(out, "{i} {j} {v}").unwrap();
    }
    out
}
