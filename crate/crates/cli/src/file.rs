//! Hand-rolled parser for structure files.
//!
//! The format is line-oriented: `key: value` entries, `#` comments, blank
//! lines ignored.  Every diagnostic carries a 1-based line and column.
//! Rationals are exact literals like `3/2` or `-1`; polynomials are sums
//! of terms joined by `+`, each term a product of rational literals and
//! coordinate powers (`1/2*x^3 + -1/2*x`).  A function may be a quotient
//! of two polynomials separated by a spaced `/`.  Floating-point literals
//! are rejected outright.

use std::fmt;

use nambu_core::chart::Chart;
use nambu_core::group::{doubled_chart, ChartGroup};
use nambu_core::liealg::LieAlgebra;
use nambu_core::matrix::Matrix;
use nambu_core::multivector::MultiVector;
use nambu_core::poly::{Poly, VarSet};
use nambu_core::rat::{gauss, GaussRat, Rat};
use nambu_core::ratfunc::RatFunc;
use num::bigint::BigInt;
use num::{One, Zero};

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col, message: message.into() }
}

#[derive(Debug)]
pub enum Payload {
    Tensor { tensor: MultiVector },
    Algebra { algebra: LieAlgebra },
    Linear { algebra: LieAlgebra, tensor: MultiVector },
    Group { group: ChartGroup, tensor: MultiVector },
    MatrixTensor { size: usize, samples: Option<usize>, factors: Vec<Matrix<GaussRat>> },
}

#[derive(Debug)]
pub struct StructureFile {
    pub kind_name: String,
    pub name: Option<String>,
    pub seed: Option<u64>,
    pub payload: Payload,
}

// ---------------------------------------------------------------------
// Line splitting
// ---------------------------------------------------------------------

struct Entry {
    line: usize,
    key: String,
    key_col: usize,
    value: String,
    value_col: usize,
}

fn split_entries(text: &str) -> Result<Vec<Entry>, ParseError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        let key_col = body.len() - body.trim_start().len() + 1;
        let Some(colon) = body.find(':') else {
            return Err(err(line, key_col, "expected `key: value`"));
        };
        let key = body[..colon].trim().to_string();
        if key.is_empty() {
            return Err(err(line, key_col, "missing key before `:`"));
        }
        let after = &body[colon + 1..];
        let trimmed = after.trim();
        let value_col = colon + 2 + (after.len() - after.trim_start().len());
        entries.push(Entry {
            line,
            key,
            key_col,
            value: trimmed.to_string(),
            value_col,
        });
    }
    Ok(entries)
}

// ---------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TokKind {
    Name,
    Number,
    Plus,
    Star,
    Caret,
    Slash,
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    text: String,
    col: usize,
}

fn tokenize(s: &str, line: usize, col0: usize) -> Result<Vec<Tok>, ParseError> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = col0 + i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'\'' {
                i += 1;
            }
            toks.push(Tok { kind: TokKind::Name, text: s[start..i].to_string(), col });
            continue;
        }
        if c.is_ascii_digit() || (c == '-' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit())
        {
            let start = i;
            if c == '-' {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                return Err(err(
                    line,
                    col0 + i,
                    "floating-point literals are not accepted; write exact rationals like 3/2",
                ));
            }
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                i += 2;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    return Err(err(
                        line,
                        col0 + i,
                        "floating-point literals are not accepted; write exact rationals like 3/2",
                    ));
                }
            }
            toks.push(Tok { kind: TokKind::Number, text: s[start..i].to_string(), col });
            continue;
        }
        let kind = match c {
            '+' => TokKind::Plus,
            '*' => TokKind::Star,
            '^' => TokKind::Caret,
            '/' => TokKind::Slash,
            '-' => {
                return Err(err(
                    line,
                    col,
                    "`-` may only begin a rational literal; write `+ -1*...` for negated terms",
                ))
            }
            '.' => {
                return Err(err(
                    line,
                    col,
                    "floating-point literals are not accepted; write exact rationals like 3/2",
                ))
            }
            other => return Err(err(line, col, format!("unexpected character `{other}`"))),
        };
        toks.push(Tok { kind, text: c.to_string(), col });
        i += 1;
    }
    Ok(toks)
}

fn parse_rat_text(text: &str, line: usize, col: usize) -> Result<Rat, ParseError> {
    let body = text.strip_prefix('+').unwrap_or(text);
    let (num_text, den_text) = match body.find('/') {
        Some(p) => (&body[..p], &body[p + 1..]),
        None => (body, "1"),
    };
    let num: BigInt = num_text
        .parse()
        .map_err(|_| err(line, col, format!("malformed rational literal `{text}`")))?;
    let den: BigInt = den_text
        .parse()
        .map_err(|_| err(line, col, format!("malformed rational literal `{text}`")))?;
    if den.is_zero() {
        return Err(err(line, col, "rational literal has a zero denominator"));
    }
    Ok(Rat::new(num, den))
}

// ---------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------

fn coordinate_index(chart: &Chart, name: &str) -> Option<usize> {
    (0..chart.dim()).find(|&i| chart.name(i) == name)
}

fn parse_function(
    chart: &Chart,
    value: &str,
    line: usize,
    value_col: usize,
) -> Result<RatFunc, ParseError> {
    let toks = tokenize(value, line, value_col)?;
    let slashes: Vec<usize> =
        toks.iter().enumerate().filter(|(_, t)| t.kind == TokKind::Slash).map(|(i, _)| i).collect();
    match slashes.as_slice() {
        [] => parse_poly(chart, &toks, line, value_col),
        [p] => {
            let num = parse_poly(chart, &toks[..*p], line, value_col)?;
            let den = parse_poly(chart, &toks[*p + 1..], line, toks[*p].col + 1)?;
            if den.is_zero() {
                return Err(err(line, toks[*p].col, "division by the zero polynomial"));
            }
            Ok(&num / &den)
        }
        more => Err(err(line, toks[more[1]].col, "at most one division per function")),
    }
}

fn parse_poly(
    chart: &Chart,
    toks: &[Tok],
    line: usize,
    start_col: usize,
) -> Result<RatFunc, ParseError> {
    if toks.is_empty() {
        return Err(err(line, start_col, "empty expression"));
    }
    let mut i = 0;
    let mut total = chart.constant(Rat::zero());
    loop {
        let term = parse_term(chart, toks, &mut i, line)?;
        total = &total + &term;
        if i == toks.len() {
            return Ok(total);
        }
        if toks[i].kind != TokKind::Plus {
            return Err(err(
                line,
                toks[i].col,
                format!("expected `+` or the end of the expression, found `{}`", toks[i].text),
            ));
        }
        i += 1;
        if i == toks.len() {
            return Err(err(line, toks[i - 1].col, "dangling `+`"));
        }
    }
}

fn parse_term(
    chart: &Chart,
    toks: &[Tok],
    i: &mut usize,
    line: usize,
) -> Result<RatFunc, ParseError> {
    let mut product = parse_factor(chart, toks, i, line)?;
    while *i < toks.len() && toks[*i].kind == TokKind::Star {
        *i += 1;
        if *i == toks.len() {
            return Err(err(line, toks[*i - 1].col, "dangling `*`"));
        }
        let f = parse_factor(chart, toks, i, line)?;
        product = &product * &f;
    }
    Ok(product)
}

fn parse_factor(
    chart: &Chart,
    toks: &[Tok],
    i: &mut usize,
    line: usize,
) -> Result<RatFunc, ParseError> {
    let tok = &toks[*i];
    match tok.kind {
        TokKind::Number => {
            *i += 1;
            Ok(chart.constant(parse_rat_text(&tok.text, line, tok.col)?))
        }
        TokKind::Name => {
            let idx = coordinate_index(chart, &tok.text)
                .ok_or_else(|| err(line, tok.col, format!("unknown coordinate `{}`", tok.text)))?;
            *i += 1;
            let base = chart.coordinate(idx);
            if *i < toks.len() && toks[*i].kind == TokKind::Caret {
                *i += 1;
                if *i == toks.len() || toks[*i].kind != TokKind::Number {
                    return Err(err(line, toks[*i - 1].col, "`^` needs an integer exponent"));
                }
                let etok = &toks[*i];
                let exp: u32 = etok.text.parse().map_err(|_| {
                    err(line, etok.col, "exponents must be non-negative integers")
                })?;
                *i += 1;
                let mut acc = chart.constant(Rat::one());
                for _ in 0..exp {
                    acc = &acc * &base;
                }
                return Ok(acc);
            }
            Ok(base)
        }
        _ => Err(err(
            line,
            tok.col,
            format!("expected a rational literal or a coordinate name, found `{}`", tok.text),
        )),
    }
}

/// Linear combination of basis names: `X4`, `-1*X2 + 1/2*X3`.
fn parse_lincomb(
    names: &[String],
    value: &str,
    line: usize,
    value_col: usize,
) -> Result<Vec<(usize, Rat)>, ParseError> {
    let toks = tokenize(value, line, value_col)?;
    if toks.is_empty() {
        return Err(err(line, value_col, "empty linear combination"));
    }
    let lookup = |t: &Tok| -> Result<usize, ParseError> {
        names
            .iter()
            .position(|n| n == &t.text)
            .ok_or_else(|| err(line, t.col, format!("unknown basis element `{}`", t.text)))
    };
    let mut parts: Vec<(usize, Rat)> = Vec::new();
    let mut i = 0;
    loop {
        let (idx, coeff) = match toks[i].kind {
            TokKind::Name => {
                let idx = lookup(&toks[i])?;
                i += 1;
                (idx, Rat::one())
            }
            TokKind::Number => {
                let c = parse_rat_text(&toks[i].text, line, toks[i].col)?;
                i += 1;
                if i + 1 >= toks.len()
                    || toks[i].kind != TokKind::Star
                    || toks[i + 1].kind != TokKind::Name
                {
                    return Err(err(
                        line,
                        toks[i - 1].col,
                        "a coefficient must be followed by `*` and a basis name",
                    ));
                }
                let idx = lookup(&toks[i + 1])?;
                i += 2;
                (idx, c)
            }
            _ => {
                return Err(err(
                    line,
                    toks[i].col,
                    format!("expected a term of the linear combination, found `{}`", toks[i].text),
                ))
            }
        };
        match parts.iter_mut().find(|(j, _)| *j == idx) {
            Some((_, c)) => *c += coeff,
            None => parts.push((idx, coeff)),
        }
        if i == toks.len() {
            break;
        }
        if toks[i].kind != TokKind::Plus {
            return Err(err(line, toks[i].col, "terms must be joined by `+`"));
        }
        i += 1;
        if i == toks.len() {
            return Err(err(line, toks[i - 1].col, "dangling `+`"));
        }
    }
    parts.retain(|(_, c)| !c.is_zero());
    Ok(parts)
}

/// Gaussian rational entry: `0`, `3/2`, `-1/2i`, `1/2+3/4i`, `1-i`.
fn parse_gauss_entry(text: &str, line: usize, col: usize) -> Result<GaussRat, ParseError> {
    if text.contains('.') {
        return Err(err(
            line,
            col,
            "floating-point literals are not accepted; write exact rationals like 3/2",
        ));
    }
    if let Some(body) = text.strip_suffix('i') {
        // Split a trailing rational off the real part: the only interior
        // sign of a well-formed entry follows a digit.
        let split = body
            .char_indices()
            .rev()
            .find(|(p, c)| {
                (*c == '+' || *c == '-')
                    && *p > 0
                    && body.as_bytes()[p - 1].is_ascii_digit()
            })
            .map(|(p, _)| p);
        let (re_text, im_text) = match split {
            Some(p) => (&body[..p], &body[p..]),
            None => ("0", body),
        };
        let im = match im_text {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            t => parse_rat_text(t, line, col)?,
        };
        let re = parse_rat_text(re_text, line, col)?;
        Ok(gauss(re, im))
    } else {
        Ok(gauss(parse_rat_text(text, line, col)?, Rat::zero()))
    }
}

// ---------------------------------------------------------------------
// Kind assembly
// ---------------------------------------------------------------------

fn parse_names(value: &str, line: usize, value_col: usize) -> Result<Vec<String>, ParseError> {
    let toks = tokenize(value, line, value_col)?;
    if toks.is_empty() {
        return Err(err(line, value_col, "expected at least one name"));
    }
    let mut names = Vec::new();
    for t in &toks {
        if t.kind != TokKind::Name {
            return Err(err(line, t.col, format!("expected a name, found `{}`", t.text)));
        }
        names.push(t.text.clone());
    }
    Ok(names)
}

fn parse_rat_list(value: &str, line: usize, value_col: usize) -> Result<Vec<Rat>, ParseError> {
    let toks = tokenize(value, line, value_col)?;
    if toks.is_empty() {
        return Err(err(line, value_col, "expected at least one rational"));
    }
    let mut out = Vec::new();
    for t in &toks {
        if t.kind != TokKind::Number {
            return Err(err(line, t.col, format!("expected a rational, found `{}`", t.text)));
        }
        out.push(parse_rat_text(&t.text, line, t.col)?);
    }
    Ok(out)
}

fn parse_seed(value: &str, line: usize, col: usize) -> Result<u64, ParseError> {
    let parsed = if let Some(hex) = value.strip_prefix("0x").or_else(|| value.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        value.parse()
    };
    parsed.map_err(|_| err(line, col, format!("malformed seed `{value}`")))
}

fn parse_usize(value: &str, line: usize, col: usize) -> Result<usize, ParseError> {
    value.parse().map_err(|_| err(line, col, format!("expected a positive integer, found `{value}`")))
}

/// The left half of a `component:` line: strictly increasing coordinate
/// names of the index tuple.
fn parse_index_tuple(
    chart: &Chart,
    value: &str,
    line: usize,
    value_col: usize,
    order: usize,
) -> Result<Vec<usize>, ParseError> {
    let names = parse_names(value, line, value_col)?;
    if names.len() != order {
        return Err(err(
            line,
            value_col,
            format!("index tuple has {} entries; the declared order is {order}", names.len()),
        ));
    }
    let mut idx = Vec::new();
    for n in &names {
        let Some(i) = coordinate_index(chart, n) else {
            return Err(err(line, value_col, format!("unknown coordinate `{n}`")));
        };
        idx.push(i);
    }
    if !idx.windows(2).all(|w| w[0] < w[1]) {
        return Err(err(
            line,
            value_col,
            "component indices must be strictly increasing in chart order",
        ));
    }
    Ok(idx)
}

struct ComponentLine {
    line: usize,
    value: String,
    value_col: usize,
}

fn split_component(entry: &Entry) -> Result<(ComponentLine, ComponentLine), ParseError> {
    let Some(eq) = entry.value.find('=') else {
        return Err(err(entry.line, entry.value_col, "expected `indices = expression`"));
    };
    let left = entry.value[..eq].trim_end().to_string();
    let right_raw = &entry.value[eq + 1..];
    let right = right_raw.trim_start().to_string();
    let right_col = entry.value_col + eq + 1 + (right_raw.len() - right_raw.trim_start().len());
    Ok((
        ComponentLine { line: entry.line, value: left, value_col: entry.value_col },
        ComponentLine { line: entry.line, value: right, value_col: right_col },
    ))
}

fn build_chart(
    names_entry: Option<&Entry>,
    nonzero_entry: Option<&Entry>,
    kind_line: usize,
) -> Result<Chart, ParseError> {
    let Some(e) = names_entry else {
        return Err(err(kind_line, 1, "missing `chart:` declaration"));
    };
    let names = parse_names(&e.value, e.line, e.value_col)?;
    let vs = VarSet::new(&names)
        .map_err(|ce| err(e.line, e.value_col, format!("bad chart: {ce}")))?;
    let mut nonzero = Vec::new();
    if let Some(nz) = nonzero_entry {
        for n in parse_names(&nz.value, nz.line, nz.value_col)? {
            let Some(i) = names.iter().position(|m| m == &n) else {
                return Err(err(nz.line, nz.value_col, format!("unknown coordinate `{n}`")));
            };
            nonzero.push(Poly::var(&vs, i));
        }
        Chart::with_nonzero(&names, nonzero)
            .map_err(|ce| err(nz.line, nz.value_col, format!("bad chart: {ce}")))
    } else {
        Chart::new(&names).map_err(|ce| err(e.line, e.value_col, format!("bad chart: {ce}")))
    }
}

fn build_tensor(
    chart: &Chart,
    order_entry: Option<&Entry>,
    component_entries: &[&Entry],
    kind_line: usize,
) -> Result<MultiVector, ParseError> {
    let Some(oe) = order_entry else {
        return Err(err(kind_line, 1, "missing `order:` declaration"));
    };
    let order = parse_usize(&oe.value, oe.line, oe.value_col)?;
    if order == 0 || order > chart.dim() {
        return Err(err(
            oe.line,
            oe.value_col,
            format!("order must lie between 1 and the chart dimension {}", chart.dim()),
        ));
    }
    if component_entries.is_empty() {
        return Err(err(kind_line, 1, "missing `component:` lines"));
    }
    let mut comps: Vec<(Vec<usize>, RatFunc)> = Vec::new();
    for e in component_entries {
        let (left, right) = split_component(e)?;
        let idx = parse_index_tuple(chart, &left.value, left.line, left.value_col, order)?;
        if comps.iter().any(|(seen, _)| *seen == idx) {
            return Err(err(e.line, e.value_col, "duplicate component tuple"));
        }
        let f = parse_function(chart, &right.value, right.line, right.value_col)?;
        comps.push((idx, f));
    }
    MultiVector::from_components(chart, order, comps)
        .map_err(|ce| err(kind_line, 1, format!("bad tensor: {ce}")))
}

fn build_algebra(
    basis_entry: Option<&Entry>,
    bracket_entries: &[&Entry],
    kind_line: usize,
) -> Result<(LieAlgebra, Vec<String>), ParseError> {
    let Some(be) = basis_entry else {
        return Err(err(kind_line, 1, "missing `basis:` declaration"));
    };
    let names = parse_names(&be.value, be.line, be.value_col)?;
    let mut entries: Vec<(usize, usize, Vec<(usize, Rat)>)> = Vec::new();
    for e in bracket_entries {
        let (left, right) = split_component(e)?;
        let pair = parse_names(&left.value, left.line, left.value_col)?;
        if pair.len() != 2 {
            return Err(err(e.line, e.value_col, "a bracket takes exactly two basis names"));
        }
        let find = |n: &str| names.iter().position(|m| m == n);
        let Some(i) = find(&pair[0]) else {
            return Err(err(e.line, e.value_col, format!("unknown basis element `{}`", pair[0])));
        };
        let Some(j) = find(&pair[1]) else {
            return Err(err(e.line, e.value_col, format!("unknown basis element `{}`", pair[1])));
        };
        if i == j {
            return Err(err(e.line, e.value_col, "a bracket needs two distinct basis elements"));
        }
        let mut comb = parse_lincomb(&names, &right.value, right.line, right.value_col)?;
        let (a, b) = if i < j {
            (i, j)
        } else {
            for (_, c) in &mut comb {
                *c = -c.clone();
            }
            (j, i)
        };
        if entries.iter().any(|(x, y, _)| *x == a && *y == b) {
            return Err(err(e.line, e.value_col, "duplicate bracket declaration"));
        }
        if !comb.is_empty() {
            entries.push((a, b, comb));
        }
    }
    let alg = LieAlgebra::new(&names, &entries)
        .map_err(|ce| err(be.line, be.value_col, format!("bad algebra: {ce}")))?;
    Ok((alg, names))
}

// ---------------------------------------------------------------------
// Top level
// ---------------------------------------------------------------------

pub fn parse_structure(text: &str) -> Result<StructureFile, ParseError> {
    let entries = split_entries(text)?;
    let Some(first) = entries.first() else {
        return Err(err(1, 1, "empty file"));
    };
    if first.key != "kind" {
        return Err(err(first.line, first.key_col, "the first entry must be `kind:`"));
    }
    let kind_line = first.line;
    let kind = first.value.clone();

    let mut name = None;
    let mut seed = None;
    let mut rest: Vec<&Entry> = Vec::new();
    for e in entries.iter().skip(1) {
        match e.key.as_str() {
            "kind" => return Err(err(e.line, e.key_col, "duplicate `kind:`")),
            "name" => {
                if name.replace(e.value.clone()).is_some() {
                    return Err(err(e.line, e.key_col, "duplicate `name:`"));
                }
            }
            "seed" => {
                if seed.replace(parse_seed(&e.value, e.line, e.value_col)?).is_some() {
                    return Err(err(e.line, e.key_col, "duplicate `seed:`"));
                }
            }
            _ => rest.push(e),
        }
    }

    let single = |key: &str| -> Result<Option<&Entry>, ParseError> {
        let found: Vec<&&Entry> = rest.iter().filter(|e| e.key == key).collect();
        match found.as_slice() {
            [] => Ok(None),
            [one] => Ok(Some(one)),
            [_, second, ..] => Err(err(second.line, second.key_col, format!("duplicate `{key}:`"))),
        }
    };
    let many = |key: &str| -> Vec<&Entry> { rest.iter().filter(|e| e.key == key).copied().collect() };
    let reject_unknown = |allowed: &[&str]| -> Result<(), ParseError> {
        for e in &rest {
            if !allowed.contains(&e.key.as_str()) {
                return Err(err(
                    e.line,
                    e.key_col,
                    format!("unknown key `{}` for kind `{kind}`", e.key),
                ));
            }
        }
        Ok(())
    };

    let payload = match kind.as_str() {
        "nambu-tensor" => {
            reject_unknown(&["chart", "nonzero", "order", "component"])?;
            let chart = build_chart(single("chart")?, single("nonzero")?, kind_line)?;
            let tensor = build_tensor(&chart, single("order")?, &many("component"), kind_line)?;
            Payload::Tensor { tensor }
        }
        "lie-algebra" => {
            reject_unknown(&["basis", "bracket"])?;
            let (algebra, _) = build_algebra(single("basis")?, &many("bracket"), kind_line)?;
            Payload::Algebra { algebra }
        }
        "linear-nambu" => {
            reject_unknown(&["basis", "bracket", "order", "component"])?;
            let (algebra, _) = build_algebra(single("basis")?, &many("bracket"), kind_line)?;
            let chart = algebra.chart().clone();
            let tensor = build_tensor(&chart, single("order")?, &many("component"), kind_line)?;
            Payload::Linear { algebra, tensor }
        }
        "chart-group" => {
            reject_unknown(&["chart", "nonzero", "law", "unit", "inverse", "order", "component"])?;
            let chart = build_chart(single("chart")?, single("nonzero")?, kind_line)?;
            let n = chart.dim();
            let doubled = doubled_chart(&chart)
                .map_err(|ce| err(kind_line, 1, format!("bad chart: {ce}")))?;
            let law_entries = many("law");
            if law_entries.len() != n {
                return Err(err(
                    kind_line,
                    1,
                    format!("expected {n} `law:` lines, found {}", law_entries.len()),
                ));
            }
            let mut law = Vec::new();
            for e in &law_entries {
                law.push(parse_function(&doubled, &e.value, e.line, e.value_col)?);
            }
            let Some(ue) = single("unit")? else {
                return Err(err(kind_line, 1, "missing `unit:` declaration"));
            };
            let unit = parse_rat_list(&ue.value, ue.line, ue.value_col)?;
            if unit.len() != n {
                return Err(err(
                    ue.line,
                    ue.value_col,
                    format!("the unit needs {n} coordinates, found {}", unit.len()),
                ));
            }
            let inverse_entries = many("inverse");
            if inverse_entries.len() != n {
                return Err(err(
                    kind_line,
                    1,
                    format!("expected {n} `inverse:` lines, found {}", inverse_entries.len()),
                ));
            }
            let mut inverse = Vec::new();
            for e in &inverse_entries {
                inverse.push(parse_function(&chart, &e.value, e.line, e.value_col)?);
            }
            let tensor = build_tensor(&chart, single("order")?, &many("component"), kind_line)?;
            let group = ChartGroup::new(chart, law, unit, inverse)
                .map_err(|ce| err(kind_line, 1, format!("bad group data: {ce}")))?;
            Payload::Group { group, tensor }
        }
        "matrix-group-tensor" => {
            reject_unknown(&["size", "samples", "factor", "row"])?;
            let Some(se) = single("size")? else {
                return Err(err(kind_line, 1, "missing `size:` declaration"));
            };
            let size = parse_usize(&se.value, se.line, se.value_col)?;
            if size == 0 {
                return Err(err(se.line, se.value_col, "the matrix size must be positive"));
            }
            let samples = match single("samples")? {
                Some(e) => Some(parse_usize(&e.value, e.line, e.value_col)?),
                None => None,
            };
            // `factor:` opens a matrix; the following `row:` lines fill it.
            let mut factors: Vec<Vec<Vec<GaussRat>>> = Vec::new();
            for e in &rest {
                match e.key.as_str() {
                    "factor" => {
                        if !e.value.is_empty() {
                            return Err(err(
                                e.line,
                                e.value_col,
                                "`factor:` takes no value; the rows follow",
                            ));
                        }
                        factors.push(Vec::new());
                    }
                    "row" => {
                        let Some(current) = factors.last_mut() else {
                            return Err(err(e.line, e.key_col, "`row:` before any `factor:`"));
                        };
                        if current.len() == size {
                            return Err(err(
                                e.line,
                                e.key_col,
                                format!("factor already has {size} rows"),
                            ));
                        }
                        let cells: Vec<&str> = e.value.split_whitespace().collect();
                        if cells.len() != size {
                            return Err(err(
                                e.line,
                                e.value_col,
                                format!("expected {size} entries per row, found {}", cells.len()),
                            ));
                        }
                        let mut row = Vec::new();
                        for c in cells {
                            row.push(parse_gauss_entry(c, e.line, e.value_col)?);
                        }
                        current.push(row);
                    }
                    _ => {}
                }
            }
            if factors.is_empty() {
                return Err(err(kind_line, 1, "missing `factor:` blocks"));
            }
            let mut built = Vec::new();
            for rows in factors {
                if rows.len() != size {
                    return Err(err(
                        kind_line,
                        1,
                        format!("every factor needs exactly {size} rows"),
                    ));
                }
                built.push(
                    Matrix::from_rows(rows)
                        .map_err(|ce| err(kind_line, 1, format!("bad factor: {ce}")))?,
                );
            }
            Payload::MatrixTensor { size, samples, factors: built }
        }
        other => {
            return Err(err(
                first.line,
                first.value_col,
                format!(
                    "unknown kind `{other}`; expected nambu-tensor, lie-algebra, linear-nambu, \
                     chart-group, or matrix-group-tensor"
                ),
            ))
        }
    };

    Ok(StructureFile { kind_name: kind, name, seed, payload })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_tensor_file_round_trips_through_the_parser() {
        let text = "\
# the constant volume
kind: nambu-tensor
name: demo
chart: x y z
order: 3
component: x y z = 1/2*x^3 + -1/2*x
";
        let f = parse_structure(text).unwrap();
        assert_eq!(f.kind_name, "nambu-tensor");
        assert_eq!(f.name.as_deref(), Some("demo"));
        let Payload::Tensor { tensor } = f.payload else { panic!("wrong payload") };
        assert_eq!(tensor.degree(), 3);
    }

    #[test]
    fn float_literals_are_rejected_with_position() {
        let text = "kind: nambu-tensor\nchart: x y z\norder: 3\ncomponent: x y z = 0.5\n";
        let e = parse_structure(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("floating-point"), "{}", e.message);
    }

    #[test]
    fn gaussian_entries_cover_the_sign_cases() {
        let cases = [
            ("0", (0, 1, 0, 1)),
            ("3/2", (3, 2, 0, 1)),
            ("-1/2i", (0, 1, -1, 2)),
            ("i", (0, 1, 1, 1)),
            ("-i", (0, 1, -1, 1)),
            ("1/2+3/4i", (1, 2, 3, 4)),
            ("1-i", (1, 1, -1, 1)),
        ];
        for (text, (rn, rd, im_n, im_d)) in cases {
            let z = parse_gauss_entry(text, 1, 1).unwrap();
            assert_eq!(z, gauss(nambu_core::rat::ratq(rn, rd), nambu_core::rat::ratq(im_n, im_d)), "{text}");
        }
    }

    #[test]
    fn bracket_order_is_normalized_with_a_sign() {
        let text = "\
kind: lie-algebra
basis: A B
bracket: B A = -1*B
";
        let f = parse_structure(text).unwrap();
        let Payload::Algebra { algebra } = f.payload else { panic!("wrong payload") };
        // [A, B] = B after normalization.
        assert_eq!(algebra.bracket_basis(0, 1), vec![Rat::zero(), Rat::one()]);
    }
}
