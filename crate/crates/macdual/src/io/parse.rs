//! Parser for the problem-file format and its expression language.
//!
//! A problem file is line oriented.  Section headers end in a colon:
//! `vars:`, `grading:`, `cone:` (optional), `ideal <name>:`, `query:`.
//! Comments run from `#` to the end of the line.  Polynomial expressions
//! use explicit `*`, `^` with nonnegative integer exponents, unary minus,
//! and integer or `a/b` rational literals; precedence is `^`, then unary
//! minus, then `*`, then binary `+ -`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{Polynomial, Rat};
use crate::grading::{Grading, MultiDegree};
use crate::io::{ProblemFile, Query, QuotientBy};
use crate::{Error, Result};

const RESERVED: &[&str] = &[
    "vars",
    "grading",
    "cone",
    "ideal",
    "query",
    "hilbert",
    "member",
    "quotient",
    "saturate",
    "multiplicity",
    "by",
    "max",
    "window",
    "bound",
];

fn parse_error(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ratio(String, String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("`{s}`"),
            Tok::Ratio(a, b) => format!("`{a}/{b}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Lexed {
    tok: Tok,
    col: usize,
}

/// Splits one line into tokens with 1-based column positions.
fn lex(text: &str, line: usize) -> Result<Vec<Lexed>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let num = text[start..i].to_string();
            if i < bytes.len()
                && bytes[i] as char == '/'
                && i + 1 < bytes.len()
                && (bytes[i + 1] as char).is_ascii_digit()
            {
                i += 1;
                let dstart = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                out.push(Lexed { tok: Tok::Ratio(num, text[dstart..i].to_string()), col });
            } else {
                out.push(Lexed { tok: Tok::Int(num), col });
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() {
                let ch = bytes[i] as char;
                if ch.is_ascii_alphanumeric() || ch == '_' {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(Lexed { tok: Tok::Ident(text[start..i].to_string()), col });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => return Err(parse_error(line, col, format!("unexpected character `{c}`"))),
        };
        out.push(Lexed { tok, col });
        i += 1;
    }
    Ok(out)
}

struct ExprParser<'a> {
    grading: &'a Arc<Grading>,
    toks: &'a [Lexed],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> ExprParser<'a> {
    fn new(grading: &'a Arc<Grading>, toks: &'a [Lexed], line: usize, end_col: usize) -> Self {
        ExprParser { grading, toks, pos: 0, line, end_col }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn bump(&mut self) -> Option<&'a Lexed> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col)
    }

    fn fail(&self, msg: impl Into<String>) -> Error {
        parse_error(self.line, self.here(), msg)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let inner = self.unary()?;
            return Ok(-&inner);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.bump();
        let exponent = match self.bump() {
            Some(Lexed { tok: Tok::Int(s), col }) => s
                .parse::<u32>()
                .map_err(|_| parse_error(self.line, *col, "exponent out of range"))?,
            _ => return Err(self.fail("expected a nonnegative integer exponent")),
        };
        if matches!(self.peek(), Some(Tok::Caret)) {
            return Err(self.fail("chained exponents need parentheses"));
        }
        Ok(base.pow(exponent))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let line = self.line;
        let Some(lexed) = self.bump() else {
            return Err(parse_error(line, self.end_col, "expected a term"));
        };
        let col = lexed.col;
        match &lexed.tok {
            Tok::Int(s) => {
                let value: Rat = s
                    .parse()
                    .map_err(|e: String| parse_error(line, col, e))?;
                Ok(Polynomial::constant(self.grading.clone(), value))
            }
            Tok::Ratio(a, b) => {
                let value: Rat = format!("{a}/{b}")
                    .parse()
                    .map_err(|e: String| parse_error(line, col, e))?;
                Ok(Polynomial::constant(self.grading.clone(), value))
            }
            Tok::Ident(name) => {
                let vars = self.grading.var_names();
                match vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::var(self.grading.clone(), i)),
                    None => Err(Error::UnknownVariable { name: name.clone(), line, col }),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Lexed { tok: Tok::RParen, .. }) => Ok(inner),
                    Some(other) => Err(parse_error(
                        line,
                        other.col,
                        format!("expected `)`, found {}", other.tok.describe()),
                    )),
                    None => Err(parse_error(line, self.end_col, "expected `)`")),
                }
            }
            other => Err(parse_error(
                line,
                col,
                format!("expected a term, found {}", other.describe()),
            )),
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(parse_error(
                self.line,
                t.col,
                format!("unexpected {}", t.tok.describe()),
            )),
        }
    }
}

/// Parses one polynomial expression in the given ring.  `line` is used for
/// error positions; pass 0 for text that does not come from a file.
pub fn polynomial(grading: &Arc<Grading>, text: &str, line: usize) -> Result<Polynomial> {
    let toks = lex(text, line)?;
    let mut parser = ExprParser::new(grading, &toks, line, text.len() + 1);
    let poly = parser.expr()?;
    parser.expect_end()?;
    Ok(poly)
}

/// Parses a degree: a bare integer when `k = 1`, otherwise a parenthesized
/// comma-separated tuple like `(1,-2)`.
pub fn degree(k: usize, text: &str) -> Result<MultiDegree> {
    let toks = lex(text, 0)?;
    let mut pos = 0usize;
    let parsed = degree_from_tokens(k, &toks, &mut pos, 0, text.len() + 1)?;
    if pos != toks.len() {
        return Err(parse_error(0, toks[pos].col, "unexpected text after degree"));
    }
    Ok(parsed)
}

fn signed_int(
    toks: &[Lexed],
    pos: &mut usize,
    line: usize,
    end_col: usize,
) -> Result<i64> {
    let mut negative = false;
    if matches!(toks.get(*pos).map(|t| &t.tok), Some(Tok::Minus)) {
        negative = true;
        *pos += 1;
    }
    match toks.get(*pos) {
        Some(Lexed { tok: Tok::Int(s), col }) => {
            *pos += 1;
            let value: i64 = s
                .parse()
                .map_err(|_| parse_error(line, *col, "integer out of range"))?;
            Ok(if negative { -value } else { value })
        }
        Some(t) => Err(parse_error(
            line,
            t.col,
            format!("expected an integer, found {}", t.tok.describe()),
        )),
        None => Err(parse_error(line, end_col, "expected an integer")),
    }
}

fn degree_from_tokens(
    k: usize,
    toks: &[Lexed],
    pos: &mut usize,
    line: usize,
    end_col: usize,
) -> Result<MultiDegree> {
    if matches!(toks.get(*pos).map(|t| &t.tok), Some(Tok::LParen)) {
        let open_col = toks[*pos].col;
        *pos += 1;
        let mut coords = Vec::new();
        loop {
            coords.push(signed_int(toks, pos, line, end_col)?);
            match toks.get(*pos) {
                Some(Lexed { tok: Tok::Comma, .. }) => {
                    *pos += 1;
                }
                Some(Lexed { tok: Tok::RParen, .. }) => {
                    *pos += 1;
                    break;
                }
                Some(t) => {
                    return Err(parse_error(
                        line,
                        t.col,
                        format!("expected `,` or `)`, found {}", t.tok.describe()),
                    ))
                }
                None => return Err(parse_error(line, end_col, "unclosed degree tuple")),
            }
        }
        if coords.len() != k {
            return Err(parse_error(
                line,
                open_col,
                format!("degree has {} components, expected {k}", coords.len()),
            ));
        }
        Ok(MultiDegree::new(coords))
    } else {
        if k != 1 {
            let col = toks.get(*pos).map(|t| t.col).unwrap_or(end_col);
            return Err(parse_error(
                line,
                col,
                format!("degree for a rank-{k} grading needs the form (a{})", ",b".repeat(k - 1)),
            ));
        }
        Ok(MultiDegree::new(vec![signed_int(toks, pos, line, end_col)?]))
    }
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn int_row(text: &str, line: usize) -> Result<Vec<i64>> {
    let toks = lex(text, line)?;
    let mut pos = 0usize;
    let mut row = Vec::new();
    let end_col = text.len() + 1;
    while pos < toks.len() {
        row.push(signed_int(&toks, &mut pos, line, end_col)?);
    }
    Ok(row)
}

enum Section {
    None,
    Grading,
    Cone,
    Ideal(usize),
    Query,
}

/// Parses a complete problem file.
pub fn problem(text: &str) -> Result<ProblemFile> {
    let mut vars: Option<Vec<String>> = None;
    let mut grading_rows: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut cone_rows: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut saw_grading = false;
    let mut saw_cone = false;
    let mut saw_query = false;
    let mut ideals_raw: Vec<(String, Vec<(usize, String)>)> = Vec::new();
    let mut query_raw: Vec<(usize, String)> = Vec::new();
    let mut section = Section::None;
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let stripped = raw.split('#').next().unwrap_or("");
        if stripped.trim().is_empty() {
            continue;
        }
        if let Some(colon) = stripped.find(':') {
            let head = stripped[..colon].trim();
            let head_col = stripped.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
            let tail = stripped[colon + 1..].trim();
            match head {
                "vars" => {
                    if vars.is_some() {
                        return Err(parse_error(line_no, head_col, "duplicate `vars:` section"));
                    }
                    let names: Vec<String> =
                        tail.split_whitespace().map(|s| s.to_string()).collect();
                    if names.is_empty() {
                        return Err(parse_error(line_no, head_col, "`vars:` lists no variables"));
                    }
                    let mut seen = HashSet::new();
                    for name in &names {
                        if !valid_identifier(name) {
                            return Err(parse_error(
                                line_no,
                                head_col,
                                format!("invalid variable name `{name}`"),
                            ));
                        }
                        if RESERVED.contains(&name.as_str()) {
                            return Err(parse_error(
                                line_no,
                                head_col,
                                format!("variable name `{name}` is reserved"),
                            ));
                        }
                        if !seen.insert(name.clone()) {
                            return Err(parse_error(
                                line_no,
                                head_col,
                                format!("duplicate variable name `{name}`"),
                            ));
                        }
                    }
                    vars = Some(names);
                    section = Section::None;
                }
                "grading" => {
                    if saw_grading {
                        return Err(parse_error(line_no, head_col, "duplicate `grading:` section"));
                    }
                    if !tail.is_empty() {
                        return Err(parse_error(
                            line_no,
                            head_col,
                            "grading rows belong on the following lines",
                        ));
                    }
                    saw_grading = true;
                    section = Section::Grading;
                }
                "cone" => {
                    if saw_cone {
                        return Err(parse_error(line_no, head_col, "duplicate `cone:` section"));
                    }
                    if !tail.is_empty() {
                        return Err(parse_error(
                            line_no,
                            head_col,
                            "cone rows belong on the following lines",
                        ));
                    }
                    saw_cone = true;
                    section = Section::Cone;
                }
                "query" => {
                    if saw_query {
                        return Err(parse_error(line_no, head_col, "duplicate `query:` section"));
                    }
                    if !tail.is_empty() {
                        return Err(parse_error(
                            line_no,
                            head_col,
                            "queries belong on the following lines",
                        ));
                    }
                    saw_query = true;
                    section = Section::Query;
                }
                h if h.starts_with("ideal") => {
                    let name = h["ideal".len()..].trim();
                    if !tail.is_empty() {
                        return Err(parse_error(
                            line_no,
                            head_col,
                            "generators belong on the following lines",
                        ));
                    }
                    if !valid_identifier(name) {
                        return Err(parse_error(
                            line_no,
                            head_col,
                            format!("invalid ideal name `{name}`"),
                        ));
                    }
                    if RESERVED.contains(&name) {
                        return Err(parse_error(
                            line_no,
                            head_col,
                            format!("ideal name `{name}` is reserved"),
                        ));
                    }
                    if ideals_raw.iter().any(|(n, _)| n == name) {
                        return Err(parse_error(
                            line_no,
                            head_col,
                            format!("duplicate ideal name `{name}`"),
                        ));
                    }
                    ideals_raw.push((name.to_string(), Vec::new()));
                    section = Section::Ideal(ideals_raw.len() - 1);
                }
                _ => {
                    return Err(parse_error(
                        line_no,
                        head_col,
                        format!("unknown section `{head}`"),
                    ))
                }
            }
        } else {
            let body = stripped.trim_end();
            match section {
                Section::None => {
                    let col = stripped.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
                    return Err(parse_error(line_no, col, "content outside any section"));
                }
                Section::Grading => grading_rows.push((line_no, int_row(body, line_no)?)),
                Section::Cone => cone_rows.push((line_no, int_row(body, line_no)?)),
                Section::Ideal(i) => ideals_raw[i].1.push((line_no, body.to_string())),
                Section::Query => query_raw.push((line_no, body.to_string())),
            }
        }
    }

    let eof = last_line.max(1);
    let var_names =
        vars.ok_or_else(|| parse_error(eof, 1, "missing `vars:` section"))?;
    if grading_rows.is_empty() {
        return Err(parse_error(eof, 1, "missing `grading:` section"));
    }
    let nvars = var_names.len();
    for (line_no, row) in &grading_rows {
        if row.len() != nvars {
            return Err(parse_error(
                *line_no,
                1,
                format!("grading row has {} entries, expected {nvars}", row.len()),
            ));
        }
    }
    let k = grading_rows.len();
    for (line_no, row) in &cone_rows {
        if row.len() != k {
            return Err(parse_error(
                *line_no,
                1,
                format!("cone row has {} entries, expected {k}", row.len()),
            ));
        }
    }
    let a: Vec<Vec<i64>> = grading_rows.into_iter().map(|(_, r)| r).collect();
    let b: Option<Vec<Vec<i64>>> = if saw_cone {
        Some(cone_rows.into_iter().map(|(_, r)| r).collect())
    } else {
        None
    };
    let grading = Arc::new(Grading::new(a, b, var_names)?);

    for (name, _) in &ideals_raw {
        if grading.var_names().iter().any(|v| v == name) {
            return Err(parse_error(
                eof,
                1,
                format!("ideal name `{name}` collides with a variable"),
            ));
        }
    }

    let mut ideals = Vec::with_capacity(ideals_raw.len());
    for (name, lines) in ideals_raw {
        let mut polys = Vec::with_capacity(lines.len());
        for (line_no, body) in lines {
            polys.push(polynomial(&grading, &body, line_no)?);
        }
        ideals.push((name, polys));
    }

    let names: HashSet<String> = ideals.iter().map(|(n, _)| n.clone()).collect();
    let mut queries = Vec::with_capacity(query_raw.len());
    for (line_no, body) in query_raw {
        queries.push(query_line(&grading, &names, &body, line_no)?);
    }

    Ok(ProblemFile { grading, ideals, queries })
}

fn known_ideal(
    names: &HashSet<String>,
    lexed: Option<&Lexed>,
    line: usize,
    end_col: usize,
) -> Result<String> {
    match lexed {
        Some(Lexed { tok: Tok::Ident(name), col }) => {
            if names.contains(name) {
                Ok(name.clone())
            } else {
                Err(parse_error(line, *col, format!("unknown ideal `{name}`")))
            }
        }
        Some(t) => Err(parse_error(
            line,
            t.col,
            format!("expected an ideal name, found {}", t.tok.describe()),
        )),
        None => Err(parse_error(line, end_col, "expected an ideal name")),
    }
}

fn expect_keyword(
    word: &str,
    lexed: Option<&Lexed>,
    line: usize,
    end_col: usize,
) -> Result<()> {
    match lexed {
        Some(Lexed { tok: Tok::Ident(name), .. }) if name == word => Ok(()),
        Some(t) => Err(parse_error(
            line,
            t.col,
            format!("expected `{word}`, found {}", t.tok.describe()),
        )),
        None => Err(parse_error(line, end_col, format!("expected `{word}`"))),
    }
}

fn query_line(
    grading: &Arc<Grading>,
    names: &HashSet<String>,
    text: &str,
    line: usize,
) -> Result<Query> {
    let toks = lex(text, line)?;
    let end_col = text.len() + 1;
    let k = grading.k();
    let keyword = match toks.first() {
        Some(Lexed { tok: Tok::Ident(w), .. }) => w.clone(),
        Some(t) => {
            return Err(parse_error(
                line,
                t.col,
                format!("expected a query keyword, found {}", t.tok.describe()),
            ))
        }
        None => return Err(parse_error(line, 1, "empty query")),
    };
    match keyword.as_str() {
        "hilbert" => {
            let ideal = known_ideal(names, toks.get(1), line, end_col)?;
            let mut pos = 2usize;
            let below = degree_from_tokens(k, &toks, &mut pos, line, end_col)?;
            trailing(&toks, pos, line)?;
            Ok(Query::Hilbert { ideal, below })
        }
        "member" => {
            let ideal = known_ideal(names, toks.get(1), line, end_col)?;
            let rest = &toks[2.min(toks.len())..];
            if rest.is_empty() {
                return Err(parse_error(line, end_col, "member query needs an expression"));
            }
            let mut parser = ExprParser::new(grading, rest, line, end_col);
            let poly = parser.expr()?;
            parser.expect_end()?;
            Ok(Query::Member { ideal, poly })
        }
        "quotient" => {
            let ideal = known_ideal(names, toks.get(1), line, end_col)?;
            expect_keyword("by", toks.get(2), line, end_col)?;
            let max_idx = toks
                .iter()
                .enumerate()
                .skip(3)
                .find(|(_, t)| matches!(&t.tok, Tok::Ident(w) if w == "max"))
                .map(|(i, _)| i)
                .ok_or_else(|| parse_error(line, end_col, "quotient query needs `max <degree>`"))?;
            let by_toks = &toks[3..max_idx];
            let by = parse_by(grading, names, by_toks, line, end_col)?;
            let mut pos = max_idx + 1;
            let max_degree = degree_from_tokens(k, &toks, &mut pos, line, end_col)?;
            trailing(&toks, pos, line)?;
            Ok(Query::Quotient { ideal, by, max_degree })
        }
        "saturate" => {
            let ideal = known_ideal(names, toks.get(1), line, end_col)?;
            expect_keyword("by", toks.get(2), line, end_col)?;
            let by = known_ideal(names, toks.get(3), line, end_col)?;
            expect_keyword("window", toks.get(4), line, end_col)?;
            let mut pos = 5usize;
            let window = degree_from_tokens(k, &toks, &mut pos, line, end_col)?;
            trailing(&toks, pos, line)?;
            Ok(Query::Saturate { ideal, by, window })
        }
        "multiplicity" => {
            let ideal = known_ideal(names, toks.get(1), line, end_col)?;
            expect_keyword("bound", toks.get(2), line, end_col)?;
            let mut pos = 3usize;
            let bound = degree_from_tokens(k, &toks, &mut pos, line, end_col)?;
            trailing(&toks, pos, line)?;
            Ok(Query::Multiplicity { ideal, bound })
        }
        other => Err(parse_error(
            line,
            toks[0].col,
            format!("unknown query `{other}`"),
        )),
    }
}

fn trailing(toks: &[Lexed], pos: usize, line: usize) -> Result<()> {
    match toks.get(pos) {
        None => Ok(()),
        Some(t) => Err(parse_error(
            line,
            t.col,
            format!("unexpected {}", t.tok.describe()),
        )),
    }
}

fn parse_by(
    grading: &Arc<Grading>,
    names: &HashSet<String>,
    toks: &[Lexed],
    line: usize,
    end_col: usize,
) -> Result<QuotientBy> {
    if toks.len() == 1 {
        if let Tok::Ident(name) = &toks[0].tok {
            if names.contains(name) {
                return Ok(QuotientBy::Ideal(name.clone()));
            }
        }
    }
    if toks.is_empty() {
        return Err(parse_error(line, end_col, "quotient query needs a divisor"));
    }
    let mut parser = ExprParser::new(grading, toks, line, end_col);
    let poly = parser.expr()?;
    parser.expect_end()?;
    Ok(QuotientBy::Poly(poly))
}
