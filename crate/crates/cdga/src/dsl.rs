//! The `.cdga` presentation language.
//!
//! Grammar, one statement per line, `#` starts a comment:
//!
//! ```text
//! algebra <name>
//! generator <ident> 1
//! d <ident> = <expr>
//! action <ident> order <int>
//! <action> <ident> = <expr>
//! ```
//!
//! `<expr>` is a sum of terms `<rat>*<mono>`, `<rat> <mono>` or `<mono>`,
//! where `<rat>` is `p` or `p/q` with optional sign and `<mono>` is a list of
//! idents joined by `^`; the literal `0` is the zero element. Generators not
//! given a `d` line have zero differential; action rows not listed map the
//! generator to itself.

use crate::exterior::{
    AlgebraError, CdgaPresentation, Degree, GeneratorTable, GradedElement,
};
use crate::scalar::ExactScalar;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {line}:{col}: {message} (near `{token}`)")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub token: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>, token: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
            token: token.into(),
        }
    }
}

/// A declared (but not yet verified) group action: generator images and order.
#[derive(Debug, Clone)]
pub struct ActionSpec {
    pub order: u32,
    pub images: Vec<GradedElement>,
}

/// A parsed source: the raw text, the resolved presentation, plus named
/// actions and named element bindings. Bindings have no surface syntax;
/// presets install them so element expressions can refer to distinguished
/// forms by name.
#[derive(Debug, Clone)]
pub struct PresentationSource {
    name: String,
    text: String,
    presentation: Arc<CdgaPresentation>,
    actions: BTreeMap<String, ActionSpec>,
    bindings: BTreeMap<String, GradedElement>,
}

impl PresentationSource {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The original source text this presentation was parsed from.
    pub fn source_text(&self) -> &str {
        &self.text
    }

    pub fn presentation(&self) -> &Arc<CdgaPresentation> {
        &self.presentation
    }

    pub fn actions(&self) -> impl Iterator<Item = (&str, &ActionSpec)> {
        self.actions.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn action(&self, name: &str) -> Option<&ActionSpec> {
        self.actions.get(name)
    }

    pub fn bind(&mut self, name: impl Into<String>, value: GradedElement) {
        self.bindings.insert(name.into(), value);
    }

    pub fn binding(&self, name: &str) -> Option<&GradedElement> {
        self.bindings.get(name)
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&str, &GradedElement)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Parse an element expression against this source's generators and
    /// bindings.
    pub fn parse_element(&self, text: &str) -> Result<GradedElement, ParseError> {
        let table = self.presentation.table();
        let tokens = tokenize(text, 1)?;
        let mut pos = 0;
        let e = parse_expr(&tokens, &mut pos, 1, table, &|name| {
            table
                .index_of(name)
                .map(|i| GradedElement::generator(table.clone(), i))
                .or_else(|| self.bindings.get(name).cloned())
        })?;
        if pos != tokens.len() {
            let t = &tokens[pos];
            return Err(ParseError::new(t.line, t.col, "trailing input", &t.text));
        }
        Ok(e)
    }

    /// Canonical textual form; parsing it back yields an identical
    /// presentation.
    pub fn serialize(&self) -> String {
        let table = self.presentation.table();
        let mut out = format!("algebra {}\n", self.name);
        for g in table.names() {
            out.push_str(&format!("generator {g} 1\n"));
        }
        for (i, g) in table.names().iter().enumerate() {
            out.push_str(&format!(
                "d {g} = {}\n",
                serialize_element(self.presentation.generator_differential(i))
            ));
        }
        for (name, spec) in &self.actions {
            out.push_str(&format!("action {name} order {}\n", spec.order));
            for (i, g) in table.names().iter().enumerate() {
                out.push_str(&format!(
                    "{name} {g} = {}\n",
                    serialize_element(&spec.images[i])
                ));
            }
        }
        out
    }
}

/// Render an element in the expression grammar (rational coefficients only).
pub fn serialize_element(e: &GradedElement) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let table = e.table();
    let mut parts = Vec::new();
    for (m, c) in e.terms() {
        let rat = c
            .as_rational()
            .expect("only rational coefficients are serializable");
        let mono = if m.degree() == 0 {
            String::new()
        } else {
            m.indices()
                .iter()
                .map(|&i| table.name(i as usize).to_string())
                .collect::<Vec<_>>()
                .join("^")
        };
        let coeff = if rat.is_integer() {
            rat.to_integer().to_string()
        } else {
            format!("{}/{}", rat.numer(), rat.denom())
        };
        let term = if mono.is_empty() {
            coeff
        } else if coeff == "1" {
            mono
        } else if coeff == "-1" {
            format!("-{mono}")
        } else {
            format!("{coeff}*{mono}")
        };
        parts.push(term);
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(&format!(" - {rest}"));
        } else {
            out.push_str(&format!(" + {p}"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Equals,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    text: String,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::Slash => write!(f, "/"),
            Tok::Equals => write!(f, "="),
        }
    }
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let tok = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = tok {
            out.push(Token {
                tok: t,
                line: line_no,
                col,
                text: c.to_string(),
            });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(text.clone()),
                line: line_no,
                col,
                text,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(text.clone()),
                line: line_no,
                col,
                text,
            });
            continue;
        }
        return Err(ParseError::new(
            line_no,
            col,
            "unexpected character",
            c.to_string(),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

type Resolver<'a> = dyn Fn(&str) -> Option<GradedElement> + 'a;

fn parse_rational(
    tokens: &[Token],
    pos: &mut usize,
) -> Option<ExactScalar> {
    let Some(Token { tok: Tok::Int(n), .. }) = tokens.get(*pos) else {
        return None;
    };
    let num: i64 = n.parse().ok()?;
    *pos += 1;
    if let Some(Token { tok: Tok::Slash, .. }) = tokens.get(*pos) {
        if let Some(Token { tok: Tok::Int(d), .. }) = tokens.get(*pos + 1) {
            let den: i64 = d.parse().ok()?;
            *pos += 2;
            return Some(ExactScalar::ratio(num, den));
        }
    }
    Some(ExactScalar::from_int(num))
}

fn parse_monomial(
    tokens: &[Token],
    pos: &mut usize,
    line: usize,
    resolve: &Resolver,
) -> Result<GradedElement, ParseError> {
    let mut factors = Vec::new();
    loop {
        match tokens.get(*pos) {
            Some(Token { tok: Tok::Ident(name), line: l, col, .. }) => {
                let Some(g) = resolve(name) else {
                    return Err(ParseError::new(*l, *col, "unknown generator", name));
                };
                factors.push(g);
                *pos += 1;
            }
            Some(t) => {
                return Err(ParseError::new(t.line, t.col, "expected generator name", &t.text))
            }
            None => {
                return Err(ParseError::new(line, 1, "expected generator name", "end of input"))
            }
        }
        if let Some(Token { tok: Tok::Caret, .. }) = tokens.get(*pos) {
            *pos += 1;
            continue;
        }
        break;
    }
    let mut it = factors.into_iter();
    let first = it.next().expect("at least one factor");
    it.try_fold(first, |acc, g| {
        acc.try_wedge(&g).map_err(|_| {
            ParseError::new(line, 1, "mixed generator tables in expression", "^")
        })
    })
}

fn parse_term(
    tokens: &[Token],
    pos: &mut usize,
    line: usize,
    table: &Arc<GeneratorTable>,
    resolve: &Resolver,
) -> Result<GradedElement, ParseError> {
    // rational [*] monomial   |   rational (constant multiple of the unit)
    // |   monomial
    if let Some(coeff) = parse_rational(tokens, pos) {
        match tokens.get(*pos) {
            Some(Token { tok: Tok::Star, .. }) => {
                *pos += 1;
                let m = parse_monomial(tokens, pos, line, resolve)?;
                return Ok(m.scale(&coeff));
            }
            Some(Token { tok: Tok::Ident(_), .. }) => {
                let m = parse_monomial(tokens, pos, line, resolve)?;
                return Ok(m.scale(&coeff));
            }
            _ => return Ok(GradedElement::unit(table.clone()).scale(&coeff)),
        }
    }
    parse_monomial(tokens, pos, line, resolve)
}

fn parse_expr(
    tokens: &[Token],
    pos: &mut usize,
    line: usize,
    table: &Arc<GeneratorTable>,
    resolve: &Resolver,
) -> Result<GradedElement, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::new(line, 1, "empty expression", ""));
    }
    let mut acc = GradedElement::zero(table.clone());
    let mut negate = false;
    loop {
        while let Some(t) = tokens.get(*pos) {
            match t.tok {
                Tok::Minus => {
                    negate = !negate;
                    *pos += 1;
                }
                Tok::Plus => {
                    *pos += 1;
                }
                _ => break,
            }
        }
        let term = parse_term(tokens, pos, line, table, resolve)?;
        acc = if negate { acc.sub(&term) } else { acc.add(&term) };
        negate = false;
        match tokens.get(*pos).map(|t| &t.tok) {
            Some(Tok::Plus) => {
                *pos += 1;
            }
            Some(Tok::Minus) => {
                negate = true;
                *pos += 1;
            }
            _ => break,
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Statement parser
// ---------------------------------------------------------------------------

/// Parse a complete `.cdga` source.
pub fn parse_presentation(text: &str) -> Result<PresentationSource, ParseError> {
    let mut algebra_name: Option<String> = None;
    let mut generators: Vec<String> = Vec::new();
    let mut diff_lines: Vec<(usize, String, Vec<Token>)> = Vec::new();
    let mut action_decls: BTreeMap<String, (usize, u32)> = BTreeMap::new();
    let mut action_rows: Vec<(usize, String, String, Vec<Token>)> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = tokenize(raw_line, line_no)?;
        if tokens.is_empty() {
            continue;
        }
        let head = &tokens[0];
        let Tok::Ident(kw) = &head.tok else {
            return Err(ParseError::new(
                head.line,
                head.col,
                "expected a statement keyword",
                &head.text,
            ));
        };
        match kw.as_str() {
            "algebra" => {
                let Some(Token { tok: Tok::Ident(name), .. }) = tokens.get(1) else {
                    return Err(ParseError::new(line_no, head.col, "expected algebra name", &head.text));
                };
                if algebra_name.is_some() {
                    return Err(ParseError::new(line_no, head.col, "duplicate algebra statement", name));
                }
                if tokens.len() > 2 {
                    let t = &tokens[2];
                    return Err(ParseError::new(t.line, t.col, "trailing input", &t.text));
                }
                algebra_name = Some(name.clone());
            }
            "generator" => {
                let Some(Token { tok: Tok::Ident(name), line: l, col, .. }) = tokens.get(1) else {
                    return Err(ParseError::new(line_no, head.col, "expected generator name", &head.text));
                };
                match tokens.get(2) {
                    Some(Token { tok: Tok::Int(d), .. }) if d == "1" => {}
                    Some(t) => {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            "only degree-1 generators are supported",
                            &t.text,
                        ))
                    }
                    None => {
                        return Err(ParseError::new(line_no, *col, "expected generator degree", name))
                    }
                }
                if generators.contains(name) {
                    return Err(ParseError::new(*l, *col, "duplicate generator", name));
                }
                generators.push(name.clone());
            }
            "d" => {
                let Some(Token { tok: Tok::Ident(name), .. }) = tokens.get(1) else {
                    return Err(ParseError::new(line_no, head.col, "expected generator name after d", &head.text));
                };
                let Some(Token { tok: Tok::Equals, .. }) = tokens.get(2) else {
                    let t = tokens.get(2).unwrap_or(head);
                    return Err(ParseError::new(t.line, t.col, "expected `=`", &t.text));
                };
                diff_lines.push((line_no, name.clone(), tokens[3..].to_vec()));
            }
            "action" => {
                let Some(Token { tok: Tok::Ident(name), line: l, col, .. }) = tokens.get(1) else {
                    return Err(ParseError::new(line_no, head.col, "expected action name", &head.text));
                };
                match (tokens.get(2), tokens.get(3)) {
                    (
                        Some(Token { tok: Tok::Ident(kw2), .. }),
                        Some(Token { tok: Tok::Int(n), .. }),
                    ) if kw2 == "order" => {
                        let order: u32 = n.parse().map_err(|_| {
                            ParseError::new(line_no, *col, "bad order", n)
                        })?;
                        if action_decls.contains_key(name) {
                            return Err(ParseError::new(*l, *col, "duplicate action", name));
                        }
                        action_decls.insert(name.clone(), (line_no, order));
                    }
                    _ => {
                        return Err(ParseError::new(line_no, *col, "expected `order <int>`", name))
                    }
                }
            }
            other => {
                // `<action> <gen> = <expr>` rows
                if action_decls.contains_key(other) {
                    let Some(Token { tok: Tok::Ident(gen), .. }) = tokens.get(1) else {
                        return Err(ParseError::new(line_no, head.col, "expected generator name", other));
                    };
                    let Some(Token { tok: Tok::Equals, .. }) = tokens.get(2) else {
                        let t = tokens.get(2).unwrap_or(head);
                        return Err(ParseError::new(t.line, t.col, "expected `=`", &t.text));
                    };
                    action_rows.push((line_no, other.to_string(), gen.clone(), tokens[3..].to_vec()));
                } else {
                    return Err(ParseError::new(
                        head.line,
                        head.col,
                        "unknown statement",
                        &head.text,
                    ));
                }
            }
        }
    }

    let name = algebra_name.ok_or_else(|| ParseError::new(1, 1, "missing algebra statement", ""))?;
    let table = GeneratorTable::new(generators.clone())
        .map_err(|e| ParseError::new(1, 1, e.to_string(), ""))?;

    let resolve = |n: &str| {
        table
            .index_of(n)
            .map(|i| GradedElement::generator(table.clone(), i))
    };

    let mut diffs: Vec<Option<GradedElement>> = vec![None; table.len()];
    for (line_no, gen, tokens) in diff_lines {
        let Some(i) = table.index_of(&gen) else {
            return Err(ParseError::new(line_no, 3, "unknown generator", &gen));
        };
        if diffs[i].is_some() {
            return Err(ParseError::new(line_no, 3, "duplicate differential", &gen));
        }
        let mut pos = 0;
        let e = parse_expr(&tokens, &mut pos, line_no, &table, &resolve)?;
        if pos != tokens.len() {
            let t = &tokens[pos];
            return Err(ParseError::new(t.line, t.col, "trailing input", &t.text));
        }
        match e.degree() {
            Degree::Zero | Degree::Homogeneous(2) => {}
            _ => {
                return Err(ParseError::new(
                    line_no,
                    1,
                    "differential image must be homogeneous of degree 2",
                    &gen,
                ))
            }
        }
        diffs[i] = Some(e);
    }
    let diffs: Vec<GradedElement> = diffs
        .into_iter()
        .map(|d| d.unwrap_or_else(|| GradedElement::zero(table.clone())))
        .collect();

    let presentation = CdgaPresentation::new(table.clone(), diffs).map_err(|e| match &e {
        AlgebraError::DSquared { generator, .. } => {
            ParseError::new(1, 1, e.to_string(), generator.clone())
        }
        _ => ParseError::new(1, 1, e.to_string(), ""),
    })?;

    let mut actions = BTreeMap::new();
    for (aname, (_line, order)) in &action_decls {
        let mut images: Vec<GradedElement> = (0..table.len())
            .map(|i| GradedElement::generator(table.clone(), i))
            .collect();
        for (line_no, rname, gen, tokens) in &action_rows {
            if rname != aname {
                continue;
            }
            let Some(i) = table.index_of(gen) else {
                return Err(ParseError::new(*line_no, 1, "unknown generator", gen));
            };
            let mut pos = 0;
            let e = parse_expr(tokens, &mut pos, *line_no, &table, &resolve)?;
            if pos != tokens.len() {
                let t = &tokens[pos];
                return Err(ParseError::new(t.line, t.col, "trailing input", &t.text));
            }
            match e.degree() {
                Degree::Zero | Degree::Homogeneous(1) => {}
                _ => {
                    return Err(ParseError::new(
                        *line_no,
                        1,
                        "action image must be a 1-form",
                        gen,
                    ))
                }
            }
            images[i] = e;
        }
        actions.insert(
            aname.clone(),
            ActionSpec {
                order: *order,
                images,
            },
        );
    }

    Ok(PresentationSource {
        name,
        text: text.to_string(),
        presentation,
        actions,
        bindings: BTreeMap::new(),
    })
}
