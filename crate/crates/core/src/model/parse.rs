//! Line-oriented model language.
//!
//! ```text
//! model NAME
//! param s
//! generator NAME : deg=1, type=(1,0), conj=NAME
//! d NAME = SUM
//! iota NAME = POLY
//! metric orthonormal
//! orient MONOMIAL
//! dbar NAME = SUM
//! end
//! ```
//!
//! A `SUM` is a signed sum of terms; a term is a product of scalar factors
//! (`2`, `1/2`, `3i`, `i`, `s`, `s^2`, `( … )`) optionally times one monomial
//! `a^b^c`. `#` starts a comment. `−` (U+2212) is accepted for `-`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, Derivation, Form, GenType, Generator, Monomial, Parity};
use crate::scalar::{parse_rational, ParamScalar, Scalar};

use super::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagCode {
    UnknownGenerator,
    DuplicateGenerator,
    DuplicateEntry,
    DegreeMismatch,
    MalformedScalar,
    MissingEnd,
    MissingModel,
    UnknownSection,
    BadConjugate,
    UnsupportedDegree,
    Syntax,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::UnknownGenerator => "unknown-generator",
            DiagCode::DuplicateGenerator => "duplicate-generator",
            DiagCode::DuplicateEntry => "duplicate-entry",
            DiagCode::DegreeMismatch => "degree-mismatch",
            DiagCode::MalformedScalar => "malformed-scalar",
            DiagCode::MissingEnd => "missing-end",
            DiagCode::MissingModel => "missing-model",
            DiagCode::UnknownSection => "unknown-section",
            DiagCode::BadConjugate => "bad-conjugate",
            DiagCode::UnsupportedDegree => "unsupported-degree",
            DiagCode::Syntax => "syntax",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A positioned diagnostic. Lines and columns are 1-based; columns count characters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: [{code}] {message}")]
pub struct ParseError {
    pub code: DiagCode,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(code: DiagCode, (line, col): (usize, usize), message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { code, line, col, message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Equals,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Equals => write!(f, "`=`"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || ('\u{0300}'..='\u{036F}').contains(&c)
}

/// Tokens of one line with their 1-based column.
fn lex(line_no: usize, text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
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
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Number(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '^' | '∧' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            '=' => Tok::Equals,
            other => return err(DiagCode::Syntax, (line_no, col), format!("unexpected character `{other}`")),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [(Tok, usize)], line: usize, end_col: usize) -> Self {
        Cursor { toks, pos: 0, line, end_col }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn at(&self) -> (usize, usize) {
        (self.line, self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c))
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        let at = self.at();
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => err(DiagCode::Syntax, at, format!("expected {want}, found {t}")),
            None => err(DiagCode::Syntax, at, format!("expected {want} at end of line")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, (usize, usize)), ParseError> {
        let at = self.at();
        match self.next() {
            Some(Tok::Ident(s)) => Ok((s.clone(), at)),
            Some(t) => err(DiagCode::Syntax, at, format!("expected {what}, found {t}")),
            None => err(DiagCode::Syntax, at, format!("expected {what}")),
        }
    }

    fn done(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => err(DiagCode::Syntax, self.at(), format!("unexpected {t}")),
        }
    }
}

struct GenDecl {
    name: String,
    at: (usize, usize),
    degree: u32,
    kind: Option<GenType>,
    conj: Option<(String, (usize, usize))>,
}

/// Context for expression parsing: which names are generators and which is the parameter.
struct Scope<'a> {
    alg: &'a Arc<Algebra>,
    param: Option<&'a str>,
}

impl Scope<'_> {
    fn parse_sum(&self, cur: &mut Cursor) -> Result<Form, ParseError> {
        let mut total = Form::zero(self.alg);
        let mut first = true;
        loop {
            let negative = if cur.eat(&Tok::Minus) {
                true
            } else {
                let plus = cur.eat(&Tok::Plus);
                if !first && !plus {
                    break;
                }
                false
            };
            let term = self.parse_term(cur)?;
            total = if negative { &total - &term } else { &total + &term };
            first = false;
            if !matches!(cur.peek(), Some(Tok::Plus | Tok::Minus)) {
                break;
            }
        }
        Ok(total)
    }

    fn parse_term(&self, cur: &mut Cursor) -> Result<Form, ParseError> {
        let mut coeff = ParamScalar::one();
        let mut mono: Option<(i32, Monomial)> = None;
        let mut any = false;
        loop {
            let at = cur.at();
            match cur.peek() {
                Some(Tok::Number(_) | Tok::LParen) => coeff = &coeff * &self.parse_scalar_factor(cur)?,
                Some(Tok::Ident(name)) if name == "i" || Some(name.as_str()) == self.param => {
                    coeff = &coeff * &self.parse_scalar_factor(cur)?
                }
                Some(Tok::Ident(_)) => {
                    if mono.is_some() {
                        return err(DiagCode::Syntax, at, "a term may contain only one monomial; join factors with `^`");
                    }
                    mono = Some(self.parse_monomial(cur)?);
                }
                Some(t) => {
                    let msg = if any { format!("unexpected {t}") } else { format!("expected a term, found {t}") };
                    return err(DiagCode::Syntax, at, msg);
                }
                None if any => break,
                None => return err(DiagCode::Syntax, at, "expected a term"),
            }
            any = true;
            if cur.eat(&Tok::Star) {
                continue;
            }
            match cur.peek() {
                Some(Tok::Number(_) | Tok::LParen | Tok::Ident(_)) => continue,
                _ => break,
            }
        }
        let (sign, m) = mono.unwrap_or((1, Monomial::UNIT));
        let c = if sign < 0 { -&coeff } else { coeff };
        Ok(Form::monomial(self.alg, m, c))
    }

    /// `NAME {^ NAME}` with the sorting sign.
    fn parse_monomial(&self, cur: &mut Cursor) -> Result<(i32, Monomial), ParseError> {
        let mut indices = Vec::new();
        loop {
            let (name, at) = cur.ident("generator name")?;
            let idx = self
                .alg
                .index_of(&name)
                .map_or_else(|| err(DiagCode::UnknownGenerator, at, format!("unknown generator `{name}`")), Ok)?;
            if indices.contains(&idx) {
                return Ok((0, Monomial::UNIT)).and_then(|_: (i32, Monomial)| {
                    err(DiagCode::Syntax, at, format!("generator `{name}` repeated in a monomial"))
                });
            }
            indices.push(idx);
            if !cur.eat(&Tok::Caret) {
                break;
            }
        }
        Ok(Monomial::from_indices(&indices).expect("indices are distinct"))
    }

    fn parse_scalar_factor(&self, cur: &mut Cursor) -> Result<ParamScalar, ParseError> {
        let at = cur.at();
        match cur.next() {
            Some(Tok::Number(n)) => {
                let mut text = n.clone();
                if cur.eat(&Tok::Slash) {
                    let den_at = cur.at();
                    match cur.next() {
                        Some(Tok::Number(d)) => text = format!("{text}/{d}"),
                        _ => return err(DiagCode::MalformedScalar, den_at, "expected a denominator after `/`"),
                    }
                }
                let r = parse_rational(&text)
                    .map_or_else(|| err(DiagCode::MalformedScalar, at, format!("malformed rational `{text}`")), Ok)?;
                // `3i`, `1/2i`: imaginary literal
                if cur.peek() == Some(&Tok::Ident("i".into())) {
                    cur.next();
                    return Ok(ParamScalar::constant(Scalar::new(Default::default(), r)));
                }
                Ok(ParamScalar::constant(Scalar::real(r)))
            }
            Some(Tok::Ident(name)) if name == "i" => Ok(ParamScalar::constant(Scalar::i())),
            Some(Tok::Ident(name)) if Some(name.as_str()) == self.param => {
                if cur.eat(&Tok::Caret) {
                    let exp_at = cur.at();
                    let k: usize = match cur.next() {
                        Some(Tok::Number(k)) => k
                            .parse()
                            .map_or_else(|_| err(DiagCode::MalformedScalar, exp_at, "bad exponent"), Ok)?,
                        _ => return err(DiagCode::MalformedScalar, exp_at, "expected an integer exponent"),
                    };
                    let mut coeffs = vec![Scalar::zero(); k + 1];
                    coeffs[k] = Scalar::one();
                    Ok(ParamScalar::from_coeffs(coeffs))
                } else {
                    Ok(ParamScalar::param())
                }
            }
            Some(Tok::LParen) => {
                let inner = self.parse_sum(cur)?;
                if cur.peek() != Some(&Tok::RParen) {
                    return err(DiagCode::MalformedScalar, cur.at(), "expected `)`");
                }
                cur.next();
                if inner.terms().keys().any(|m| !m.is_unit()) {
                    return err(DiagCode::MalformedScalar, at, "parentheses may only enclose scalars");
                }
                Ok(inner.coefficient(Monomial::UNIT))
            }
            Some(t) => err(DiagCode::MalformedScalar, at, format!("expected a scalar, found {t}")),
            None => err(DiagCode::MalformedScalar, at, "expected a scalar"),
        }
    }
}

struct Line {
    no: usize,
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

/// Parses a model description. Every diagnostic carries a line and column.
pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let mut lines = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let toks = lex(i + 1, raw)?;
        if !toks.is_empty() {
            lines.push(Line { no: i + 1, toks, end_col: raw.chars().count() + 1 });
        }
    }

    // Pass 1: header, generators, end marker.
    let mut name: Option<String> = None;
    let mut param: Option<String> = None;
    let mut decls: Vec<GenDecl> = Vec::new();
    let mut body: Vec<&Line> = Vec::new();
    let mut ended = false;
    for line in &lines {
        let mut cur = Cursor::new(&line.toks, line.no, line.end_col);
        let (kw, kw_at) = match cur.peek() {
            Some(Tok::Ident(_)) => cur.ident("keyword")?,
            Some(t) => return err(DiagCode::Syntax, cur.at(), format!("expected a section keyword, found {t}")),
            None => unreachable!(),
        };
        if ended {
            return err(DiagCode::Syntax, kw_at, "content after `end`");
        }
        if name.is_none() && kw != "model" {
            return err(DiagCode::MissingModel, kw_at, "the first line must be `model NAME`");
        }
        match kw.as_str() {
            "model" => {
                if name.is_some() {
                    return err(DiagCode::DuplicateEntry, kw_at, "second `model` line");
                }
                // The name is the raw rest of the line.
                let raw = text.lines().nth(line.no - 1).unwrap_or_default();
                let rest = raw.trim_start().strip_prefix("model").unwrap_or_default();
                let rest = rest.split('#').next().unwrap_or_default().trim();
                if rest.is_empty() {
                    return err(DiagCode::Syntax, cur.at(), "expected a model name");
                }
                name = Some(rest.to_string());
            }
            "param" => {
                let (p, at) = cur.ident("parameter name")?;
                cur.finish()?;
                if p != "s" {
                    return err(DiagCode::Syntax, at, "the family parameter must be named `s`");
                }
                if param.is_some() {
                    return err(DiagCode::DuplicateEntry, kw_at, "parameter declared twice");
                }
                param = Some(p);
            }
            "generator" => decls.push(parse_generator(&mut cur)?),
            "end" => {
                cur.finish()?;
                ended = true;
            }
            "d" | "iota" | "metric" | "orient" | "dbar" => body.push(line),
            other => return err(DiagCode::UnknownSection, kw_at, format!("unknown section `{other}`")),
        }
    }
    let Some(name) = name else {
        return err(DiagCode::MissingModel, (1, 1), "empty model description");
    };
    if !ended {
        return err(DiagCode::MissingEnd, (last_line + 1, 1), "missing `end`");
    }

    let alg = Arc::new(build_algebra(&decls, param.as_deref())?);
    let scope = Scope { alg: &alg, param: param.as_deref() };

    // Pass 2: tables.
    let mut d_images: Vec<Option<Form>> = vec![None; alg.len()];
    let mut iota_images: Option<Vec<Option<Form>>> = None;
    let mut metric = false;
    let mut orientation = None;
    let mut declared_dbar = BTreeMap::new();
    for line in body {
        let mut cur = Cursor::new(&line.toks, line.no, line.end_col);
        let (kw, kw_at) = cur.ident("keyword")?;
        match kw.as_str() {
            "d" | "dbar" | "iota" => {
                let (gname, gat) = cur.ident("generator name")?;
                let g = alg
                    .index_of(&gname)
                    .map_or_else(|| err(DiagCode::UnknownGenerator, gat, format!("unknown generator `{gname}`")), Ok)?;
                cur.expect(&Tok::Equals)?;
                let rhs_at = cur.at();
                let rhs = scope.parse_sum(&mut cur)?;
                cur.finish()?;
                let gdeg = alg.generators()[g].degree;
                let want = if kw == "iota" { gdeg - 1 } else { gdeg + 1 };
                if kw == "iota" && gdeg != 1 {
                    return err(DiagCode::DegreeMismatch, gat, "contraction values are only allowed on degree-1 generators");
                }
                if let Some(bad) = rhs.terms().keys().find(|m| m.degree(&alg) != want) {
                    return err(
                        DiagCode::DegreeMismatch,
                        rhs_at,
                        format!(
                            "`{kw} {gname}` must have degree {want}, term `{}` has degree {}",
                            bad.display(&alg),
                            bad.degree(&alg)
                        ),
                    );
                }
                let slot = match kw.as_str() {
                    "d" => &mut d_images[g],
                    "iota" => &mut iota_images.get_or_insert_with(|| vec![None; alg.len()])[g],
                    _ => {
                        if declared_dbar.insert(g, rhs).is_some() {
                            return err(DiagCode::DuplicateEntry, kw_at, format!("second `dbar {gname}` line"));
                        }
                        continue;
                    }
                };
                if slot.replace(rhs).is_some() {
                    return err(DiagCode::DuplicateEntry, kw_at, format!("second `{kw} {gname}` line"));
                }
            }
            "metric" => {
                let (kind, at) = cur.ident("metric kind")?;
                cur.finish()?;
                if kind != "orthonormal" {
                    return err(DiagCode::Syntax, at, "only `metric orthonormal` is supported");
                }
                metric = true;
            }
            "orient" => {
                if orientation.is_some() {
                    return err(DiagCode::DuplicateEntry, kw_at, "orientation declared twice");
                }
                let negative = cur.eat(&Tok::Minus);
                let at = cur.at();
                let (sign, mono) = scope.parse_monomial(&mut cur)?;
                cur.finish()?;
                if mono != alg.top() {
                    return err(DiagCode::DegreeMismatch, at, "orientation must name every generator exactly once");
                }
                orientation = Some(if negative { -sign } else { sign });
            }
            _ => unreachable!("filtered in pass 1"),
        }
    }

    let zero = Form::zero(&alg);
    let d_images = d_images.into_iter().map(|f| Some(f.unwrap_or_else(|| zero.clone()))).collect();
    let differential = Derivation::new(&alg, Parity::Raising, d_images).expect("degrees checked while parsing");
    let contraction = iota_images.map(|imgs| {
        let imgs = imgs.into_iter().map(|f| Some(f.unwrap_or_else(|| zero.clone()))).collect();
        Derivation::new(&alg, Parity::Lowering, imgs).expect("degrees checked while parsing")
    });

    Ok(Model { name, param, alg, differential, contraction, metric, orientation, declared_dbar })
}

fn parse_generator(cur: &mut Cursor) -> Result<GenDecl, ParseError> {
    let (name, at) = cur.ident("generator name")?;
    cur.expect(&Tok::Colon)?;
    let mut degree = None;
    let mut kind = None;
    let mut conj = None;
    loop {
        let (key, key_at) = cur.ident("`deg`, `type` or `conj`")?;
        cur.expect(&Tok::Equals)?;
        match key.as_str() {
            "deg" => {
                let num_at = cur.at();
                let k: u32 = match cur.next() {
                    Some(Tok::Number(n)) => n
                        .parse()
                        .map_or_else(|_| err(DiagCode::MalformedScalar, num_at, "bad degree"), Ok)?,
                    _ => return err(DiagCode::Syntax, num_at, "expected a degree"),
                };
                if k.is_multiple_of(2) {
                    return err(
                        DiagCode::UnsupportedDegree,
                        num_at,
                        "only odd-degree generators are supported (exterior algebra)",
                    );
                }
                degree = Some(k);
            }
            "type" => {
                let t_at = cur.at();
                if cur.eat(&Tok::LParen) {
                    let a = cur.next().cloned();
                    cur.expect(&Tok::Comma)?;
                    let b = cur.next().cloned();
                    cur.expect(&Tok::RParen)?;
                    kind = Some(match (a, b) {
                        (Some(Tok::Number(a)), Some(Tok::Number(b))) if a == "1" && b == "0" => GenType::Holomorphic,
                        (Some(Tok::Number(a)), Some(Tok::Number(b))) if a == "0" && b == "1" => GenType::Antiholomorphic,
                        _ => return err(DiagCode::Syntax, t_at, "type must be (1,0), (0,1) or real"),
                    });
                } else {
                    match cur.ident("type")? {
                        (t, _) if t == "real" => kind = Some(GenType::Real),
                        (_, at) => return err(DiagCode::Syntax, at, "type must be (1,0), (0,1) or real"),
                    }
                }
            }
            "conj" => conj = Some(cur.ident("conjugate name")?),
            other => return err(DiagCode::Syntax, key_at, format!("unknown generator attribute `{other}`")),
        }
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }
    cur.finish()?;
    let Some(degree) = degree else {
        return err(DiagCode::Syntax, at, "generator needs `deg=K`");
    };
    if degree != 1 && kind.and_then(GenType::bidegree).is_some() {
        return err(DiagCode::DegreeMismatch, at, "only degree-1 generators can carry a (1,0) or (0,1) type");
    }
    debug_assert!(cur.done());
    Ok(GenDecl { name, at, degree, kind, conj })
}

fn build_algebra(decls: &[GenDecl], param: Option<&str>) -> Result<Algebra, ParseError> {
    if decls.len() > 24 {
        return err(DiagCode::Syntax, decls[24].at, "at most 24 generators are supported");
    }
    let mut generators: Vec<Generator> = Vec::with_capacity(decls.len());
    for (i, d) in decls.iter().enumerate() {
        if d.name == "i" || Some(d.name.as_str()) == param {
            return err(DiagCode::DuplicateGenerator, d.at, format!("`{}` is reserved", d.name));
        }
        if decls[..i].iter().any(|e| e.name == d.name) {
            return err(DiagCode::DuplicateGenerator, d.at, format!("generator `{}` declared twice", d.name));
        }
        generators.push(Generator { name: d.name.clone(), degree: d.degree, kind: d.kind, conj: None });
    }
    for (i, d) in decls.iter().enumerate() {
        let Some((partner, at)) = &d.conj else { continue };
        let j = decls
            .iter()
            .position(|e| &e.name == partner)
            .map_or_else(|| err(DiagCode::UnknownGenerator, *at, format!("unknown generator `{partner}`")), Ok)?;
        let back = decls[j].conj.as_ref().map(|(n, _)| n.as_str());
        if back.is_some_and(|b| b != d.name) {
            return err(DiagCode::BadConjugate, *at, format!("`{partner}` declares a different conjugate"));
        }
        let compatible = match (d.kind, decls[j].kind) {
            (Some(a), Some(b)) => a.conjugate() == b,
            (None, None) => true,
            _ => false,
        };
        if !compatible || decls[j].degree != d.degree || (i == j && d.kind.and_then(GenType::bidegree).is_some()) {
            return err(DiagCode::BadConjugate, *at, format!("`{partner}` cannot be the conjugate of `{}`", d.name));
        }
        generators[i].conj = Some(j);
        generators[j].conj = Some(i);
    }
    Ok(Algebra::new(generators))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "model tiny\nparam s\ngenerator a : deg=1\ngenerator b : deg=1\nd a = 2*a^b\niota b = 1 - s\nend\n";

    #[test]
    fn parses_minimal_model() {
        let m = parse_model(TINY).unwrap();
        assert_eq!(m.name(), "tiny");
        assert_eq!(m.algebra().len(), 2);
        assert!(m.contraction().is_some());
        assert!(m.is_parametric());
    }

    #[test]
    fn undeclared_generator_in_d_line() {
        let e = parse_model("model x\ngenerator a : deg=1\nd a = a^zz\nend\n").unwrap_err();
        assert_eq!(e.code, DiagCode::UnknownGenerator);
        assert_eq!((e.line, e.col), (3, 9));
    }

    #[test]
    fn distinct_codes_for_distinct_failures() {
        let cases = [
            ("model x\ngenerator a : deg=1\ngenerator a : deg=1\nend\n", DiagCode::DuplicateGenerator),
            ("model x\ngenerator a : deg=1\nd a = a\nend\n", DiagCode::DegreeMismatch),
            ("model x\ngenerator a : deg=1\ngenerator b : deg=1\nd a = 1/0*a^b\nend\n", DiagCode::MalformedScalar),
            ("model x\ngenerator a : deg=1\n", DiagCode::MissingEnd),
            ("model x\nfoo bar\nend\n", DiagCode::UnknownSection),
            ("model x\ngenerator a : deg=2\nend\n", DiagCode::UnsupportedDegree),
            ("generator a : deg=1\nend\n", DiagCode::MissingModel),
        ];
        for (src, code) in cases {
            let e = parse_model(src).unwrap_err();
            assert_eq!(e.code, code, "{src}");
            assert!(e.line >= 1 && e.col >= 1);
        }
    }

    #[test]
    fn scalar_syntax() {
        let src = "model x\ngenerator a : deg=1\ngenerator b : deg=1\ngenerator c : deg=1\nd a = (1/2+3i)*b^c\nd b = -i b^c\nd c = 2i*a^b − 1/3 a^c\nend\n";
        let m = parse_model(src).unwrap();
        assert_eq!(m.differential().image(0).unwrap().to_string(), "(1/2+3i)*b^c");
        assert_eq!(m.differential().image(1).unwrap().to_string(), "-i*b^c");
        assert_eq!(m.differential().image(2).unwrap().to_string(), "2i*a^b - 1/3*a^c");
    }

    #[test]
    fn monomial_order_sign_is_absorbed() {
        let m = parse_model("model x\ngenerator a : deg=1\ngenerator b : deg=1\ngenerator c : deg=1\nd a = c^b\nend\n").unwrap();
        assert_eq!(m.differential().image(0).unwrap().to_string(), "-b^c");
    }

    #[test]
    fn conjugates_are_symmetrized() {
        let m = parse_model(
            "model t\ngenerator β : deg=1, type=(1,0), conj=β̄\ngenerator β̄ : deg=1, type=(0,1)\nend\n",
        )
        .unwrap();
        assert_eq!(m.algebra().generators()[1].conj, Some(0));
        let bad = parse_model("model t\ngenerator β : deg=1, type=(1,0), conj=γ\ngenerator γ : deg=1, type=(1,0)\nend\n")
            .unwrap_err();
        assert_eq!(bad.code, DiagCode::BadConjugate);
    }

    #[test]
    fn orientation_must_be_top() {
        let e = parse_model("model x\ngenerator a : deg=1\ngenerator b : deg=1\norient a\nend\n").unwrap_err();
        assert_eq!(e.code, DiagCode::DegreeMismatch);
        let m = parse_model("model x\ngenerator a : deg=1\ngenerator b : deg=1\norient b^a\nend\n").unwrap();
        assert_eq!(m.orientation(), Some(-1));
    }

    #[test]
    fn round_trip_through_dsl() {
        let m = parse_model(TINY).unwrap();
        assert_eq!(parse_model(&m.to_dsl()).unwrap(), m);
    }
}
