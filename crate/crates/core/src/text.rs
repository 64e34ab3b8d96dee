//! The polynomial text grammar and the system-file format.
//!
//! A system file is a header naming the variables (and optionally the
//! parameters), followed by one polynomial per line:
//!
//! ```text
//! # intersection of a circle and a cubic
//! variables: x, y
//! x^2 + y^2 - 1
//! x^2 - y^3 - y - 1
//! ```
//!
//! Identifiers are variables, `^` takes (possibly negative) integer powers,
//! `i` is the imaginary unit, and juxtaposition like `2x` multiplies.
//! Division is allowed by constants and single monomials only.

use num_complex::Complex64;

use crate::algebra::{Exponent, LaurentPolynomial, LaurentSystem};
use crate::error::ParseError;

/// A parsed system file: variable names, optional parameter names, and the
/// polynomials over variables-then-parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemFile {
    pub variables: Vec<String>,
    pub parameters: Vec<String>,
    pub system: LaurentSystem,
}

impl SystemFile {
    pub fn is_parametric(&self) -> bool {
        !self.parameters.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Imag,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line,
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.pos + 1, msg)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let col = self.pos + 1;
            match c {
                b' ' | b'\t' => {
                    self.pos += 1;
                }
                b'+' => {
                    out.push((Tok::Plus, col));
                    self.pos += 1;
                }
                b'-' => {
                    out.push((Tok::Minus, col));
                    self.pos += 1;
                }
                b'*' => {
                    out.push((Tok::Star, col));
                    self.pos += 1;
                }
                b'/' => {
                    out.push((Tok::Slash, col));
                    self.pos += 1;
                }
                b'^' => {
                    out.push((Tok::Caret, col));
                    self.pos += 1;
                }
                b'(' => {
                    out.push((Tok::LParen, col));
                    self.pos += 1;
                }
                b')' => {
                    out.push((Tok::RParen, col));
                    self.pos += 1;
                }
                b'0'..=b'9' | b'.' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                    {
                        self.pos += 1;
                    }
                    // decimal exponent like 1e-3 (not to be confused with ^)
                    if self.pos < self.src.len()
                        && (self.src[self.pos] == b'e' || self.src[self.pos] == b'E')
                    {
                        let mut look = self.pos + 1;
                        if look < self.src.len() && (self.src[look] == b'+' || self.src[look] == b'-')
                        {
                            look += 1;
                        }
                        if look < self.src.len() && self.src[look].is_ascii_digit() {
                            self.pos = look;
                            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                                self.pos += 1;
                            }
                        }
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let v: f64 = text
                        .parse()
                        .map_err(|_| self.error(format!("bad number literal `{text}`")))?;
                    out.push((Tok::Num(v), col));
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    if text == "i" {
                        out.push((Tok::Imag, col));
                    } else {
                        out.push((Tok::Ident(text.to_string()), col));
                    }
                }
                other => {
                    return Err(self.error(format!("unexpected character `{}`", other as char)));
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |(_, c)| *c)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            _ => Err(self.error(format!("expected {t:?}"))),
        }
    }

    // expr := term (("+"|"-") term)*
    fn expr(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (("*"|"/"|juxtaposition) unary)*
    fn term(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.divide(acc, rhs)?;
                }
                // juxtaposition: `2x`, `3i`, `2(x+1)`
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Imag) | Some(Tok::LParen) => {
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(
        &self,
        num: LaurentPolynomial,
        den: LaurentPolynomial,
    ) -> Result<LaurentPolynomial, ParseError> {
        if den.num_terms() != 1 {
            return Err(self.error("division is only supported by constants and monomials"));
        }
        let (e, c) = den.terms().next().map(|(e, c)| (e.clone(), *c)).unwrap();
        let inv = LaurentPolynomial::monomial(
            self.nvars(),
            Exponent(e.0.iter().map(|k| -k).collect()),
            Complex64::new(1.0, 0.0) / c,
        );
        Ok(num.mul(&inv))
    }

    // unary := "-" unary | power
    fn unary(&mut self) -> Result<LaurentPolynomial, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let p = self.unary()?;
            return Ok(p.scale(Complex64::new(-1.0, 0.0)));
        }
        if matches!(self.peek(), Some(Tok::Plus)) {
            self.bump();
            return self.unary();
        }
        self.power()
    }

    // power := primary ("^" signed_int)?
    fn power(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let base = self.primary()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.bump();
        let mut sign = 1i64;
        while matches!(self.peek(), Some(Tok::Minus) | Some(Tok::Plus)) {
            if matches!(self.bump(), Some(Tok::Minus)) {
                sign = -sign;
            }
        }
        let k = match self.bump() {
            Some(Tok::Num(v)) if v.fract() == 0.0 => sign * v as i64,
            _ => return Err(self.error("exponent must be an integer literal")),
        };
        self.pow_poly(base, k)
    }

    fn pow_poly(&self, base: LaurentPolynomial, k: i64) -> Result<LaurentPolynomial, ParseError> {
        if k == 0 {
            return Ok(LaurentPolynomial::constant(
                self.nvars(),
                Complex64::new(1.0, 0.0),
            ));
        }
        if k < 0 {
            if base.num_terms() != 1 {
                return Err(self.error("negative powers apply to monomials only"));
            }
            let (e, c) = base.terms().next().map(|(e, c)| (e.clone(), *c)).unwrap();
            let m = (-k) as i32;
            return Ok(LaurentPolynomial::monomial(
                self.nvars(),
                Exponent(e.0.iter().map(|x| x * k.abs()).map(|x| -x).collect()),
                c.powi(m).finv(),
            ));
        }
        let mut acc = base.clone();
        for _ in 1..k {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<LaurentPolynomial, ParseError> {
        match self.bump() {
            Some(Tok::Num(v)) => Ok(LaurentPolynomial::constant(
                self.nvars(),
                Complex64::new(v, 0.0),
            )),
            Some(Tok::Imag) => Ok(LaurentPolynomial::constant(
                self.nvars(),
                Complex64::new(0.0, 1.0),
            )),
            Some(Tok::Ident(name)) => {
                let idx = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| self.error(format!("undeclared variable `{name}`")))?;
                Ok(LaurentPolynomial::variable(self.nvars(), idx))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable, or `(`")),
        }
    }
}

/// Parses one polynomial over the given ordered names.
pub fn parse_polynomial(
    src: &str,
    names: &[String],
    line: usize,
) -> Result<LaurentPolynomial, ParseError> {
    let toks = Lexer::new(src, line).tokens()?;
    if toks.is_empty() {
        return Err(ParseError::new(line, 1, "empty polynomial"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        names,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error("trailing input after polynomial"));
    }
    Ok(poly)
}

fn parse_name_list(rest: &str, line: usize) -> Result<Vec<String>, ParseError> {
    let mut names = Vec::new();
    for part in rest.split(',') {
        let name = part.trim();
        if name.is_empty() {
            continue;
        }
        if name == "i" {
            return Err(ParseError::new(line, 1, "`i` is reserved for the imaginary unit"));
        }
        if !name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
            || name.chars().next().is_some_and(|c| c.is_ascii_digit())
        {
            return Err(ParseError::new(line, 1, format!("bad identifier `{name}`")));
        }
        if names.iter().any(|n| n == name) {
            return Err(ParseError::new(line, 1, format!("duplicate name `{name}`")));
        }
        names.push(name.to_string());
    }
    if names.is_empty() {
        return Err(ParseError::new(line, 1, "empty name list"));
    }
    Ok(names)
}

/// Parses a whole system file.
pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let mut variables: Option<Vec<String>> = None;
    let mut parameters: Vec<String> = Vec::new();
    let mut polys: Vec<LaurentPolynomial> = Vec::new();
    let mut all_names: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line
            .strip_prefix("variables:")
            .or_else(|| line.strip_prefix("vars:"))
        {
            if variables.is_some() {
                return Err(ParseError::new(line_no, 1, "duplicate variables header"));
            }
            if !polys.is_empty() {
                return Err(ParseError::new(line_no, 1, "header must precede polynomials"));
            }
            variables = Some(parse_name_list(rest, line_no)?);
            continue;
        }
        if let Some(rest) = line
            .strip_prefix("parameters:")
            .or_else(|| line.strip_prefix("params:"))
        {
            if !polys.is_empty() {
                return Err(ParseError::new(line_no, 1, "header must precede polynomials"));
            }
            parameters = parse_name_list(rest, line_no)?;
            continue;
        }
        let vars = variables
            .as_ref()
            .ok_or_else(|| ParseError::new(line_no, 1, "variables must be declared before use"))?;
        if all_names.is_empty() {
            all_names = vars.iter().chain(parameters.iter()).cloned().collect();
        }
        polys.push(parse_polynomial(line, &all_names, line_no)?);
    }
    let variables = variables.ok_or_else(|| ParseError::new(1, 1, "missing variables header"))?;
    if all_names.is_empty() {
        all_names = variables.iter().chain(parameters.iter()).cloned().collect();
    }
    Ok(SystemFile {
        system: LaurentSystem::new(all_names.len(), polys),
        variables,
        parameters,
    })
}

fn format_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn format_coeff(c: Complex64, has_monomial: bool) -> (bool, String) {
    // Returns (negative sign absorbed, magnitude text); empty text means
    // an implicit 1 coefficient.
    if c.im == 0.0 {
        let neg = c.re < 0.0;
        let a = c.re.abs();
        if a == 1.0 && has_monomial {
            (neg, String::new())
        } else {
            (neg, format_f64(a))
        }
    } else if c.re == 0.0 {
        let neg = c.im < 0.0;
        let a = c.im.abs();
        if a == 1.0 {
            (neg, "i".to_string())
        } else {
            (neg, format!("{}i", format_f64(a)))
        }
    } else {
        let im_sign = if c.im < 0.0 { "-" } else { "+" };
        (
            false,
            format!(
                "({} {} {}i)",
                format_f64(c.re),
                im_sign,
                format_f64(c.im.abs())
            ),
        )
    }
}

/// Formats one polynomial in descending graded-lex term order.
pub fn format_polynomial(p: &LaurentPolynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (k, (e, c)) in terms.iter().rev().enumerate() {
        let mono: Vec<String> = e
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(v, &k)| {
                if k == 1 {
                    names[v].clone()
                } else {
                    format!("{}^{}", names[v], k)
                }
            })
            .collect();
        let (neg, coeff) = format_coeff(**c, !mono.is_empty());
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut pieces: Vec<String> = Vec::new();
        if !coeff.is_empty() {
            pieces.push(coeff);
        }
        pieces.extend(mono);
        if pieces.is_empty() {
            pieces.push("1".to_string());
        }
        out.push_str(&pieces.join("*"));
    }
    out
}

/// Formats a whole system file; `parse_system` of the output reproduces the
/// input system exactly.
pub fn format_system(file: &SystemFile) -> String {
    let mut out = String::new();
    out.push_str("variables: ");
    out.push_str(&file.variables.join(", "));
    out.push('\n');
    if !file.parameters.is_empty() {
        out.push_str("parameters: ");
        out.push_str(&file.parameters.join(", "));
        out.push('\n');
    }
    let names: Vec<String> = file
        .variables
        .iter()
        .chain(file.parameters.iter())
        .cloned()
        .collect();
    for p in file.system.polys() {
        out.push_str(&format_polynomial(p, &names));
        out.push('\n');
    }
    out
}

/// Convenience: parse a non-parametric system from variable names + lines.
pub fn system_from_lines(vars: &[&str], lines: &[&str]) -> LaurentSystem {
    let mut text = format!("variables: {}\n", vars.join(", "));
    for l in lines {
        text.push_str(l);
        text.push('\n');
    }
    parse_system(&text).expect("fixture systems must parse").system
}
