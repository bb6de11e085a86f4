//! Expression front end: parses a textual series or limit term into its
//! narrowest classified form.
//!
//! The grammar (normative, whitespace insensitive, no implicit
//! multiplication, `^` binding tighter than `*`):
//!
//! ```text
//! expr      := term (('+' | '-') term)*
//! term      := factor ('*' factor)*
//! factor    := rational | 'u' | 'n' | '(' expr ')' | factor '^' exponent
//!            | '(-1)' '^' '(' ('u'|'n') ['-' '1'] ')'
//!            | rational '^' ('u'|'n')
//!            | ('sin' | 'cos') '(' linarg ')'
//!            | 'binom' '(' int ',' 'u' ')'
//! linarg    := [int ['*']] ('u'|'n') [('+'|'-') rational] ['*'] 'theta'
//!            | rational
//! exponent  := non-negative int
//! rational  := int ['/' positive-int]
//! ```
//!
//! `u` is the series index (sums run from `u = 1`), `n` the limit index,
//! `theta` stays symbolic. Classification prefers the closed-form-richest
//! class: degree-one polynomials become arithmetic progressions, exact
//! powers of `2u - 1` become odd-power terms, and mixed sums fall back to
//! linear combinations.

use std::fmt;

use crate::exact::{rat, Rational};
use crate::limits::FunctionExpr;
use crate::poly::Polynomial;
use crate::series::SeriesTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Int,
    Slash,
    Caret,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    Comma,
    Ident,
    End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Lex { position: usize, message: String },
    Syntax { position: usize, message: String },
    UnsupportedClass { message: String },
}

impl ParseError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { position, message: message.into() }
    }

    fn unsupported(message: impl Into<String>) -> Self {
        ParseError::UnsupportedClass { message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Lex { position, message } => {
                write!(f, "line 1, col {}: {}", position + 1, message)
            }
            ParseError::Syntax { position, message } => {
                write!(f, "line 1, col {}: {}", position + 1, message)
            }
            ParseError::UnsupportedClass { message } => {
                write!(f, "unsupported term class: {}", message)
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Tokenize the input. Total: every input yields a token stream ending in
/// `End`, or a lex error with position.
pub fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (kind, text) = if c.is_ascii_digit() {
            let mut text = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                text.push(chars[i]);
                i += 1;
            }
            (TokenKind::Int, text)
        } else if c.is_ascii_lowercase() {
            let mut text = String::new();
            while i < chars.len() && chars[i].is_ascii_lowercase() {
                text.push(chars[i]);
                i += 1;
            }
            (TokenKind::Ident, text)
        } else {
            i += 1;
            let kind = match c {
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '*' => TokenKind::Star,
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ',' => TokenKind::Comma,
                other => {
                    return Err(ParseError::Lex {
                        position: start,
                        message: format!("unexpected character '{}'", other),
                    })
                }
            };
            (kind, c.to_string())
        };
        tokens.push(Token { kind, text, position: start });
    }
    tokens.push(Token { kind: TokenKind::End, text: String::new(), position: chars.len() });
    Ok(tokens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IndexVar {
    SeriesU,
    LimitN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TrigKind {
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TrigArg {
    /// `(c * index + b) * theta`
    Linear { c: i64, b: Rational },
    /// constant angle, e.g. `sin(1/2)`: recognized but not summable
    Constant(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct TrigPart {
    kind: TrigKind,
    arg: TrigArg,
    power: u32,
}

/// Product shape of one grammar term: polynomial part times optional
/// alternating sign, geometric factor, trig factor and binomial factor.
#[derive(Debug, Clone)]
struct TermShape {
    poly: Polynomial,
    alt: bool,
    geo: Option<Rational>,
    trig: Option<TrigPart>,
    binom: Option<i64>,
}

impl TermShape {
    fn constant(c: Rational) -> Self {
        TermShape {
            poly: Polynomial::constant(c),
            alt: false,
            geo: None,
            trig: None,
            binom: None,
        }
    }

    fn index() -> Self {
        TermShape {
            poly: Polynomial::x(),
            alt: false,
            geo: None,
            trig: None,
            binom: None,
        }
    }

    fn signature(&self) -> (bool, Option<Rational>, Option<TrigPart>, Option<i64>) {
        (self.alt, self.geo.clone(), self.trig.clone(), self.binom)
    }

    fn mul(&self, other: &TermShape) -> Result<TermShape, ParseError> {
        let geo = match (&self.geo, &other.geo) {
            (Some(a), Some(b)) => Some(a * b),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        let trig = match (&self.trig, &other.trig) {
            (Some(a), Some(b)) => {
                if a.kind == b.kind && a.arg == b.arg {
                    Some(TrigPart { kind: a.kind, arg: a.arg.clone(), power: a.power + b.power })
                } else {
                    return Err(ParseError::unsupported(
                        "products of different trigonometric factors",
                    ));
                }
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        let binom = match (self.binom, other.binom) {
            (Some(_), Some(_)) => {
                return Err(ParseError::unsupported("products of two binomial factors"))
            }
            (a, b) => a.or(b),
        };
        Ok(TermShape {
            poly: &self.poly * &other.poly,
            alt: self.alt ^ other.alt,
            geo,
            trig,
            binom,
        })
    }

    fn negate(&mut self) {
        self.poly = -&self.poly;
    }
}

fn mul_shape_sums(a: &[TermShape], b: &[TermShape]) -> Result<Vec<TermShape>, ParseError> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(x.mul(y)?);
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    index: Option<IndexVar>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(ParseError::syntax(
                self.peek().position,
                format!("expected {}, found '{}'", what, self.describe_here()),
            ))
        }
    }

    fn describe_here(&self) -> String {
        let t = self.peek();
        if t.kind == TokenKind::End {
            "end of input".to_string()
        } else {
            t.text.clone()
        }
    }

    fn note_index(&mut self, name: &str, position: usize) -> Result<IndexVar, ParseError> {
        let var = match name {
            "u" => IndexVar::SeriesU,
            "n" => IndexVar::LimitN,
            _ => unreachable!(),
        };
        match self.index {
            None => {
                self.index = Some(var);
                Ok(var)
            }
            Some(existing) if existing == var => Ok(var),
            Some(_) => Err(ParseError::syntax(
                position,
                "cannot mix the series index 'u' and the limit index 'n'",
            )),
        }
    }

    fn parse_uint(&mut self, what: &str) -> Result<u64, ParseError> {
        let t = self.expect(TokenKind::Int, what)?;
        t.text.parse::<u64>().map_err(|_| {
            ParseError::syntax(t.position, format!("integer literal '{}' is too large", t.text))
        })
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek().kind == TokenKind::Minus {
            self.bump();
            true
        } else {
            false
        };
        let v = self.parse_uint("an integer")? as i64;
        Ok(if neg { -v } else { v })
    }

    /// `int ['/' positive-int]`, the leading int already consumed as `first`.
    fn finish_rational(&mut self, first: u64) -> Result<Rational, ParseError> {
        if self.peek().kind == TokenKind::Slash && self.peek2().kind == TokenKind::Int {
            self.bump();
            let den_tok = self.bump();
            let den: u64 = den_tok.text.parse().map_err(|_| {
                ParseError::syntax(den_tok.position, "denominator too large".to_string())
            })?;
            if den == 0 {
                return Err(ParseError::syntax(den_tok.position, "zero denominator"));
            }
            Ok(Rational::new(first as i64, den as i64))
        } else {
            Ok(Rational::from_int(first as i64))
        }
    }

    fn parse_expr(&mut self) -> Result<Vec<TermShape>, ParseError> {
        let mut shapes = self.parse_term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    shapes.extend(self.parse_term()?);
                }
                TokenKind::Minus => {
                    self.bump();
                    let mut rhs = self.parse_term()?;
                    for s in &mut rhs {
                        s.negate();
                    }
                    shapes.extend(rhs);
                }
                _ => break,
            }
        }
        Ok(shapes)
    }

    fn parse_term(&mut self) -> Result<Vec<TermShape>, ParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            let rhs = self.parse_factor()?;
            acc = mul_shape_sums(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Vec<TermShape>, ParseError> {
        // unary minus
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            let mut inner = self.parse_factor()?;
            for s in &mut inner {
                s.negate();
            }
            return Ok(inner);
        }
        let mut base = self.parse_primary()?;
        // generic postfix exponent; the alternating-sign and geometric forms
        // consume their '^' inside parse_primary
        while self.peek().kind == TokenKind::Caret {
            let caret_pos = self.peek().position;
            self.bump();
            let exp = self.parse_uint("a non-negative integer exponent")?;
            if exp > 64 {
                return Err(ParseError::syntax(caret_pos, "exponent larger than 64"));
            }
            base = pow_shapes(&base, exp as u32, caret_pos)?;
        }
        Ok(base)
    }

    fn parse_primary(&mut self) -> Result<Vec<TermShape>, ParseError> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Int => {
                self.bump();
                let first: u64 = t.text.parse().map_err(|_| {
                    ParseError::syntax(t.position, format!("integer literal '{}' is too large", t.text))
                })?;
                let r = self.finish_rational(first)?;
                // rational '^' index: geometric factor
                if self.peek().kind == TokenKind::Caret
                    && self.peek2().kind == TokenKind::Ident
                    && matches!(self.peek2().text.as_str(), "u" | "n")
                {
                    self.bump();
                    let idx = self.bump();
                    let var = self.note_index(&idx.text, idx.position)?;
                    if var == IndexVar::LimitN {
                        return Err(ParseError::unsupported(
                            "geometric factors in limit expressions",
                        ));
                    }
                    return Ok(vec![TermShape {
                        poly: Polynomial::one(),
                        alt: false,
                        geo: Some(r),
                        trig: None,
                        binom: None,
                    }]);
                }
                Ok(vec![TermShape::constant(r)])
            }
            TokenKind::Ident => match t.text.as_str() {
                "u" | "n" => {
                    self.bump();
                    self.note_index(&t.text, t.position)?;
                    Ok(vec![TermShape::index()])
                }
                "sin" | "cos" => {
                    self.bump();
                    let kind = if t.text == "sin" { TrigKind::Sin } else { TrigKind::Cos };
                    self.expect(TokenKind::LParen, "'('")?;
                    let arg = self.parse_linarg()?;
                    self.expect(TokenKind::RParen, "')'")?;
                    Ok(vec![TermShape {
                        poly: Polynomial::one(),
                        alt: false,
                        geo: None,
                        trig: Some(TrigPart { kind, arg, power: 1 }),
                        binom: None,
                    }])
                }
                "binom" => {
                    self.bump();
                    self.expect(TokenKind::LParen, "'('")?;
                    let a = self.parse_int()?;
                    self.expect(TokenKind::Comma, "','")?;
                    let idx = self.expect(TokenKind::Ident, "the series index 'u'")?;
                    if idx.text != "u" {
                        return Err(ParseError::syntax(
                            idx.position,
                            "binom takes the series index 'u'",
                        ));
                    }
                    self.note_index("u", idx.position)?;
                    self.expect(TokenKind::RParen, "')'")?;
                    Ok(vec![TermShape {
                        poly: Polynomial::one(),
                        alt: false,
                        geo: None,
                        trig: None,
                        binom: Some(a),
                    }])
                }
                "theta" => Err(ParseError::syntax(
                    t.position,
                    "theta may only appear inside sin(...) or cos(...)",
                )),
                other => Err(ParseError::syntax(
                    t.position,
                    format!("unknown identifier '{}'", other),
                )),
            },
            TokenKind::LParen => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                // '(-1)' '^' '(' index ['-' '1'] ')'
                if is_const_minus_one(&inner)
                    && self.peek().kind == TokenKind::Caret
                    && self.peek2().kind == TokenKind::LParen
                {
                    self.bump(); // ^
                    self.bump(); // (
                    let idx = self.expect(TokenKind::Ident, "the index 'u' or 'n'")?;
                    if !matches!(idx.text.as_str(), "u" | "n") {
                        return Err(ParseError::syntax(
                            idx.position,
                            "the alternating sign takes 'u' or 'n'",
                        ));
                    }
                    self.note_index(&idx.text, idx.position)?;
                    let mut shifted = false;
                    if self.peek().kind == TokenKind::Minus {
                        self.bump();
                        let one = self.expect(TokenKind::Int, "'1'")?;
                        if one.text != "1" {
                            return Err(ParseError::syntax(
                                one.position,
                                "the alternating exponent must be the index or index - 1",
                            ));
                        }
                        shifted = true;
                    }
                    self.expect(TokenKind::RParen, "')'")?;
                    // (-1)^(u-1) is the canonical alternating factor;
                    // (-1)^u = -(-1)^(u-1)
                    let coeff = if shifted { Rational::one() } else { -Rational::one() };
                    return Ok(vec![TermShape {
                        poly: Polynomial::constant(coeff),
                        alt: true,
                        geo: None,
                        trig: None,
                        binom: None,
                    }]);
                }
                Ok(inner)
            }
            _ => Err(ParseError::syntax(
                t.position,
                format!("expected a factor, found '{}'", self.describe_here()),
            )),
        }
    }

    fn parse_linarg(&mut self) -> Result<TrigArg, ParseError> {
        let t = self.peek().clone();
        let mut coeff: Option<i64> = None;
        match t.kind {
            TokenKind::Int | TokenKind::Minus => {
                let v = self.parse_int()?;
                // a following '/' means this was a constant rational angle
                if self.peek().kind == TokenKind::Slash {
                    self.bump();
                    let den = self.parse_uint("a positive denominator")?;
                    if den == 0 {
                        return Err(ParseError::syntax(t.position, "zero denominator"));
                    }
                    return Ok(TrigArg::Constant(Rational::new(v, den as i64)));
                }
                if self.peek().kind == TokenKind::RParen {
                    return Ok(TrigArg::Constant(Rational::from_int(v)));
                }
                if self.peek().kind == TokenKind::Star {
                    self.bump();
                }
                coeff = Some(v);
            }
            _ => {}
        }
        let idx = self.expect(TokenKind::Ident, "the index 'u' or 'n'")?;
        if !matches!(idx.text.as_str(), "u" | "n") {
            return Err(ParseError::syntax(
                idx.position,
                "trig arguments are linear in the index",
            ));
        }
        self.note_index(&idx.text, idx.position)?;
        let c = coeff.unwrap_or(1);
        let mut b = Rational::zero();
        match self.peek().kind {
            TokenKind::Plus => {
                self.bump();
                let first = self.parse_uint("a rational offset")?;
                b = self.finish_rational(first)?;
            }
            TokenKind::Minus => {
                self.bump();
                let first = self.parse_uint("a rational offset")?;
                b = -self.finish_rational(first)?;
            }
            _ => {}
        }
        if self.peek().kind == TokenKind::Star {
            self.bump();
        }
        let th = self.expect(TokenKind::Ident, "'theta'")?;
        if th.text != "theta" {
            return Err(ParseError::syntax(th.position, "expected 'theta'"));
        }
        Ok(TrigArg::Linear { c, b })
    }
}

fn is_const_minus_one(shapes: &[TermShape]) -> bool {
    shapes.len() == 1 && {
        let s = &shapes[0];
        !s.alt
            && s.geo.is_none()
            && s.trig.is_none()
            && s.binom.is_none()
            && s.poly == Polynomial::constant(-Rational::one())
    }
}

fn pow_shapes(
    base: &[TermShape],
    exp: u32,
    position: usize,
) -> Result<Vec<TermShape>, ParseError> {
    if exp == 0 {
        return Ok(vec![TermShape::constant(Rational::one())]);
    }
    let mut acc = base.to_vec();
    for _ in 1..exp {
        acc = mul_shape_sums(&acc, base)?;
    }
    // guard against pathological expansion
    if acc.len() > 4096 {
        return Err(ParseError::syntax(position, "expression grows too large"));
    }
    Ok(acc)
}

/// Merged term group: one polynomial per distinct (alt, geo, trig, binom)
/// signature.
struct Group {
    poly: Polynomial,
    alt: bool,
    geo: Option<Rational>,
    trig: Option<TrigPart>,
    binom: Option<i64>,
}

fn merge_groups(shapes: Vec<TermShape>) -> Vec<Group> {
    let mut groups: Vec<Group> = Vec::new();
    for s in shapes {
        match groups.iter_mut().find(|g| {
            (g.alt, g.geo.clone(), g.trig.clone(), g.binom) == s.signature()
        }) {
            Some(g) => g.poly = &g.poly + &s.poly,
            None => groups.push(Group {
                poly: s.poly,
                alt: s.alt,
                geo: s.geo,
                trig: s.trig,
                binom: s.binom,
            }),
        }
    }
    groups.retain(|g| !g.poly.is_zero());
    groups
}

/// What the parsed expression denotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Sum,
    Limit,
    RangeSum { from: i64, to: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Series(SeriesTerm),
    Function(FunctionExpr),
    RangePoly(Polynomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedExpr {
    pub target: Target,
    pub body: Body,
}

/// Does `p` equal `lead * (2x - 1)^deg` for its own leading coefficient?
fn odd_power_match(p: &Polynomial) -> Option<(Rational, u32)> {
    let deg = p.degree()?;
    if deg < 2 {
        return None;
    }
    let lead = p.leading()?.clone();
    let c = &lead / &rat(2, 1).pow(deg as i64);
    let odd = Polynomial::from_coeffs(vec![rat(-1, 1), rat(2, 1)]).pow(deg as u32);
    if *p == odd.scale(&c) {
        Some((c, deg as u32))
    } else {
        None
    }
}

/// Is `p` a monomial `c x^d`? Returns `(c, d)`.
fn monomial_match(p: &Polynomial) -> Option<(Rational, usize)> {
    let deg = p.degree()?;
    for i in 0..deg {
        if !p.coeff(i).is_zero() {
            return None;
        }
    }
    Some((p.leading()?.clone(), deg))
}

fn classify_series_group(g: Group) -> Result<(Rational, SeriesTerm), ParseError> {
    if let Some(a) = g.binom {
        if g.trig.is_some() || g.alt {
            return Err(ParseError::unsupported(
                "binomial factors combine only with a geometric base",
            ));
        }
        let (c, deg) = monomial_match(&g.poly)
            .filter(|(_, d)| *d == 0)
            .ok_or_else(|| {
                ParseError::unsupported("polynomial times binomial factor")
            })?;
        let _ = deg;
        let x = g.geo.unwrap_or_else(Rational::one);
        return Ok((c, SeriesTerm::Binomial { a, x }));
    }
    if let Some(trig) = g.trig {
        let arg = match &trig.arg {
            TrigArg::Linear { c, b } => (*c, b.clone()),
            TrigArg::Constant(_) => {
                return Err(ParseError::unsupported(
                    "constant trigonometric factors have no series class",
                ))
            }
        };
        if g.geo.is_some() {
            return Err(ParseError::unsupported("geometric times trigonometric factor"));
        }
        if trig.power != 1 {
            return Err(ParseError::unsupported(
                "trigonometric powers in series terms",
            ));
        }
        let (co, deg) = monomial_match(&g.poly).ok_or_else(|| {
            ParseError::unsupported("non-monomial polynomial times trigonometric factor")
        })?;
        match (trig.kind, arg.0, arg.1.is_zero(), g.alt, deg) {
            (TrigKind::Sin, 1, true, false, 0) => Ok((co, SeriesTerm::TrigSinSeries)),
            (TrigKind::Cos, 1, true, false, 0) => Ok((co, SeriesTerm::TrigCosSeries)),
            (TrigKind::Cos, 1, true, true, 0) => Ok((co, SeriesTerm::AltTrigCosSeries)),
            (TrigKind::Sin, 2, _, false, 0) if arg.1 == rat(-1, 1) => {
                Ok((co, SeriesTerm::OddTrigSinSeries))
            }
            (TrigKind::Sin, 1, true, true, d) if d % 2 == 1 => {
                Ok((co, SeriesTerm::AltPolySin((d as u32 + 1) / 2)))
            }
            (TrigKind::Cos, 1, true, true, d) if d >= 2 && d % 2 == 0 => {
                Ok((co, SeriesTerm::AltPolyCos(d as u32 / 2)))
            }
            _ => Err(ParseError::unsupported(format!(
                "trigonometric factor {}(({}u{:+})theta) with this combination",
                if trig.kind == TrigKind::Sin { "sin" } else { "cos" },
                arg.0,
                arg.1.to_f64(),
            ))),
        }
    } else if let Some(gr) = g.geo {
        let (c, deg) = monomial_match(&g.poly).ok_or_else(|| {
            ParseError::unsupported("polynomial times geometric products")
        })?;
        if deg != 0 {
            return Err(ParseError::unsupported("polynomial times geometric products"));
        }
        // fold an alternating sign into the ratio: (-1)^(u-1) g^u = -(-g)^u
        let (c, gr) = if g.alt { (-c, -gr) } else { (c, gr) };
        Ok((Rational::one(), SeriesTerm::Geometric { c, g: gr, start: 1 }))
    } else {
        let p = g.poly;
        let deg = p.degree().unwrap_or(0);
        if deg <= 1 {
            let a1 = p.eval_int(1);
            let d = p.coeff(1);
            let term = if g.alt {
                SeriesTerm::AltArithProg { a1, d }
            } else {
                SeriesTerm::ArithProg { a1, d }
            };
            return Ok((Rational::one(), term));
        }
        if let Some((c, deg)) = odd_power_match(&p) {
            let term = if g.alt {
                SeriesTerm::AltOddPoly(deg + 1)
            } else {
                SeriesTerm::OddPoly(deg + 1)
            };
            return Ok((c, term));
        }
        let term = if g.alt { SeriesTerm::AltPolyTerm(p) } else { SeriesTerm::PolyTerm(p) };
        Ok((Rational::one(), term))
    }
}

fn classify_series(groups: Vec<Group>) -> Result<SeriesTerm, ParseError> {
    if groups.is_empty() {
        return Ok(SeriesTerm::PolyTerm(Polynomial::zero()));
    }
    let mut members = Vec::new();
    for g in groups {
        members.push(classify_series_group(g)?);
    }
    if members.len() == 1 && members[0].0.is_one() {
        return Ok(members.into_iter().next().unwrap().1);
    }
    Ok(SeriesTerm::Combo(members))
}

fn classify_function_group(g: Group) -> Result<(Rational, FunctionExpr), ParseError> {
    if g.binom.is_some() {
        return Err(ParseError::unsupported("binomial factors in limit expressions"));
    }
    if g.geo.is_some() {
        return Err(ParseError::unsupported("geometric factors in limit expressions"));
    }
    if let Some(trig) = g.trig {
        let (c_idx, b) = match &trig.arg {
            TrigArg::Linear { c, b } => (*c, b.clone()),
            TrigArg::Constant(_) => {
                return Err(ParseError::unsupported(
                    "constant trigonometric factors have no limit class",
                ))
            }
        };
        let (co, deg) = monomial_match(&g.poly)
            .filter(|(_, d)| *d == 0)
            .ok_or_else(|| {
                ParseError::unsupported("polynomial times trigonometric limits")
            })?;
        let _ = deg;
        if g.alt || c_idx != 1 {
            return Err(ParseError::unsupported(
                "only sin/cos((n + beta) theta) limits are supported",
            ));
        }
        let expr = match (trig.kind, trig.power) {
            (TrigKind::Sin, 1) => FunctionExpr::TrigSin(b),
            (TrigKind::Cos, 1) => FunctionExpr::TrigCos(b),
            (TrigKind::Sin, 2) if b.is_zero() => FunctionExpr::TrigSinSq,
            _ => {
                return Err(ParseError::unsupported(
                    "trigonometric powers beyond sin^2(n theta)",
                ))
            }
        };
        return Ok((co, expr));
    }
    let expr = if g.alt {
        FunctionExpr::AltPoly(g.poly)
    } else {
        FunctionExpr::Poly(g.poly)
    };
    Ok((Rational::one(), expr))
}

fn classify_function(groups: Vec<Group>) -> Result<FunctionExpr, ParseError> {
    if groups.is_empty() {
        return Ok(FunctionExpr::Poly(Polynomial::zero()));
    }
    let mut members = Vec::new();
    for g in groups {
        members.push(classify_function_group(g)?);
    }
    if members.len() == 1 && members[0].0.is_one() {
        return Ok(members.into_iter().next().unwrap().1);
    }
    Ok(FunctionExpr::LinearCombo(members))
}

fn parse_to_groups(input: &str) -> Result<(Vec<Group>, Option<IndexVar>), ParseError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens, pos: 0, index: None };
    if parser.peek().kind == TokenKind::End {
        return Err(ParseError::syntax(0, "expected an expression"));
    }
    let shapes = parser.parse_expr()?;
    if parser.peek().kind != TokenKind::End {
        return Err(ParseError::syntax(
            parser.peek().position,
            format!("unexpected '{}' after the expression", parser.describe_here()),
        ));
    }
    Ok((merge_groups(shapes), parser.index))
}

/// Parse an expression and classify it: terms in `u` become series, terms
/// in `n` become limit expressions, index-free terms default to constant
/// series.
pub fn parse(input: &str) -> Result<ParsedExpr, ParseError> {
    let (groups, index) = parse_to_groups(input)?;
    match index {
        Some(IndexVar::LimitN) => Ok(ParsedExpr {
            target: Target::Limit,
            body: Body::Function(classify_function(groups)?),
        }),
        _ => Ok(ParsedExpr {
            target: Target::Sum,
            body: Body::Series(classify_series(groups)?),
        }),
    }
}

/// Parse a polynomial expression (for range sums); rejects alternating,
/// geometric, trigonometric and binomial factors.
pub fn parse_polynomial(input: &str) -> Result<Polynomial, ParseError> {
    let (groups, _) = parse_to_groups(input)?;
    let mut acc = Polynomial::zero();
    for g in groups {
        if g.alt || g.geo.is_some() || g.trig.is_some() || g.binom.is_some() {
            return Err(ParseError::unsupported(
                "range sums take polynomial summands only",
            ));
        }
        acc = &acc + &g.poly;
    }
    Ok(acc)
}

/// Parse a polynomial range-sum expression with explicit limits.
pub fn parse_range(input: &str, from: i64, to: i64) -> Result<ParsedExpr, ParseError> {
    let p = parse_polynomial(input)?;
    Ok(ParsedExpr { target: Target::RangeSum { from, to }, body: Body::RangePoly(p) })
}

/// Render a polynomial as a grammar-conformant expression in `var`.
pub fn poly_to_expr_string(p: &Polynomial, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for i in (0..p.coeffs().len()).rev() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if i == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&format!("{}*", mag));
            }
            if i == 1 {
                out.push_str(var);
            } else {
                out.push_str(&format!("{}^{}", var, i));
            }
        }
    }
    out
}

fn arith_poly(a1: &Rational, d: &Rational) -> Polynomial {
    Polynomial::from_coeffs(vec![a1 - d, d.clone()])
}

/// Render a series term back into the grammar. `None` for classes that the
/// grammar cannot express (registry families, quasi-even windows, explicit
/// start indices).
pub fn render_series(t: &SeriesTerm) -> Option<String> {
    match t {
        SeriesTerm::PolyTerm(p) => Some(poly_to_expr_string(p, "u")),
        SeriesTerm::AltPolyTerm(p) => {
            Some(format!("(-1)^(u-1) * ({})", poly_to_expr_string(p, "u")))
        }
        SeriesTerm::ArithProg { a1, d } => Some(poly_to_expr_string(&arith_poly(a1, d), "u")),
        SeriesTerm::AltArithProg { a1, d } => Some(format!(
            "(-1)^(u-1) * ({})",
            poly_to_expr_string(&arith_poly(a1, d), "u")
        )),
        SeriesTerm::OddPoly(k) if *k >= 3 => Some(format!("(2*u - 1)^{}", k - 1)),
        SeriesTerm::AltOddPoly(k) if *k >= 3 => {
            Some(format!("(-1)^(u-1) * (2*u - 1)^{}", k - 1))
        }
        SeriesTerm::OddPoly(_) | SeriesTerm::AltOddPoly(_) => None,
        SeriesTerm::Geometric { c, g, start } => {
            if *start != 1 {
                return None;
            }
            let (c2, g2, alt) = if g.is_negative() {
                (-c, -g, true)
            } else {
                (c.clone(), g.clone(), false)
            };
            let mut out = String::new();
            if alt {
                out.push_str("(-1)^(u-1) * ");
            }
            if c2.is_negative() {
                out.push_str(&format!("({}) * ", c2));
            } else if !c2.is_one() {
                out.push_str(&format!("{} * ", c2));
            }
            out.push_str(&format!("{}^u", g2));
            Some(out)
        }
        SeriesTerm::TrigSinSeries => Some("sin(u*theta)".to_string()),
        SeriesTerm::TrigCosSeries => Some("cos(u*theta)".to_string()),
        SeriesTerm::AltTrigCosSeries => Some("(-1)^(u-1) * cos(u*theta)".to_string()),
        SeriesTerm::OddTrigSinSeries => Some("sin(2*u-1*theta)".to_string()),
        SeriesTerm::AltPolySin(k) => {
            Some(format!("(-1)^(u-1) * u^{} * sin(u*theta)", 2 * k - 1))
        }
        SeriesTerm::AltPolyCos(k) => {
            Some(format!("(-1)^(u-1) * u^{} * cos(u*theta)", 2 * k))
        }
        SeriesTerm::Binomial { a, x } => {
            if x.is_one() {
                Some(format!("binom({}, u)", a))
            } else {
                Some(format!("{}^u * binom({}, u)", x, a))
            }
        }
        SeriesTerm::QuasiEvenPoly { .. } | SeriesTerm::EvenRegular { .. } => None,
        SeriesTerm::Combo(parts) => {
            let mut out = String::new();
            for (i, (c, part)) in parts.iter().enumerate() {
                let rendered = render_series(part)?;
                if i > 0 {
                    out.push_str(" + ");
                }
                if c.is_one() {
                    out.push_str(&format!("({})", rendered));
                } else {
                    out.push_str(&format!("({}) * ({})", c, rendered));
                }
            }
            Some(out)
        }
    }
}

/// Render a limit expression back into the grammar.
pub fn render_function(e: &FunctionExpr) -> Option<String> {
    match e {
        FunctionExpr::Poly(p) => Some(poly_to_expr_string(p, "n")),
        FunctionExpr::AltPoly(p) => {
            Some(format!("(-1)^(n-1) * ({})", poly_to_expr_string(p, "n")))
        }
        FunctionExpr::TrigSin(b) | FunctionExpr::TrigCos(b) => {
            let name = if matches!(e, FunctionExpr::TrigSin(_)) { "sin" } else { "cos" };
            if b.is_zero() {
                Some(format!("{}(n*theta)", name))
            } else if b.is_negative() {
                Some(format!("{}(n-{}*theta)", name, b.abs()))
            } else {
                Some(format!("{}(n+{}*theta)", name, b))
            }
        }
        FunctionExpr::TrigSinSq => Some("sin(n*theta)^2".to_string()),
        FunctionExpr::Spliced(..) => None,
        FunctionExpr::LinearCombo(parts) => {
            let mut out = String::new();
            for (i, (c, part)) in parts.iter().enumerate() {
                let rendered = render_function(part)?;
                if i > 0 {
                    out.push_str(" + ");
                }
                if c.is_one() {
                    out.push_str(&format!("({})", rendered));
                } else {
                    out.push_str(&format!("({}) * ({})", c, rendered));
                }
            }
            Some(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parsed_series(input: &str) -> SeriesTerm {
        match parse(input).unwrap().body {
            Body::Series(t) => t,
            other => panic!("expected series, got {:?}", other),
        }
    }

    fn parsed_function(input: &str) -> FunctionExpr {
        match parse(input).unwrap().body {
            Body::Function(e) => e,
            other => panic!("expected function, got {:?}", other),
        }
    }

    #[test]
    fn classification_spec_examples() {
        assert_eq!(
            parsed_series("(-1)^(u-1) * u"),
            SeriesTerm::AltArithProg { a1: Rational::one(), d: Rational::one() }
        );
        assert_eq!(
            parsed_series("2^u"),
            SeriesTerm::Geometric { c: Rational::one(), g: rat(2, 1), start: 1 }
        );
        let t = parsed_series("u^2 + 3*u - 1/2");
        match t {
            SeriesTerm::PolyTerm(p) => {
                assert_eq!(p.coeffs(), &[rat(-1, 2), rat(3, 1), rat(1, 1)]);
            }
            other => panic!("expected PolyTerm, got {:?}", other),
        }
    }

    #[test]
    fn narrow_classification() {
        assert_eq!(
            parsed_series("2*u - 1"),
            SeriesTerm::ArithProg { a1: Rational::one(), d: rat(2, 1) }
        );
        assert_eq!(parsed_series("(2*u - 1)^2"), SeriesTerm::OddPoly(3));
        assert_eq!(parsed_series("(-1)^(u-1) * (2*u - 1)^3"), SeriesTerm::AltOddPoly(4));
        assert_eq!(parsed_series("4*u^2 - 4*u + 1"), SeriesTerm::OddPoly(3));
        // scaled odd powers keep the coefficient outside
        match parsed_series("3 * (2*u - 1)^2") {
            SeriesTerm::Combo(parts) => {
                assert_eq!(parts.len(), 1);
                assert_eq!(parts[0].0, rat(3, 1));
                assert_eq!(parts[0].1, SeriesTerm::OddPoly(3));
            }
            other => panic!("expected combo, got {:?}", other),
        }
    }

    #[test]
    fn alternating_sign_variants() {
        // (-1)^u = -(-1)^(u-1)
        assert_eq!(
            parsed_series("(-1)^(u) * u"),
            SeriesTerm::AltArithProg { a1: -Rational::one(), d: -Rational::one() }
        );
        // two alternating signs cancel
        assert_eq!(
            parsed_series("(-1)^(u-1) * (-1)^(u-1) * u"),
            SeriesTerm::ArithProg { a1: Rational::one(), d: Rational::one() }
        );
    }

    #[test]
    fn geometric_variants() {
        assert_eq!(
            parsed_series("3 * 2^u"),
            SeriesTerm::Geometric { c: rat(3, 1), g: rat(2, 1), start: 1 }
        );
        assert_eq!(
            parsed_series("1/2^u"),
            SeriesTerm::Geometric { c: Rational::one(), g: rat(1, 2), start: 1 }
        );
        // alternating folds into a negative ratio
        assert_eq!(
            parsed_series("(-1)^(u-1) * 2^u"),
            SeriesTerm::Geometric { c: -Rational::one(), g: rat(-2, 1), start: 1 }
        );
        // (2^u)^2 = 4^u
        assert_eq!(
            parsed_series("2^u^2"),
            SeriesTerm::Geometric { c: Rational::one(), g: rat(4, 1), start: 1 }
        );
    }

    #[test]
    fn trig_series_classification() {
        assert_eq!(parsed_series("sin(u*theta)"), SeriesTerm::TrigSinSeries);
        assert_eq!(parsed_series("cos(u*theta)"), SeriesTerm::TrigCosSeries);
        assert_eq!(
            parsed_series("(-1)^(u-1) * cos(u*theta)"),
            SeriesTerm::AltTrigCosSeries
        );
        assert_eq!(parsed_series("sin(2*u-1*theta)"), SeriesTerm::OddTrigSinSeries);
        assert_eq!(
            parsed_series("(-1)^(u-1) * u^3 * sin(u*theta)"),
            SeriesTerm::AltPolySin(2)
        );
        assert_eq!(
            parsed_series("(-1)^(u-1) * u^2 * cos(u*theta)"),
            SeriesTerm::AltPolyCos(1)
        );
    }

    #[test]
    fn binomial_classification() {
        assert_eq!(
            parsed_series("binom(-2, u)"),
            SeriesTerm::Binomial { a: -2, x: Rational::one() }
        );
        assert_eq!(
            parsed_series("1/2^u * binom(4, u)"),
            SeriesTerm::Binomial { a: 4, x: rat(1, 2) }
        );
    }

    #[test]
    fn combos_and_mixed_sums() {
        match parsed_series("u + 2^u") {
            SeriesTerm::Combo(parts) => {
                assert_eq!(parts.len(), 2);
                assert!(parts
                    .iter()
                    .any(|(_, t)| matches!(t, SeriesTerm::ArithProg { .. })));
                assert!(parts
                    .iter()
                    .any(|(_, t)| matches!(t, SeriesTerm::Geometric { .. })));
            }
            other => panic!("expected combo, got {:?}", other),
        }
    }

    #[test]
    fn limit_classification() {
        match parsed_function("n^2 + 1") {
            FunctionExpr::Poly(p) => {
                assert_eq!(p.coeffs(), &[rat(1, 1), rat(0, 1), rat(1, 1)])
            }
            other => panic!("expected poly, got {:?}", other),
        }
        assert!(matches!(
            parsed_function("(-1)^(n) * (n^3 + 2)"),
            FunctionExpr::AltPoly(_)
        ));
        assert_eq!(parsed_function("sin(n+1/2*theta)"), FunctionExpr::TrigSin(rat(1, 2)));
        assert_eq!(parsed_function("cos(n-2*theta)"), FunctionExpr::TrigCos(rat(-2, 1)));
        assert_eq!(parsed_function("sin(n*theta)^2"), FunctionExpr::TrigSinSq);
    }

    #[test]
    fn errors_carry_positions() {
        match parse("u + $") {
            Err(ParseError::Lex { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected lex error, got {:?}", other),
        }
        match parse("u + ") {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected syntax error, got {:?}", other),
        }
        match parse("u u") {
            Err(ParseError::Syntax { .. }) => {}
            other => panic!("expected syntax error, got {:?}", other),
        }
        let rendered = parse("$").unwrap_err().to_string();
        assert_eq!(rendered, "line 1, col 1: unexpected character '$'");
    }

    #[test]
    fn unsupported_classes_name_the_factor() {
        assert!(matches!(
            parse("u * 2^u"),
            Err(ParseError::UnsupportedClass { .. })
        ));
        assert!(matches!(
            parse("sin(1/2)"),
            Err(ParseError::UnsupportedClass { .. })
        ));
        assert!(matches!(
            parse("u * sin(u*theta)"),
            Err(ParseError::UnsupportedClass { .. })
        ));
        assert!(matches!(
            parse("2^n"),
            Err(ParseError::UnsupportedClass { .. })
        ));
    }

    #[test]
    fn index_mixing_rejected() {
        assert!(matches!(parse("u + n"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn round_trip_parse_render_parse() {
        let inputs = [
            "u^2 + 3*u - 1/2",
            "(-1)^(u-1) * u",
            "(-1)^(u-1) * (u^3 - 2*u^2 + 5)",
            "2*u - 1",
            "(2*u - 1)^2",
            "3 * 2^u",
            "(-1)^(u-1) * 2^u",
            "sin(u*theta)",
            "cos(u*theta)",
            "sin(2*u-1*theta)",
            "(-1)^(u-1) * u^3 * sin(u*theta)",
            "binom(-3, u)",
            "1/2^u * binom(4, u)",
            "u + 2^u",
        ];
        for input in inputs {
            let first = parsed_series(input);
            let rendered = render_series(&first).unwrap_or_else(|| {
                panic!("'{}' classified to unrenderable {:?}", input, first)
            });
            let second = parsed_series(&rendered);
            assert_eq!(first, second, "round trip failed for '{}' -> '{}'", input, rendered);
        }
        for input in ["n^2 + 1", "sin(n+1/2*theta)", "sin(n*theta)^2", "(-1)^(n-1) * (n)"] {
            let first = parsed_function(input);
            let rendered = render_function(&first).unwrap();
            let second = parsed_function(&rendered);
            assert_eq!(first, second, "round trip failed for '{}' -> '{}'", input, rendered);
        }
    }

    #[test]
    fn classified_terms_evaluate_like_the_source_polynomial() {
        // soundness on a grid: the classified term evaluator agrees with
        // direct polynomial evaluation
        let p = Polynomial::from_coeffs(vec![rat(-1, 2), rat(3, 1), rat(0, 1), rat(2, 7)]);
        let rendered = poly_to_expr_string(&p, "u");
        let t = parsed_series(&rendered);
        for u in 1..=50 {
            assert_eq!(t.term_exact(u).unwrap(), p.eval_int(u));
        }
        let alt = parsed_series(&format!("(-1)^(u-1) * ({})", rendered));
        for u in 1..=50 {
            assert_eq!(
                alt.term_exact(u).unwrap(),
                crate::exact::neg_one_pow(u - 1) * p.eval_int(u)
            );
        }
    }

    #[test]
    fn range_sum_parsing() {
        let p = parse_polynomial("u^2 - u").unwrap();
        assert_eq!(p.coeffs(), &[rat(0, 1), rat(-1, 1), rat(1, 1)]);
        assert!(parse_polynomial("2^u").is_err());
        let pe = parse_range("u", 1, -3).unwrap();
        assert_eq!(pe.target, Target::RangeSum { from: 1, to: -3 });
    }

    #[test]
    fn constant_expression_defaults_to_series() {
        let pe = parse("5").unwrap();
        assert_eq!(pe.target, Target::Sum);
        match pe.body {
            Body::Series(SeriesTerm::ArithProg { a1, d }) => {
                assert_eq!(a1, rat(5, 1));
                assert!(d.is_zero());
            }
            other => panic!("expected constant series, got {:?}", other),
        }
    }

    #[test]
    fn tokenizer_totality_on_junk() {
        // arbitrary strings either tokenize or fail with a position
        for junk in ["((((", "1//2", "u^^2", "sin()", ")u(", "1/0", "9999999999999999999999"] {
            let _ = parse(junk); // must not panic
        }
    }
}
