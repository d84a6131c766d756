//! Text front ends: the function-spec mini-grammar and the equation format.
//!
//! Function specs (LL(1), whitespace-insensitive):
//!
//! ```text
//! spec    := product EOF
//! product := factor (('*' | '/') factor)*
//! factor  := 'exp' '(' 'z' ['^' INT] ')' | 'prod' '(' 'lambda' '=' REAL ')'
//!          | 'cossqrt' | 'poly' '(' complex (',' complex)* ')'
//!          | 'rat' '(' 'zeros' '=' list ';' 'poles' '=' list [';' 'scale' '=' complex] ')'
//!          | 'series' '(' NAME ')' | '(' product ')'
//! list    := '[' [complex (',' complex)*] ']'
//! complex := ['+'|'-'] part [('+'|'-') part]      part := NUM ['i'] | 'i'
//! ```
//!
//! Equations are either lines `P[j] = <poly>` (difference form), `Q[j] =
//! <poly>` (shift form), `a[j] = <poly>` (form from the caller), or one
//! linear expression in the operators `D<j>` (`Δ^j`) or `S<j>` (shift by
//! `j`), e.g. `z*D2 - D0` or `S1 - z*S0 = 0`. Coefficients are exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diffops::{Form, LinearDifferenceEquation, Polynomial};
use crate::funcmodel::FunctionModel;
use crate::series::PowerSeries;

/// `pos` is a 0-based character offset into the input.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("parse error at column {}: {message}", pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) => write!(f, "number '{s}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(src: &str, offset: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            if text.matches('.').count() > 1 {
                return Err(ParseError { pos: offset + start, message: format!("malformed number '{text}'") });
            }
            out.push(Token { tok: Tok::Num(text), pos: offset + start });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos: offset + start });
            continue;
        }
        if "()[],;=*/+-^".contains(c) {
            out.push(Token { tok: Tok::Sym(c), pos: offset + start });
            i += 1;
            continue;
        }
        return Err(ParseError { pos: offset + start, message: format!("unexpected character '{c}'") });
    }
    out.push(Token { tok: Tok::End, pos: offset + chars.len() });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    fn new(src: &str, offset: usize) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src, offset)?, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> usize {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), message: format!("expected {expected}, found {}", self.peek()) })
    }

    fn at_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(&format!("'{c}'"))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), ParseError> {
        if *self.peek() == Tok::Ident(name.into()) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("'{name}'"))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) if s.chars().all(|c| c.is_ascii_digit()) => {
                let pos = self.pos();
                self.bump();
                s.parse().map_err(|_| ParseError { pos, message: format!("integer '{s}' out of range") })
            }
            _ => self.error("a non-negative integer"),
        }
    }

    fn real(&mut self) -> Result<f64, ParseError> {
        let neg = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                let v: f64 = s.parse().expect("lexer produces valid numbers");
                Ok(if neg { -v } else { v })
            }
            _ => self.error("a number"),
        }
    }

    /// `NUM ['i'] | 'i'`, returning `(value, imaginary)`.
    fn complex_part(&mut self) -> Result<(f64, bool), ParseError> {
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                let v: f64 = s.parse().expect("lexer produces valid numbers");
                if *self.peek() == Tok::Ident("i".into()) {
                    self.bump();
                    Ok((v, true))
                } else {
                    Ok((v, false))
                }
            }
            Tok::Ident(s) if s == "i" => {
                self.bump();
                Ok((1.0, true))
            }
            _ => self.error("a number"),
        }
    }

    fn complex(&mut self) -> Result<Complex64, ParseError> {
        let sign = if self.eat_sym('-') {
            -1.0
        } else {
            self.eat_sym('+');
            1.0
        };
        let (v, imag) = self.complex_part()?;
        let mut z = if imag { Complex64::new(0.0, sign * v) } else { Complex64::new(sign * v, 0.0) };
        if !imag && (self.at_sym('+') || self.at_sym('-')) {
            let s2 = if self.eat_sym('-') {
                -1.0
            } else {
                self.bump();
                1.0
            };
            let pos = self.pos();
            let (w, imag2) = self.complex_part()?;
            if !imag2 {
                return Err(ParseError { pos, message: "expected an imaginary part like '2i'".into() });
            }
            z.im = s2 * w;
        }
        Ok(z)
    }

    fn complex_list(&mut self, close: char) -> Result<Vec<Complex64>, ParseError> {
        let mut out = Vec::new();
        if self.at_sym(close) {
            return Ok(out);
        }
        out.push(self.complex()?);
        while self.eat_sym(',') {
            out.push(self.complex()?);
        }
        Ok(out)
    }

    fn spec_product(&mut self) -> Result<FunctionModel, ParseError> {
        let mut factors = vec![self.spec_factor()?];
        loop {
            if self.eat_sym('*') {
                factors.push(self.spec_factor()?);
            } else if self.at_sym('/') {
                let pos = self.pos();
                self.bump();
                let den = self.spec_factor()?;
                let num = FunctionModel::product(std::mem::take(&mut factors));
                let q = FunctionModel::quotient(num, den).map_err(|e| ParseError { pos, message: e.to_string() })?;
                factors.push(q);
            } else {
                return Ok(FunctionModel::product(factors));
            }
        }
    }

    fn spec_factor(&mut self) -> Result<FunctionModel, ParseError> {
        let pos = self.pos();
        let model_err = |e: crate::funcmodel::FuncError| ParseError { pos, message: e.to_string() };
        match self.peek().clone() {
            Tok::Sym('(') => {
                self.bump();
                let f = self.spec_product()?;
                self.expect_sym(')')?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "exp" => {
                        self.expect_sym('(')?;
                        self.expect_ident("z")?;
                        let k = if self.eat_sym('^') { self.integer()? } else { 1 };
                        self.expect_sym(')')?;
                        Ok(FunctionModel::exp_poly(k))
                    }
                    "prod" => {
                        self.expect_sym('(')?;
                        self.expect_ident("lambda")?;
                        self.expect_sym('=')?;
                        let l = self.real()?;
                        self.expect_sym(')')?;
                        FunctionModel::canonical_product(l).map_err(model_err)
                    }
                    "cossqrt" => Ok(FunctionModel::cos_sqrt()),
                    "poly" => {
                        self.expect_sym('(')?;
                        let mut c = vec![self.complex()?];
                        while self.eat_sym(',') {
                            c.push(self.complex()?);
                        }
                        self.expect_sym(')')?;
                        Ok(FunctionModel::polynomial(c))
                    }
                    "rat" => {
                        self.expect_sym('(')?;
                        self.expect_ident("zeros")?;
                        self.expect_sym('=')?;
                        self.expect_sym('[')?;
                        let zeros = self.complex_list(']')?;
                        self.expect_sym(']')?;
                        self.expect_sym(';')?;
                        self.expect_ident("poles")?;
                        self.expect_sym('=')?;
                        self.expect_sym('[')?;
                        let poles = self.complex_list(']')?;
                        self.expect_sym(']')?;
                        let scale = if self.eat_sym(';') {
                            self.expect_ident("scale")?;
                            self.expect_sym('=')?;
                            self.complex()?
                        } else {
                            Complex64::new(1.0, 0.0)
                        };
                        self.expect_sym(')')?;
                        FunctionModel::rational(zeros, poles, scale).map_err(model_err)
                    }
                    "series" => {
                        self.expect_sym('(')?;
                        let npos = self.pos();
                        let name = match self.bump().tok {
                            Tok::Ident(n) => n,
                            t => return Err(ParseError { pos: npos, message: format!("expected a series name, found {t}") }),
                        };
                        self.expect_sym(')')?;
                        let s = PowerSeries::named(&name)
                            .ok_or_else(|| ParseError { pos: npos, message: format!("unknown series '{name}'") })?;
                        FunctionModel::power_series(s).map_err(model_err)
                    }
                    _ => Err(ParseError { pos, message: format!("unknown function '{name}'") }),
                }
            }
            _ => self.error("a function"),
        }
    }
}

/// Parse a function spec such as `exp(z^2)*prod(lambda=0.5)`.
pub fn parse_function_spec(text: &str) -> Result<FunctionModel, ParseError> {
    let mut p = Parser::new(text, 0)?;
    let f = p.spec_product()?;
    p.expect_end()?;
    Ok(f)
}

/// Parse a complex literal such as `1`, `-2.5i` or `1+2i`.
pub fn parse_complex(text: &str) -> Result<Complex64, ParseError> {
    let mut p = Parser::new(text, 0)?;
    let z = p.complex()?;
    p.expect_end()?;
    Ok(z)
}

/// Exact value of a decimal literal.
fn decimal(text: &str) -> BigRational {
    let (mant, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (text, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits = format!("{int}{frac}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().expect("digits") };
    let shift = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        BigRational::from_integer(num * ten.pow(shift as u32))
    } else {
        BigRational::new(num, ten.pow((-shift) as u32))
    }
}

/// Operator key: `None` for a bare polynomial, else `(letter, order)`.
type OpKey = Option<(char, usize)>;
type LinForm = BTreeMap<OpKey, Polynomial>;

fn lin_add(a: &mut LinForm, b: LinForm, negate: bool) {
    for (k, p) in b {
        let p = if negate { -&p } else { p };
        let e = a.entry(k).or_default();
        *e = &*e + &p;
    }
    a.retain(|_, p| !p.is_zero());
}

fn lin_poly(p: Polynomial) -> LinForm {
    let mut m = LinForm::new();
    if !p.is_zero() {
        m.insert(None, p);
    }
    m
}

fn as_poly(f: &LinForm) -> Option<Polynomial> {
    match f.len() {
        0 => Some(Polynomial::zero()),
        1 => f.get(&None).cloned(),
        _ => None,
    }
}

impl Parser {
    fn lin_expr(&mut self) -> Result<LinForm, ParseError> {
        let mut acc = LinForm::new();
        let mut negate = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        loop {
            let t = self.lin_term()?;
            lin_add(&mut acc, t, negate);
            if self.eat_sym('+') {
                negate = false;
            } else if self.eat_sym('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn lin_term(&mut self) -> Result<LinForm, ParseError> {
        let mut acc = self.lin_power()?;
        loop {
            let pos = self.pos();
            if self.eat_sym('*') {
                let rhs = self.lin_power()?;
                acc = match (as_poly(&acc), as_poly(&rhs)) {
                    (Some(p), _) => rhs.into_iter().map(|(k, q)| (k, &p * &q)).filter(|(_, q)| !q.is_zero()).collect(),
                    (None, Some(p)) => acc.into_iter().map(|(k, q)| (k, &q * &p)).filter(|(_, q)| !q.is_zero()).collect(),
                    (None, None) => {
                        return Err(ParseError { pos, message: "product of two operator terms".into() });
                    }
                };
            } else if self.eat_sym('/') {
                let rhs = self.lin_power()?;
                let d = as_poly(&rhs)
                    .filter(|p| p.degree() == Some(0))
                    .ok_or_else(|| ParseError { pos, message: "can only divide by a non-zero constant".into() })?;
                let inv = BigRational::one() / d.coeffs()[0].clone();
                acc = acc.into_iter().map(|(k, q)| (k, q.scale(&inv))).collect();
            } else {
                return Ok(acc);
            }
        }
    }

    fn lin_power(&mut self) -> Result<LinForm, ParseError> {
        let pos = self.pos();
        let base = self.lin_atom()?;
        if self.eat_sym('^') {
            let e = self.integer()?;
            let p = as_poly(&base)
                .ok_or_else(|| ParseError { pos, message: "cannot raise an operator term to a power".into() })?;
            let mut out = Polynomial::constant(BigRational::one());
            for _ in 0..e {
                out = &out * &p;
            }
            return Ok(lin_poly(out));
        }
        Ok(base)
    }

    fn lin_atom(&mut self) -> Result<LinForm, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                Ok(lin_poly(Polynomial::constant(decimal(&s))))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.lin_expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "z" => {
                self.bump();
                Ok(lin_poly(Polynomial::z()))
            }
            Tok::Ident(name) => {
                let mut chars = name.chars();
                let letter = chars.next().unwrap();
                let rest: String = chars.collect();
                if (letter == 'D' || letter == 'S') && rest.chars().all(|c| c.is_ascii_digit()) {
                    self.bump();
                    let order = if rest.is_empty() {
                        1
                    } else {
                        rest.parse().map_err(|_| ParseError { pos, message: format!("operator order '{rest}' out of range") })?
                    };
                    let mut m = LinForm::new();
                    m.insert(Some((letter, order)), Polynomial::constant(BigRational::one()));
                    Ok(m)
                } else {
                    Err(ParseError { pos, message: format!("unknown symbol '{name}' (expected z, D<j> or S<j>)") })
                }
            }
            _ => self.error("a number, 'z', an operator or '('"),
        }
    }
}

fn form_conflict(pos: usize, found: Form, hint: Option<Form>) -> Result<Form, ParseError> {
    match hint {
        Some(h) if h != found => Err(ParseError { pos, message: format!("equation is in {found} form but {h} form was requested") }),
        _ => Ok(found),
    }
}

/// Parse the equation text format. `hint` fixes the form of `a[j]` lines
/// and must agree with explicit `P`/`Q`/`D`/`S` notation.
pub fn parse_equation(text: &str, hint: Option<Form>) -> Result<LinearDifferenceEquation, ParseError> {
    let lines: Vec<(usize, &str)> = {
        let mut off = 0;
        let mut v = Vec::new();
        for line in text.split('\n') {
            let body = line.split('#').next().unwrap_or("");
            if !body.trim().is_empty() {
                v.push((off, body));
            }
            off += line.chars().count() + 1;
        }
        v
    };
    if lines.is_empty() {
        return Err(ParseError { pos: 0, message: "empty equation".into() });
    }
    let indexed = lines.iter().any(|(_, l)| {
        let t = l.trim_start();
        ["P", "Q", "a"].iter().any(|p| t.strip_prefix(p).is_some_and(|r| r.trim_start().starts_with('[')))
    });
    if indexed {
        let mut form: Option<Form> = None;
        let mut coeffs: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (off, line) in &lines {
            let mut p = Parser::new(line, *off)?;
            let pos = p.pos();
            let letter = match p.bump().tok {
                Tok::Ident(s) if s == "P" || s == "Q" || s == "a" => s,
                t => return Err(ParseError { pos, message: format!("expected 'P[j]', 'Q[j]' or 'a[j]', found {t}") }),
            };
            let this = match letter.as_str() {
                "P" => form_conflict(pos, Form::Difference, hint)?,
                "Q" => form_conflict(pos, Form::Shift, hint)?,
                _ => hint.unwrap_or(Form::Difference),
            };
            if let Some(f) = form {
                if f != this {
                    return Err(ParseError { pos, message: "mixed shift and difference coefficients".into() });
                }
            }
            form = Some(this);
            p.expect_sym('[')?;
            let jpos = p.pos();
            let j = p.integer()? as usize;
            p.expect_sym(']')?;
            p.expect_sym('=')?;
            let epos = p.pos();
            let e = p.lin_expr()?;
            p.expect_end()?;
            let poly = as_poly(&e).ok_or_else(|| ParseError { pos: epos, message: "coefficient must be a polynomial in z".into() })?;
            if coeffs.insert(j, poly).is_some() {
                return Err(ParseError { pos: jpos, message: format!("coefficient {j} given twice") });
            }
        }
        let n = *coeffs.keys().max().unwrap();
        let list = (0..=n).map(|j| coeffs.remove(&j).unwrap_or_default()).collect();
        return LinearDifferenceEquation::new(form.unwrap(), list)
            .map_err(|e| ParseError { pos: 0, message: e.to_string() });
    }
    let joined: String = text.split('\n').map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    let mut p = Parser::new(&joined, 0)?;
    let lhs = p.lin_expr()?;
    if p.eat_sym('=') {
        let pos = p.pos();
        let rhs = p.lin_expr()?;
        if !rhs.is_empty() {
            return Err(ParseError { pos, message: "right-hand side must be 0".into() });
        }
    }
    p.expect_end()?;
    if lhs.contains_key(&None) {
        return Err(ParseError { pos: 0, message: "every term needs an operator D<j> or S<j>".into() });
    }
    let letters: Vec<char> = lhs.keys().flatten().map(|(c, _)| *c).collect();
    if letters.is_empty() {
        return Err(ParseError { pos: 0, message: "equation has no non-zero term".into() });
    }
    if letters.iter().any(|c| *c != letters[0]) {
        return Err(ParseError { pos: 0, message: "mixed D and S operators".into() });
    }
    let form = form_conflict(0, if letters[0] == 'D' { Form::Difference } else { Form::Shift }, hint)?;
    let n = lhs.keys().flatten().map(|(_, j)| *j).max().unwrap();
    let mut list = vec![Polynomial::zero(); n + 1];
    for (k, poly) in lhs {
        list[k.unwrap().1] = poly;
    }
    LinearDifferenceEquation::new(form, list).map_err(|e| ParseError { pos: 0, message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcmodel::Kind;

    #[test]
    fn canonical_example() {
        let f = parse_function_spec("exp(z^2)*prod(lambda=0.5)").unwrap();
        assert!(matches!(f.kind(), Kind::ExpPolyProduct { k: 2, lambda } if *lambda == 0.5));
        let g = parse_function_spec(" exp ( z ^ 0 ) * prod ( lambda = 0.5 ) ").unwrap();
        assert!(matches!(g.kind(), Kind::ExpPolyProduct { k: 0, .. }));
    }

    #[test]
    fn simple_atoms() {
        assert!(matches!(parse_function_spec("cossqrt").unwrap().kind(), Kind::CosSqrt));
        let r = parse_function_spec("rat(zeros=[2];poles=[3])").unwrap();
        assert_eq!(r.poles_within(10.0).unwrap().len(), 1);
        let p = parse_function_spec("poly(1, 2-3i, -i)").unwrap();
        match p.kind() {
            Kind::Polynomial(c) => assert_eq!(c[1], Complex64::new(2.0, -3.0)),
            _ => panic!(),
        }
        assert!(parse_function_spec("series(exp)").is_ok());
    }

    #[test]
    fn trailing_comma_rejected() {
        let e = parse_function_spec("poly(1,0,)").unwrap_err();
        assert_eq!(e.pos, 9);
        assert!(e.message.contains("expected a number"));
    }

    #[test]
    fn unknown_and_trailing_garbage() {
        assert!(parse_function_spec("foo").is_err());
        assert_eq!(parse_function_spec("cossqrt cossqrt").unwrap_err().pos, 8);
        assert!(parse_function_spec("prod(lambda=1.5)").is_err());
    }

    #[test]
    fn equation_expression_forms() {
        let e = parse_equation("(z)*D2 + (1-z)*D0", None).unwrap();
        assert_eq!(e.form(), Form::Difference);
        assert_eq!(e.coeffs()[2], Polynomial::z());
        assert!(e.coeffs()[1].is_zero());
        let s = parse_equation("S1 - z*S0 = 0", None).unwrap();
        assert_eq!(s.form(), Form::Shift);
        assert_eq!(s.coeffs()[0], Polynomial::from_integers(&[0, -1]));
        assert!(parse_equation("D1 + S0", None).is_err());
        assert!(parse_equation("z*D1 + 1", None).is_err());
    }

    #[test]
    fn equation_lines() {
        let e = parse_equation("# gamma\nQ[1] = 1\nQ[0] = -z\n", None).unwrap();
        assert_eq!(e.form(), Form::Shift);
        let d = parse_equation("P[2] = z\nP[0] = -1/2 + 0.25*z^2", None).unwrap();
        assert_eq!(d.coeffs()[0].coeffs()[2], BigRational::new(1.into(), 4.into()));
        assert!(parse_equation("P[0] = 1\nQ[1] = 1", None).is_err());
        assert!(parse_equation("P[0] = 1", Some(Form::Shift)).is_err());
    }
}
