//! Text format for sequences and polynomial equations over them.
//!
//! Sequences come in two forms: a closed form `exp c*[root]^n*n^k + ...`
//! and a recurrence `rec order=m coeffs=[k_0,...] init=[a_0,...]` meaning
//! a(n+m) = k_0*a(n) + ... + k_{m-1}*a(n+m-1). Roots inside brackets are
//! products of `w(j/M)` (the root of unity e^(2*pi*i*j/M)), integers,
//! rationals, and prime powers with integer or fractional exponents.
//! Equations are sums of terms `coeff*Y^j` set to zero, where a coefficient
//! is a parenthesized sequence, a bare geometric term, or scalar factors.
//! The printers emit canonical forms that parse back to the same value.

use std::collections::BTreeMap;

use hadamard::cyclotomic::CyclotomicNumber;
use hadamard::radical::RadicalRoot;
use hadamard::scalar::Scalar;
use hadamard::sequences::{ExpPoly, Poly, Recurrence, Seq};
use hadamard::solver::{GeneralProblem, MonicProblem};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use thiserror::Error;

/// Parse failure with a 1-based source position. Syntax errors are token
/// mismatches; semantic errors are well-formed text with inadmissible
/// content (zero denominators, non-monic equations in monic mode, ...).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: u32, col: u32, message: String },
    #[error("semantic error at line {line}, column {col}: {message}")]
    Semantic { line: u32, col: u32, message: String },
}

impl ParseError {
    pub fn line(&self) -> u32 {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Semantic { line, .. } => *line,
        }
    }

    pub fn col(&self) -> u32 {
        match self {
            ParseError::Syntax { col, .. } | ParseError::Semantic { col, .. } => *col,
        }
    }
}

// ---------------------------------------------------------------------------
// tokens
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum TokKind {
    Int(String),
    Ident(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    line: u32,
    col: u32,
}

fn lex(input: &str) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let (tline, tcol) = (line, col);
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok { kind: TokKind::Int(s), line: tline, col: tcol });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok { kind: TokKind::Ident(s), line: tline, col: tcol });
            continue;
        }
        if "+-*/^()[]=,".contains(c) {
            chars.next();
            col += 1;
            toks.push(Tok { kind: TokKind::Sym(c), line: tline, col: tcol });
            continue;
        }
        return Err(ParseError::Syntax {
            line,
            col,
            message: format!("unexpected character '{c}'"),
        });
    }
    toks.push(Tok { kind: TokKind::Eof, line, col });
    Ok(toks)
}

// ---------------------------------------------------------------------------
// parser core
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(input)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos]
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, t: &Tok, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { line: t.line, col: t.col, message: message.into() })
    }

    fn semantic<T>(&self, t: &Tok, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Semantic { line: t.line, col: t.col, message: message.into() })
    }

    fn expect_sym(&mut self, c: char) -> Result<Tok, ParseError> {
        let t = self.next();
        if t.kind == TokKind::Sym(c) {
            Ok(t)
        } else {
            self.syntax(&t, format!("expected '{c}', found {}", describe(&t.kind)))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<Tok, ParseError> {
        let t = self.next();
        if t.kind == TokKind::Ident(name.to_string()) {
            Ok(t)
        } else {
            self.syntax(&t, format!("expected '{name}', found {}", describe(&t.kind)))
        }
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().kind == TokKind::Sym(c)
    }

    fn at_ident(&self, name: &str) -> bool {
        matches!(&self.peek().kind, TokKind::Ident(s) if s == name)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        let t = self.next();
        if t.kind == TokKind::Eof {
            Ok(())
        } else {
            self.syntax(&t, format!("expected end of input, found {}", describe(&t.kind)))
        }
    }

    // ----- numbers -------------------------------------------------------

    fn parse_u64(&mut self, what: &str) -> Result<u64, ParseError> {
        let t = self.next();
        match &t.kind {
            TokKind::Int(s) => s
                .parse::<u64>()
                .map_err(|_| ParseError::Semantic {
                    line: t.line,
                    col: t.col,
                    message: format!("{what} out of range: {s}"),
                }),
            _ => self.syntax(&t, format!("expected {what}, found {}", describe(&t.kind))),
        }
    }

    fn parse_i64_exponent(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym('-');
        let v = self.parse_u64("exponent")?;
        let v = i64::try_from(v).map_err(|_| ParseError::Semantic {
            line: self.peek().line,
            col: self.peek().col,
            message: "exponent out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn parse_bigint(&mut self, what: &str) -> Result<BigInt, ParseError> {
        let t = self.next();
        match &t.kind {
            TokKind::Int(s) => Ok(s.parse::<BigInt>().expect("digits")),
            _ => self.syntax(&t, format!("expected {what}, found {}", describe(&t.kind))),
        }
    }

    /// `int` or `int/int` as a nonnegative rational.
    fn parse_rational(&mut self) -> Result<BigRational, ParseError> {
        let n = self.parse_bigint("number")?;
        if self.at_sym('/') && matches!(self.peek2().kind, TokKind::Int(_)) {
            self.next();
            let dt = self.peek().clone();
            let d = self.parse_bigint("denominator")?;
            if d.is_zero() {
                return self.semantic(&dt, "zero denominator");
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    // ----- roots of unity and radical roots ------------------------------

    /// `w(j/M)`: the root of unity e^(2*pi*i*j/M).
    fn parse_root_of_unity(&mut self) -> Result<(u64, u64), ParseError> {
        self.expect_ident("w")?;
        self.expect_sym('(')?;
        let j = self.parse_u64("root-of-unity index")?;
        self.expect_sym('/')?;
        let mt = self.peek().clone();
        let m = self.parse_u64("root-of-unity order")?;
        if m == 0 {
            return self.semantic(&mt, "zero root-of-unity order");
        }
        self.expect_sym(')')?;
        Ok((m, j))
    }

    /// `^e` with e an integer or a parenthesized fraction `(a/b)`.
    fn parse_radical_exponent(&mut self) -> Result<Rational64, ParseError> {
        if self.eat_sym('(') {
            let neg = self.eat_sym('-');
            let a = self.parse_u64("exponent numerator")?;
            self.expect_sym('/')?;
            let bt = self.peek().clone();
            let b = self.parse_u64("exponent denominator")?;
            if b == 0 {
                return self.semantic(&bt, "zero exponent denominator");
            }
            self.expect_sym(')')?;
            let (a, b) = (a as i64, b as i64);
            Ok(Rational64::new(if neg { -a } else { a }, b))
        } else {
            Ok(Rational64::from_integer(self.parse_i64_exponent()?))
        }
    }

    /// Product of root factors inside `[...]`.
    fn parse_root(&mut self) -> Result<RadicalRoot, ParseError> {
        let mut acc = RadicalRoot::one();
        let mut first = true;
        loop {
            let neg = first && self.eat_sym('-');
            let t = self.peek().clone();
            let factor = match &t.kind {
                TokKind::Ident(s) if s == "w" => {
                    let (m, j) = self.parse_root_of_unity()?;
                    RadicalRoot::root_of_unity(m, j)
                }
                TokKind::Int(_) => {
                    let base = self.parse_rational()?;
                    if base.is_zero() {
                        return self.semantic(&t, "zero is not a valid root");
                    }
                    let base = RadicalRoot::from_rational(&base)
                        .map_err(|e| ParseError::Semantic {
                            line: t.line,
                            col: t.col,
                            message: e.to_string(),
                        })?;
                    if self.eat_sym('^') {
                        base.pow(self.parse_radical_exponent()?)
                    } else {
                        base
                    }
                }
                _ => {
                    return self.syntax(
                        &t,
                        format!("expected a root factor, found {}", describe(&t.kind)),
                    )
                }
            };
            let factor = if neg {
                factor.mul(&RadicalRoot::root_of_unity(2, 1))
            } else {
                factor
            };
            acc = acc.mul(&factor);
            first = false;
            if !self.eat_sym('*') {
                return Ok(acc);
            }
        }
    }

    // ----- scalars --------------------------------------------------------

    /// Single scalar factor: rational, `w(j/M)`, `base^e`, or a
    /// parenthesized scalar sum.
    fn parse_scalar_atom(&mut self) -> Result<Scalar, ParseError> {
        let t = self.peek().clone();
        match &t.kind {
            TokKind::Sym('(') => {
                self.next();
                let s = self.parse_scalar_sum()?;
                self.expect_sym(')')?;
                Ok(s)
            }
            TokKind::Ident(s) if s == "w" => {
                let (m, j) = self.parse_root_of_unity()?;
                Ok(Scalar::from_cyclotomic(CyclotomicNumber::root_of_unity(m, j)))
            }
            TokKind::Int(_) => {
                let base = self.parse_rational()?;
                if self.at_sym('^') {
                    self.next();
                    if base.is_zero() {
                        return self.semantic(&t, "zero base with an exponent");
                    }
                    let root = RadicalRoot::from_rational(&base)
                        .map_err(|e| ParseError::Semantic {
                            line: t.line,
                            col: t.col,
                            message: e.to_string(),
                        })?;
                    let e = self.parse_radical_exponent()?;
                    Ok(Scalar::from_radical(&root.pow(e)))
                } else {
                    Ok(Scalar::from_rational(base))
                }
            }
            _ => self.syntax(
                &t,
                format!("expected a scalar factor, found {}", describe(&t.kind)),
            ),
        }
    }

    fn parse_scalar_term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.parse_scalar_atom()?;
        while self.eat_sym('*') {
            acc = acc.mul(&self.parse_scalar_atom()?);
        }
        Ok(acc)
    }

    fn parse_scalar_sum(&mut self) -> Result<Scalar, ParseError> {
        let mut neg = false;
        if self.eat_sym('-') {
            neg = true;
        } else {
            self.eat_sym('+');
        }
        let first = self.parse_scalar_term()?;
        let mut acc = if neg { first.neg() } else { first };
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.parse_scalar_term()?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.parse_scalar_term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    // ----- exponential polynomials ----------------------------------------

    /// One multiplicative term `c*[root]^n*n^k` with factors in any order.
    fn parse_exp_term(&mut self) -> Result<ExpPoly, ParseError> {
        let mut scalar = Scalar::one();
        let mut root = RadicalRoot::one();
        let mut npow: usize = 0;
        loop {
            let t = self.peek().clone();
            match &t.kind {
                TokKind::Sym('[') => {
                    self.next();
                    root = root.mul(&self.parse_root()?);
                    self.expect_sym(']')?;
                    self.expect_sym('^')?;
                    self.expect_ident("n")?;
                }
                TokKind::Ident(s) if s == "n" => {
                    self.next();
                    let k = if self.eat_sym('^') { self.parse_u64("power of n")? } else { 1 };
                    if k > 512 {
                        return self.semantic(&t, "power of n too large");
                    }
                    npow += k as usize;
                }
                _ => scalar = scalar.mul(&self.parse_scalar_atom()?),
            }
            if !self.eat_sym('*') {
                break;
            }
        }
        let mut coeffs = vec![Scalar::zero(); npow];
        coeffs.push(scalar);
        Ok(ExpPoly::term(root, Poly::from_scalars(coeffs)))
    }

    fn parse_exp_sum(&mut self) -> Result<ExpPoly, ParseError> {
        let mut neg = false;
        if self.eat_sym('-') {
            neg = true;
        } else {
            self.eat_sym('+');
        }
        let first = self.parse_exp_term()?;
        let mut acc = if neg { first.neg() } else { first };
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.parse_exp_term()?);
            } else if self.eat_sym('-') {
                acc = acc.add(&self.parse_exp_term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    // ----- recurrences ------------------------------------------------------

    fn parse_cyclotomic_list(&mut self) -> Result<Vec<CyclotomicNumber>, ParseError> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if !self.at_sym(']') {
            loop {
                let t = self.peek().clone();
                let s = self.parse_scalar_sum()?;
                match s.as_cyclotomic() {
                    Some(c) => out.push(c),
                    None => {
                        return self.semantic(&t, "recurrence entries must be cyclotomic")
                    }
                }
                if !self.eat_sym(',') {
                    break;
                }
            }
        }
        self.expect_sym(']')?;
        Ok(out)
    }

    fn parse_rec(&mut self) -> Result<Seq, ParseError> {
        let at = self.expect_ident("rec")?;
        self.expect_ident("order")?;
        self.expect_sym('=')?;
        let order = self.parse_u64("order")?;
        self.expect_ident("coeffs")?;
        self.expect_sym('=')?;
        let ks = self.parse_cyclotomic_list()?;
        self.expect_ident("init")?;
        self.expect_sym('=')?;
        let init = self.parse_cyclotomic_list()?;
        if ks.len() as u64 != order || init.len() as u64 != order {
            return self.semantic(
                &at,
                format!(
                    "order {} does not match coeffs ({}) and init ({})",
                    order,
                    ks.len(),
                    init.len()
                ),
            );
        }
        // a(n+m) = sum k_i a(n+i)  <=>  a(n+m) + sum (-k_i) a(n+i) = 0
        let coeffs: Vec<CyclotomicNumber> = ks.iter().map(|k| k.neg()).collect();
        let rec = Recurrence::new(coeffs, init, BTreeMap::new())
            .map_err(|e| ParseError::Semantic { line: at.line, col: at.col, message: e.to_string() })?;
        rec.to_seq()
            .map_err(|e| ParseError::Semantic { line: at.line, col: at.col, message: e.to_string() })
    }

    fn parse_sequence_body(&mut self) -> Result<Seq, ParseError> {
        if self.at_ident("rec") {
            self.parse_rec()
        } else {
            self.expect_ident("exp")?;
            Ok(Seq::from(self.parse_exp_sum()?))
        }
    }

    // ----- equations --------------------------------------------------------

    /// One additive equation term: a product of coefficient factors with at
    /// most one `Y^j` factor. Returns (degree, coefficient).
    fn parse_eq_term(&mut self) -> Result<(usize, ExpPoly), ParseError> {
        let mut coeff = ExpPoly::constant(Scalar::one());
        let mut ypow: Option<usize> = None;
        loop {
            let t = self.peek().clone();
            match &t.kind {
                TokKind::Ident(s) if s == "Y" => {
                    self.next();
                    if ypow.is_some() {
                        return self.syntax(&t, "repeated Y factor in one term");
                    }
                    let j = if self.eat_sym('^') { self.parse_u64("Y exponent")? } else { 1 };
                    if j == 0 || j > 64 {
                        return self.semantic(&t, "Y exponent out of range (1..=64)");
                    }
                    ypow = Some(j as usize);
                }
                TokKind::Sym('(') if matches!(&self.peek2().kind, TokKind::Ident(k) if k == "exp" || k == "rec") =>
                {
                    self.next();
                    let seq = self.parse_sequence_body()?;
                    self.expect_sym(')')?;
                    if !seq.is_pure() {
                        return self.semantic(
                            &t,
                            "equation coefficients must be pure sequences (no prefix overrides)",
                        );
                    }
                    coeff = coeff.mul(seq.tail());
                }
                TokKind::Sym('[') => {
                    self.next();
                    let root = self.parse_root()?;
                    self.expect_sym(']')?;
                    self.expect_sym('^')?;
                    self.expect_ident("n")?;
                    coeff = coeff.mul(&ExpPoly::geometric(root));
                }
                TokKind::Ident(s) if s == "n" => {
                    self.next();
                    let k = if self.eat_sym('^') { self.parse_u64("power of n")? } else { 1 };
                    if k > 512 {
                        return self.semantic(&t, "power of n too large");
                    }
                    let mut coeffs = vec![Scalar::zero(); k as usize];
                    coeffs.push(Scalar::one());
                    coeff = coeff.mul(&ExpPoly::term(RadicalRoot::one(), Poly::from_scalars(coeffs)));
                }
                _ => coeff = coeff.scale(&self.parse_scalar_atom()?),
            }
            if !self.eat_sym('*') {
                break;
            }
        }
        Ok((ypow.unwrap_or(0), coeff))
    }

    fn parse_equation_body(&mut self) -> Result<EquationSpec, ParseError> {
        let start = self.peek().clone();
        let mut terms: Vec<(usize, ExpPoly)> = Vec::new();
        let mut neg = self.eat_sym('-');
        if !neg {
            self.eat_sym('+');
        }
        loop {
            let (j, c) = self.parse_eq_term()?;
            terms.push((j, if neg { c.neg() } else { c }));
            if self.eat_sym('+') {
                neg = false;
            } else if self.eat_sym('-') {
                neg = true;
            } else {
                break;
            }
        }
        self.expect_sym('=')?;
        let zt = self.peek().clone();
        match &zt.kind {
            TokKind::Int(s) if s == "0" => {
                self.next();
            }
            _ => return self.syntax(&zt, "equations must end in '= 0'"),
        }
        let d = terms.iter().map(|(j, _)| *j).max().unwrap_or(0);
        if d == 0 {
            return self.semantic(&start, "equation has no Y term");
        }
        let mut coeffs = vec![ExpPoly::zero(); d + 1];
        for (j, c) in terms {
            coeffs[j] = coeffs[j].add(&c);
        }
        if coeffs[d].is_zero() {
            return self.semantic(&start, "the leading coefficient is identically zero");
        }
        Ok(EquationSpec { coeffs })
    }
}

fn describe(k: &TokKind) -> String {
    match k {
        TokKind::Int(s) => format!("number '{s}'"),
        TokKind::Ident(s) => format!("'{s}'"),
        TokKind::Sym(c) => format!("'{c}'"),
        TokKind::Eof => "end of input".to_string(),
    }
}

// ---------------------------------------------------------------------------
// public API
// ---------------------------------------------------------------------------

/// A polynomial equation sum c_j Y^j = 0, coefficients indexed by degree.
/// The leading coefficient is never identically zero.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSpec {
    coeffs: Vec<ExpPoly>,
}

impl EquationSpec {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExpPoly] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[self.degree()] == ExpPoly::constant(Scalar::one())
    }

    /// Lower coefficients b_0..b_{d-1} of a monic equation.
    pub fn monic_problem(&self) -> Option<MonicProblem> {
        self.is_monic().then(|| {
            MonicProblem::new(self.coeffs[..self.degree()].to_vec())
        })
    }

    pub fn general_problem(&self) -> GeneralProblem {
        GeneralProblem::new(self.coeffs.clone())
    }
}

/// Either kind of spec text.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecExpr {
    Sequence(Seq),
    Equation(EquationSpec),
}

pub fn parse_sequence(input: &str) -> Result<Seq, ParseError> {
    let mut p = Parser::new(input)?;
    let s = p.parse_sequence_body()?;
    p.expect_eof()?;
    Ok(s)
}

/// Parse a sequence and require a pure closed form.
pub fn parse_exppoly(input: &str) -> Result<ExpPoly, ParseError> {
    let s = parse_sequence(input)?;
    if s.is_pure() {
        Ok(s.tail().clone())
    } else {
        Err(ParseError::Semantic {
            line: 1,
            col: 1,
            message: "expected a pure sequence (no prefix overrides)".into(),
        })
    }
}

pub fn parse_equation(input: &str) -> Result<EquationSpec, ParseError> {
    let mut p = Parser::new(input)?;
    let eq = p.parse_equation_body()?;
    p.expect_eof()?;
    Ok(eq)
}

pub fn parse_spec(input: &str) -> Result<SpecExpr, ParseError> {
    let p = Parser::new(input)?;
    if matches!(&p.peek().kind, TokKind::Ident(s) if s == "exp" || s == "rec") {
        Ok(SpecExpr::Sequence(parse_sequence(input)?))
    } else {
        Ok(SpecExpr::Equation(parse_equation(input)?))
    }
}

pub fn print_exppoly(e: &ExpPoly) -> String {
    format!("exp {e}")
}

/// Canonical text for a sequence: the closed form when pure, otherwise a
/// recurrence padded with zero characteristic roots so the initial segment
/// carries the overrides. None when the data leaves the recurrence format
/// (non-cyclotomic values).
pub fn print_sequence(s: &Seq) -> Option<String> {
    if s.is_pure() {
        return Some(print_exppoly(s.tail()));
    }
    let rec = Recurrence::from_seq(s).ok()?;
    let pad = rec.prefix_overrides.keys().max().map_or(0, |m| m + 1);
    let order = rec.coeffs.len() as u64 + pad;
    let mut ks: Vec<CyclotomicNumber> = vec![CyclotomicNumber::zero(); pad as usize];
    ks.extend(rec.coeffs.iter().map(|c| c.neg()));
    let mut init = Vec::with_capacity(order as usize);
    for n in 0..order {
        init.push(s.eval(n).as_cyclotomic()?);
    }
    let join = |v: &[CyclotomicNumber]| {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    };
    Some(format!("rec order={} coeffs=[{}] init=[{}]", order, join(&ks), join(&init)))
}

pub fn print_equation(eq: &EquationSpec) -> String {
    let d = eq.degree();
    let one = ExpPoly::constant(Scalar::one());
    let mut parts = Vec::new();
    for j in (0..=d).rev() {
        let c = &eq.coeffs()[j];
        if c.is_zero() && j != d {
            continue;
        }
        let ypart = match j {
            0 => String::new(),
            1 => "Y".to_string(),
            _ => format!("Y^{j}"),
        };
        let piece = if j == d && *c == one {
            ypart
        } else if j == 0 {
            format!("(exp {c})")
        } else {
            format!("(exp {c})*{ypart}")
        };
        parts.push(piece);
    }
    format!("{} = 0", parts.join(" + "))
}
