//! Expression parser for polynomial input.
//!
//! Grammar: integer literals; variables `x`, `y`, `z`, `T`; binary
//! `+ - * /`; parenthesized subexpressions; unary `+`/`-`; and `^` with a
//! nonnegative integer exponent, binding tightest and associating to the
//! right. Whitespace is free. Every error carries the byte position it was
//! detected at.
//!
//! Parsing produces an exact formal fraction over Z[x, y, z, T]
//! ([`Parsed`]), converted on demand to the concrete types the rest of the
//! crate works with: [`IntPoly`] (one variable), [`RatFunc`] (rational in
//! `T`), [`BiPoly`] (`x` over Z[T]), or [`MultiPoly`] (`x, y, z`).
//! Divisions are carried exactly and must cancel wherever the target type
//! is a polynomial.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{BiPoly, IntPoly, MultiPoly, RatFunc};

/// Variable order of the internal exponent vectors.
const VAR_NAMES: [char; 4] = ['x', 'y', 'z', 'T'];
const VAR_T: usize = 3;

/// Exponent cap for any single `^`; keeps desk-scale inputs desk-scale.
const EXPONENT_CAP: u32 = 4096;
/// Tighter cap when the base is not constant (term growth is multiplicative).
const POLY_EXPONENT_CAP: u32 = 512;

// ---------------------------------------------------------------------------
// sparse polynomials in four variables

type Exp = [u16; 4];

#[derive(Clone, Debug, PartialEq)]
struct Sparse {
    /// sorted by exponent vector, no zero coefficients
    terms: Vec<(Exp, BigInt)>,
}

impl Sparse {
    fn normalize(mut terms: Vec<(Exp, BigInt)>) -> Sparse {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Exp, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            if let Some(last) = merged.last_mut() {
                if last.0 == e {
                    last.1 += c;
                    continue;
                }
            }
            merged.push((e, c));
        }
        merged.retain(|(_, c)| !c.is_zero());
        Sparse { terms: merged }
    }

    fn constant(c: BigInt) -> Sparse {
        Sparse::normalize(vec![([0; 4], c)])
    }

    fn var(i: usize) -> Sparse {
        let mut e = [0u16; 4];
        e[i] = 1;
        Sparse {
            terms: vec![(e, BigInt::one())],
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 if self.terms[0].0 == [0; 4] => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    fn add(&self, rhs: &Sparse) -> Sparse {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        Sparse::normalize(terms)
    }

    fn neg(&self) -> Sparse {
        Sparse {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    fn mul(&self, rhs: &Sparse) -> Result<Sparse> {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0u16; 4];
                for k in 0..4 {
                    e[k] = ea[k].checked_add(eb[k]).ok_or_else(|| {
                        Error::capacity("intermediate degree exceeds 65535")
                    })?;
                }
                terms.push((e, ca * cb));
            }
        }
        Ok(Sparse::normalize(terms))
    }

    fn pow(&self, k: u32) -> Result<Sparse> {
        let mut out = Sparse::constant(BigInt::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(out)
    }

    fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[i] != 0)
    }
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: BigInt = text[start..i].parse().expect("digit run parses");
                toks.push((start, Tok::Int(lit)));
            }
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                if let Some(v) = VAR_NAMES.iter().position(|&n| n == ch) {
                    toks.push((i, Tok::Var(v)));
                    i += ch.len_utf8();
                } else {
                    return Err(Error::parse(i, format!("unexpected character '{ch}'")));
                }
            }
        }
    }
    Ok(toks)
}

// ---------------------------------------------------------------------------
// parser (precedence climbing over the token stream)

/// An exactly-parsed expression: a formal fraction of integer polynomials
/// in `x, y, z, T`. Convert with [`Parsed::to_int_poly`],
/// [`Parsed::to_ratfunc`], [`Parsed::to_bipoly`], or
/// [`Parsed::to_multipoly`].
#[derive(Clone, Debug)]
pub struct Parsed {
    num: Sparse,
    den: Sparse,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

/// value with an exact denominator, tracked through every operator
#[derive(Clone)]
struct Frac {
    num: Sparse,
    den: Sparse,
}

impl Frac {
    fn from_sparse(num: Sparse) -> Frac {
        Frac {
            num,
            den: Sparse::constant(BigInt::one()),
        }
    }

    fn add(&self, rhs: &Frac) -> Result<Frac> {
        Ok(Frac {
            num: self.num.mul(&rhs.den)?.add(&rhs.num.mul(&self.den)?),
            den: self.den.mul(&rhs.den)?,
        })
    }

    fn neg(&self) -> Frac {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, rhs: &Frac) -> Result<Frac> {
        Ok(Frac {
            num: self.num.mul(&rhs.num)?,
            den: self.den.mul(&rhs.den)?,
        })
    }

    fn is_constant(&self) -> bool {
        self.num.constant_value().is_some() && self.den.constant_value().is_some()
    }
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs.neg())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs)?;
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs.num.is_zero() {
                        return Err(Error::parse(at, "division by zero"));
                    }
                    acc = acc.mul(&Frac {
                        num: rhs.den,
                        den: rhs.num,
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.exponent()?;
        if !base.is_constant() && k > POLY_EXPONENT_CAP {
            return Err(Error::parse(
                self.here().saturating_sub(1),
                format!("exponent {k} too large for a non-constant base (cap {POLY_EXPONENT_CAP})"),
            ));
        }
        Ok(Frac {
            num: base.num.pow(k)?,
            den: base.den.pow(k)?,
        })
    }

    /// A chain `a ^ b ^ c` of literal exponents folds right-associatively.
    fn exponent(&mut self) -> Result<u32> {
        let at = self.here();
        let first = match self.bump() {
            Some(Tok::Int(n)) => n,
            _ => {
                return Err(Error::parse(
                    at,
                    "exponent must be a nonnegative integer literal",
                ))
            }
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let upper = self.exponent()?;
            let base = first
                .to_u32()
                .filter(|&b| b <= EXPONENT_CAP)
                .ok_or_else(|| Error::parse(at, format!("exponent exceeds cap {EXPONENT_CAP}")))?;
            let folded = (base as u64).checked_pow(upper).filter(|&v| v <= EXPONENT_CAP as u64);
            return folded
                .map(|v| v as u32)
                .ok_or_else(|| Error::parse(at, format!("exponent exceeds cap {EXPONENT_CAP}")));
        }
        first
            .to_u32()
            .filter(|&k| k <= EXPONENT_CAP)
            .ok_or_else(|| Error::parse(at, format!("exponent exceeds cap {EXPONENT_CAP}")))
    }

    fn atom(&mut self) -> Result<Frac> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Frac::from_sparse(Sparse::constant(n))),
            Some(Tok::Var(v)) => Ok(Frac::from_sparse(Sparse::var(v))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::parse(self.here(), "expected ')'")),
                }
            }
            Some(_) => Err(Error::parse(at, "expected a number, variable, or '('")),
            None => Err(Error::parse(at, "unexpected end of expression")),
        }
    }
}

/// Parse an expression into its exact formal-fraction form.
pub fn parse_expression(text: &str) -> Result<Parsed> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.here(), "expected an operator"));
    }
    Ok(Parsed {
        num: v.num,
        den: v.den,
    })
}

fn sparse_to_int_poly(s: &Sparse, var: usize) -> IntPoly {
    let deg = s.terms.iter().map(|(e, _)| e[var] as usize).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (e, c) in &s.terms {
        coeffs[e[var] as usize] += c;
    }
    IntPoly::new(coeffs)
}

fn sparse_to_bipoly(s: &Sparse) -> BiPoly {
    let dx = s.terms.iter().map(|(e, _)| e[0] as usize).max().unwrap_or(0);
    let mut cols: Vec<Vec<BigInt>> = vec![Vec::new(); dx + 1];
    for (e, c) in &s.terms {
        let col = &mut cols[e[0] as usize];
        let k = e[VAR_T] as usize;
        while col.len() <= k {
            col.push(BigInt::zero());
        }
        col[k] += c;
    }
    BiPoly::new(cols.into_iter().map(IntPoly::new).collect())
}

impl Parsed {
    fn used(&self) -> [bool; 4] {
        let mut u = [false; 4];
        for (i, flag) in u.iter_mut().enumerate() {
            *flag = self.num.uses_var(i) || self.den.uses_var(i);
        }
        u
    }

    /// The variables appearing in the expression, in canonical order.
    pub fn variables(&self) -> Vec<char> {
        self.used()
            .iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| VAR_NAMES[i])
            .collect()
    }

    /// Reduce to a univariate integer polynomial, together with the name of
    /// the variable it is in (`'x'` for constants). Division must cancel to
    /// a polynomial with integer coefficients.
    pub fn to_int_poly(&self) -> Result<(IntPoly, char)> {
        let used = self.used();
        let n_used = used.iter().filter(|&&u| u).count();
        if n_used > 1 {
            return Err(Error::domain(format!(
                "expected one variable, found {}",
                self.variables()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
        let var = used.iter().position(|&u| u).unwrap_or(0);
        let num = sparse_to_int_poly(&self.num, var);
        let den = sparse_to_int_poly(&self.den, var);
        let r = RatFunc::new(&num, &den)?;
        if !r.denominator().is_one() || !r.scalar().denom().is_one() {
            return Err(Error::domain(
                "division does not reduce to a polynomial with integer coefficients",
            ));
        }
        Ok((
            r.numerator().mul_scalar(r.scalar().numer()),
            VAR_NAMES[var],
        ))
    }

    /// Interpret as a rational function of `T`.
    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        let used = self.used();
        if used[0] || used[1] || used[2] {
            return Err(Error::domain(
                "a rational function of T cannot use x, y, or z",
            ));
        }
        RatFunc::new(
            &sparse_to_int_poly(&self.num, VAR_T),
            &sparse_to_int_poly(&self.den, VAR_T),
        )
    }

    /// Interpret as a polynomial in `x` over Z[T]. Division must cancel
    /// exactly over the integers.
    pub fn to_bipoly(&self) -> Result<BiPoly> {
        let used = self.used();
        if used[1] || used[2] {
            return Err(Error::domain("a polynomial in x over Z[T] cannot use y or z"));
        }
        let num = sparse_to_bipoly(&self.num);
        let den = sparse_to_bipoly(&self.den);
        num.exact_div(&den).ok_or_else(|| {
            Error::domain("division does not reduce to a polynomial over Z[T]")
        })
    }

    /// Interpret as an integer polynomial in the first `nvars` of
    /// `x, y, z`. The denominator must be a constant dividing every
    /// coefficient.
    pub fn to_multipoly(&self, nvars: usize) -> Result<MultiPoly> {
        if !(1..=3).contains(&nvars) {
            return Err(Error::domain("multivariate support covers 1 to 3 variables"));
        }
        let used = self.used();
        if used[VAR_T] {
            return Err(Error::domain(
                "torus-measure polynomials use x, y, z; T is not a torus variable",
            ));
        }
        for v in nvars..3 {
            if used[v] {
                return Err(Error::domain(format!(
                    "expression uses '{}' but only {nvars} variable(s) were requested",
                    VAR_NAMES[v]
                )));
            }
        }
        let den = self
            .den
            .constant_value()
            .ok_or_else(|| Error::domain("denominator must be constant here"))?;
        let mut terms = Vec::with_capacity(self.num.terms.len());
        for (e, c) in &self.num.terms {
            let (q, r) = num_integer::Integer::div_rem(c, &den);
            if !r.is_zero() {
                return Err(Error::domain(
                    "division does not reduce to integer coefficients",
                ));
            }
            terms.push(([e[0], e[1], e[2]], q));
        }
        MultiPoly::new(nvars, terms)
    }
}
