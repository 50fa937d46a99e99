//! Textual syntax for monomials and elements.
//!
//! ```text
//! element  := term (('+' | '-') term)* | '0'
//! term     := coeff ['*' monomial] | monomial
//! monomial := factor ('*' factor)* ['*' '1'] | '1'
//! factor   := ('e' | 'f' | 'h') '[' index ']' ['(' mode ')'] ['^' exponent]
//! ```
//!
//! Indices are 1-based: `e[i]`/`f[i]` refer to the i-th positive root in the
//! stored order, `h[i]` to the i-th simple coroot. Example:
//! `e[1](-1)^2 * h[1](-3) * 1 - 1/2 * f[1](-2) * 1`.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::pbw::{Factor, PbwMonomial, VaVector};
use crate::rational::{fmt_q, parse_rational, Q};
use crate::rootsys::{BasisKind, Element, LieAlgebra};

/// A factor as written, before validation against a monomial type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFactor {
    pub basis: usize,
    pub mode: Option<i64>,
    pub exponent: u32,
    pub column: usize,
}

/// A term as written: coefficient and factors in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTerm {
    pub coeff: Q,
    pub factors: Vec<RawFactor>,
    pub column: usize,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alg: &'a LieAlgebra,
}

impl<'a> Parser<'a> {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.column(), msg))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.error(format!("expected `{}`, found `{}`", c as char, got as char)),
            None => self.error(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        if matches!(bytes.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = bytes[self.pos..]
            .iter()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if digits == 0 {
            return self.error("expected an integer");
        }
        self.pos += digits;
        self.text[start..self.pos]
            .parse::<i64>()
            .map_err(|e| Error::parse(start + 1, e.to_string()))
    }

    /// Rational literal without sign, e.g. `3` or `3/2`.
    fn unsigned_rational(&mut self) -> Result<Q> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = self.pos;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end < bytes.len() && bytes[end] == b'/' {
            end += 1;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
        }
        self.pos = end;
        parse_rational(&self.text[start..end]).map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => Error::parse(start + column, message),
            other => other,
        })
    }

    fn factor(&mut self) -> Result<RawFactor> {
        self.skip_ws();
        let column = self.column();
        let class = self.text.as_bytes()[self.pos];
        self.pos += 1;
        self.expect(b'[')?;
        let idx_col = {
            self.skip_ws();
            self.column()
        };
        let idx = self.integer()?;
        self.expect(b']')?;
        let (size, what) = match class {
            b'h' => (self.alg.rank, "Cartan index"),
            _ => (self.alg.num_positive(), "root index"),
        };
        if idx < 1 || idx as usize > size {
            return Err(Error::parse(
                idx_col,
                format!("{what} {idx} out of range 1..={size}"),
            ));
        }
        let i = idx as usize - 1;
        let basis = match class {
            b'h' => self.alg.cartan_index(i),
            b'e' => self.alg.e_index(i),
            _ => self.alg.f_index(i),
        };
        let mode = if self.peek() == Some(b'(') {
            self.pos += 1;
            let m = self.integer()?;
            self.expect(b')')?;
            Some(m)
        } else {
            None
        };
        let exponent = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let col = self.column();
            let e = self.integer()?;
            if e < 1 {
                return Err(Error::parse(col, "exponent must be positive"));
            }
            e as u32
        } else {
            1
        };
        Ok(RawFactor {
            basis,
            mode,
            exponent,
            column,
        })
    }

    /// Factors after an optional coefficient; stops at `+`, `-` or end.
    fn monomial(&mut self) -> Result<Vec<RawFactor>> {
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(b'1') => {
                    self.pos += 1;
                    if let Some(c) = self.peek() {
                        if !matches!(c, b'+' | b'-') {
                            return self.error("`1` must end a monomial");
                        }
                    }
                    return Ok(factors);
                }
                Some(b'e' | b'f' | b'h') => factors.push(self.factor()?),
                Some(c) => {
                    return self.error(format!(
                        "expected a generator or `1`, found `{}`",
                        c as char
                    ))
                }
                None => return self.error("expected a generator or `1`, found end of input"),
            }
            match self.peek() {
                Some(b'*') => self.pos += 1,
                None | Some(b'+') | Some(b'-') => return Ok(factors),
                Some(c) => return self.error(format!("expected `*`, found `{}`", c as char)),
            }
        }
    }

    fn term(&mut self, sign: Q) -> Result<RawTerm> {
        self.skip_ws();
        let column = self.column();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                // `1` alone or followed by +/-/end is the vacuum; otherwise a coefficient.
                let coeff = self.unsigned_rational()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        let factors = self.monomial()?;
                        Ok(RawTerm {
                            coeff: sign * coeff,
                            factors,
                            column,
                        })
                    }
                    None | Some(b'+') | Some(b'-') => Ok(RawTerm {
                        coeff: sign * coeff,
                        factors: Vec::new(),
                        column,
                    }),
                    Some(c) => self.error(format!("expected `*`, found `{}`", c as char)),
                }
            }
            Some(b'e' | b'f' | b'h') => Ok(RawTerm {
                coeff: sign,
                factors: self.monomial()?,
                column,
            }),
            Some(c) => self.error(format!("unexpected character `{}`", c as char)),
            None => self.error("expected a term, found end of input"),
        }
    }

    fn element(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Q::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Q::one()
            }
            _ => Q::one(),
        };
        loop {
            terms.push(self.term(sign)?);
            sign = match self.peek() {
                Some(b'+') => Q::one(),
                Some(b'-') => -Q::one(),
                None => return Ok(terms),
                Some(c) => return self.error(format!("unexpected character `{}`", c as char)),
            };
            self.pos += 1;
        }
    }
}

/// Parses an element into raw terms, without checking modes or order.
pub fn parse_raw(alg: &LieAlgebra, text: &str) -> Result<Vec<RawTerm>> {
    let mut p = Parser { text, pos: 0, alg };
    if p.peek().is_none() {
        return p.error("empty input");
    }
    if text.trim() == "0" {
        return Ok(Vec::new());
    }
    p.element()
}

fn expand_factors(raw: &[RawFactor], alg: &LieAlgebra) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    for f in raw {
        let Some(m) = f.mode else {
            return Err(Error::parse(f.column, "missing mode, e.g. `(-1)`"));
        };
        if m >= 0 {
            return Err(Error::parse(
                f.column,
                format!("mode {m} is not negative; only creation modes appear in monomials"),
            ));
        }
        for _ in 0..f.exponent {
            out.push(Factor::new(alg, f.basis, (-m) as u32));
        }
    }
    Ok(out)
}

fn canonical_monomial(raw: &[RawFactor], alg: &LieAlgebra) -> Result<PbwMonomial> {
    let factors = expand_factors(raw, alg)?;
    let mut at = 0;
    for f in raw {
        let next = at + f.exponent as usize;
        if at > 0 && factors[at] < factors[at - 1] {
            return Err(Error::parse(
                f.column,
                "factor out of PBW order (raising, lowering, Cartan; then index; then |mode|)",
            ));
        }
        at = next;
    }
    Ok(PbwMonomial::from_factors(factors))
}

/// Parses a single PBW monomial, which must be written in canonical order.
pub fn parse_monomial(alg: &LieAlgebra, text: &str) -> Result<PbwMonomial> {
    let terms = parse_raw(alg, text)?;
    match terms.as_slice() {
        [t] if t.coeff.is_one() => canonical_monomial(&t.factors, alg),
        _ => Err(Error::parse(
            1,
            "expected a single monomial with coefficient 1",
        )),
    }
}

/// Parses an element of `V^k(g)`. Monomials must be in canonical order.
pub fn parse_va_element(alg: &LieAlgebra, level: &Q, text: &str) -> Result<VaVector> {
    let mut v = VaVector::zero(level.clone());
    for t in parse_raw(alg, text)? {
        v.add_term(canonical_monomial(&t.factors, alg)?, t.coeff);
    }
    Ok(v)
}

/// Parses a commutative polynomial; factor order is irrelevant.
pub fn parse_poly_terms(alg: &LieAlgebra, text: &str) -> Result<Vec<(PbwMonomial, Q)>> {
    parse_raw(alg, text)?
        .into_iter()
        .map(|t| {
            Ok((
                PbwMonomial::from_factors(expand_factors(&t.factors, alg)?),
                t.coeff,
            ))
        })
        .collect()
}

/// Parses an element of `g`: every term is one factor, written `x[i]` or `x[i](-1)`.
pub fn parse_lie_element(alg: &LieAlgebra, text: &str) -> Result<Element> {
    let mut out = Element::zero();
    for t in parse_raw(alg, text)? {
        match t.factors.as_slice() {
            [f] if f.exponent == 1 && matches!(f.mode, None | Some(-1)) => {
                out.add_term(f.basis, t.coeff);
            }
            _ => {
                return Err(Error::parse(
                    t.column,
                    "Lie algebra elements are sums of single generators",
                ))
            }
        }
    }
    Ok(out)
}

/// Generator name, e.g. `e[2]`.
pub fn generator_name(alg: &LieAlgebra, basis: usize) -> String {
    match alg.kind(basis) {
        BasisKind::Cartan(a) => format!("h[{}]", a + 1),
        BasisKind::Raising(i) => format!("e[{}]", i + 1),
        BasisKind::Lowering(i) => format!("f[{}]", i + 1),
    }
}

/// Groups consecutive equal factors into powers.
fn powers(m: &PbwMonomial) -> Vec<(Factor, usize)> {
    let mut out: Vec<(Factor, usize)> = Vec::new();
    for f in m.factors() {
        match out.last_mut() {
            Some((g, c)) if g == f => *c += 1,
            _ => out.push((*f, 1)),
        }
    }
    out
}

pub fn format_monomial(alg: &LieAlgebra, m: &PbwMonomial) -> String {
    let mut parts: Vec<String> = powers(m)
        .into_iter()
        .map(|(f, c)| {
            let base = format!(
                "{}({})",
                generator_name(alg, f.basis as usize),
                -(f.n as i64)
            );
            if c > 1 {
                format!("{base}^{c}")
            } else {
                base
            }
        })
        .collect();
    parts.push("1".into());
    parts.join(" * ")
}

/// Monomial read in `ℂ[g*]` via `x(−n) ↦ x`, e.g. `e[1]^2 h[1]`.
pub fn format_polynomial_monomial(alg: &LieAlgebra, m: &PbwMonomial) -> String {
    if m.is_vacuum() {
        return "1".into();
    }
    powers(m)
        .into_iter()
        .map(|(f, c)| {
            let base = generator_name(alg, f.basis as usize);
            if c > 1 {
                format!("{base}^{c}")
            } else {
                base
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Joins `(coeff, body)` terms as `a - 1/2 * b + 3 * c`. Empty sums print `0`.
pub fn format_sum<'a>(terms: impl IntoIterator<Item = (&'a Q, String)>) -> String {
    let mut out = String::new();
    for (i, (c, body)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if a.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&fmt_q(&a));
            out.push_str(" * ");
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn format_va_element(alg: &LieAlgebra, v: &VaVector) -> String {
    format_sum(v.terms().map(|(m, c)| (c, format_monomial(alg, m))))
}

pub fn format_lie_element(alg: &LieAlgebra, x: &Element) -> String {
    format_sum(x.iter().map(|(b, c)| (c, generator_name(alg, b))))
}
