//! Finite sums `Σ c·j^p` with rational `c` and rational `p`.
//!
//! These are the closed forms of every sequence quantity (coordinates,
//! `ε_j`, `τ_j`, limit coefficients) and form a ring, so identities such as
//! `ρ(η_j) = -1/j²` can be checked for all `j` at once.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{rat, rat_pow, rat_to_f64, Exponent, GaussJ, Gaussian, Rat, Ring, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct JExpr {
    terms: BTreeMap<Exponent, Rat>,
}

impl JExpr {
    /// `c·j^p`.
    pub fn term(c: Rat, p: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(p, c);
        }
        Self { terms }
    }

    /// `j^p`.
    pub fn j_pow(p: Exponent) -> Self {
        Self::term(<Rat as One>::one(), p)
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, Exponent::zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Exponent of the dominant term as `j → ∞`.
    pub fn leading_exponent(&self) -> Option<Exponent> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.terms.values().next_back()
    }

    /// Constant part, i.e. the coefficient of `j^0`.
    pub fn constant_part(&self) -> Rat {
        self.terms.get(&Exponent::zero()).cloned().unwrap_or_else(<Rat as Zero>::zero)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(<Rat as Zero>::zero()),
            1 if self.terms.contains_key(&Exponent::zero()) => Some(self.constant_part()),
            _ => None,
        }
    }

    pub fn eval(&self, j: f64) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| rat_to_f64(c) * j.powf(*p.numer() as f64 / *p.denom() as f64))
            .sum()
    }

    pub fn try_inv(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (p, c) = self.terms.iter().next()?;
        Some(Self::term(c.recip(), -*p))
    }

    /// `self^p` for a monomial with positive coefficient whose root is rational.
    pub fn try_pow(&self, p: Exponent) -> Option<Self> {
        if self.terms.is_empty() {
            return if *p.numer() > 0 { Some(Self::zero()) } else { None };
        }
        if !self.is_monomial() {
            return p.is_integer().then(|| {
                let k = *p.numer();
                if k >= 0 {
                    Some(self.pow(k as u32))
                } else {
                    None
                }
            })?;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.is_negative() && !p.is_integer() {
            return None;
        }
        let c = rat_pow(c, p)?;
        Some(Self::term(c, *e * p))
    }

    pub fn parse(src: &str) -> Result<Self, Error> {
        let g = parse_gauss(src)?;
        if !g.im.is_zero() {
            return Err(Error::Parse(format!("expected a real expression: {src}")));
        }
        Ok(g.re)
    }
}

impl Ring for JExpr {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(<Rat as One>::one())
    }
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (p, c) in &o.terms {
            let entry = terms.entry(*p).or_insert_with(<Rat as Zero>::zero);
            *entry += c;
            if Zero::is_zero(entry) {
                terms.remove(p);
            }
        }
        Self { terms }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<Exponent, Rat> = BTreeMap::new();
        for (p, c) in &self.terms {
            for (q, d) in &o.terms {
                *terms.entry(*p + *q).or_insert_with(<Rat as Zero>::zero) += c * d;
            }
        }
        terms.retain(|_, c| !Zero::is_zero(c));
        Self { terms }
    }
    fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rat(r: &Rat) -> Self {
        Self::constant(r.clone())
    }
}

fn fmt_exponent(p: &Exponent) -> String {
    if p.is_integer() {
        format!("{}", p.numer())
    } else {
        format!("({}/{})", p.numer(), p.denom())
    }
}

impl fmt::Display for JExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Largest exponent first.
        for (k, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let unit = mag.is_one();
            if p.is_zero() {
                write!(f, "{mag}")?;
            } else if unit {
                write!(f, "j^{}", fmt_exponent(p))?;
            } else {
                write!(f, "{mag}*j^{}", fmt_exponent(p))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for JExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JExpr({self})")
    }
}

/// Parses the sequence DSL: sums of products of rationals, `i`, and
/// powers `j^p` (fractional exponents in parentheses, e.g. `j^(-1/4)`).
/// Division is allowed by monomials only, e.g. `-2/j - 1/j^2 + i/j^(1/4)`.
pub fn parse_gauss(src: &str) -> Result<GaussJ, Error> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, src };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<GaussJ, Error> {
        let mut acc = GaussJ::zero();
        loop {
            let mut negative = false;
            while let Some(c @ (b'+' | b'-')) = self.peek() {
                negative ^= c == b'-';
                self.pos += 1;
            }
            let t = self.term()?;
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
            if !matches!(self.peek(), Some(b'+' | b'-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GaussJ, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    let inv = f.try_inv().ok_or_else(|| self.err("division by a non-monomial"))?;
                    acc = acc.mul(&inv);
                }
                Some(c) if c == b'j' || c == b'i' || c == b'(' => {
                    // implicit multiplication, e.g. `2j^2`
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GaussJ, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(GaussJ::i())
            }
            Some(b'j') => {
                self.pos += 1;
                let p = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    Exponent::one()
                };
                Ok(Gaussian::real(JExpr::j_pow(p)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(GaussJ::from_rat(&rat(n, 1)))
            }
            _ => Err(self.err("expected a number, 'i', 'j' or '('")),
        }
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("bad integer"))
    }

    fn signed_integer(&mut self) -> Result<i64, Error> {
        let mut sign = 1;
        while let Some(c) = self.peek() {
            match c {
                b'-' => {
                    sign = -sign;
                    self.pos += 1;
                }
                b'+' => self.pos += 1,
                _ => break,
            }
        }
        Ok(sign * self.integer()?)
    }

    fn exponent(&mut self) -> Result<Exponent, Error> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let n = self.signed_integer()?;
            let d = if self.peek() == Some(b'/') {
                self.pos += 1;
                self.integer()?
            } else {
                1
            };
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')' after exponent"));
            }
            self.pos += 1;
            if d == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(Exponent::new(n, d))
        } else {
            Ok(Exponent::from_integer(self.signed_integer()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    #[test]
    fn parse_catalog_like_sequences() {
        let b = JExpr::parse("-2/j - 1/j^2").unwrap();
        let expect = JExpr::term(rat(-2, 1), e(-1, 1)).add(&JExpr::term(rat(-1, 1), e(-2, 1)));
        assert_eq!(b, expect);
        let a = JExpr::parse("j^(-1/4)").unwrap();
        assert_eq!(a, JExpr::j_pow(e(-1, 4)));
        let g = parse_gauss("-2/j - 1/j^2 + i/j^(1/4)").unwrap();
        assert_eq!(g.im, JExpr::j_pow(e(-1, 4)));
        let kn = JExpr::parse("-22/(7*j) - j^-2").unwrap();
        assert!((kn.eval(2.0) - (-22.0 / 14.0 - 0.25)).abs() < 1e-15);
        assert!(JExpr::parse("1/(j+1)").is_err());
        assert!(JExpr::parse("i").is_err());
    }

    #[test]
    fn display_round_trips() {
        let x = JExpr::parse("9/(7*j) - j^-2 + 3*j^(5/8)").unwrap();
        assert_eq!(JExpr::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn monomial_powers() {
        let eps = JExpr::j_pow(e(-2, 1));
        assert_eq!(eps.try_pow(e(1, 2)).unwrap(), JExpr::j_pow(e(-1, 1)));
        let half = JExpr::term(rat(1, 4), e(-3, 2));
        assert_eq!(half.try_pow(e(1, 2)).unwrap(), JExpr::term(rat(1, 2), e(-3, 4)));
        assert!(JExpr::parse("j + 1").unwrap().try_pow(e(1, 2)).is_none());
    }
}
