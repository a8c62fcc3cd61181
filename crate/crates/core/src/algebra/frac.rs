//! Rational functions `p(x)/q(x)` in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::field::{Field, Rational};
use super::poly::Poly;
use super::AlgebraError;

/// A fraction of polynomials with a monic denominator coprime to the numerator.
///
/// The normal form makes structural equality coincide with equality in the
/// field of fractions; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frac<K> {
    num: Poly<K>,
    den: Poly<K>,
}

/// Rational functions over ℚ, the carrier of circuit denotations.
pub type RatFunc = Frac<Rational>;

impl<K: Field> Frac<K> {
    /// Builds `num/den` in canonical form. Fails when `den` is zero.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Frac::zero_frac());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead_inv = den.leading().unwrap().inv().unwrap();
        Ok(Frac {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        })
    }

    fn zero_frac() -> Self {
        Frac {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        Frac {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        Frac::from_poly(Poly::constant(c))
    }

    /// The indeterminate `x`, i.e. one tick of delay.
    pub fn x() -> Self {
        Frac::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when the fraction is a constant of the base field.
    pub fn as_constant(&self) -> Option<K> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// True iff the denominator has a nonzero constant term, i.e. the
    /// fraction expands to a power series. Zero is rational.
    pub fn is_rational(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Index of the first nonzero Laurent coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let n = self.num.order()? as i64;
        let d = self.den.order().expect("denominator is nonzero") as i64;
        Some(n - d)
    }

    pub fn checked_inv(&self) -> Result<Self, AlgebraError> {
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.clone() * rhs.checked_inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 {
            self.checked_inv()?
        } else {
            self.clone()
        };
        let mut acc = Frac::constant(K::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }
}

impl<K: Field> Add for Frac<K> {
    type Output = Frac<K>;
    fn add(self, rhs: Frac<K>) -> Frac<K> {
        if self.den == rhs.den {
            return Frac::new(self.num + rhs.num, self.den).unwrap();
        }
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        Frac::new(num, self.den * rhs.den).unwrap()
    }
}

impl<K: Field> Sub for Frac<K> {
    type Output = Frac<K>;
    fn sub(self, rhs: Frac<K>) -> Frac<K> {
        self + (-rhs)
    }
}

impl<K: Field> Neg for Frac<K> {
    type Output = Frac<K>;
    fn neg(self) -> Frac<K> {
        Frac {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<K: Field> Mul for Frac<K> {
    type Output = Frac<K>;
    fn mul(self, rhs: Frac<K>) -> Frac<K> {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Frac::zero_frac();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Frac::from_poly(self.num * rhs.num);
        }
        Frac::new(self.num * rhs.num, self.den * rhs.den).unwrap()
    }
}

impl<K: Field> Field for Frac<K> {
    fn zero() -> Self {
        Frac::zero_frac()
    }
    fn one() -> Self {
        Frac::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn from_i64(n: i64) -> Self {
        Frac::constant(K::from_i64(n))
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        K::from_rational(q).map(Frac::constant)
    }
}

impl<K: Field> fmt::Display for Frac<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl<K: Field> FromStr for Frac<K> {
    type Err = AlgebraError;

    /// Parses expressions over `x` with `+ - * / ^`, parentheses and integer
    /// literals, e.g. `(1 + 2*x) / (1 - x)` or `3/2*x^2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ExprParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr<K: Field>(&mut self) -> Result<Frac<K>, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term<K: Field>(&mut self) -> Result<Frac<K>, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc * rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary<K: Field>(&mut self) -> Result<Frac<K>, AlgebraError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power<K: Field>(&mut self) -> Result<Frac<K>, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i64 = e.parse().map_err(|_| self.error("exponent out of range"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom<K: Field>(&mut self) -> Result<Frac<K>, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Frac::x())
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer()?;
                let q: Rational = digits.parse().map_err(|_| self.error("bad integer"))?;
                K::from_rational(&q)
                    .map(Frac::constant)
                    .ok_or_else(|| self.error("literal not representable in the field"))
            }
            _ => Err(self.error("expected a number, `x` or `(`")),
        }
    }
}
