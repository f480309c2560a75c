//! Exact rational numbers and dense univariate polynomials over an exact field.
//!
//! Polynomials are generic over [`ExactField`], which is implemented both for
//! [`Rational`] and for number-field elements, so the same Euclidean and Sturm
//! code runs over ℚ and over F.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `[+-]digits[/digits]` with a strictly positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numerator = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| bad())?;
    let denominator = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in {s:?}")));
            }
            d
        }
    };
    Ok(Rational::new(numerator, denominator))
}

/// Canonical text form: `n` or `n/d` in lowest terms.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A field whose arithmetic is exact.
///
/// Elements carry enough context to build zero and one of their own field,
/// which is what lets [`Polynomial`] stay generic over number fields whose
/// identity lives in the element.
pub trait ExactField: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Fails with [`Error::ZeroElement`] on zero; number-field elements may
    /// also report a zero divisor as [`Error::Inconsistent`].
    fn inverse(&self) -> Result<Self>;
}

impl ExactField for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        rat(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::ZeroElement)
        } else {
            Ok(self.recip())
        }
    }
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

/// Dense univariate polynomial, coefficients in ascending degree order.
///
/// The highest stored coefficient is never zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<K> {
    coeffs: Vec<K>,
}

impl<K: ExactField> Polynomial<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a nonzero polynomial. Panics on zero.
    pub fn deg(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&K> {
        self.coeffs.get(i)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| *c == c.one_like())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(K::negated).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&c.int_like(i as i64)))
                .collect(),
        )
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Result<Self> {
        match self.leading_coeff() {
            None => Ok(Self::zero()),
            Some(lc) => Ok(self.scale(&lc.inverse()?)),
        }
    }

    /// Horner evaluation at a point of the coefficient field.
    pub fn eval(&self, point: &K) -> K {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            return point.zero_like();
        };
        it.fold(first.clone(), |acc, c| acc.times(point).plus(c))
    }

    /// `p(x + c)`
    pub fn shift(&self, c: &K) -> Self {
        let lin = Polynomial::new(vec![c.clone(), c.one_like()]);
        let mut out = Self::zero();
        for a in self.coeffs.iter().rev() {
            out = out.mul(&lin).add(&Self::constant(a.clone()));
        }
        out
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        poly_divrem(self, divisor)
    }
}

impl<K: ExactField + fmt::Display> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<K: fmt::Debug> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

/// Rational polynomial from integer coefficients, ascending.
pub fn qpoly(coeffs: &[i64]) -> Polynomial<Rational> {
    Polynomial::new(coeffs.iter().map(|&c| rat(c)).collect())
}

/// Euclidean division: `dividend = q·divisor + r` with `deg r < deg divisor`.
pub fn poly_divrem<K: ExactField>(
    dividend: &Polynomial<K>,
    divisor: &Polynomial<K>,
) -> Result<(Polynomial<K>, Polynomial<K>)> {
    let Some(lc) = divisor.leading_coeff() else {
        return Err(Error::DivisionByZero);
    };
    let lc_inv = lc.inverse()?;
    let dd = divisor.deg();
    if dividend.coeffs.len() < divisor.coeffs.len() {
        return Ok((Polynomial::zero(), dividend.clone()));
    }
    let mut rem = dividend.coeffs.clone();
    let qlen = rem.len() - dd;
    let mut quot = vec![lc.zero_like(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].times(&lc_inv);
        if c.is_zero() {
            continue;
        }
        for (j, d) in divisor.coeffs.iter().enumerate() {
            rem[k + j] = rem[k + j].minus(&c.times(d));
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    Ok((Polynomial::new(quot), Polynomial::new(rem)))
}

/// Monic gcd by the Euclidean algorithm, normalising each remainder.
pub fn poly_gcd<K: ExactField>(a: &Polynomial<K>, b: &Polynomial<K>) -> Result<Polynomial<K>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Precondition("gcd of two zero polynomials".into()));
    }
    let mut x = a.monic()?;
    let mut y = b.monic()?;
    while !y.is_zero() {
        let (_, r) = poly_divrem(&x, &y)?;
        x = y;
        y = r.monic()?;
    }
    Ok(x)
}

/// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn poly_xgcd<K: ExactField>(
    a: &Polynomial<K>,
    b: &Polynomial<K>,
) -> Result<(Polynomial<K>, Polynomial<K>, Polynomial<K>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Precondition("gcd of two zero polynomials".into()));
    }
    let one = a
        .leading_coeff()
        .or(b.leading_coeff())
        .map(|c| c.one_like())
        .expect("one input is nonzero");
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::constant(one.clone()), Polynomial::zero());
    let (mut t0, mut t1) = (Polynomial::zero(), Polynomial::constant(one));
    while !r1.is_zero() {
        let (q, r) = poly_divrem(&r0, &r1)?;
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = r0.leading_coeff().unwrap().inverse()?;
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// Monic `p / gcd(p, p′)`: same roots as `p`, all simple.
pub fn poly_squarefree_part<K: ExactField>(p: &Polynomial<K>) -> Result<Polynomial<K>> {
    if p.is_zero() {
        return Err(Error::Precondition(
            "squarefree part of the zero polynomial".into(),
        ));
    }
    let g = poly_gcd(p, &p.derivative())?;
    let (q, _) = poly_divrem(p, &g)?;
    q.monic()
}

pub fn poly_eval<K: ExactField>(p: &Polynomial<K>, point: &K) -> K {
    p.eval(point)
}

pub fn is_squarefree<K: ExactField>(p: &Polynomial<K>) -> bool {
    match poly_gcd(p, &p.derivative()) {
        Ok(g) => g.is_constant(),
        Err(_) => false,
    }
}

/// Positive integer multiple of a rational polynomial, used to read signs at
/// rational points without normalising intermediate fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub(crate) fn from_rational(p: &Polynomial<Rational>) -> IntPoly {
        use num_integer::Integer;
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        IntPoly { coeffs }
    }

    /// Sign of the polynomial at `x`.
    pub(crate) fn sign_at(&self, x: &Rational) -> i8 {
        // b^n·p(a/b) by homogenised Horner; b > 0 keeps the sign.
        let Some((lead, rest)) = self.coeffs.split_last() else {
            return 0;
        };
        let (a, b) = (x.numer(), x.denom());
        let mut acc = lead.clone();
        let mut bpow = BigInt::one();
        for c in rest.iter().rev() {
            bpow *= b;
            acc = acc * a + c * &bpow;
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }
}

pub(crate) fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
