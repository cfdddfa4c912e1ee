use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact number `p + q·√d` with rational `p`, `q`.
///
/// `d` is square-free and at least 2, or 0 when `q = 0`; this keeps the
/// representation canonical so equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: BigRational,
    q: BigRational,
    d: u64,
}

fn is_square_free(d: u64) -> bool {
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadraticNumber {
    pub fn new(p: BigRational, q: BigRational, d: u64) -> Result<Self> {
        if q.is_zero() {
            return Ok(QuadraticNumber::rational(p));
        }
        if d < 2 || !is_square_free(d) {
            return Err(Error::Invalid(format!("radicand {d} is not square-free and at least 2")));
        }
        Ok(QuadraticNumber { p, q, d })
    }

    pub fn rational(p: BigRational) -> Self {
        QuadraticNumber { p, q: BigRational::zero(), d: 0 }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        QuadraticNumber::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        QuadraticNumber::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        QuadraticNumber::rational(BigRational::one())
    }

    /// `√d`.
    pub fn sqrt(d: u64) -> Result<Self> {
        QuadraticNumber::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.p
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.q
    }

    /// Radicand, or `None` for a rational number.
    pub fn radicand(&self) -> Option<u64> {
        (!self.q.is_zero()).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.radicand(), other.radicand()) {
            (Some(a), Some(b)) if a != b => Err(Error::MixedRadicand(a, b)),
            (Some(a), _) | (_, Some(a)) => Ok(a),
            (None, None) => Ok(0),
        }
    }

    fn build(p: BigRational, q: BigRational, d: u64) -> Self {
        if q.is_zero() {
            QuadraticNumber::rational(p)
        } else {
            QuadraticNumber { p, q, d }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(QuadraticNumber::build(&self.p + &other.p, &self.q + &other.q, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let p = &self.p * &other.p + &self.q * &other.q * dd;
        let q = &self.p * &other.q + &self.q * &other.p;
        Ok(QuadraticNumber::build(p, q, d))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadraticNumber::build(&self.p * r, &self.q * r, self.d)
    }

    /// Sign decided by comparing `p²` with `q²d`.
    pub fn signum(&self) -> Ordering {
        let sp = self.p.cmp(&BigRational::zero());
        let sq = self.q.cmp(&BigRational::zero());
        if sq == Ordering::Equal {
            return sp;
        }
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * BigRational::from_integer(BigInt::from(self.d));
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * (self.d as f64).sqrt()
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::build(-&self.p, -&self.q, self.d)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

// Operator forms panic on mixed radicands; the IET validates radicands on
// construction so internal arithmetic never mixes them.
impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, other: &QuadraticNumber) -> QuadraticNumber {
        self.try_add(other).expect("mixed radicands")
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, other: &QuadraticNumber) -> QuadraticNumber {
        self.try_sub(other).expect("mixed radicands")
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        let mut out = String::new();
        if !self.p.is_zero() {
            out.push_str(&self.p.to_string());
        }
        let mag = self.q.abs();
        let sign = if self.q.is_negative() {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        out.push_str(sign);
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&format!("sqrt({})", self.d));
        f.write_str(&out)
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad rational `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    /// Sums of terms `r` or `r*sqrt(d)` with rational `r`, e.g.
    /// `3/2-1/2*sqrt(5)`.
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'(' && bytes[i - 1] != b'*' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = QuadraticNumber::zero();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            let value = match body.find("sqrt(") {
                Some(pos) => {
                    let coef = body[..pos].trim_end_matches('*');
                    let coef = if coef.is_empty() { BigRational::one() } else { parse_rational(coef)? };
                    let inner = body[pos + 5..]
                        .strip_suffix(')')
                        .ok_or_else(|| Error::Parse(format!("unclosed sqrt in `{term}`")))?;
                    let d: u64 = inner.parse().map_err(|_| Error::Parse(format!("bad radicand `{inner}`")))?;
                    QuadraticNumber::new(BigRational::zero(), coef, d)?
                }
                None => QuadraticNumber::rational(parse_rational(body)?),
            };
            let value = if neg { -value } else { value };
            acc = acc.try_add(&value)?;
        }
        Ok(acc)
    }
}
