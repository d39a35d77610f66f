use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Shorthand for `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Number type shared by every geometric routine.
///
/// `f64` is used for sweeps and exports, [`Rational`] for exact identity
/// checks, and [`crate::algebra::RatFn`] for symbolic expansion. Square roots
/// only appear through [`Scalar::sqrt_opt`], which returns `None` whenever the
/// root leaves the number type.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic never rounds.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Nearest double. Symbolic values that are not constants give NaN.
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// Sign, or `None` when it cannot be decided (NaN, symbolic).
    fn sign(&self) -> Option<Ordering>;
    /// Square root inside the number type, if it exists.
    fn sqrt_opt(&self) -> Option<Self>;

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn abs(&self) -> Self {
        match self.sign() {
            Some(Ordering::Less) => -self.clone(),
            _ => self.clone(),
        }
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&rat(n, d))
    }

    /// Zero test that is exact for exact types and `|x| <= tol` otherwise.
    fn negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol
        }
    }

    fn positive(&self) -> bool {
        self.sign() == Some(Ordering::Greater)
    }

    fn negative(&self) -> bool {
        self.sign() == Some(Ordering::Less)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sign(&self) -> Option<Ordering> {
        self.partial_cmp(&0.0)
    }
    fn sqrt_opt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> Option<Ordering> {
        Some(self.cmp(&Zero::zero()))
    }
    fn sqrt_opt(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Correctly scaled conversion that survives numerators and denominators
/// beyond the `f64` range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let (n, d) = (q.numer().magnitude(), q.denom().magnitude());
    let k = 64 - (n.bits() as i64 - d.bits() as i64);
    let quotient = if k >= 0 { (n << k as usize) / d } else { n / (d << (-k) as usize) };
    let mag = quotient.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-k as i32);
    if q.numer().sign() == num_bigint::Sign::Minus {
        -mag
    } else {
        mag
    }
}

/// Best rational approximation of a finite double (exact binary expansion).
pub fn f64_to_rational(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot read {text:?} as a rational number: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses `"p/q"`, integers and decimal literals (with optional exponent)
/// into an exact rational. `"0.1"` becomes exactly `1/10`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError { text: text.to_string(), reason };
    let s = text.trim();
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("unexpected character"));
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| err("bad digits"))?;
    let scale = frac_part.len() as i32 - exponent;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::new(all, num_traits::pow(ten, scale as usize))
    } else {
        BigRational::from_integer(all * num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
