use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::scalar::{int, Rational, Scalar};

/// Element `a + b sqrt(d)` of a real quadratic field over the rationals.
///
/// All values that meet in one computation must share the radicand `d`.
/// Pure rationals carry no radicand and mix with anything.
#[derive(Clone)]
pub struct Surd {
    a: Rational,
    b: Rational,
    d: Option<Arc<Rational>>,
}

impl Surd {
    pub fn rational(a: Rational) -> Self {
        Surd { a, b: int(0), d: None }
    }

    /// `sqrt(d)` for a positive rational `d`; collapses to a rational when
    /// `d` is a perfect square.
    pub fn sqrt_of(d: &Rational) -> Option<Self> {
        if d.negative() {
            return None;
        }
        if let Some(r) = d.sqrt_opt() {
            return Some(Surd::rational(r));
        }
        Some(Surd { a: int(0), b: int(1), d: Some(Arc::new(d.clone())) })
    }

    pub fn parts(&self) -> (&Rational, &Rational, Option<&Rational>) {
        (&self.a, &self.b, self.d.as_deref())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn radicand(x: &Surd, y: &Surd) -> Option<Arc<Rational>> {
        match (&x.d, &y.d) {
            (Some(p), Some(q)) => {
                assert!(p == q || x.b.is_zero() || y.b.is_zero(), "mixing values from different quadratic fields");
                if x.b.is_zero() {
                    Some(q.clone())
                } else {
                    Some(p.clone())
                }
            }
            (Some(p), None) | (None, Some(p)) => Some(p.clone()),
            (None, None) => None,
        }
    }

    fn conj(&self) -> Surd {
        Surd { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    fn norm(&self) -> Rational {
        match &self.d {
            Some(d) => self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * (**d).clone(),
            None => self.a.clone() * self.a.clone(),
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.d {
            Some(d) if !self.b.is_zero() => write!(f, "{} + {}*sqrt({})", self.a, self.b, d),
            _ => write!(f, "{}", self.a),
        }
    }
}

impl PartialEq for Surd {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let d = Surd::radicand(&self, &o);
        Surd { a: self.a + o.a, b: self.b + o.b, d }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        let d = Surd::radicand(&self, &o);
        Surd { a: self.a - o.a, b: self.b - o.b, d }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let d = Surd::radicand(&self, &o);
        let bb = match &d {
            Some(r) if !self.b.is_zero() && !o.b.is_zero() => self.b.clone() * o.b.clone() * (**r).clone(),
            _ => int(0),
        };
        Surd { a: self.a.clone() * o.a.clone() + bb, b: self.a * o.b + self.b * o.a, d }
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, o: Surd) -> Surd {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero");
        let p = self * o.conj();
        Surd { a: p.a / n.clone(), b: p.b / n, d: p.d }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Scalar for Surd {
    const EXACT: bool = true;

    fn zero() -> Self {
        Surd::rational(int(0))
    }
    fn one() -> Self {
        Surd::rational(int(1))
    }
    fn from_i64(n: i64) -> Self {
        Surd::rational(int(n))
    }
    fn from_rational(q: &Rational) -> Self {
        Surd::rational(q.clone())
    }
    fn to_f64(&self) -> f64 {
        let root = self.d.as_ref().map_or(0.0, |d| d.to_f64().sqrt());
        self.a.to_f64() + self.b.to_f64() * root
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn sign(&self) -> Option<Ordering> {
        let sa = self.a.sign()?;
        let sb = self.b.sign()?;
        if sb == Ordering::Equal || sa == sb {
            return Some(if sa == Ordering::Equal { sb } else { sa });
        }
        if sa == Ordering::Equal {
            return Some(sb);
        }
        // opposite signs: the larger of a^2 and b^2 d wins
        let d = self.d.as_deref().cloned().unwrap_or_else(|| int(0));
        let lhs = self.a.clone() * self.a.clone();
        let rhs = self.b.clone() * self.b.clone() * d;
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        })
    }
    fn sqrt_opt(&self) -> Option<Self> {
        self.as_rational()?.sqrt_opt().map(Surd::rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn field_arithmetic() {
        let r = Surd::sqrt_of(&rat(2, 1)).unwrap();
        assert_eq!(r.clone() * r.clone(), Surd::from_i64(2));
        let x = Surd::from_i64(3) + r.clone();
        let y = Surd::one() / x.clone();
        assert_eq!(x * y, Surd::one());
        assert!((Surd::from_i64(1) - r.clone()).negative());
        assert!((Surd::from_ratio(3, 2) - r.clone()).positive());
        assert_eq!(Surd::sqrt_of(&rat(9, 4)).unwrap().as_rational(), Some(rat(3, 2)));
        assert!((r.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }
}
