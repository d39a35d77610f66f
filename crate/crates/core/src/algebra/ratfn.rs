use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::{int, Rational, Scalar};

/// Rational function `num / prod(atom^mult)` with a factored denominator.
///
/// Denominator atoms are non-constant polynomials scaled to leading
/// coefficient one, so equal factors coming from different places are
/// recognised and never multiplied in twice. Nothing is reduced by gcd;
/// a value is zero exactly when its numerator is the zero polynomial, which
/// is what the identity checks rely on.
#[derive(Clone)]
pub struct RatFn {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

/// Monic version of a non-constant polynomial and the removed leading coefficient.
fn monic(p: &Poly) -> (Poly, Rational) {
    let lc = p.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
    (p.scale(&(int(1) / &lc)), lc)
}

fn den_product(den: &[(Poly, u32)]) -> Poly {
    den.iter().fold(Poly::one(), |acc, (a, m)| &acc * &a.pow(*m))
}

fn find(den: &[(Poly, u32)], atom: &Poly) -> Option<usize> {
    den.iter().position(|(a, _)| a == atom)
}

impl RatFn {
    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Vec::new() }
    }

    pub fn var(i: usize) -> Self {
        RatFn::from_poly(Poly::var(i))
    }

    /// Named variables `0..names.len()`.
    pub fn vars(names: &[&str]) -> Vec<RatFn> {
        Poly::vars(names).into_iter().map(RatFn::from_poly).collect()
    }

    pub fn constant(c: Rational) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_atoms(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> Poly {
        den_product(&self.den)
    }

    /// Divides out every denominator atom that divides the numerator.
    pub fn simplify(&self) -> RatFn {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for (atom, mult) in &self.den {
            let mut left = *mult;
            while left > 0 {
                match num.div_exact(atom) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.push((atom.clone(), left));
            }
        }
        RatFn { num, den }
    }

    /// The polynomial this function equals, if the denominator cancels.
    pub fn to_poly(&self) -> Option<Poly> {
        let s = self.simplify();
        s.den.is_empty().then_some(s.num)
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d: Rational = self.denominator().eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    fn push_atom(den: &mut Vec<(Poly, u32)>, atom: Poly, mult: u32) {
        match find(den, &atom) {
            Some(i) => den[i].1 += mult,
            None => den.push((atom, mult)),
        }
    }

    fn add_sub(&self, o: &RatFn, negate: bool) -> RatFn {
        let other = if negate { o.num.scale(&-int(1)) } else { o.num.clone() };
        if self.den == o.den {
            return RatFn { num: &self.num + &other, den: self.den.clone() };
        }
        let mut lcm = self.den.clone();
        for (a, m) in &o.den {
            match find(&lcm, a) {
                Some(i) => lcm[i].1 = lcm[i].1.max(*m),
                None => lcm.push((a.clone(), *m)),
            }
        }
        let cofactor = |den: &[(Poly, u32)]| {
            let rest: Vec<(Poly, u32)> = lcm
                .iter()
                .map(|(a, m)| {
                    let have = find(den, a).map(|i| den[i].1).unwrap_or(0);
                    (a.clone(), m - have)
                })
                .filter(|(_, m)| *m > 0)
                .collect();
            den_product(&rest)
        };
        let num = &(&self.num * &cofactor(&self.den)) + &(&other * &cofactor(&o.den));
        RatFn { num, den: lcm }
    }

    /// `(num * extra) / den` where a factor equal to a denominator atom cancels.
    fn times_poly(mut num: Poly, mut den: Vec<(Poly, u32)>, factor: &Poly) -> (Poly, Vec<(Poly, u32)>) {
        if let Some(c) = factor.as_constant() {
            return (num.scale(&c), den);
        }
        let (m, lc) = monic(factor);
        if let Some(i) = find(&den, &m) {
            den[i].1 -= 1;
            if den[i].1 == 0 {
                den.remove(i);
            }
            num = num.scale(&lc);
        } else {
            num = &num * factor;
        }
        (num, den)
    }

    fn mul_ref(&self, o: &RatFn) -> RatFn {
        if o.den.is_empty() {
            let (num, den) = RatFn::times_poly(self.num.clone(), self.den.clone(), &o.num);
            return RatFn { num, den };
        }
        if self.den.is_empty() {
            let (num, den) = RatFn::times_poly(o.num.clone(), o.den.clone(), &self.num);
            return RatFn { num, den };
        }
        let mut den = self.den.clone();
        for (a, m) in &o.den {
            RatFn::push_atom(&mut den, a.clone(), *m);
        }
        RatFn { num: &self.num * &o.num, den }
    }

    fn div_ref(&self, o: &RatFn) -> RatFn {
        assert!(!o.num.is_zero(), "division of rational functions by zero");
        // self / o = (self.num * prod(o.den)) / (self.den * o.num)
        let mut mine = self.den.clone();
        let mut theirs: Vec<(Poly, u32)> = Vec::new();
        for (a, m) in &o.den {
            match find(&mine, a) {
                Some(i) => {
                    let common = mine[i].1.min(*m);
                    mine[i].1 -= common;
                    if *m > common {
                        theirs.push((a.clone(), m - common));
                    }
                }
                None => theirs.push((a.clone(), *m)),
            }
        }
        mine.retain(|(_, m)| *m > 0);
        let mut num = &self.num * &den_product(&theirs);
        match o.num.as_constant() {
            Some(c) => num = num.scale(&(int(1) / c)),
            None => {
                let (atom, lc) = monic(&o.num);
                num = num.scale(&(int(1) / lc));
                RatFn::push_atom(&mut mine, atom, 1);
            }
        }
        RatFn { num, den: mine }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / (", self.num)?;
            for (i, (a, m)) in self.den.iter().enumerate() {
                if i > 0 {
                    write!(f, " * ")?;
                }
                write!(f, "({a})^{m}")?;
            }
            write!(f, ")")
        }
    }
}

impl PartialEq for RatFn {
    fn eq(&self, o: &RatFn) -> bool {
        self.add_sub(o, true).num.is_zero()
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, o: RatFn) -> RatFn {
        self.add_sub(&o, false)
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, o: RatFn) -> RatFn {
        self.add_sub(&o, true)
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, o: RatFn) -> RatFn {
        self.mul_ref(&o)
    }
}

impl Div for RatFn {
    type Output = RatFn;
    fn div(self, o: RatFn) -> RatFn {
        self.div_ref(&o)
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -self.num, den: self.den }
    }
}

impl Scalar for RatFn {
    const EXACT: bool = true;

    fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }
    fn from_i64(n: i64) -> Self {
        RatFn::constant(Rational::from_i64(n))
    }
    fn from_rational(q: &Rational) -> Self {
        RatFn::constant(q.clone())
    }
    fn to_f64(&self) -> f64 {
        match (self.den.is_empty(), self.num.as_constant()) {
            (true, Some(c)) => c.to_f64(),
            _ => f64::NAN,
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn sign(&self) -> Option<Ordering> {
        match (self.den.is_empty(), self.num.as_constant()) {
            (true, Some(c)) => c.sign(),
            _ => None,
        }
    }
    fn sqrt_opt(&self) -> Option<Self> {
        match (self.den.is_empty(), self.num.as_constant()) {
            (true, Some(c)) => c.sqrt_opt().map(RatFn::constant),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn shared_denominators_collapse() {
        let v = RatFn::vars(&["a", "t"]);
        let a = v[0].clone();
        let one = RatFn::one();
        let c = (one.clone() - a.square()) / (one.clone() + a.square());
        let s = (RatFn::from_i64(2) * a.clone()) / (one.clone() + a.square());
        let pyth = c.square() + s.square() - one;
        assert!(pyth.is_zero());
    }

    #[test]
    fn quotient_cancels_common_atoms() {
        let v = RatFn::vars(&["a", "b"]);
        let t = (v[0].clone() + v[1].clone()) / (v[0].clone() - v[1].clone());
        let one = RatFn::one();
        let q = (one.clone() - t.square()) / (one + t.square());
        assert_eq!(q.denominator_atoms().len(), 1);
        assert_eq!(q.eval(&[int(3), int(1)]).unwrap(), rat(-3, 5));
    }

    #[test]
    fn simplify_and_to_poly() {
        let v = RatFn::vars(&["x", "y"]);
        let d = v[0].clone() - v[1].clone();
        let f = (v[0].square() - v[1].square()) / d;
        assert_eq!(f.to_poly().unwrap(), v[0].numerator() + v[1].numerator());
    }
}
