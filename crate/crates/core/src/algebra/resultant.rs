use super::linalg::det;
use super::scalar::Scalar;
use super::unipoly::UniPoly;
use super::AlgebraError;

/// Polynomial of bidegree at most (2, 2) in `(tau, tau_bar)`:
/// `sum c[i][j] tau^i tau_bar^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic2<S> {
    pub c: [[S; 3]; 3],
}

impl<S: Scalar> Quadratic2<S> {
    pub fn new(c: [[S; 3]; 3]) -> Self {
        Quadratic2 { c }
    }

    pub fn zero() -> Self {
        Quadratic2 { c: std::array::from_fn(|_| std::array::from_fn(|_| S::zero())) }
    }

    pub fn eval(&self, tau: &S, tau_bar: &S) -> S {
        (0..3).rev().fold(S::zero(), |acc, i| acc * tau.clone() + self.in_bar(i).eval(tau_bar))
    }

    fn in_bar(&self, i: usize) -> UniPoly<S> {
        UniPoly::new(self.c[i].to_vec())
    }

    /// Coefficient of `tau_bar^j` as a polynomial in `tau`.
    pub fn bar_coeff(&self, j: usize) -> UniPoly<S> {
        UniPoly::new((0..3).map(|i| self.c[i][j].clone()).collect())
    }

    /// The quadratic in `tau_bar` obtained by fixing `tau`.
    pub fn at_tau(&self, tau: &S) -> UniPoly<S> {
        UniPoly::new((0..3).map(|j| self.bar_coeff(j).eval(tau)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(|v| v.is_zero())
    }

    /// Recovers the coefficients of a bidegree-(2, 2) function from its
    /// values on a 3x3 grid. The caller guarantees the bidegree.
    pub fn interpolate(f: impl Fn(&S, &S) -> S, taus: [S; 3], bars: [S; 3]) -> Self {
        let rows: Vec<UniPoly<S>> = taus
            .iter()
            .map(|t| {
                let ys: Vec<S> = bars.iter().map(|b| f(t, b)).collect();
                UniPoly::interpolate(&bars, &ys)
            })
            .collect();
        let c = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let ys: Vec<S> = rows.iter().map(|r| r.coeff(j)).collect();
                UniPoly::interpolate(&taus, &ys).coeff(i)
            })
        });
        Quadratic2 { c }
    }
}

/// Resultant with respect to `tau_bar` of two bidegree-(2, 2) forms.
///
/// Both are treated as quadratics in `tau_bar` (a missing leading
/// coefficient is padded with zero) and the 4x4 Sylvester determinant is
/// expanded with polynomial entries, so the result has degree at most 8
/// in `tau`.
pub fn resultant_tau_bar<S: Scalar>(p: &Quadratic2<S>, q: &Quadratic2<S>) -> Result<UniPoly<S>, AlgebraError> {
    let (p2, p1, p0) = (p.bar_coeff(2), p.bar_coeff(1), p.bar_coeff(0));
    let (q2, q1, q0) = (q.bar_coeff(2), q.bar_coeff(1), q.bar_coeff(0));
    if p2.is_zero() && q2.is_zero() {
        return Err(AlgebraError::DegenerateResultant);
    }
    let z = UniPoly::zero();
    let m = [
        [p2.clone(), p1.clone(), p0.clone(), z.clone()],
        [z.clone(), p2, p1, p0],
        [q2.clone(), q1.clone(), q0.clone(), z.clone()],
        [z, q2, q1, q0],
    ];
    Ok(leibniz4(&m))
}

fn leibniz4<S: Scalar>(m: &[[UniPoly<S>; 4]; 4]) -> UniPoly<S> {
    let mut acc = UniPoly::zero();
    let mut perm = [0usize, 1, 2, 3];
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = UniPoly::constant(S::one());
        for (row, &col) in p.iter().enumerate() {
            term = &term * &m[row][col];
            if term.is_zero() {
                return;
            }
        }
        acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
    });
    acc
}

fn permutations(p: &mut [usize; 4], k: usize, f: &mut impl FnMut(&[usize; 4])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Sylvester resultant of two univariate polynomials over a field.
pub fn sylvester_resultant<S: Scalar>(p: &UniPoly<S>, q: &UniPoly<S>) -> S {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return S::zero();
    };
    if m + n == 0 {
        return S::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut r = vec![S::zero(); size];
        for i in 0..=m {
            r[shift + i] = p.coeff(m - i);
        }
        rows.push(r);
    }
    for shift in 0..m {
        let mut r = vec![S::zero(); size];
        for i in 0..=n {
            r[shift + i] = q.coeff(n - i);
        }
        rows.push(r);
    }
    det(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, Rational};

    fn q2(entries: &[((usize, usize), i64)]) -> Quadratic2<Rational> {
        let mut q = Quadratic2::zero();
        for &((i, j), v) in entries {
            q.c[i][j] = int(v);
        }
        q
    }

    #[test]
    fn shared_root_gives_linear_factor() {
        // p = tb^2 - t, q = tb - 1
        let p = q2(&[((0, 2), 1), ((1, 0), -1)]);
        let q = q2(&[((0, 1), 1), ((0, 0), -1)]);
        let r = resultant_tau_bar(&p, &q).unwrap();
        let target = UniPoly::new(vec![int(-1), int(1)]);
        assert!(r == target || r == (&UniPoly::zero() - &target));
    }

    #[test]
    fn equal_forms_have_zero_resultant() {
        let p = q2(&[((2, 2), 3), ((1, 0), -1), ((0, 1), 2)]);
        assert!(resultant_tau_bar(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn degenerate_when_no_quadratic_term() {
        let p = q2(&[((0, 1), 1)]);
        assert!(matches!(resultant_tau_bar(&p, &p), Err(AlgebraError::DegenerateResultant)));
    }

    #[test]
    fn sylvester_of_linear_factors() {
        // (x - 2)(x - 3) and (x - 3)(x + 1) share a root
        let a = UniPoly::new(vec![int(6), int(-5), int(1)]);
        let b = UniPoly::new(vec![int(-3), int(-2), int(1)]);
        assert_eq!(sylvester_resultant(&a, &b), int(0));
        // res(x - 2, x + 1) = 2 - (-1)
        let c = UniPoly::new(vec![int(-2), int(1)]);
        let d = UniPoly::new(vec![int(1), int(1)]);
        assert_eq!(sylvester_resultant(&c, &d), int(3));
    }

    #[test]
    fn bidegree_interpolation() {
        let p = q2(&[((2, 2), 3), ((2, 1), -1), ((1, 2), 5), ((0, 0), 7)]);
        let taus = [int(0), int(1), int(2)];
        let bars = [int(-1), int(3), int(4)];
        let back = Quadratic2::interpolate(|t, b| p.eval(t, b), taus, bars);
        assert_eq!(back, p);
    }
}
