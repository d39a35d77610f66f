use std::ops::{Add, Index, Mul, Neg, Sub};

use super::scalar::Scalar;

/// Column vector in 3-space.
#[derive(Debug, Clone, PartialEq)]
pub struct Vec3<S>(pub [S; 3]);

impl<S: Scalar> Vec3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Vec3([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3([S::zero(), S::zero(), S::zero()])
    }

    pub fn unit_x() -> Self {
        Vec3([S::one(), S::zero(), S::zero()])
    }

    pub fn x(&self) -> &S {
        &self.0[0]
    }
    pub fn y(&self) -> &S {
        &self.0[1]
    }
    pub fn z(&self) -> &S {
        &self.0[2]
    }

    pub fn dot(&self, o: &Self) -> S {
        self.0[0].clone() * o.0[0].clone() + self.0[1].clone() * o.0[1].clone() + self.0[2].clone() * o.0[2].clone()
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a, b, c] = &self.0;
        let [d, e, f] = &o.0;
        Vec3([
            b.clone() * f.clone() - c.clone() * e.clone(),
            c.clone() * d.clone() - a.clone() * f.clone(),
            a.clone() * e.clone() - b.clone() * d.clone(),
        ])
    }

    pub fn norm2(&self) -> S {
        self.dot(self)
    }

    pub fn scale(&self, k: &S) -> Self {
        Vec3(self.0.clone().map(|v| v * k.clone()))
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Vec3<T> {
        Vec3([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    pub fn to_f64(&self) -> Vec3<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }

    /// Largest absolute component as a double.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn dist2(&self, o: &Self) -> S {
        (self.clone() - o.clone()).norm2()
    }

    /// `(1 - t) self + t o`.
    pub fn lerp(&self, o: &Self, t: &S) -> Self {
        self.clone() + (o.clone() - self.clone()).scale(t)
    }
}

impl Vec3<f64> {
    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(&(1.0 / n))
    }
}

/// `det(a, b, c)` of three column vectors.
pub fn det3<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>) -> S {
    a.dot(&b.cross(c))
}

impl<S: Scalar> Add for Vec3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a, b, c] = self.0;
        let [d, e, f] = o.0;
        Vec3([a + d, b + e, c + f])
    }
}

impl<S: Scalar> Sub for Vec3<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let [a, b, c] = self.0;
        let [d, e, f] = o.0;
        Vec3([a - d, b - e, c - f])
    }
}

impl<S: Scalar> Neg for Vec3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3(self.0.map(|v| -v))
    }
}

impl<S: Scalar> Add for &Vec3<S> {
    type Output = Vec3<S>;
    fn add(self, o: Self) -> Vec3<S> {
        self.clone() + o.clone()
    }
}

impl<S: Scalar> Sub for &Vec3<S> {
    type Output = Vec3<S>;
    fn sub(self, o: Self) -> Vec3<S> {
        self.clone() - o.clone()
    }
}

impl<S> Index<usize> for Vec3<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

/// Row-major 3x3 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat3<S>(pub [[S; 3]; 3]);

impl<S: Scalar> Mat3<S> {
    pub fn from_cols(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>) -> Self {
        Mat3(std::array::from_fn(|i| [a.0[i].clone(), b.0[i].clone(), c.0[i].clone()]))
    }

    pub fn identity() -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })))
    }

    pub fn col(&self, j: usize) -> Vec3<S> {
        Vec3([self.0[0][j].clone(), self.0[1][j].clone(), self.0[2][j].clone()])
    }

    pub fn det(&self) -> S {
        det3(&self.col(0), &self.col(1), &self.col(2))
    }

    pub fn transpose(&self) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn mul_vec(&self, v: &Vec3<S>) -> Vec3<S> {
        Vec3(std::array::from_fn(|i| {
            self.0[i][0].clone() * v.0[0].clone() + self.0[i][1].clone() * v.0[1].clone() + self.0[i][2].clone() * v.0[2].clone()
        }))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).fold(S::zero(), |acc, k| acc + self.0[i][k].clone() * o.0[k][j].clone()))
        }))
    }

    /// Inverse via the adjugate; `None` when singular (exactly zero, or
    /// below `tol` relative to the column scale in floating mode).
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let d = self.det();
        let scale: f64 = (0..3).map(|j| self.col(j).max_abs()).product();
        if d.is_zero() || (!S::EXACT && d.to_f64().abs() <= tol * scale) {
            return None;
        }
        let (c0, c1, c2) = (self.col(0), self.col(1), self.col(2));
        let rows = [c1.cross(&c2), c2.cross(&c0), c0.cross(&c1)];
        Some(Mat3(std::array::from_fn(|i| std::array::from_fn(|j| rows[i].0[j].clone() / d.clone()))))
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &Vec3<S>, tol: f64) -> Option<Vec3<S>> {
        self.inverse(tol).map(|inv| inv.mul_vec(b))
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.0[i][j].clone() - o.0[i][j].clone()).to_f64().abs());
            }
        }
        m
    }

    pub fn is_exactly(&self, o: &Self) -> bool {
        self == o
    }
}

/// Homogeneous 4x4 transform acting on columns `(w, x, y, z)`.
///
/// Rigid motions have first row `(1, 0, 0, 0)`, translation in the first
/// column and the rotation block in rows and columns 1..4.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat4<S>(pub [[S; 4]; 4]);

impl<S: Scalar> Mat4<S> {
    pub fn identity() -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })))
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> S) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// Rigid map `x -> rot * x + trans`.
    pub fn from_rotation_translation(rot: &Mat3<S>, trans: &Vec3<S>) -> Self {
        Mat4::from_fn(|i, j| match (i, j) {
            (0, 0) => S::one(),
            (0, _) => S::zero(),
            (_, 0) => trans.0[i - 1].clone(),
            _ => rot.0[i - 1][j - 1].clone(),
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat4::from_fn(|i, j| (0..4).fold(S::zero(), |acc, k| acc + self.0[i][k].clone() * o.0[k][j].clone()))
    }

    pub fn mul_vec4(&self, v: &[S; 4]) -> [S; 4] {
        std::array::from_fn(|i| (0..4).fold(S::zero(), |acc, k| acc + self.0[i][k].clone() * v[k].clone()))
    }

    /// Tail of the first column: image of the origin.
    pub fn translation(&self) -> Vec3<S> {
        Vec3([self.0[1][0].clone(), self.0[2][0].clone(), self.0[3][0].clone()])
    }

    pub fn rotation(&self) -> Mat3<S> {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i + 1][j + 1].clone())))
    }

    /// Applies the transform to a point (`w = 1`).
    pub fn apply_point(&self, p: &Vec3<S>) -> Vec3<S> {
        self.rotation().mul_vec(p) + self.translation()
    }

    /// Applies the linear part to a direction (`w = 0`).
    pub fn apply_dir(&self, v: &Vec3<S>) -> Vec3<S> {
        self.rotation().mul_vec(v)
    }

    /// Max-abs entry of `self - other`.
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.0[i][j].clone() - o.0[i][j].clone()).to_f64().abs());
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Mat4<T> {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.0[i][j]))))
    }

    pub fn to_f64(&self) -> Mat4<f64> {
        self.map(|v| v.to_f64())
    }
}

/// Standard matrix product.
pub fn mat_mul<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    a.mul(b)
}

impl<S: Scalar> Mul for &Mat4<S> {
    type Output = Mat4<S>;
    fn mul(self, o: Self) -> Mat4<S> {
        Mat4::mul(self, o)
    }
}

/// Determinant of a square matrix by fraction-based elimination.
///
/// Exact over exact scalars. In floating mode partial pivoting by
/// magnitude is used; exact modes pivot on the first nonzero entry.
pub fn det<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    let mut sign = S::one();
    let mut acc = S::one();
    for c in 0..n {
        let pivot = if S::EXACT {
            (c..n).find(|&r| !m[r][c].is_zero())
        } else {
            (c..n).filter(|&r| !m[r][c].is_zero()).max_by(|&a, &b| m[a][c].to_f64().abs().total_cmp(&m[b][c].to_f64().abs()))
        };
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        let pv = m[c][c].clone();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() / pv.clone();
            for k in c..n {
                let v = m[r][k].clone() - f.clone() * m[c][k].clone();
                m[r][k] = v;
            }
        }
        acc = acc * pv;
    }
    sign * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, Rational};

    #[test]
    fn cross_and_det() {
        let e1 = Vec3::<Rational>::unit_x();
        let e2 = Vec3::new(rat(0, 1), rat(1, 1), rat(0, 1));
        assert_eq!(e1.cross(&e2), Vec3::new(rat(0, 1), rat(0, 1), rat(1, 1)));
        assert_eq!(det3(&e1, &e2, &e1.cross(&e2)), rat(1, 1));
    }

    #[test]
    fn mat3_inverse_roundtrip() {
        let m = Mat3([[rat(2, 1), rat(1, 3), rat(0, 1)], [rat(1, 1), rat(1, 1), rat(5, 2)], [rat(-1, 1), rat(0, 1), rat(3, 1)]]);
        let inv = m.inverse(0.0).unwrap();
        assert_eq!(m.mul(&inv), Mat3::identity());
        let b = Vec3::new(rat(1, 1), rat(2, 1), rat(3, 1));
        assert_eq!(m.mul_vec(&m.solve(&b, 0.0).unwrap()), b);
    }

    #[test]
    fn dense_det_matches_cofactor() {
        let m = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(0, 1), rat(4, 1), rat(5, 1)],
            vec![rat(1, 1), rat(0, 1), rat(6, 1)],
        ];
        assert_eq!(det(m), rat(22, 1));
        let z = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(2, 1)]];
        assert_eq!(det(z), rat(0, 1));
        let f = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert_eq!(det(f), -1.0);
    }
}
