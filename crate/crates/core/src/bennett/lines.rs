use crate::algebra::{RigidMotion, Scalar, Vec3};

use super::chain::{AxisLabel, Pose};
use super::BennettError;

/// Line through `point` with direction `dir` (not normalized).
#[derive(Debug, Clone, PartialEq)]
pub struct Line<S> {
    pub point: Vec3<S>,
    pub dir: Vec3<S>,
}

impl<S: Scalar> Line<S> {
    /// Half-turn about this line.
    pub fn half_turn(&self) -> RigidMotion<S> {
        RigidMotion::half_turn(&self.point, &self.dir)
    }

    pub fn moment(&self) -> Vec3<S> {
        self.point.cross(&self.dir)
    }
}

/// Reciprocal product of two lines in Pluecker coordinates. Zero iff the
/// lines are coplanar.
pub fn plucker_side<S: Scalar>(p1: &Vec3<S>, d1: &Vec3<S>, p2: &Vec3<S>, d2: &Vec3<S>) -> S {
    d1.dot(&p2.cross(d2)) + d2.dot(&p1.cross(d1))
}

fn side_negligible<S: Scalar>(p1: &Vec3<S>, d1: &Vec3<S>, p2: &Vec3<S>, d2: &Vec3<S>, tol: f64) -> bool {
    let s = plucker_side(p1, d1, p2, d2);
    if S::EXACT {
        return s.is_zero();
    }
    let scale = d1.max_abs() * d2.max_abs() * (1.0 + p1.max_abs() + p2.max_abs());
    s.to_f64().abs() <= tol * scale.max(1.0)
}

/// Side products of the opposite pairs (14, 23) and (12, 34).
pub fn opposite_side_products<S: Scalar>(pose: &Pose<S>) -> [S; 2] {
    let a = &pose.axes;
    [plucker_side(&a[0].f, &a[0].r, &a[2].f, &a[2].r), plucker_side(&a[1].f, &a[1].r, &a[3].f, &a[3].r)]
}

/// Whether opposite axes (14, 23) and (12, 34) meet. For a Bennett loop this
/// holds at every pose iff `a1 a2 = 1`.
pub fn opposite_axes_intersect<S: Scalar>(pose: &Pose<S>, tol: f64) -> [bool; 2] {
    let a = &pose.axes;
    [side_negligible(&a[0].f, &a[0].r, &a[2].f, &a[2].r, tol), side_negligible(&a[1].f, &a[1].r, &a[3].f, &a[3].r, tol)]
}

fn quadric_row<S: Scalar>(p: &Vec3<S>) -> Vec<S> {
    let [x, y, z] = p.0.clone();
    vec![
        x.square(),
        y.square(),
        z.square(),
        x.clone() * y.clone(),
        x.clone() * z.clone(),
        y.clone() * z.clone(),
        x,
        y,
        z,
        S::one(),
    ]
}

fn eval_quadric<S: Scalar>(q: &[S], p: &Vec3<S>) -> S {
    quadric_row(p).into_iter().zip(q).fold(S::zero(), |acc, (m, c)| acc + m * c.clone())
}

/// One-dimensional kernel of a 9x10 system, or `None` when the rank drops.
fn kernel<S: Scalar>(mut m: Vec<Vec<S>>, tol: f64) -> Option<Vec<S>> {
    let (rows, cols) = (m.len(), m[0].len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pick = if S::EXACT {
            (r..rows).find(|&i| !m[i][c].is_zero())
        } else {
            (r..rows)
                .max_by(|&i, &j| m[i][c].to_f64().abs().total_cmp(&m[j][c].to_f64().abs()))
                .filter(|&i| m[i][c].to_f64().abs() > tol)
        };
        let Some(p) = pick else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in 0..cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != cols - 1 {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![S::zero(); cols];
    v[free] = S::one();
    for (row, &c) in pivots.iter().enumerate() {
        v[c] = -m[row][free].clone();
    }
    Some(v)
}

/// How far the fourth axis is from the quadric through the first three.
///
/// The quadric is fitted through three points on each of the axes 14, 12
/// and 23 and evaluated at three points of axis 34, which covers both point
/// membership and tangency. Exactly zero in exact arithmetic; relative to the
/// coefficient and coordinate scale in floating point.
pub fn regulus_residual<S: Scalar>(pose: &Pose<S>, tol: f64) -> Result<f64, BennettError> {
    let a = &pose.axes;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let parallel = a[i].r.cross(&a[j].r).to_f64().max_abs() <= tol;
        if parallel || side_negligible(&a[i].f, &a[i].r, &a[j].f, &a[j].r, tol) {
            return Err(BennettError::DegenerateRegulus(a[i].label, a[j].label));
        }
    }
    let ts = [-S::one(), S::zero(), S::one()];
    let rows: Vec<Vec<S>> = a[..3].iter().flat_map(|ax| ts.iter().map(|t| quadric_row(&ax.at(t)))).collect();
    let q = kernel(rows, tol).ok_or(BennettError::DegenerateRegulus(AxisLabel::A14, AxisLabel::A23))?;
    let vals: Vec<S> = ts.iter().map(|t| eval_quadric(&q, &a[3].at(t))).collect();
    if S::EXACT && vals.iter().all(|v| v.is_zero()) {
        return Ok(0.0);
    }
    let qmax = q.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
    let pmax = a[3].f.max_abs() + a[3].r.max_abs();
    let worst = vals.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    Ok(worst / (qmax * (1.0 + pmax * pmax)))
}

/// Line through the midpoints of F14 F23 and F12 F34. The half-turn about it
/// swaps those pairs and maps the axis set onto itself.
pub fn symmetry_line<S: Scalar>(pose: &Pose<S>, tol: f64) -> Result<Line<S>, BennettError> {
    quad_symmetry_line(&pose.f_points(), tol)
}

/// Line through the midpoints of the two diagonals of a quadrilateral. For a
/// skew isogram it is the line of symmetry.
pub fn quad_symmetry_line<S: Scalar>(q: &[Vec3<S>; 4], tol: f64) -> Result<Line<S>, BennettError> {
    let half = S::from_ratio(1, 2);
    let m1 = (&q[0] + &q[2]).scale(&half);
    let m2 = (&q[1] + &q[3]).scale(&half);
    let dir = &m2 - &m1;
    if dir.norm2().negligible(tol * tol) {
        return Err(BennettError::UndefinedSymmetryLine);
    }
    Ok(Line { point: m1, dir })
}
