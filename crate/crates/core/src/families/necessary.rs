use crate::algebra::{resultant_tau_bar, AlgebraError, Quadratic2, Scalar};
use crate::bennett::{pose, Design};

use super::{points_on_axes, BiBennett, FamilyError, MuSet, SkewQuad};

fn quad_at<S: Scalar>(d: &Design<S>, mu: &MuSet<S>, t: &S) -> Result<SkewQuad<S>, FamilyError> {
    Ok(points_on_axes(&pose(d, t)?, mu))
}

/// The two diagonal conditions, each multiplied by its pose denominators so
/// that it becomes a polynomial of bidegree (2, 2) in `(tau, tau_bar)`:
///
/// `(|P14 P23|^2 - |Pb14 Pb23|^2)(tau^2 + K^2)(tau_bar^2 + Kb^2)` and
/// `(|P12 P34|^2 - |Pb12 Pb34|^2)(1 + tau^2)(1 + tau_bar^2)`.
///
/// Recovered by exact interpolation on a 3x3 grid and checked at one more
/// point.
pub fn diagonal_forms<S: Scalar>(
    design: &Design<S>,
    mu: &MuSet<S>,
    bar_design: &Design<S>,
    bar_mu: &MuSet<S>,
) -> Result<[Quadratic2<S>; 2], FamilyError> {
    let k2 = design.transmission()?.square();
    let kb2 = bar_design.transmission()?.square();
    let nodes: [S; 4] = std::array::from_fn(|i| S::from_i64(i as i64 + 1));
    let extra_bar = S::from_i64(5);
    let mut own = Vec::new();
    for t in &nodes {
        own.push(quad_at(design, mu, t)?.diag2());
    }
    let mut bar = Vec::new();
    for t in nodes[..3].iter().chain(std::iter::once(&extra_bar)) {
        bar.push(quad_at(bar_design, bar_mu, t)?.diag2());
    }
    let weight = |which: usize, t: &S, c: &S| -> S {
        if which == 0 {
            t.square() + c.clone()
        } else {
            S::one() + t.square()
        }
    };
    let value = |which: usize, i: usize, j: usize| -> S {
        let (t, tb) = (&nodes[i], if j == 3 { &extra_bar } else { &nodes[j] });
        (own[i][which].clone() - bar[j][which].clone()) * weight(which, t, &k2) * weight(which, tb, &kb2)
    };
    let mut out = Vec::new();
    for which in 0..2 {
        let idx = |x: &S| (x.to_f64().round() as usize) - 1;
        let q = Quadratic2::interpolate(
            |t, tb| value(which, idx(t), idx(tb)),
            [nodes[0].clone(), nodes[1].clone(), nodes[2].clone()],
            [nodes[0].clone(), nodes[1].clone(), nodes[2].clone()],
        );
        let check = q.eval(&nodes[3], &extra_bar) - value(which, 3, 3);
        let scale = q.c.iter().flatten().map(|c| c.to_f64().abs()).fold(1.0, f64::max);
        if !check.negligible(1e-9 * scale * 1e3) {
            return Err(FamilyError::DegreeAssumption(check.to_f64()));
        }
        out.push(q);
    }
    let [a, b]: [Quadratic2<S>; 2] = out.try_into().expect("two forms");
    Ok([a, b])
}

/// The thirteen necessary conditions for a flexible coupling: four side
/// length differences and the nine coefficients of the resultant of the two
/// diagonal conditions with respect to `tau_bar`.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryReport<S> {
    pub sides: [S; 4],
    /// `c0 .. c8`, coefficient of `tau^i` at index `i`.
    pub resultant: Vec<S>,
    /// Both leading `tau_bar^2` coefficients vanish; the coefficients are
    /// reported as zero.
    pub degenerate: bool,
    /// Magnitude of a resultant term, `max|f0|^2 max|f1|^2`, for relative tests.
    pub scale: f64,
}

impl<S: Scalar> NecessaryReport<S> {
    pub fn residuals(&self) -> Vec<S> {
        self.sides.iter().chain(self.resultant.iter()).cloned().collect()
    }

    /// Exact zero test in exact arithmetic, relative test otherwise.
    pub fn all_vanish(&self, tol: f64) -> bool {
        if S::EXACT {
            return self.residuals().iter().all(|r| r.is_zero());
        }
        let scale = |v: &[S]| v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        self.sides.iter().all(|s| s.to_f64().abs() <= tol) && scale(&self.resultant) <= tol * self.scale.max(1.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.residuals().iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }
}

/// Evaluates the thirteen conditions for an arbitrary pair of loops.
pub fn necessary_conditions<S: Scalar>(
    design: &Design<S>,
    mu: &MuSet<S>,
    bar_design: &Design<S>,
    bar_mu: &MuSet<S>,
) -> Result<NecessaryReport<S>, FamilyError> {
    let one = S::one();
    let q = quad_at(design, mu, &one)?;
    let qb = quad_at(bar_design, bar_mu, &one)?;
    let sides = std::array::from_fn(|i| q.side2(i) - qb.side2(i));
    let [f0, f1] = diagonal_forms(design, mu, bar_design, bar_mu)?;
    let (resultant, degenerate) = match resultant_tau_bar(&f0, &f1) {
        Ok(r) => ((0..9).map(|i| r.coeff(i)).collect(), false),
        Err(AlgebraError::DegenerateResultant) => (vec![S::zero(); 9], true),
        Err(e) => return Err(e.into()),
    };
    let mag = |f: &Quadratic2<S>| f.c.iter().flatten().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
    let scale = mag(&f0).powi(2) * mag(&f1).powi(2);
    Ok(NecessaryReport { sides, resultant, degenerate, scale })
}

impl<S: Scalar> BiBennett<S> {
    pub fn necessary_conditions(&self) -> Result<NecessaryReport<S>, FamilyError> {
        necessary_conditions(&self.design, &self.mu, &self.bar_design, &self.bar_mu)
    }
}
