use super::poly::Poly;
use super::scalar::{rat, Rational, Scalar};
use super::AlgebraError;

/// Grid node `j` for variable `var`. Different variables never share a node,
/// which keeps sample points off diagonal poles such as `a1 = a2`.
pub fn grid_node(var: usize, j: usize) -> Rational {
    rat((j as i64 + 1) * 64 + var as i64 + 1, 64)
}

/// Decides whether `p` is the zero polynomial by exact evaluation on a grid
/// of `bounds[v] + 1` distinct nodes per variable.
///
/// A polynomial of degree at most `d_v` in each variable that vanishes on
/// such a grid is identically zero, so `Ok(true)` is a proof once the bounds
/// are valid. Bounds below the actual degree are reported as an error.
pub fn poly_identity_zero(p: &Poly, bounds: &[u32]) -> Result<bool, AlgebraError> {
    let nv = p.nvars();
    for v in 0..nv {
        let deg = p.degree_in(v);
        let bound = bounds.get(v).copied().unwrap_or(0);
        if deg > bound {
            return Err(AlgebraError::DegreeBound { var: v, bound, observed: deg });
        }
    }
    Ok(vanishes_on_grid(p, 0, nv, bounds))
}

fn vanishes_on_grid(p: &Poly, var: usize, nv: usize, bounds: &[u32]) -> bool {
    if p.is_zero() {
        return true;
    }
    if var >= nv {
        return p.as_constant().is_some_and(|c| c.is_zero());
    }
    let count = bounds.get(var).copied().unwrap_or(0) as usize + 1;
    (0..count).all(|j| {
        let restricted = p.substitute(var, &Poly::constant(grid_node(var, j)));
        vanishes_on_grid(&restricted, var + 1, nv, bounds)
    })
}

/// Same decision for a function known only through evaluation.
///
/// `f` must agree with a polynomial whose per-variable degrees are bounded
/// by `bounds`; returning `None` signals a pole on the grid, reported as an
/// error.
pub fn blackbox_identity_zero(bounds: &[u32], f: impl Fn(&[Rational]) -> Option<Rational>) -> Result<bool, AlgebraError> {
    let mut idx = vec![0usize; bounds.len()];
    loop {
        let point: Vec<Rational> = idx.iter().enumerate().map(|(v, &j)| grid_node(v, j)).collect();
        match f(&point) {
            None => return Err(AlgebraError::PoleOnGrid(point.iter().map(|q| q.to_string()).collect())),
            Some(v) if !v.is_zero() => return Ok(false),
            Some(_) => {}
        }
        let mut v = 0;
        loop {
            if v == bounds.len() {
                return Ok(true);
            }
            idx[v] += 1;
            if idx[v] <= bounds[v] as usize {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;

    #[test]
    fn binomial_identity_is_zero() {
        let v = Poly::vars(&["x", "y"]);
        let s = &v[0] + &v[1];
        let p = &(&(&s * &s) - &(&v[0] * &v[0])) - &(&(&v[0] * &v[1]).scale(&int(2)) + &(&v[1] * &v[1]));
        assert_eq!(poly_identity_zero(&p, &[2, 2]), Ok(true));
    }

    #[test]
    fn nonzero_polynomial_detected() {
        let v = Poly::vars(&["x", "y"]);
        let p = &(&v[0] * &v[1]) - &Poly::one();
        assert_eq!(poly_identity_zero(&p, &[1, 1]), Ok(false));
    }

    #[test]
    fn low_bound_is_a_diagnostic() {
        let v = Poly::vars(&["x"]);
        let p = v[0].pow(3);
        assert!(matches!(poly_identity_zero(&p, &[2]), Err(AlgebraError::DegreeBound { var: 0, bound: 2, observed: 3 })));
    }

    #[test]
    fn blackbox_matches() {
        let zero = blackbox_identity_zero(&[2, 1], |p| {
            let (x, y) = (&p[0], &p[1]);
            Some((x + y) * (x - y) - x * x + y * y)
        });
        assert_eq!(zero, Ok(true));
        let nonzero = blackbox_identity_zero(&[1, 1], |p| Some(&p[0] * &p[1] - int(1)));
        assert_eq!(nonzero, Ok(false));
    }
}
