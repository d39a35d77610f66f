use crate::algebra::{Rational, Scalar, Surd};
use crate::bennett::{BennettDesign, Design};

use super::necessary::diagonal_forms;
use super::{BiBennett, Branch, Family, FamilyError, MuSet};

/// `A tau^2 tau_bar^2 + B tau^2 + C tau_bar^2 + D`, the factor of the
/// diagonal conditions that governs family C.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingQuartic<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> CouplingQuartic<S> {
    pub fn eval(&self, tau: &S, tau_bar: &S) -> S {
        let (t2, b2) = (tau.square(), tau_bar.square());
        self.a.clone() * t2.clone() * b2.clone() + self.b.clone() * t2 + self.c.clone() * b2 + self.d.clone()
    }

    /// `tau_bar^2 = -(B tau^2 + D) / (A tau^2 + C)`.
    pub fn bar_tau_sq(&self, tau: &S) -> Result<S, FamilyError> {
        let t2 = tau.square();
        let den = self.a.clone() * t2.clone() + self.c.clone();
        if den.negligible(1e-300) {
            return Err(FamilyError::QuarticPole(tau.to_f64()));
        }
        Ok(-(self.b.clone() * t2 + self.d.clone()) / den)
    }
}

/// Coefficients of the family C factor for any scale `k`. For `k = 1` they
/// reduce to the published form; the constant 2 there is `2 k^2`.
pub fn coupling_quartic<S: Scalar>(design: &BennettDesign<S>, mu14: &S, mu12: &S) -> CouplingQuartic<S> {
    let (a1, a2, k) = (design.a1().clone(), design.a2().clone(), design.k().clone());
    let m = mu14.square() - mu12.square();
    let p = mu14.square() + mu12.square() + S::from_i64(2) * k.square();
    let sq = a1.square() + a2.square();
    let cross = S::from_i64(2) * p * a1.clone() * a2.clone();
    CouplingQuartic {
        a: m.clone() * (a1.clone() - a2.clone()).square(),
        b: m.clone() * sq.clone() + cross.clone(),
        c: m.clone() * sq - cross,
        d: m * (a1 + a2).square(),
    }
}

/// Real companion parameters at `tau`, negative root first. Empty when
/// `tau_bar^2 < 0`, a single zero when it vanishes.
pub fn solve_bar_tau<S: Scalar>(q: &CouplingQuartic<S>, tau: &S) -> Result<Vec<S>, FamilyError> {
    let sq = q.bar_tau_sq(tau)?;
    if sq.negative() {
        return Ok(vec![]);
    }
    if sq.is_zero() {
        return Ok(vec![S::zero()]);
    }
    let r = sq.sqrt_opt().ok_or_else(|| FamilyError::IrrationalRoot { which: "tau_bar", value: format!("{sq:?}") })?;
    Ok(vec![-r.clone(), r])
}

/// Family C: same design, `mu23 = mu14`, `mu34 = mu12`, and the partner
/// offsets `s (mu12, mu14, mu12, mu14)`.
pub fn family_c<S: Scalar>(design: Design<S>, mu14: S, mu12: S, s: i64) -> Result<BiBennett<S>, FamilyError> {
    if s != 1 && s != -1 {
        return Err(FamilyError::InvalidSign(s));
    }
    let sg = S::from_i64(s);
    let bar_mu = MuSet::new(sg.clone() * mu12.clone(), sg.clone() * mu14.clone(), sg.clone() * mu12.clone(), sg * mu14.clone());
    let mu = MuSet::new(mu14.clone(), mu12.clone(), mu14, mu12);
    Ok(BiBennett { family: Family::C, bar_design: design.clone(), design, mu, bar_mu, s: Some(s) })
}

impl<S: Scalar> BiBennett<S> {
    /// Quadratic `[c0, c1, c2]` in `tau_bar` whose roots are the companion
    /// parameters at `tau`. Family C on a spatial design uses the closed
    /// form; other couplings read it off the first diagonal condition.
    pub fn companion_quadratic(&self, tau: &S) -> Result<[S; 3], FamilyError> {
        if let (Family::C, Design::Spatial(d)) = (self.family, &self.design) {
            let q = coupling_quartic(d, &self.mu.mu14, &self.mu.mu12);
            let t2 = tau.square();
            return Ok([q.b * t2.clone() + q.d, S::zero(), q.a * t2 + q.c]);
        }
        let forms = diagonal_forms(&self.design, &self.mu, &self.bar_design, &self.bar_mu)?;
        let u = forms[0].at_tau(tau);
        Ok([u.coeff(0), u.coeff(1), u.coeff(2)])
    }

    /// The companion parameter on `branch`. Symmetric families always use
    /// `-tau` (the partner is the loop relabeled by two steps).
    pub fn companion(&self, tau: &S, branch: Branch) -> Result<S, FamilyError> {
        if self.is_symmetric() {
            return Ok(-tau.clone());
        }
        let [c0, c1, c2] = self.companion_quadratic(tau)?;
        if c2.is_zero() {
            if c1.is_zero() {
                return Err(FamilyError::QuarticPole(tau.to_f64()));
            }
            return Ok(-c0 / c1);
        }
        let disc = c1.square() - S::from_i64(4) * c0 * c2.clone();
        if disc.negative() {
            return Err(FamilyError::NoRealCompanion {
                tau: tau.to_f64(),
                tau_bar_sq: (disc.clone() / (S::from_i64(4) * c2.square())).to_f64(),
            });
        }
        let root = disc.sqrt_opt().ok_or_else(|| FamilyError::IrrationalRoot { which: "tau_bar", value: format!("{disc:?}") })?;
        let two_c2 = S::from_i64(2) * c2;
        let lo_first = two_c2.positive();
        let signed = if (branch == Branch::Neg) == lo_first { -root } else { root };
        Ok((signed - c1) / two_c2)
    }

    /// Both companion parameters where real, each tagged with its branch.
    pub fn companions(&self, tau: &S) -> Result<Vec<(Branch, S)>, FamilyError> {
        if self.is_symmetric() {
            return Ok(vec![(Branch::Neg, -tau.clone())]);
        }
        let mut out = Vec::new();
        for b in Branch::BOTH {
            match self.companion(tau, b) {
                Ok(v) => out.push((b, v)),
                Err(FamilyError::NoRealCompanion { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

impl BiBennett<Rational> {
    /// Exact companion in the quadratic field generated by the discriminant.
    pub fn companion_exact(&self, tau: &Rational, branch: Branch) -> Result<Surd, FamilyError> {
        if self.is_symmetric() {
            return Ok(Surd::rational(-tau.clone()));
        }
        let [c0, c1, c2] = self.companion_quadratic(tau)?;
        if c2.is_zero() {
            return self.companion(tau, branch).map(Surd::rational);
        }
        let disc = c1.clone() * c1.clone() - Rational::from_i64(4) * c0 * c2.clone();
        let root = Surd::sqrt_of(&disc).ok_or_else(|| FamilyError::NoRealCompanion {
            tau: tau.to_f64(),
            tau_bar_sq: (-disc.clone() / (Rational::from_i64(4) * c2.clone() * c2.clone())).to_f64(),
        })?;
        let two_c2 = Rational::from_i64(2) * c2;
        let lo_first = two_c2.positive();
        let signed = if (branch == Branch::Neg) == lo_first { -root } else { root };
        Ok((signed - Surd::rational(c1)) / Surd::rational(two_c2))
    }
}
