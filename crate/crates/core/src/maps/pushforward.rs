//! Images of curves under linear maps and the standard quadratic involution.

use crate::curve::{linear_form, multiplicity_implicit, Parametrization, PlaneCurve, ProjPoint};
use crate::error::{degenerate, input, Result};
use crate::linalg::Matrix;
use crate::poly::{xyz, MultiPoly};

/// Image of `C` under `w ↦ M·w`: the implicit form becomes `F ∘ M⁻¹`.
pub fn linear_pushforward(curve: &PlaneCurve, m: &Matrix) -> Result<PlaneCurve> {
    let inv = m.inverse().ok_or_else(|| input("singular matrix"))?;
    let field = curve.field();
    let f = curve.implicit()?;
    let images: Vec<MultiPoly> = (0..3).map(|r| linear_form(field, &std::array::from_fn(|c| inv.get(r, c).clone()))).collect();
    let g = f.substitute(&images);
    match curve.param() {
        Some(p) => {
            let comps: [MultiPoly; 3] = std::array::from_fn(|r| p.pullback_linear(&std::array::from_fn(|c| m.get(r, c).clone())));
            // (F∘M⁻¹)∘(M·φ) = F∘φ vanishes already
            PlaneCurve::from_both_unchecked(&g, Parametrization::new(comps)?)
        }
        None => PlaneCurve::from_implicit(&g, curve.irreducible_trusted()),
    }
}

/// What the standard quadratic map did to a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticReport {
    /// Multiplicities at `[1:0:0]`, `[0:1:0]`, `[0:0:1]`.
    pub multiplicities: [u32; 3],
    pub degree_before: u32,
    pub degree_after: u32,
    /// Indices `i` of coordinate lines `X_i = 0` that were components of the
    /// curve; each is contracted to a point and drops out.
    pub contracted_lines: Vec<usize>,
}

/// Strict transform of `C` under `[YZ : XZ : XY]`.
pub fn std_quadratic_pushforward(curve: &PlaneCurve) -> Result<(PlaneCurve, QuadraticReport)> {
    let field = curve.field();
    let f = curve.implicit()?;
    let d = f.degree().unwrap();
    let v = xyz();
    let vars: [MultiPoly; 3] = std::array::from_fn(|i| MultiPoly::var(field, &v, i));
    if d == 1 && vars.iter().any(|x| x.proportional(f)) {
        return Err(input("a coordinate line is contracted to a point"));
    }
    let mults = ProjPoint::coordinate_points(field).map(|p| multiplicity_implicit(f, &p));
    let contracted_lines: Vec<usize> = (0..3).filter(|&i| f.exact_div(&vars[i]).is_ok()).collect();
    let substituted = f.substitute(&[&vars[1] * &vars[2], &vars[0] * &vars[2], &vars[0] * &vars[1]]);
    let divisor = (0..3).fold(MultiPoly::one(field, &v), |acc, i| &acc * &vars[i].pow(mults[i]));
    let g = substituted.exact_div(&divisor).map_err(|_| degenerate("exceptional factor does not divide the total transform"))?;
    let expected = 2 * d - mults.iter().sum::<u32>();
    if g.degree() != Some(expected) {
        return Err(degenerate(format!("strict transform has degree {:?}, expected {expected}", g.degree())));
    }
    if expected == 0 {
        return Err(degenerate("the curve collapses to points"));
    }
    let report = QuadraticReport { multiplicities: mults, degree_before: d, degree_after: expected, contracted_lines };
    let image = match curve.param() {
        Some(p) => {
            let c = p.components();
            let comps = [&c[1] * &c[2], &c[0] * &c[2], &c[0] * &c[1]];
            PlaneCurve::from_both(&g, Parametrization::new(comps)?)?
        }
        None => PlaneCurve::from_implicit(&g, curve.irreducible_trusted())?,
    };
    Ok((image, report))
}
