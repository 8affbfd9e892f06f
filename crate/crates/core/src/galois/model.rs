//! The extension `k(C) / π_P^* k(P¹)` in affine coordinates centered at `P`.

use crate::curve::{linear_form, multiplicity_implicit, PlaneCurve, ProjPoint};
use crate::error::{input, Result};
use crate::linalg::Matrix;
use crate::poly::{vars, MultiPoly, UniPoly};

/// After the change `M` sending `P` to `[1:0:0]`, the curve is `F' = F ∘ M⁻¹`
/// and `fiber_poly = F'(x, y, 1)` has degree `d - m_P` in `x`.
#[derive(Debug, Clone)]
pub struct ProjectionModel {
    pub curve: PlaneCurve,
    pub center: ProjPoint,
    pub change: Matrix,
    pub moved: MultiPoly,
    /// Polynomial in `x, y`.
    pub fiber_poly: MultiPoly,
    pub ext_degree: u32,
    pub center_multiplicity: u32,
}

pub fn projection_model(curve: &PlaneCurve, p: &ProjPoint) -> Result<ProjectionModel> {
    if curve.is_line_through(p)? {
        return Err(input("the curve is a line through the center, the projection is constant"));
    }
    let f = curve.implicit()?;
    let d = f.degree().unwrap();
    let m = multiplicity_implicit(f, p);
    let change = p.centering_matrix();
    let inv = change.inverse().expect("centering matrix is invertible");
    let field = curve.field();
    let images: Vec<MultiPoly> = (0..3).map(|r| linear_form(field, &std::array::from_fn(|c| inv.get(r, c).clone()))).collect();
    let moved = f.substitute(&images);
    let chart = vars(&["x", "y"]);
    let fiber_poly = MultiPoly::from_terms(field, &chart, moved.terms().map(|(e, c)| (vec![e.0[0], e.0[1]], c.clone())));
    let ext_degree = d - m;
    debug_assert_eq!(fiber_poly.degree_in(0), Some(ext_degree));
    Ok(ProjectionModel { curve: curve.clone(), center: p.clone(), change, moved, fiber_poly, ext_degree, center_multiplicity: m })
}

impl ProjectionModel {
    /// Coefficients of `fiber_poly` in `x`, lowest first, as polynomials in `y`.
    pub fn x_coefficients(&self) -> Vec<UniPoly> {
        let field = self.curve.field();
        self.fiber_poly.coefficients_in(0).iter().map(|c| c.to_uni(1).unwrap_or_else(|| UniPoly::zero(field))).collect()
    }

    /// Default degree bound for Möbius coefficients: the largest `y`-degree of
    /// the `x`-coefficients, plus 2.
    pub fn default_degree_bound(&self) -> u32 {
        self.x_coefficients().iter().filter_map(|c| c.degree()).max().unwrap_or(0) as u32 + 2
    }
}
