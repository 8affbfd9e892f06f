//! Plane maps extending a deck transformation.

use crate::curve::{linear_form, Parametrization, ProjPoint};
use crate::error::{degenerate, Result};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::maps::{LineMobius, MobiusOverBase, PlaneRationalMap};
use crate::poly::{proportional_eq, xyz, MultiPoly};

/// The map fixing every line through `P` and acting on `x = X/Z` over `y = Y/Z`
/// by `mob`, in coordinates centered at `P`:
/// `[X:Y:Z] ↦ [(A·X + B·Z)·Z : Y·(C·X + D·Z) : Z·(C·X + D·Z)]` conjugated back,
/// where `A, B, C, D` are the homogenized coefficients of `mob`.
pub fn jonquieres_builder(mob: &MobiusOverBase, p: &ProjPoint) -> Result<PlaneRationalMap> {
    let field = mob.field();
    let ring = xyz();
    let deg = mob.coefficients().iter().filter_map(MultiPoly::degree).max().unwrap_or(0);
    let hom: Vec<MultiPoly> = mob
        .coefficients()
        .iter()
        .map(|c| MultiPoly::from_terms(field, &ring, c.terms().map(|(m, v)| (vec![0, m.0[0], deg - m.0[0]], v.clone()))))
        .collect();
    let [x, y, z] = [0, 1, 2].map(|i| MultiPoly::var(field, &ring, i));
    let num = &(&hom[0] * &x) + &(&hom[1] * &z);
    let den = &(&hom[2] * &x) + &(&hom[3] * &z);
    let local = PlaneRationalMap::new([&num * &z, &y * &den, &z * &den])
        .map_err(|_| degenerate("the Möbius transformation collapses the plane"))?;
    let m = p.centering_matrix();
    let inv = m.inverse().expect("centering matrix is invertible");
    local.conjugate(&inv)
}

/// Results of checking a candidate extension `J` of a deck transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCheck {
    /// `π_P ∘ J` is proportional to `π_P`.
    pub fixes_pencil: bool,
    /// `F` divides `F ∘ J`.
    pub preserves_curve: bool,
    /// `J ∘ φ` is proportional to `φ ∘ g`, when a parametrization and `g` are given.
    pub restricts_to_deck: Option<bool>,
}

impl ExtensionCheck {
    pub fn passed(&self) -> bool {
        self.preserves_curve && self.restricts_to_deck != Some(false)
    }
}

pub fn check_extension(
    j: &PlaneRationalMap,
    f: &MultiPoly,
    p: &ProjPoint,
    deck: Option<(&Parametrization, &LineMobius)>,
) -> ExtensionCheck {
    let field = f.field();
    let [l1, l2] = p.pencil_basis().map(|l| linear_form(field, &l));
    let fixes_pencil = proportional_eq(&[j.pull_back(&l1), j.pull_back(&l2)], &[l1, l2]);
    let preserves_curve = j.pull_back(f).exact_div(f).is_ok();
    let restricts_to_deck = deck.map(|(phi, g)| {
        let left: Vec<MultiPoly> = j.components().iter().map(|c| phi.pull_back(c)).collect();
        let right = g.act_on(phi.components());
        proportional_eq(&left, &right)
    });
    ExtensionCheck { fixes_pencil, preserves_curve, restricts_to_deck }
}

/// Outcome of [`linear_extension_solver`].
#[derive(Debug, Clone)]
pub enum LinearOutcome {
    Found(Matrix),
    /// The system `A·φ = φ ∘ g` has no invertible solution.
    None(String),
}

/// Solves `A·φ(u, v) = φ(g(u, v))` coefficientwise for a 3×3 matrix `A`.
pub fn linear_extension_solver(phi: &Parametrization, g: &LineMobius) -> LinearOutcome {
    let field = phi.field();
    let comps = phi.components();
    let target = g.act_on(comps);
    let d = phi.degree();
    let coeffs = |p: &MultiPoly| -> Vec<FieldElement> { (0..=d).map(|k| p.coeff(&[d - k, k])).collect() };
    let basis: Vec<Vec<FieldElement>> = comps.iter().map(coeffs).collect();
    // columns are the coefficient vectors of φ_1, φ_2, φ_3
    let system = Matrix::from_rows(field, (0..=d as usize).map(|k| (0..3).map(|c| basis[c][k].clone()).collect()).collect());
    let mut rows = Vec::with_capacity(3);
    for (r, t) in target.iter().enumerate() {
        match system.solve(&coeffs(t)) {
            Some(sol) => rows.push(sol),
            None => {
                return LinearOutcome::None(format!("component {} of φ ∘ g is not a combination of the components of φ", r + 1))
            }
        }
    }
    let a = Matrix::from_rows(field, rows);
    if a.det().is_zero() {
        return LinearOutcome::None("the only solutions are singular matrices".into());
    }
    LinearOutcome::Found(a)
}
