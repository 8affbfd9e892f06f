//! Maps preserving the pencil of lines through a point.

use std::fmt;

use super::{LineMobius, PlaneRationalMap};
use crate::curve::ProjPoint;
use crate::error::{degenerate, input, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{gcd, gcd_forms, vars, MultiPoly, Vars};

fn y_ring() -> Vars {
    vars(&["y"])
}

/// `x ↦ (α·x + β) / (γ·x + δ)` with `α, β, γ, δ ∈ k[y]`, coprime and scaled
/// so the first nonzero one has leading coefficient 1.
#[derive(Clone, PartialEq, Eq)]
pub struct MobiusOverBase {
    coeffs: [MultiPoly; 4],
}

impl MobiusOverBase {
    pub fn new(alpha: MultiPoly, beta: MultiPoly, gamma: MultiPoly, delta: MultiPoly) -> Result<Self> {
        let ring = y_ring();
        let c = [alpha, beta, gamma, delta]
            .iter()
            .map(|p| p.with_vars(&ring).map_err(|_| input("Möbius coefficients must be polynomials in y")))
            .collect::<Result<Vec<_>>>()?;
        if (&(&c[0] * &c[3]) - &(&c[1] * &c[2])).is_zero() {
            return Err(degenerate("Möbius transformation over the base has zero determinant"));
        }
        let field = c[0].field().clone();
        let g = c.iter().fold(MultiPoly::zero(&field, &ring), |acc, p| gcd_forms(&acc, p));
        let mut c: Vec<MultiPoly> = c.iter().map(|p| p.exact_div(&g).expect("gcd divides")).collect();
        let lead = c.iter().find(|p| !p.is_zero()).unwrap().leading_coeff().inv()?;
        for p in &mut c {
            *p = p.scale(&lead);
        }
        let [a, b, cc, d]: [MultiPoly; 4] = c.try_into().expect("four coefficients");
        Ok(MobiusOverBase { coeffs: [a, b, cc, d] })
    }

    pub fn identity(field: &Field) -> Self {
        let r = y_ring();
        let (o, z) = (MultiPoly::one(field, &r), MultiPoly::zero(field, &r));
        Self::new(o.clone(), z.clone(), z, o).expect("identity")
    }

    /// `[α, β, γ, δ]` as polynomials in the single variable `y`.
    pub fn coefficients(&self) -> &[MultiPoly; 4] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn determinant(&self) -> MultiPoly {
        let [a, b, c, d] = &self.coeffs;
        &(a * d) - &(b * c)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field())
    }
}

impl fmt::Display for MobiusOverBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coeffs;
        write!(f, "x -> (({a})*x + ({b})) / (({c})*x + ({d}))")
    }
}

impl fmt::Debug for MobiusOverBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A map `f` with `π_P ∘ f = α ∘ π_P`, written in coordinates where `P = [1:0:0]`.
#[derive(Debug, Clone)]
pub struct JonquieresWitness {
    /// `M` with `M·P = [1:0:0]`; the actions below are those of `M ∘ f ∘ M⁻¹`.
    pub change: Matrix,
    /// Action on the pencil, in the coordinates `[Y:Z]`.
    pub base_action: LineMobius,
    /// Action on the fiber coordinate `x = X/Z` over `y = Y/Z`.
    pub fiber_action: MobiusOverBase,
}

/// Decides whether `f` preserves the pencil of lines through `P`.
///
/// Returns `None` when the pencil is not preserved. A map that preserves the
/// pencil without acting by a Möbius transformation on the fibers is reported
/// as an error, since it cannot be birational.
pub fn jonquieres_decompose(f: &PlaneRationalMap, p: &ProjPoint) -> Result<Option<JonquieresWitness>> {
    let change = p.centering_matrix();
    let g = f.conjugate(&change)?;
    let [g1, g2, g3] = g.components();
    if g2.is_zero() || g3.is_zero() {
        return Ok(None);
    }
    let h = gcd(g2, g3);
    let q2 = g2.exact_div(&h)?;
    let q3 = g3.exact_div(&h)?;
    if q2.degree() != Some(1) || q3.degree() != Some(1) || q2.degree_in(0) != Some(0) || q3.degree_in(0) != Some(0) {
        return Ok(None);
    }
    let field = f.field();
    let lin = |q: &MultiPoly| (q.coeff(&[0, 1, 0]), q.coeff(&[0, 0, 1]));
    let ((a, b), (c, d)) = (lin(&q2), lin(&q3));
    let Ok(base_action) = LineMobius::new(a, b, c, d) else {
        return Ok(None);
    };
    let chart = vars(&["x", "y"]);
    let dehom = |q: &MultiPoly| MultiPoly::from_terms(field, &chart, q.terms().map(|(m, c)| (vec![m.0[0], m.0[1]], c.clone())));
    let (num, den) = (dehom(g1), dehom(g3));
    let common = gcd(&num, &den);
    let (num, den) = (num.exact_div(&common)?, den.exact_div(&common)?);
    if num.degree_in(0).unwrap_or(0) > 1 || den.degree_in(0).unwrap_or(0) > 1 {
        return Err(degenerate("the map preserves the pencil but is not birational on its fibers"));
    }
    let ring = y_ring();
    let split = |q: &MultiPoly| {
        let mut c = q.coefficients_in(0);
        c.resize(2, MultiPoly::zero(field, &chart));
        c.iter().map(|p| p.with_vars(&ring).expect("x removed")).collect::<Vec<_>>()
    };
    let (n, dd) = (split(&num), split(&den));
    let fiber_action = MobiusOverBase::new(n[1].clone(), n[0].clone(), dd[1].clone(), dd[0].clone())
        .map_err(|_| degenerate("the map preserves the pencil but collapses its fibers"))?;
    Ok(Some(JonquieresWitness { change, base_action, fiber_action }))
}
