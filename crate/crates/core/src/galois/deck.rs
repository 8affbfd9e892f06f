//! Deck transformations of `ψ = π_P ∘ φ` on the parameter line.

use std::collections::VecDeque;

use serde::Serialize;

use super::functions::ParamFn;
use crate::context::SolveContext;
use crate::curve::{Parametrization, ProjPoint};
use crate::error::{input, Result};
use crate::field::{roots_in_field, FieldElement};
use crate::maps::LineMobius;
use crate::poly::{gcd_forms, proportional_eq, MultiPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaloisVerdict {
    Galois,
    NotGalois,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaloisMethod {
    /// Degree 1.
    Birational,
    /// Degree 2: separable iff `∂f/∂x ≠ 0`.
    Separability,
    /// Degree 3: discriminant is a square in `k(y)`.
    Discriminant,
    /// Verified deck transformations of the parametrization.
    DeckGroup,
}

#[derive(Debug, Clone)]
pub struct GaloisCertificate {
    pub degree: u32,
    pub verdict: GaloisVerdict,
    pub method: GaloisMethod,
    /// Verified generators of the deck group, when it is known.
    pub generators: Vec<LineMobius>,
    /// All verified deck transformations, identity first.
    pub group: Vec<LineMobius>,
    pub detail: String,
}

/// `ψ = [L1 ∘ φ : L2 ∘ φ]` for the pencil basis at `P`, with the common factor removed.
pub fn projection_forms(param: &Parametrization, p: &ProjPoint) -> Result<[MultiPoly; 2]> {
    let [l1, l2] = p.pencil_basis();
    let (a, b) = (param.pullback_linear(&l1), param.pullback_linear(&l2));
    if a.is_zero() || b.is_zero() || a.proportional(&b) {
        return Err(input("the curve is a line through the center, the projection is constant"));
    }
    let g = gcd_forms(&a, &b);
    Ok([a.exact_div(&g)?, b.exact_div(&g)?])
}

/// Whether `ψ ∘ g` is projectively equal to `ψ`.
pub fn deck_verify(param: &Parametrization, p: &ProjPoint, g: &LineMobius) -> Result<bool> {
    let psi = projection_forms(param, p)?;
    Ok(proportional_eq(&g.act_on(&psi), &psi))
}

fn closure(gens: &[LineMobius], cap: usize) -> Vec<LineMobius> {
    let Some(first) = gens.first() else { return vec![] };
    let mut group = vec![LineMobius::identity(first.field())];
    let mut queue: VecDeque<LineMobius> = group.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        for g in gens {
            let k = g.compose(&h);
            if !group.contains(&k) {
                if group.len() >= cap {
                    return group;
                }
                group.push(k.clone());
                queue.push_back(k);
            }
        }
    }
    group
}

fn minimal_generators(elements: &[LineMobius], cap: usize) -> Vec<LineMobius> {
    let mut gens: Vec<LineMobius> = Vec::new();
    let mut span = if let Some(e) = elements.first() { vec![LineMobius::identity(e.field())] } else { vec![] };
    for e in elements {
        if !span.contains(e) {
            gens.push(e.clone());
            span = closure(&gens, cap);
        }
    }
    gens
}

fn certificate_from_group(degree: u32, group: Vec<LineMobius>, complete: bool, cap: usize) -> GaloisCertificate {
    let generators = minimal_generators(&group, cap);
    let order = group.len() as u32;
    let verdict = if order == degree {
        GaloisVerdict::Galois
    } else if complete {
        GaloisVerdict::NotGalois
    } else {
        GaloisVerdict::Undetermined
    };
    let detail = match verdict {
        GaloisVerdict::Galois => format!("{order} verified deck transformations"),
        GaloisVerdict::NotGalois => format!("only {order} deck transformations exist over the ground field, degree is {degree}"),
        GaloisVerdict::Undetermined => format!("{order} deck transformations verified, degree is {degree}"),
    };
    GaloisCertificate { degree, verdict, method: GaloisMethod::DeckGroup, generators, group, detail }
}

/// Closes the verified candidates under composition.
///
/// The verdict is `galois` when the verified group has order `deg ψ`, and
/// `undetermined` otherwise.
pub fn deck_group_from_candidates(
    param: &Parametrization,
    p: &ProjPoint,
    candidates: &[LineMobius],
) -> Result<GaloisCertificate> {
    let psi = projection_forms(param, p)?;
    let degree = psi[0].degree().unwrap();
    let mut verified = vec![LineMobius::identity(param.field())];
    for g in candidates {
        if proportional_eq(&g.act_on(&psi), &psi) {
            verified.push(g.clone());
        }
    }
    let cap = degree as usize;
    let gens = minimal_generators(&verified, cap);
    let group = if gens.is_empty() { vec![LineMobius::identity(param.field())] } else { closure(&gens, cap) };
    Ok(certificate_from_group(degree, group, false, cap))
}

/// Every `k`-rational deck transformation, found through the fibers of `ψ`
/// over the images of `0, ∞, 1`.
///
/// A deck transformation is determined by the images of three points, each of
/// which lies in the corresponding fiber. When the three root searches are
/// complete the group found is the whole automorphism group of `k(t)/k(ψ)`,
/// so a group smaller than `deg ψ` proves the extension is not Galois.
pub fn deck_group_search(param: &Parametrization, p: &ProjPoint, ctx: &SolveContext) -> Result<GaloisCertificate> {
    let psi = projection_forms(param, p)?;
    let field = param.field().clone();
    let degree = psi[0].degree().unwrap();
    let (zero, one) = (field.zero(), field.one());
    let anchors = [[zero.clone(), one.clone()], [one.clone(), zero.clone()], [one.clone(), one.clone()]];
    let mut fibers: Vec<Vec<[FieldElement; 2]>> = Vec::new();
    let mut complete = true;
    for a in &anchors {
        let q = [psi[0].eval(a), psi[1].eval(a)];
        // H(u, v) = ψ1·q2 - ψ2·q1 vanishes exactly on the fiber through a
        let h = &psi[0].scale(&q[1]) - &psi[1].scale(&q[0]);
        let mut pts = Vec::new();
        if h.eval(&[one.clone(), zero.clone()]).is_zero() {
            pts.push([one.clone(), zero.clone()]);
        }
        let affine = h.eval_to_uni(0, &[zero.clone(), one.clone()]);
        let found = roots_in_field(affine.coeffs(), &field, &ctx.precision);
        complete &= found.complete;
        pts.extend(found.roots.into_iter().map(|t| [t, one.clone()]));
        fibers.push(pts);
    }
    ctx.cancel.check()?;
    let mut group: Vec<LineMobius> = Vec::new();
    for r0 in &fibers[0] {
        for ri in &fibers[1] {
            for r1 in &fibers[2] {
                let Some(g) = mobius_through(r0, ri, r1) else { continue };
                if !group.contains(&g) && proportional_eq(&g.act_on(&psi), &psi) {
                    group.push(g);
                }
            }
        }
        ctx.cancel.check()?;
    }
    let id = LineMobius::identity(&field);
    group.retain(|g| *g != id);
    group.insert(0, id);
    Ok(certificate_from_group(degree, group, complete, degree as usize))
}

/// The Möbius map sending `[0:1], [1:0], [1:1]` to `r0, r∞, r1`.
fn mobius_through(r0: &[FieldElement; 2], ri: &[FieldElement; 2], r1: &[FieldElement; 2]) -> Option<LineMobius> {
    // columns λ·r∞ and μ·r0 with λ·r∞ + μ·r0 = r1
    let det = &(&ri[0] * &r0[1]) - &(&r0[0] * &ri[1]);
    if det.is_zero() {
        return None;
    }
    let inv = det.inv().ok()?;
    let lambda = &(&(&r1[0] * &r0[1]) - &(&r0[0] * &r1[1])) * &inv;
    let mu = &(&(&ri[0] * &r1[1]) - &(&r1[0] * &ri[1])) * &inv;
    if lambda.is_zero() || mu.is_zero() {
        return None;
    }
    LineMobius::new(&lambda * &ri[0], &mu * &r0[0], &lambda * &ri[1], &mu * &r0[1]).ok()
}

/// The fiber coordinates `x = X'/Z'` and `y = Y'/Z'` of the model centered at `P`,
/// as functions of the parameter.
pub fn fiber_coordinates(param: &Parametrization, p: &ProjPoint) -> Result<(ParamFn, ParamFn)> {
    let m = p.centering_matrix();
    let w: Vec<MultiPoly> = (0..3).map(|r| param.pullback_linear(&std::array::from_fn(|c| m.get(r, c).clone()))).collect();
    if w[2].is_zero() {
        return Err(input("the curve lies in the line at infinity of the centered chart"));
    }
    Ok((ParamFn::new(&w[0], &w[2]), ParamFn::new(&w[1], &w[2])))
}

/// `x` and `σ(x) = x ∘ g` as functions of the parameter.
pub fn express_sigma_on_x(param: &Parametrization, p: &ProjPoint, g: &LineMobius) -> Result<(ParamFn, ParamFn)> {
    let (x, _) = fiber_coordinates(param, p)?;
    let sx = x.compose_mobius(g);
    Ok((x, sx))
}
