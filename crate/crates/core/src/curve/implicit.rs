//! Implicit equations of parametrized curves.

use super::Parametrization;
use crate::error::{degenerate, Error, Result};
use crate::linalg::Matrix;
use crate::poly::{resultant_formal, uv, vars, xyz, MultiPoly, PolyError};

/// Implicit equation of the image of `φ`, normalized monic.
///
/// In the chart of a nonzero component `φ_k` (preferring `Z`), the resultant
/// `Res_t(x·φ_k - φ_a, y·φ_k - φ_b)` with formal degree `deg φ` is the affine
/// equation, obtained by interpolation. Prime fields too small to interpolate
/// fall back to [`implicitize_by_nullspace`].
pub fn implicitize(param: &Parametrization) -> Result<MultiPoly> {
    match implicitize_by_resultant(param) {
        Err(Error::Poly(PolyError::Degenerate(_))) if param.field().characteristic() != 0 => implicitize_by_nullspace(param),
        other => other,
    }
}

fn implicitize_by_resultant(param: &Parametrization) -> Result<MultiPoly> {
    let field = param.field();
    let comps = param.components();
    let d = param.degree();
    let k = if comps[2].is_zero() { comps.iter().position(|c| !c.is_zero()).unwrap() } else { 2 };
    let (a, b) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let ring = vars(&["x", "y", "t"]);
    let in_t = |c: &MultiPoly| -> MultiPoly {
        MultiPoly::from_terms(field, &ring, c.terms().map(|(m, coef)| (vec![0, 0, m.0[0]], coef.clone())))
    };
    let x = MultiPoly::var(field, &ring, 0);
    let y = MultiPoly::var(field, &ring, 1);
    let (pk, pa, pb) = (in_t(&comps[k]), in_t(&comps[a]), in_t(&comps[b]));
    let f = &(&x * &pk) - &pa;
    let g = &(&y * &pk) - &pb;
    let r = resultant_formal(&f, &g, 2, d as usize, d as usize)?;
    if r.is_zero() {
        return Err(degenerate("implicitization resultant vanishes identically"));
    }
    if r.degree().unwrap() > d {
        return Err(degenerate("implicitization resultant exceeds the parametrization degree"));
    }
    let plane = xyz();
    let big = MultiPoly::from_terms(
        field,
        &plane,
        r.terms().map(|(m, c)| {
            let mut e = vec![0u32; 3];
            e[a] = m.0[0];
            e[b] = m.0[1];
            e[k] = d - m.0[0] - m.0[1];
            (e, c.clone())
        }),
    )
    .monic();
    if !param.pull_back(&big).is_zero() {
        return Err(degenerate("implicit candidate does not vanish on the parametrization"));
    }
    Ok(big)
}

/// Implicit equation as the one-dimensional kernel of the linear map
/// `coefficients of F ↦ F(φ)` on forms of degree `deg φ`.
pub fn implicitize_by_nullspace(param: &Parametrization) -> Result<MultiPoly> {
    let field = param.field();
    let d = param.degree();
    let plane = xyz();
    let monomials: Vec<Vec<u32>> = (0..=d).rev().flat_map(|i| (0..=d - i).rev().map(move |j| vec![i, j, d - i - j])).collect();
    let comps = param.components();
    let mut powers: Vec<Vec<MultiPoly>> = comps.iter().map(|c| vec![MultiPoly::one(field, &uv()), c.clone()]).collect();
    for (i, p) in powers.iter_mut().enumerate() {
        for _ in 2..=d {
            let next = p.last().unwrap() * &comps[i];
            p.push(next);
        }
    }
    let images: Vec<MultiPoly> =
        monomials.iter().map(|e| &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize]) * &powers[2][e[2] as usize]).collect();
    let dd = d * d;
    let rows: Vec<Vec<_>> = (0..=dd).map(|j| images.iter().map(|img| img.coeff(&[dd - j, j])).collect()).collect();
    let kernel = Matrix::from_rows(field, rows).nullspace();
    if kernel.len() != 1 {
        return Err(degenerate(format!("implicitization kernel has dimension {}", kernel.len())));
    }
    let f = MultiPoly::from_terms(field, &plane, monomials.into_iter().zip(kernel[0].iter().cloned()));
    Ok(f.monic())
}
