//! Sylvester resultants.
//!
//! Sign convention: `Res(f, g)` is the determinant of the Sylvester matrix with
//! the `deg g` shifted rows of `f` on top, coefficients from the highest power
//! down. Hence `Res(f, g) = lc(f)^deg g · Π g(α)` over the roots `α` of `f`, and
//! `Res_x(x - a, x - b) = a - b`.
//!
//! Symbolic coefficients are handled by evaluating the determinant on a grid of
//! points and interpolating, never by expanding the determinant symbolically.

use rayon::prelude::*;

use super::{MultiPoly, PolyError, UniPoly};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;

/// Resultant of two univariate polynomials taken with formal degrees `df`, `dg`.
pub fn uni_resultant(f: &UniPoly, g: &UniPoly, df: usize, dg: usize) -> FieldElement {
    let field = f.field();
    let n = df + dg;
    if n == 0 {
        return field.one();
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..dg {
        let mut row = vec![field.zero(); n];
        for k in 0..=df {
            row[i + df - k] = f.coeff(k);
        }
        rows.push(row);
    }
    for i in 0..df {
        let mut row = vec![field.zero(); n];
        for k in 0..=dg {
            row[i + dg - k] = g.coeff(k);
        }
        rows.push(row);
    }
    Matrix::from_rows(field, rows).det()
}

/// `Res_var(f, g)` with the actual degrees in `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    let i = f.var_index(var).ok_or(PolyError::VarMismatch)?;
    let df = f.degree_in(i).unwrap_or(0);
    let dg = g.degree_in(i).unwrap_or(0);
    if f.is_zero() || g.is_zero() || df == 0 || dg == 0 {
        return Err(PolyError::Degenerate(format!("resultant needs positive degree in {var}")));
    }
    resultant_formal(f, g, i, df as usize, dg as usize)
}

/// `Res_{var i}(f, g)` treating `f`, `g` as having degrees `df`, `dg` in that variable.
pub fn resultant_formal(f: &MultiPoly, g: &MultiPoly, i: usize, df: usize, dg: usize) -> Result<MultiPoly, PolyError> {
    if f.vars() != g.vars() {
        return Err(PolyError::VarMismatch);
    }
    let field = f.field().clone();
    let nv = f.nvars();
    let others: Vec<usize> =
        (0..nv).filter(|&w| w != i && (f.degree_in(w).unwrap_or(0) > 0 || g.degree_in(w).unwrap_or(0) > 0)).collect();
    let bounds: Vec<usize> =
        others.iter().map(|&w| df * g.degree_in(w).unwrap_or(0) as usize + dg * f.degree_in(w).unwrap_or(0) as usize).collect();
    let Ok(points) = sample_points(&field, bounds.iter().copied().max().unwrap_or(0) + 1) else {
        return Ok(sylvester_bareiss(f, g, i, df, dg));
    };
    let dims: Vec<usize> = bounds.iter().map(|b| b + 1).collect();
    let total: usize = dims.iter().product();
    let values: Vec<FieldElement> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let idx = unflatten(flat, &dims);
            let mut pt = vec![field.zero(); nv];
            for (k, &w) in others.iter().enumerate() {
                pt[w] = points[idx[k]].clone();
            }
            let fu = f.eval_to_uni(i, &pt);
            let gu = g.eval_to_uni(i, &pt);
            uni_resultant(&fu, &gu, df, dg)
        })
        .collect();
    let coeffs = interpolate_grid(values, &dims, &points);
    let mut terms = Vec::new();
    for (flat, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let idx = unflatten(flat, &dims);
        let mut e = vec![0u32; nv];
        for (k, &w) in others.iter().enumerate() {
            e[w] = idx[k] as u32;
        }
        terms.push((e, c));
    }
    Ok(MultiPoly::from_terms(&field, f.vars(), terms))
}

/// Sylvester determinant over the polynomial ring by fraction-free elimination,
/// for prime fields too small to interpolate in.
fn sylvester_bareiss(f: &MultiPoly, g: &MultiPoly, i: usize, df: usize, dg: usize) -> MultiPoly {
    let n = df + dg;
    let zero = MultiPoly::zero(f.field(), f.vars());
    if n == 0 {
        return MultiPoly::one(f.field(), f.vars());
    }
    let (cf, cg) = (f.coefficients_in(i), g.coefficients_in(i));
    let coeff = |c: &[MultiPoly], k: usize| c.get(k).cloned().unwrap_or_else(|| zero.clone());
    let mut a: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    for r in 0..dg {
        let mut row = vec![zero.clone(); n];
        for k in 0..=df {
            row[r + df - k] = coeff(&cf, k);
        }
        a.push(row);
    }
    for r in 0..df {
        let mut row = vec![zero.clone(); n];
        for k in 0..=dg {
            row[r + dg - k] = coeff(&cg, k);
        }
        a.push(row);
    }
    let mut negate = false;
    let mut prev = MultiPoly::one(f.field(), f.vars());
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return zero;
        };
        if piv != k {
            a.swap(piv, k);
            negate = !negate;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let t = &(&a[r][c] * &a[k][k]) - &(&a[r][k] * &a[k][c]);
                a[r][c] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[r][k] = zero.clone();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Distinct sample values `0, 1, …, n-1`; fails in prime fields that are too small.
pub(crate) fn sample_points(field: &Field, n: usize) -> Result<Vec<FieldElement>, PolyError> {
    let p = field.characteristic();
    if p != 0 && (n as u64) > p {
        return Err(PolyError::Degenerate(format!("F_{p} has too few points to interpolate {n} values")));
    }
    Ok((0..n).map(|k| field.from_i64(k as i64)).collect())
}

fn unflatten(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
    idx
}

/// Converts values on a tensor grid into monomial coefficients, axis by axis.
pub(crate) fn interpolate_grid(mut values: Vec<FieldElement>, dims: &[usize], points: &[FieldElement]) -> Vec<FieldElement> {
    let r = dims.len();
    for axis in 0..r {
        let n = dims[axis];
        let stride: usize = dims[axis + 1..].iter().product();
        let block = n * stride;
        let total = values.len();
        let mut base = 0;
        while base < total {
            for offset in 0..stride {
                let fiber: Vec<FieldElement> = (0..n).map(|k| values[base + offset + k * stride].clone()).collect();
                let coeffs = interpolate_1d(&fiber, &points[..n]);
                for (k, c) in coeffs.into_iter().enumerate() {
                    values[base + offset + k * stride] = c;
                }
            }
            base += block;
        }
    }
    values
}

/// Newton interpolation returning monomial coefficients, lowest first.
pub(crate) fn interpolate_1d(values: &[FieldElement], xs: &[FieldElement]) -> Vec<FieldElement> {
    let n = values.len();
    if n == 0 {
        return vec![];
    }
    let field = values[0].field().clone();
    let mut dd = values.to_vec();
    for j in 1..n {
        for k in (j..n).rev() {
            let num = &dd[k] - &dd[k - 1];
            let den = &xs[k] - &xs[k - j];
            dd[k] = &num * &den.inv().expect("distinct sample points");
        }
    }
    let mut poly = vec![field.zero(); n];
    for k in (0..n).rev() {
        // poly = poly·(x - xs[k]) + dd[k]
        let mut next = vec![field.zero(); n];
        for (m, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m + 1 < n {
                next[m + 1] = &next[m + 1] + c;
            }
            next[m] = &next[m] - &(c * &xs[k]);
        }
        next[0] = &next[0] + &dd[k];
        poly = next;
    }
    poly
}
