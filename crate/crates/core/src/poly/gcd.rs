//! Polynomial gcds: univariate and binary forms through dehomogenization,
//! multivariate through recursive content and primitive remainder sequences,
//! or through cofactor linear systems when both inputs are forms.

use std::collections::HashMap;

use super::{uv, MultiPoly};
use crate::linalg::Matrix;

/// Monic gcd of two binary forms, or of two univariate polynomials.
pub fn gcd_forms(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert!(f.vars() == g.vars(), "gcd over different variables");
    match f.nvars() {
        1 => {
            let (Some(a), Some(b)) = (f.to_uni(0), g.to_uni(0)) else { unreachable!() };
            MultiPoly::from_uni(&a.gcd(&b), f.vars(), 0)
        }
        2 if f.is_homogeneous() && g.is_homogeneous() => binary_gcd(f, g),
        _ => gcd(f, g),
    }
}

fn binary_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    let a = f.eval_to_uni(0, &[f.field().zero(), f.field().one()]);
    let b = g.eval_to_uni(0, &[f.field().zero(), f.field().one()]);
    let h = a.gcd(&b);
    // v-power lost by dehomogenizing at v = 1
    let va = df - a.degree().unwrap_or(0) as u32;
    let vb = dg - b.degree().unwrap_or(0) as u32;
    let vpow = va.min(vb);
    let hd = h.degree().unwrap_or(0) as u32;
    let hom = MultiPoly::from_uni(&h, f.vars(), 0).homogenize(1, hd).expect("degree fits");
    let v = MultiPoly::var(f.field(), f.vars(), 1).pow(vpow);
    (&hom * &v).monic()
}

fn main_var(f: &MultiPoly, g: &MultiPoly) -> Option<usize> {
    (0..f.nvars()).find(|&i| f.degree_in(i).unwrap_or(0) > 0 || g.degree_in(i).unwrap_or(0) > 0)
}

/// Monic gcd of two multivariate polynomials.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let Some(x) = main_var(f, g) else {
        return MultiPoly::one(f.field(), f.vars());
    };
    if f.nvars() >= 3 && f.is_homogeneous() && g.is_homogeneous() {
        return homogeneous_gcd(f, g);
    }
    if f.nvars() == 1 || (0..f.nvars()).all(|i| i == x || (f.degree_in(i) == Some(0) && g.degree_in(i) == Some(0))) {
        let a = f.eval_to_uni(x, &vec![f.field().zero(); f.nvars()]);
        let b = g.eval_to_uni(x, &vec![f.field().zero(); f.nvars()]);
        return MultiPoly::from_uni(&a.gcd(&b), f.vars(), x);
    }
    let cf = content_in(f, x);
    let cg = content_in(g, x);
    let c = gcd(&cf, &cg);
    let pf = f.exact_div(&cf).expect("content divides");
    let pg = g.exact_div(&cg).expect("content divides");
    let h = primitive_gcd(&pf, &pg, x);
    (&c * &h).monic()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in variable `x`.
pub fn content_in(f: &MultiPoly, x: usize) -> MultiPoly {
    let mut c = MultiPoly::zero(f.field(), f.vars());
    for coeff in f.coefficients_in(x) {
        if coeff.is_zero() {
            continue;
        }
        c = gcd(&c, &coeff);
        if c.is_one() {
            break;
        }
    }
    c.monic()
}

pub fn primitive_part_in(f: &MultiPoly, x: usize) -> MultiPoly {
    if f.is_zero() {
        return f.clone();
    }
    f.exact_div(&content_in(f, x)).expect("content divides")
}

fn prem_in(a: &MultiPoly, b: &MultiPoly, x: usize) -> MultiPoly {
    let db = b.degree_in(x).unwrap();
    let lc = b.coefficients_in(x).pop().unwrap();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(x).filter(|&d| d >= db) {
        if r.is_zero() {
            break;
        }
        let lr = r.coefficients_in(x).pop().unwrap();
        let mut e = vec![0; a.nvars()];
        e[x] = dr - db;
        let shift = MultiPoly::monomial(a.field().one(), a.vars(), e);
        r = &(&r * &lc) - &(&(&lr * &shift) * b);
    }
    r
}

fn primitive_gcd(f: &MultiPoly, g: &MultiPoly, x: usize) -> MultiPoly {
    let (mut a, mut b) = if f.degree_in(x) >= g.degree_in(x) { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    if b.degree_in(x) == Some(0) {
        return MultiPoly::one(f.field(), f.vars());
    }
    loop {
        let r = prem_in(&a, &b, x);
        if r.is_zero() {
            return primitive_part_in(&b, x).monic();
        }
        if r.degree_in(x) == Some(0) {
            return MultiPoly::one(f.field(), f.vars());
        }
        a = b;
        b = primitive_part_in(&r, x);
    }
}

/// Exponent vectors of the monomials of total degree `d` in `n` variables.
pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Upper bound for the degree of the gcd of two nonzero forms: the degree of
/// the gcd of their restrictions to a line not contained in either.
fn line_bound(f: &MultiPoly, g: &MultiPoly) -> u32 {
    let field = f.field();
    let ring = uv();
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    for k in 0..32i64 {
        let images: Vec<MultiPoly> = (0..f.nvars() as i64)
            .map(|i| {
                let s = MultiPoly::var(field, &ring, 0).scale(&field.from_i64(i * (k + 1) + 1));
                let t = MultiPoly::var(field, &ring, 1).scale(&field.from_i64((i + 1) * (i + 1) + k * (2 * i - 1)));
                &s + &t
            })
            .collect();
        let (a, b) = (f.substitute(&images), g.substitute(&images));
        if !a.is_zero() && !b.is_zero() {
            return gcd_forms(&a, &b).degree().unwrap_or(0);
        }
    }
    df.min(dg)
}

/// Gcd of two forms. For each candidate degree `e`, from the line bound down,
/// solves `f·B = g·A` with `deg A = deg f - e`; the first nonzero solution has
/// `A = f / gcd`.
fn homogeneous_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let field = f.field();
    let n = f.nvars();
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    for e in (1..=line_bound(f, g)).rev() {
        let ma = exponents_of_degree(n, df - e);
        let mb = exponents_of_degree(n, dg - e);
        let rows: HashMap<Vec<u32>, usize> =
            exponents_of_degree(n, df + dg - e).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut m = Matrix::zeros(field, rows.len(), mb.len() + ma.len());
        let columns = mb.iter().map(|x| (x, f, false)).chain(ma.iter().map(|x| (x, g, true)));
        for (col, (x, p, negate)) in columns.enumerate() {
            for (mono, c) in p.terms() {
                let key: Vec<u32> = mono.0.iter().zip(x).map(|(a, b)| a + b).collect();
                m.set(rows[&key], col, if negate { -c } else { c.clone() });
            }
        }
        let Some(v) = m.nullspace().into_iter().next() else { continue };
        let a = MultiPoly::from_terms(field, f.vars(), ma.iter().cloned().zip(v[mb.len()..].iter().cloned()));
        if let Ok(h) = f.exact_div(&a) {
            return h.monic();
        }
    }
    MultiPoly::one(field, f.vars())
}
