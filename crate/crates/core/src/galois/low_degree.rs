//! Galois tests for projections of degree at most 3.

use super::deck::{GaloisCertificate, GaloisMethod, GaloisVerdict};
use super::model::ProjectionModel;
use crate::context::SolveContext;
use crate::error::{input, Error, Result};
use crate::field::{sqrt_in_field, SqrtResult};
use crate::poly::{content_in, resultant, MultiPoly};

fn certificate(model: &ProjectionModel, verdict: GaloisVerdict, method: GaloisMethod, detail: String) -> GaloisCertificate {
    GaloisCertificate { degree: model.ext_degree, verdict, method, generators: vec![], group: vec![], detail }
}

/// Discriminant of `f` with respect to variable `i`: `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant(f: &MultiPoly, i: usize) -> Result<MultiPoly> {
    let n = f.degree_in(i).unwrap_or(0);
    if n < 2 {
        return Err(input("the discriminant needs degree at least 2"));
    }
    let df = f.derivative(i);
    let name = f.vars()[i].clone();
    let lc = f.coefficients_in(i).pop().unwrap();
    if df.degree_in(i).unwrap_or(0) == 0 {
        // f' has degree 0 in the variable: Res(f, c) = c^n
        if df.is_zero() {
            return Ok(MultiPoly::zero(f.field(), f.vars()));
        }
        let r = df.pow(n);
        return Ok(r.exact_div(&lc)?.scale(&sign(f, n)));
    }
    let r = resultant(f, &df, &name)?;
    Ok(r.exact_div(&lc)?.scale(&sign(f, n)))
}

fn sign(f: &MultiPoly, n: u32) -> crate::field::FieldElement {
    let k = n * (n - 1) / 2;
    f.field().from_i64(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// Decides whether a projection of degree ≤ 3 is Galois, from the fiber polynomial alone.
///
/// The fiber polynomial must be irreducible over `k(y)`; this is taken from
/// the curve's irreducibility, and a factor free of `x` is rejected.
pub fn galois_test_low_degree(model: &ProjectionModel, ctx: &SolveContext) -> Result<GaloisCertificate> {
    let f = &model.fiber_poly;
    let n = model.ext_degree;
    if !model.curve.irreducible_trusted() {
        return Err(input("irreducibility of the curve is not established"));
    }
    if !content_in(f, 0).is_constant() {
        return Err(input("the fiber polynomial has a factor free of x, it is reducible"));
    }
    let ch = f.field().characteristic();
    match n {
        0 => Err(input("the projection has degree 0")),
        1 => Ok(certificate(model, GaloisVerdict::Galois, GaloisMethod::Birational, "the projection is birational".into())),
        2 => {
            let separable = !f.derivative(0).is_zero();
            let verdict = if separable { GaloisVerdict::Galois } else { GaloisVerdict::NotGalois };
            let detail = if separable { "separable quadratic extension" } else { "inseparable quadratic extension" };
            Ok(certificate(model, verdict, GaloisMethod::Separability, detail.into()))
        }
        3 if ch == 2 => Ok(certificate(
            model,
            GaloisVerdict::Undetermined,
            GaloisMethod::Discriminant,
            "the discriminant criterion needs characteristic different from 2".into(),
        )),
        3 => {
            let disc = discriminant(f, 0)?;
            if disc.is_zero() {
                return Ok(certificate(
                    model,
                    GaloisVerdict::NotGalois,
                    GaloisMethod::Discriminant,
                    "the discriminant vanishes, the extension is inseparable".into(),
                ));
            }
            let d = disc.to_uni(1).ok_or_else(|| Error::Degenerate("discriminant involves x".into()))?;
            let c = d.lc();
            let monic = d.monic();
            let (verdict, detail) = if monic.sqrt_monic().is_none() {
                (GaloisVerdict::NotGalois, format!("discriminant {disc} is not a square up to a constant"))
            } else {
                match sqrt_in_field(&c, &ctx.precision) {
                    SqrtResult::Root(r) => (GaloisVerdict::Galois, format!("discriminant {disc} is a square, {c} = ({r})^2")),
                    SqrtResult::NoRoot => {
                        (GaloisVerdict::NotGalois, format!("discriminant {disc} is not a square, {c} has no root"))
                    }
                    SqrtResult::Undetermined => {
                        (GaloisVerdict::Undetermined, format!("could not decide whether {c} is a square"))
                    }
                }
            };
            Ok(certificate(model, verdict, GaloisMethod::Discriminant, detail))
        }
        _ => Err(input(format!("the low-degree test handles degree at most 3, got {n}"))),
    }
}
