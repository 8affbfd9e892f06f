//! Multiplicities of plane curves at points, and certificates for the absence
//! of points of high multiplicity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{linear_form, random_invertible, Parametrization, PlaneCurve, ProjPoint};
use crate::context::SolveContext;
use crate::error::{Error, Result};
use crate::field::{roots_in_field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::{gcd_forms, uni_resultant, vars, MultiPoly, UniPoly};

/// Lowest total degree of `F` after moving `P` to the origin of its chart; 0 when `P ∉ C`.
pub fn multiplicity_implicit(f: &MultiPoly, p: &ProjPoint) -> u32 {
    let field = f.field();
    let ring = f.vars().clone();
    let i = p.chart();
    let images: Vec<MultiPoly> = (0..3)
        .map(|j| {
            if j == i {
                MultiPoly::one(field, &ring)
            } else {
                &MultiPoly::var(field, &ring, j) + &MultiPoly::constant(p.coords()[j].clone(), &ring)
            }
        })
        .collect();
    f.substitute(&images).low_degree().unwrap_or(u32::MAX)
}

/// Minimum over seeded pairs of independent lines `L1, L2` through `P` of
/// `deg gcd(L1∘φ, L2∘φ)`.
pub fn multiplicity_param(param: &Parametrization, p: &ProjPoint, trials: usize, seed: u64) -> u32 {
    let field = param.field();
    let [l1, l2] = p.pencil_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = u32::MAX;
    for trial in 0..trials.max(1) {
        let (a, b, c, d) = if trial == 0 {
            (field.one(), field.zero(), field.zero(), field.one())
        } else {
            loop {
                let r: Vec<FieldElement> = (0..4).map(|_| field.random_small(&mut rng, 4)).collect();
                if !(&(&r[0] * &r[3]) - &(&r[1] * &r[2])).is_zero() {
                    break (r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone());
                }
            }
        };
        let m1: [FieldElement; 3] = std::array::from_fn(|k| &(&a * &l1[k]) + &(&b * &l2[k]));
        let m2: [FieldElement; 3] = std::array::from_fn(|k| &(&c * &l1[k]) + &(&d * &l2[k]));
        let g = gcd_forms(&param.pullback_linear(&m1), &param.pullback_linear(&m2));
        best = best.min(g.degree().unwrap_or(param.degree()));
    }
    best
}

/// Evidence that no point of the requested multiplicity exists.
#[derive(Debug, Clone)]
pub struct EmptinessCertificate {
    /// Coordinate change `M`; the partials were pulled back along `w ↦ M·w`.
    pub change: Matrix,
    /// Number of nonzero partial derivatives of the critical order.
    pub partials: usize,
    /// Number of `Z`-resultants needed before their gcd became constant.
    pub resultants_used: usize,
    /// Degree of each resultant as a binary form in `X, Y`.
    pub resultant_degree: u32,
}

#[derive(Debug, Clone)]
pub enum PointSearch {
    Found { point: ProjPoint, multiplicity: u32 },
    Empty(EmptinessCertificate),
    Undetermined(String),
}

impl PointSearch {
    /// `Some(true)` with a witness, `Some(false)` with a certificate.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            PointSearch::Found { .. } => Some(true),
            PointSearch::Empty(_) => Some(false),
            PointSearch::Undetermined(_) => None,
        }
    }
}

fn partials_of_order(f: &MultiPoly, order: u32) -> Vec<MultiPoly> {
    let mut layer = vec![f.clone()];
    for _ in 0..order {
        let mut next: Vec<MultiPoly> = Vec::new();
        for g in &layer {
            for i in 0..3 {
                let d = g.derivative(i);
                if !d.is_zero() && !next.contains(&d) {
                    next.push(d);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Decides whether the curve has a point of multiplicity at least `m`.
///
/// Requires characteristic 0 or greater than the degree, so that a point has
/// multiplicity at least `m` exactly when every partial derivative of order
/// `m - 1` vanishes there.
pub fn has_point_of_multiplicity_ge(curve: &PlaneCurve, m: u32, ctx: &SolveContext) -> Result<PointSearch> {
    let f = curve.implicit()?;
    let field = f.field().clone();
    let d = f.degree().unwrap();
    let ch = field.characteristic();
    if ch != 0 && ch <= d as u64 {
        return Err(Error::Characteristic {
            char: ch,
            reason: format!("multiplicity certificates need characteristic 0 or > {d}"),
        });
    }
    if m == 0 {
        let point = ProjPoint::from_i64(&field, [1, 0, 0])?;
        return Ok(PointSearch::Found { multiplicity: multiplicity_implicit(f, &point), point });
    }
    if m > d {
        // no point of a degree-d curve has multiplicity above d
        return Ok(PointSearch::Empty(EmptinessCertificate {
            change: Matrix::identity(&field, 3),
            partials: 0,
            resultants_used: 0,
            resultant_degree: 0,
        }));
    }
    for point in ProjPoint::coordinate_points(&field) {
        let mult = multiplicity_implicit(f, &point);
        if mult >= m {
            return Ok(PointSearch::Found { point, multiplicity: mult });
        }
    }
    let partials = partials_of_order(f, m - 1);
    let e = d - m + 1;
    if m == 1 {
        return Ok(witness_search(f, &partials, &Matrix::identity(&field, 3), m, ctx)
            .map(|(point, multiplicity)| PointSearch::Found { point, multiplicity })
            .unwrap_or_else(|| PointSearch::Undetermined("no point found over the ground field".into())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    for _attempt in 0..3 {
        ctx.cancel.check()?;
        let change = random_invertible(&field, &mut rng);
        let images: Vec<MultiPoly> =
            (0..3).map(|r| linear_form(&field, &std::array::from_fn(|c| change.get(r, c).clone()))).collect();
        let moved: Vec<MultiPoly> = partials.iter().map(|g| g.substitute(&images)).collect();
        let origin = [field.zero(), field.zero(), field.one()];
        let all_vanish_at_pole = moved.iter().all(|g| g.eval(&origin).is_zero());
        if !all_vanish_at_pole {
            let mut acc: Option<MultiPoly> = None;
            let mut used = 0;
            'pairs: for i in 0..moved.len() {
                for j in i + 1..moved.len() {
                    ctx.cancel.check()?;
                    let r = z_resultant(&moved[i], &moved[j], e)?;
                    used += 1;
                    if r.is_zero() {
                        continue;
                    }
                    let g = match &acc {
                        None => r.monic(),
                        Some(a) => gcd_forms(a, &r),
                    };
                    let done = g.degree() == Some(0);
                    acc = Some(g);
                    if done {
                        break 'pairs;
                    }
                }
            }
            if acc.as_ref().is_some_and(|g| g.degree() == Some(0)) {
                return Ok(PointSearch::Empty(EmptinessCertificate {
                    change,
                    partials: partials.len(),
                    resultants_used: used,
                    resultant_degree: e * e,
                }));
            }
        }
        if let Some((point, multiplicity)) = witness_search(f, &moved, &change, m, ctx) {
            return Ok(PointSearch::Found { point, multiplicity });
        }
    }
    Ok(PointSearch::Undetermined("resultant gcd stayed nontrivial and no witness was found over the ground field".into()))
}

/// `Res_Z(g, h)` of two forms of degree `e`, as a binary form in `X, Y` of degree `e²`.
fn z_resultant(g: &MultiPoly, h: &MultiPoly, e: u32) -> Result<MultiPoly> {
    let field = g.field().clone();
    let n = (e * e) as usize + 1;
    let ys = crate::poly::resultant::sample_points(&field, n)?;
    let values: Vec<FieldElement> = ys
        .iter()
        .map(|y| {
            let pt = [field.one(), y.clone(), field.zero()];
            uni_resultant(&g.eval_to_uni(2, &pt), &h.eval_to_uni(2, &pt), e as usize, e as usize)
        })
        .collect();
    let coeffs = crate::poly::resultant::interpolate_1d(&values, &ys);
    let ring = vars(&["X", "Y"]);
    let dd = e * e;
    Ok(MultiPoly::from_terms(&field, &ring, coeffs.into_iter().enumerate().map(|(j, c)| (vec![dd - j as u32, j as u32], c))))
}

/// Common zeros of `moved` over the ground field, mapped back through `change`
/// and checked on the original curve.
fn witness_search(f: &MultiPoly, moved: &[MultiPoly], change: &Matrix, m: u32, ctx: &SolveContext) -> Option<(ProjPoint, u32)> {
    let field = f.field().clone();
    let mut directions: Vec<[FieldElement; 2]> = vec![[field.zero(), field.one()]];
    let pole = [field.zero(), field.zero(), field.one()];
    let mut candidates: Vec<[FieldElement; 3]> = vec![pole];
    // candidate directions [1:y] from the gcd of pairwise resultants, when it is small
    if moved.len() >= 2 {
        let e = moved[0].degree().unwrap_or(0);
        if let Ok(r) = z_resultant(&moved[0], &moved[1], e) {
            if !r.is_zero() {
                let uni = r.eval_to_uni(1, &[field.one(), field.zero()]);
                let found = roots_in_field(uni.coeffs(), &field, &ctx.precision);
                for y in found.roots {
                    directions.push([field.one(), y]);
                }
            }
        }
    }
    for dir in &directions {
        let restricted: Vec<UniPoly> =
            moved.iter().map(|g| g.eval_to_uni(2, &[dir[0].clone(), dir[1].clone(), field.zero()])).collect();
        let g = restricted.iter().fold(UniPoly::zero(&field), |acc, r| acc.gcd(r));
        if g.is_zero() || g.degree() == Some(0) {
            continue;
        }
        for z in roots_in_field(g.coeffs(), &field, &ctx.precision).roots {
            candidates.push([dir[0].clone(), dir[1].clone(), z]);
        }
    }
    for c in candidates {
        if !moved.iter().all(|g| g.eval(&c).is_zero()) {
            continue;
        }
        let Ok(point) = ProjPoint::from_vec(&change.mul_vec(&c)) else { continue };
        let mult = multiplicity_implicit(f, &point);
        if mult >= m {
            return Some((point, mult));
        }
    }
    None
}
