//! Möbius transformations over the base `k(y)` representing a deck action on `x`.

use super::functions::{clear_denominators, ParamFn, RatFn};
use crate::error::{degenerate, Result};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::maps::{LineMobius, MobiusOverBase};
use crate::poly::{uv, vars, MultiPoly, UniPoly};

/// Outcome of [`mobius_solver`].
#[derive(Debug, Clone)]
pub enum MobiusOutcome {
    Found(MobiusOverBase),
    /// No valid solution with coefficients of degree at most the bound.
    NoneUpTo(u32),
    /// No valid solution of any degree.
    NoneProven(String),
}

/// Basis of the `k`-space of tuples `(c_1, …, c_m)` of polynomials of degree
/// `≤ bound` with `Σ c_i(y)·e_i = 0` in `k(t)`.
pub fn relation_space(elements: &[ParamFn], y: &ParamFn, bound: u32) -> Vec<Vec<UniPoly>> {
    let field = y.field().clone();
    let ring = uv();
    let m = elements.len();
    let (a, b) = (y.num(), y.den());
    let apow: Vec<MultiPoly> = (0..=bound)
        .scan(MultiPoly::one(&field, &ring), |acc, _| {
            let cur = acc.clone();
            *acc = &*acc * a;
            Some(cur)
        })
        .collect();
    let bpow: Vec<MultiPoly> = (0..=bound)
        .scan(MultiPoly::one(&field, &ring), |acc, _| {
            let cur = acc.clone();
            *acc = &*acc * b;
            Some(cur)
        })
        .collect();
    // e_i · Π_{k≠i} den_k, all of one degree
    let cleared: Vec<MultiPoly> =
        (0..m).map(|i| (0..m).filter(|&k| k != i).fold(elements[i].num().clone(), |acc, k| &acc * elements[k].den())).collect();
    let mut columns: Vec<MultiPoly> = Vec::with_capacity(m * (bound as usize + 1));
    for c in &cleared {
        for j in 0..=bound as usize {
            columns.push(&(&apow[j] * &bpow[bound as usize - j]) * c);
        }
    }
    let deg = columns.iter().find_map(MultiPoly::degree).unwrap_or(0);
    let rows: Vec<Vec<FieldElement>> = (0..=deg).map(|k| columns.iter().map(|col| col.coeff(&[deg - k, k])).collect()).collect();
    let kernel = Matrix::from_rows(&field, rows).nullspace();
    kernel
        .into_iter()
        .map(|v| {
            (0..m).map(|i| UniPoly::new(&field, v[i * (bound as usize + 1)..(i + 1) * (bound as usize + 1)].to_vec())).collect()
        })
        .collect()
}

fn to_y(p: &UniPoly) -> MultiPoly {
    MultiPoly::from_uni(p, &vars(&["y"]), 0)
}

/// `(α, β, γ, δ)` from a relation `γ·xσ + δ·σ - α·x - β = 0`.
fn mobius_from_relation(r: &[UniPoly]) -> [UniPoly; 4] {
    [r[2].scale(&r[2].field().from_i64(-1)), r[3].scale(&r[3].field().from_i64(-1)), r[0].clone(), r[1].clone()]
}

fn det(c: &[UniPoly; 4]) -> UniPoly {
    c[0].mul(&c[3]).sub(&c[1].mul(&c[2]))
}

fn combine(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// Searches for `σ(x) = (α·x + β) / (γ·x + δ)` with `α, β, γ, δ ∈ k[y]` of degree `≤ bound`.
///
/// Clearing denominators turns `σ(x)·(γ(y)·x + δ(y)) = α(y)·x + β(y)` into a
/// linear system over `k`. The determinant `αδ - βγ` is a quadratic form on
/// the solution space; it vanishes identically exactly when all its values on
/// basis vectors and pairwise sums vanish, so a nondegenerate solution is
/// found whenever one exists in the space.
///
/// When no solution exists up to the bound and the full deck group is given,
/// the refutation is upgraded to a proof if `1, x, σ(x), x·σ(x)` are linearly
/// independent over `k(y)`. By independence of characters this is the rank of
/// the matrix `(e_i ∘ g)` over the group, bounded below by evaluating at a point.
pub fn mobius_solver(x: &ParamFn, sx: &ParamFn, y: &ParamFn, bound: u32, group: Option<&[LineMobius]>) -> MobiusOutcome {
    let one = ParamFn::constant(y.field().one());
    let elements = [x.mul(sx), sx.clone(), x.clone(), one];
    let space = relation_space(&elements, y, bound);
    let candidates: Vec<Vec<UniPoly>> = space
        .iter()
        .cloned()
        .chain(
            (0..space.len()).flat_map(|i| (i + 1..space.len()).map(move |j| (i, j))).map(|(i, j)| combine(&space[i], &space[j])),
        )
        .collect();
    for r in &candidates {
        let c = mobius_from_relation(r);
        if !det(&c).is_zero() {
            let [a, b, g, d] = c.map(|p| to_y(&p));
            if let Ok(m) = MobiusOverBase::new(a, b, g, d) {
                return MobiusOutcome::Found(m);
            }
        }
    }
    if let Some(group) = group {
        if independent_over_base(&elements, group) {
            return MobiusOutcome::NoneProven("1, x, σ(x), x·σ(x) are linearly independent over k(y)".into());
        }
    }
    MobiusOutcome::NoneUpTo(bound)
}

/// Whether the matrix `(e_i ∘ g)` has full column rank at some sampled parameter value.
fn independent_over_base(elements: &[ParamFn], group: &[LineMobius]) -> bool {
    if group.len() < elements.len() {
        return false;
    }
    let field = elements[0].field();
    'points: for t in 2..40i64 {
        let t0 = field.from_i64(t);
        let mut rows = Vec::with_capacity(group.len());
        for g in group {
            let [a, b, c, d] = g.entries();
            let (u, v) = (&(a * &t0) + b, &(c * &t0) + d);
            let mut row = Vec::with_capacity(elements.len());
            for e in elements {
                match e.eval(&u, &v) {
                    Some(val) => row.push(val),
                    None => continue 'points,
                }
            }
            rows.push(row);
        }
        if Matrix::from_rows(field, rows).rank() == elements.len() {
            return true;
        }
    }
    false
}

/// The polynomial form `σ(x) = ν2·x² + ν1·x + ν0` with `ν_i ∈ k(y)`, from a
/// relation `c0·σ(x) + c1·x² + c2·x + c3 = 0` with `c0 ≠ 0`.
pub fn polynomial_form(x: &ParamFn, sx: &ParamFn, y: &ParamFn, bound: u32) -> Option<[RatFn; 3]> {
    let one = ParamFn::constant(y.field().one());
    let elements = [sx.clone(), x.mul(x), x.clone(), one];
    for r in relation_space(&elements, y, bound) {
        if r[0].is_zero() {
            continue;
        }
        let c0 = RatFn::from_poly(r[0].clone());
        let nu = |p: &UniPoly| RatFn::from_poly(p.scale(&p.field().from_i64(-1))).div(&c0).expect("nonzero");
        return Some([nu(&r[3]), nu(&r[2]), nu(&r[1])]);
    }
    None
}

/// The Möbius form of an automorphism `σ(x) = ν2·x² + ν1·x + ν0` of
/// `k(y)[x]/(x³ + a2·x² + a1·x + a0)`:
///
/// `α = a2·ν1·ν2 - a1·ν2² + ν0·ν2 - ν1²`, `β = a2·ν0·ν2 - a0·ν2² - ν0·ν1`,
/// `γ = ν2`, `δ = a2·ν2 - ν1`.
///
/// Before returning, `f(σ(x)) ≡ 0` is checked, so `σ` is an automorphism, and
/// so is the congruence `(γ·x + δ)·σ(x) ≡ α·x + β` modulo the cubic `f`.
pub fn lemma31_formulas(a: &[RatFn; 3], nu: &[RatFn; 3]) -> Result<MobiusOverBase> {
    let [a0, a1, a2] = a;
    let [n0, n1, n2] = nu;
    let s2 = mul_mod(nu, nu, a);
    let s3 = mul_mod(&s2, nu, a);
    let image: Vec<RatFn> = (0..3)
        .map(|k| {
            let mut v = s3[k].add(&a2.mul(&s2[k])).add(&a1.mul(&nu[k]));
            if k == 0 {
                v = v.add(a0);
            }
            v
        })
        .collect();
    if !image.iter().all(RatFn::is_zero) {
        return Err(degenerate("the given polynomial form does not send a root of the cubic to a root"));
    }
    let alpha = a2.mul(n1).mul(n2).sub(&a1.mul(n2).mul(n2)).add(&n0.mul(n2)).sub(&n1.mul(n1));
    let beta = a2.mul(n0).mul(n2).sub(&a0.mul(n2).mul(n2)).sub(&n0.mul(n1));
    let gamma = n2.clone();
    let delta = a2.mul(n2).sub(n1);
    // (γx + δ)(ν2x² + ν1x + ν0) - (αx + β), reduced by x³ = -a2x² - a1x - a0
    let c3 = gamma.mul(n2);
    let c2 = gamma.mul(n1).add(&delta.mul(n2));
    let c1 = gamma.mul(n0).add(&delta.mul(n1)).sub(&alpha);
    let c0 = delta.mul(n0).sub(&beta);
    let r2 = c2.sub(&c3.mul(a2));
    let r1 = c1.sub(&c3.mul(a1));
    let r0 = c0.sub(&c3.mul(a0));
    if !(r2.is_zero() && r1.is_zero() && r0.is_zero()) {
        return Err(degenerate("the given polynomial form is not an automorphism of the cubic extension"));
    }
    let polys = clear_denominators(&[alpha, beta, gamma, delta]);
    let [a, b, c, d]: [MultiPoly; 4] = std::array::from_fn(|i| to_y(&polys[i]));
    MobiusOverBase::new(a, b, c, d)
}

/// Product of two residues `p0 + p1·x + p2·x²` modulo `x³ + a2·x² + a1·x + a0`.
fn mul_mod(p: &[RatFn; 3], q: &[RatFn; 3], a: &[RatFn; 3]) -> [RatFn; 3] {
    let zero = p[0].sub(&p[0]);
    let mut c: Vec<RatFn> = vec![zero; 5];
    for i in 0..3 {
        for j in 0..3 {
            c[i + j] = c[i + j].add(&p[i].mul(&q[j]));
        }
    }
    for k in (3..5).rev() {
        let top = c[k].clone();
        for (i, ai) in a.iter().enumerate() {
            c[k - 3 + i] = c[k - 3 + i].sub(&top.mul(ai));
        }
        c[k] = c[k].sub(&top);
    }
    [c[0].clone(), c[1].clone(), c[2].clone()]
}

/// Monic coefficients `[a0, a1, a2]` of a fiber polynomial of degree 3 in `x`.
pub fn monic_cubic_coefficients(coeffs: &[UniPoly]) -> Option<[RatFn; 3]> {
    if coeffs.len() != 4 {
        return None;
    }
    let lc = RatFn::from_poly(coeffs[3].clone());
    let q = |k: usize| RatFn::from_poly(coeffs[k].clone()).div(&lc);
    Some([q(0)?, q(1)?, q(2)?])
}
