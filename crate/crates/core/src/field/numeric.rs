//! Square roots and root search, driven by floating-point approximation and
//! settled by exact verification.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::coprime_residues;
use super::{prime, Field, FieldElement, Repr};

/// Limits for the approximate stage of [`sqrt_in_field`] and [`roots_in_field`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionBudget {
    /// Maximum number of sign patterns tried across the complex embeddings.
    pub max_combinations: usize,
    /// Largest distance to the nearest integer accepted for a reconstructed coordinate.
    pub tolerance: f64,
    /// Coordinates beyond this magnitude are considered out of reach of `f64`.
    pub max_magnitude: f64,
    /// Largest number of candidates inspected by root search.
    pub max_candidates: usize,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget { max_combinations: 1 << 12, tolerance: 0.25, max_magnitude: 1e12, max_candidates: 20_000 }
    }
}

impl PrecisionBudget {
    /// Budget scaled by a single user-facing knob (`--precision-budget`).
    pub fn from_level(level: u32) -> Self {
        let level = level.clamp(1, 24);
        PrecisionBudget { max_combinations: 1 << level, max_candidates: 5_000 << level.min(12), ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SqrtResult {
    Root(FieldElement),
    NoRoot,
    Undetermined,
}

impl SqrtResult {
    pub fn root(&self) -> Option<&FieldElement> {
        match self {
            SqrtResult::Root(r) => Some(r),
            _ => None,
        }
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

pub(super) fn embed(e: &FieldElement, k: u32) -> Complex64 {
    match &e.repr {
        Repr::Mod(r) => Complex64::new(*r as f64, 0.0),
        Repr::Num { coords, den } => {
            let n = e.field.cyclotomic_order().unwrap_or(1);
            let d = big_to_f64(den);
            let mut acc = Complex64::zero();
            for (j, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let angle = 2.0 * std::f64::consts::PI * ((k as u64 * j as u64) % n as u64) as f64 / n as f64;
                acc += Complex64::from_polar(big_to_f64(c) / d, angle);
            }
            acc
        }
    }
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Square root of `c` in its own field.
///
/// Results for `Q` and `F_p` are exact in both directions. In `Q(ζ_n)` a root
/// is returned only after the exact check `r² = c`; a negative answer is given
/// only when the norm of `c` is not a rational square, otherwise a failed
/// search is `Undetermined`.
pub fn sqrt_in_field(c: &FieldElement, budget: &PrecisionBudget) -> SqrtResult {
    let field = c.field().clone();
    if c.is_zero() {
        return SqrtResult::Root(c.clone());
    }
    match &c.repr {
        Repr::Mod(r) => {
            let p = field.characteristic();
            match prime::sqrt_mod(*r, p) {
                Some(s) => SqrtResult::Root(FieldElement { field, repr: Repr::Mod(s) }),
                None => SqrtResult::NoRoot,
            }
        }
        Repr::Num { coords, den } => {
            let rational = coords[1..].iter().all(Zero::is_zero);
            if rational {
                if let (Some(a), Some(b)) = (exact_isqrt(&coords[0]), exact_isqrt(den)) {
                    let mut v = vec![BigInt::zero(); field.degree()];
                    v[0] = a;
                    return SqrtResult::Root(field.num(v, b));
                }
                if field.degree() == 1 {
                    return SqrtResult::NoRoot;
                }
            }
            cyclotomic_sqrt(&field, coords, den, budget)
        }
    }
}

fn cyclotomic_sqrt(field: &Field, coords: &[BigInt], den: &BigInt, budget: &PrecisionBudget) -> SqrtResult {
    let n = field.cyclotomic_order().expect("degree > 1 means cyclotomic");
    // c·den² is an algebraic integer, so its square roots lie in Z[ζ_n]
    let integral: Vec<BigInt> = coords.iter().map(|a| a * den).collect();
    let target = field.num(integral.clone(), BigInt::one());
    let norm = norm_of_integral(field, &integral);
    if exact_isqrt(&norm).is_none() {
        return SqrtResult::NoRoot;
    }
    let phi = field.degree();
    let reps: Vec<u32> = coprime_residues(n).into_iter().filter(|&k| 2 * k < n).collect();
    let roots: Vec<Complex64> = reps.iter().map(|&k| embed(&target, k).sqrt()).collect();
    let mut matrix = vec![vec![0.0f64; phi]; phi];
    for (row, &k) in reps.iter().enumerate() {
        for (j, entry) in (0..phi).map(|j| {
            let angle = 2.0 * std::f64::consts::PI * ((k as u64 * j as u64) % n as u64) as f64 / n as f64;
            (j, Complex64::from_polar(1.0, angle))
        }) {
            matrix[2 * row][j] = entry.re;
            matrix[2 * row + 1][j] = entry.im;
        }
    }
    let combos = 1usize << (reps.len() - 1);
    if combos > budget.max_combinations {
        return SqrtResult::Undetermined;
    }
    for mask in 0..combos {
        let mut rhs = vec![0.0; phi];
        for (i, s) in roots.iter().enumerate() {
            let s = if i > 0 && mask >> (i - 1) & 1 == 1 { -s } else { *s };
            rhs[2 * i] = s.re;
            rhs[2 * i + 1] = s.im;
        }
        let Some(sol) = solve_dense(matrix.clone(), rhs) else {
            return SqrtResult::Undetermined;
        };
        if sol.iter().any(|x| !x.is_finite() || x.abs() > budget.max_magnitude) {
            return SqrtResult::Undetermined;
        }
        if sol.iter().any(|x| (x - x.round()).abs() > budget.tolerance) {
            continue;
        }
        let cand: Vec<BigInt> = sol.iter().map(|x| BigInt::from(x.round() as i64)).collect();
        let r = field.num(cand, BigInt::one());
        if &r * &r == target {
            let root = field.num(r.coords().unwrap().0.to_vec(), den.clone());
            return SqrtResult::Root(root);
        }
    }
    SqrtResult::Undetermined
}

/// Norm of an integral element: determinant of its multiplication matrix.
fn norm_of_integral(field: &Field, coords: &[BigInt]) -> BigInt {
    let phi = field.degree();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
    let mut cur = field.num(coords.to_vec(), BigInt::one());
    let z = field.generator().expect("cyclotomic");
    for _ in 0..phi {
        rows.push(cur.coords().unwrap().0.to_vec());
        cur = &cur * &z;
    }
    bareiss_det(rows)
}

pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Outcome of [`roots_in_field`].
#[derive(Debug, Clone)]
pub(crate) struct RootSearch {
    pub roots: Vec<FieldElement>,
    /// Every root in the field is listed.
    pub complete: bool,
}

/// Roots in the ground field of a univariate polynomial (coefficients constant term first).
///
/// Prime fields are searched exhaustively when `p` fits the candidate budget.
/// Over `Q` the rational root theorem is applied to the cleared integer
/// polynomial. Over `Q(ζ_n)` rational roots are found the same way and the
/// remaining small lattice points of `Z[ζ_n]` are tried up to the budget, so
/// the search is never reported complete there.
pub(crate) fn roots_in_field(coeffs: &[FieldElement], field: &Field, budget: &PrecisionBudget) -> RootSearch {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(FieldElement::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return RootSearch { roots: vec![], complete: !coeffs.is_empty() };
    }
    let eval = |x: &FieldElement| coeffs.iter().rev().fold(field.zero(), |acc, c| &(&acc * x) + c);
    let mut roots = Vec::new();
    let push = |r: FieldElement, roots: &mut Vec<FieldElement>| {
        if !roots.contains(&r) {
            roots.push(r);
        }
    };
    let p = field.characteristic();
    if p > 0 {
        let complete = p as usize <= budget.max_candidates;
        let limit = (p as usize).min(budget.max_candidates) as u64;
        for r in 0..limit {
            let x = field.from_i64(r as i64);
            if eval(&x).is_zero() {
                push(x, &mut roots);
            }
        }
        return RootSearch { roots, complete };
    }
    if coeffs[0].is_zero() {
        push(field.zero(), &mut roots);
    }
    let mut complete = field.degree() == 1;
    if let Some(ints) = integer_coefficients(&coeffs) {
        let lo = ints.iter().position(|c| !c.is_zero()).unwrap();
        let (a0, an) = (ints[lo].abs(), ints.last().unwrap().abs());
        let (da, dn) = (small_divisors(&a0, budget.max_candidates), small_divisors(&an, budget.max_candidates));
        match (da, dn) {
            (Some(da), Some(dn)) if da.len() * dn.len() * 2 <= budget.max_candidates => {
                for p in &da {
                    for q in &dn {
                        for s in [1i64, -1] {
                            let x = field.from_ratio(&(p * s), q).unwrap();
                            if eval(&x).is_zero() {
                                push(x, &mut roots);
                            }
                        }
                    }
                }
            }
            _ => complete = false,
        }
    } else {
        complete = false;
    }
    if field.degree() > 1 {
        // small lattice points of Z[ζ_n]
        let phi = field.degree();
        let mut bound = 1i64;
        while (2 * bound + 3).checked_pow(phi as u32).is_some_and(|c| c as usize <= budget.max_candidates) {
            bound += 1;
        }
        let width = (2 * bound + 1) as usize;
        if width.checked_pow(phi as u32).is_some_and(|c| c <= budget.max_candidates) {
            let total = width.pow(phi as u32);
            for idx in 0..total {
                let mut rest = idx;
                let v: Vec<BigInt> = (0..phi)
                    .map(|_| {
                        let d = (rest % width) as i64 - bound;
                        rest /= width;
                        BigInt::from(d)
                    })
                    .collect();
                let x = field.num(v, BigInt::one());
                if eval(&x).is_zero() {
                    push(x, &mut roots);
                }
            }
        }
    }
    RootSearch { roots, complete }
}

fn integer_coefficients(coeffs: &[FieldElement]) -> Option<Vec<BigInt>> {
    let rats: Vec<_> = coeffs.iter().map(|c| c.to_rational()).collect::<Option<Vec<_>>>()?;
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    Some(rats.iter().map(|r| (r.numer() * &l) / r.denom()).collect())
}

fn small_divisors(v: &BigInt, cap: usize) -> Option<Vec<BigInt>> {
    let v = v.to_u64()?;
    if v == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
        if d > 2_000_000 || out.len() > cap {
            return None;
        }
    }
    Some(out)
}
