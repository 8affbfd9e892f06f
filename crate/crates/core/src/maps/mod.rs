//! Rational self-maps of the plane and Möbius transformations of the line.

mod jonquieres;
mod pushforward;

use std::fmt;

use crate::curve::ProjPoint;
use crate::error::{degenerate, input, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::{gcd, proportional_eq, uv, xyz, MultiPoly};

pub use jonquieres::{jonquieres_decompose, JonquieresWitness, MobiusOverBase};
pub use pushforward::{linear_pushforward, std_quadratic_pushforward, QuadraticReport};

/// A rational map `P² ⇢ P²` given by three coprime forms of one degree,
/// scaled so the leading coefficient of the first nonzero component is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneRationalMap {
    comps: [MultiPoly; 3],
    degree: u32,
    matrix: Option<Matrix>,
}

impl PlaneRationalMap {
    pub fn new(comps: [MultiPoly; 3]) -> Result<Self> {
        let ring = xyz();
        let field = comps[0].field().clone();
        let comps = comps
            .iter()
            .map(|c| c.with_vars(&ring).map_err(|_| input("map components must be forms in X, Y, Z")))
            .collect::<Result<Vec<_>>>()?;
        if comps.iter().all(MultiPoly::is_zero) {
            return Err(degenerate("all map components vanish"));
        }
        if comps.iter().any(|c| !c.is_homogeneous()) {
            return Err(input("map components must be homogeneous"));
        }
        let degs: Vec<u32> = comps.iter().filter_map(MultiPoly::degree).collect();
        if degs.iter().any(|&d| d != degs[0]) {
            return Err(input("map components have different degrees"));
        }
        let g = comps.iter().fold(MultiPoly::zero(&field, &ring), |acc, c| gcd(&acc, c));
        let mut comps: Vec<MultiPoly> = comps.iter().map(|c| c.exact_div(&g).expect("gcd divides")).collect();
        let lead = comps.iter().find(|c| !c.is_zero()).unwrap().leading_coeff().inv()?;
        for c in &mut comps {
            *c = c.scale(&lead);
        }
        let degree = comps.iter().find_map(MultiPoly::degree).unwrap();
        let matrix = (degree == 1).then(|| linear_coefficients(&field, &comps)).filter(|m| !m.det().is_zero());
        let [a, b, c]: [MultiPoly; 3] = comps.try_into().expect("three components");
        Ok(PlaneRationalMap { comps: [a, b, c], degree, matrix })
    }

    /// The linear map `w ↦ M·w`.
    pub fn linear(m: &Matrix) -> Result<Self> {
        if m.nrows() != 3 || m.ncols() != 3 {
            return Err(input("a linear plane map needs a 3×3 matrix"));
        }
        if m.det().is_zero() {
            return Err(input("singular matrix"));
        }
        let field = m.field();
        let comps: [MultiPoly; 3] =
            std::array::from_fn(|r| crate::curve::linear_form(field, &std::array::from_fn(|c| m.get(r, c).clone())));
        Self::new(comps)
    }

    pub fn identity(field: &Field) -> Self {
        Self::linear(&Matrix::identity(field, 3)).expect("identity is invertible")
    }

    /// `[YZ : XZ : XY]`.
    pub fn standard_quadratic(field: &Field) -> Self {
        let v = xyz();
        let [x, y, z] = [0, 1, 2].map(|i| MultiPoly::var(field, &v, i));
        Self::new([&y * &z, &x * &z, &x * &y]).expect("valid map")
    }

    pub fn components(&self) -> &[MultiPoly; 3] {
        &self.comps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &Field {
        self.comps[0].field()
    }

    /// The matrix of an invertible linear map, scaled like the components.
    pub fn matrix(&self) -> Option<&Matrix> {
        self.matrix.as_ref()
    }

    /// `self ∘ f`: substitute `f` into `self`, then clear the common factor.
    pub fn compose(&self, f: &PlaneRationalMap) -> Result<PlaneRationalMap> {
        let comps: [MultiPoly; 3] = std::array::from_fn(|i| self.comps[i].substitute(&f.comps));
        if comps.iter().all(MultiPoly::is_zero) {
            return Err(degenerate("composition vanishes identically"));
        }
        Self::new(comps)
    }

    /// Image of a point, or `None` when every component vanishes there.
    pub fn apply(&self, p: &ProjPoint) -> Option<ProjPoint> {
        let v: Vec<FieldElement> = self.comps.iter().map(|c| c.eval(p.coords())).collect();
        ProjPoint::from_vec(&v).ok()
    }

    /// `F ∘ f`.
    pub fn pull_back(&self, f: &MultiPoly) -> MultiPoly {
        f.substitute(&self.comps)
    }

    pub fn is_identity(&self) -> bool {
        let v = xyz();
        let ids: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(self.field(), &v, i)).collect();
        proportional_eq(&self.comps, &ids)
    }

    /// `M ∘ self ∘ M⁻¹`.
    pub fn conjugate(&self, m: &Matrix) -> Result<PlaneRationalMap> {
        let inv = m.inverse().ok_or_else(|| input("singular matrix"))?;
        Self::linear(m)?.compose(&self.compose(&Self::linear(&inv)?)?)
    }
}

fn linear_coefficients(field: &Field, comps: &[MultiPoly]) -> Matrix {
    let rows = comps
        .iter()
        .map(|c| (0..3).map(|j| c.coeff(&std::array::from_fn::<u32, 3, _>(|k| u32::from(k == j)))).collect())
        .collect();
    Matrix::from_rows(field, rows)
}

impl fmt::Display for PlaneRationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.comps[0], self.comps[1], self.comps[2])
    }
}

impl fmt::Debug for PlaneRationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[u:v] ↦ [a·u + b·v : c·u + d·v]`, scaled so the first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LineMobius {
    m: [FieldElement; 4],
}

impl LineMobius {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(input("Möbius transformation with zero determinant"));
        }
        let m = [a, b, c, d];
        let lead = m.iter().find(|x| !x.is_zero()).unwrap().inv()?;
        Ok(LineMobius { m: m.map(|x| &x * &lead) })
    }

    pub fn from_i64(field: &Field, e: [i64; 4]) -> Result<Self> {
        let [a, b, c, d] = e.map(|x| field.from_i64(x));
        Self::new(a, b, c, d)
    }

    pub fn identity(field: &Field) -> Self {
        Self::from_i64(field, [1, 0, 0, 1]).unwrap()
    }

    /// `[u:v] ↦ [a·u : b·v]`.
    pub fn diag(a: FieldElement, b: FieldElement) -> Result<Self> {
        let z = a.field().zero();
        Self::new(a, z.clone(), z, b)
    }

    pub fn entries(&self) -> &[FieldElement; 4] {
        &self.m
    }

    pub fn field(&self) -> &Field {
        self.m[0].field()
    }

    pub fn to_matrix(&self) -> Matrix {
        let [a, b, c, d] = self.m.clone();
        Matrix::from_rows(self.field(), vec![vec![a, b], vec![c, d]])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LineMobius) -> LineMobius {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Self::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> LineMobius {
        let [a, b, c, d] = self.m.clone();
        Self::new(d, -b, -c, a).expect("invertible")
    }

    pub fn pow(&self, k: u32) -> LineMobius {
        (0..k).fold(Self::identity(self.field()), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field())
    }

    /// Smallest `k ≤ bound` with `self^k = id`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut g = self.clone();
        for k in 1..=bound {
            if g.is_identity() {
                return Some(k);
            }
            g = g.compose(self);
        }
        None
    }

    /// The pair of linear forms `(a·u + b·v, c·u + d·v)` in the `u, v` ring.
    pub fn forms(&self) -> (MultiPoly, MultiPoly) {
        let v = uv();
        let f = self.field();
        let (u0, v0) = (MultiPoly::var(f, &v, 0), MultiPoly::var(f, &v, 1));
        let [a, b, c, d] = &self.m;
        (&u0.scale(a) + &v0.scale(b), &u0.scale(c) + &v0.scale(d))
    }

    /// Substitutes `g(u, v)` into binary forms.
    pub fn act_on(&self, forms: &[MultiPoly]) -> Vec<MultiPoly> {
        let (a, b) = self.forms();
        forms.iter().map(|p| p.substitute(&[a.clone(), b.clone()])).collect()
    }
}

impl fmt::Display for LineMobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.forms();
        write!(f, "[{a} : {b}]")
    }
}

impl fmt::Debug for LineMobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
