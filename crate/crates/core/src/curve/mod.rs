//! Projective plane curves, given implicitly and/or by a rational parametrization.

mod implicit;
mod multiplicity;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{degenerate, input, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::{gcd_forms, parse_field_element, uv, xyz, MultiPoly};

pub use implicit::{implicitize, implicitize_by_nullspace};
pub use multiplicity::{
    has_point_of_multiplicity_ge, multiplicity_implicit, multiplicity_param, EmptinessCertificate, PointSearch,
};

/// A point of `P²`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        let coords = [a, b, c];
        let Some(i) = coords.iter().position(|x| !x.is_zero()) else {
            return Err(input("not a projective point: all coordinates are zero"));
        };
        let inv = coords[i].inv()?;
        Ok(ProjPoint { coords: coords.map(|x| &x * &inv) })
    }

    pub fn from_vec(v: &[FieldElement]) -> Result<Self> {
        if v.len() != 3 {
            return Err(input(format!("a plane point needs 3 coordinates, got {}", v.len())));
        }
        Self::new(v[0].clone(), v[1].clone(), v[2].clone())
    }

    pub fn from_i64(field: &Field, c: [i64; 3]) -> Result<Self> {
        Self::new(field.from_i64(c[0]), field.from_i64(c[1]), field.from_i64(c[2]))
    }

    pub fn parse<S: AsRef<str>>(field: &Field, text: &[S]) -> Result<Self> {
        let v: Vec<FieldElement> =
            text.iter().map(|s| parse_field_element(s.as_ref(), field)).collect::<std::result::Result<_, _>>()?;
        Self::from_vec(&v)
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|x| !x.is_zero()).expect("nonzero point")
    }

    /// Image under the linear map `w ↦ M·w`.
    pub fn apply(&self, m: &Matrix) -> Result<Self> {
        Self::from_vec(&m.mul_vec(&self.coords))
    }

    /// Two independent linear forms vanishing at the point, as coefficient triples.
    ///
    /// For `P = [1:p1:p2]` these are `Y - p1·X` and `Z - p2·X`; for `[0:1:p2]`
    /// they are `X` and `Z - p2·Y`; for `[0:0:1]` they are `X` and `Y`.
    pub fn pencil_basis(&self) -> [[FieldElement; 3]; 2] {
        let f = self.field();
        let (z, o) = (f.zero(), f.one());
        let p = &self.coords;
        match self.chart() {
            0 => [[-&p[1], o.clone(), z.clone()], [-&p[2], z, o]],
            1 => [[o.clone(), z.clone(), z.clone()], [z, -&p[2], o]],
            _ => [[o.clone(), z.clone(), z.clone()], [z, o, f.zero()]],
        }
    }

    /// Invertible `M` with `M·P = [1:0:0]`, rows `e_i`, `L1`, `L2` where `i` is the chart
    /// and `L1, L2` the pencil basis; in the new coordinates `π_P = [Y:Z]`.
    pub fn centering_matrix(&self) -> Matrix {
        let f = self.field();
        let i = self.chart();
        let [l1, l2] = self.pencil_basis();
        let e: Vec<FieldElement> = (0..3).map(|j| if j == i { f.one() } else { f.zero() }).collect();
        Matrix::from_rows(f, vec![e, l1.to_vec(), l2.to_vec()])
    }

    pub fn coordinate_points(field: &Field) -> [ProjPoint; 3] {
        [
            Self::from_i64(field, [1, 0, 0]).unwrap(),
            Self::from_i64(field, [0, 1, 0]).unwrap(),
            Self::from_i64(field, [0, 0, 1]).unwrap(),
        ]
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Linear form `a·X + b·Y + c·Z`.
pub fn linear_form(field: &Field, c: &[FieldElement; 3]) -> MultiPoly {
    let v = xyz();
    (0..3).fold(MultiPoly::zero(field, &v), |acc, i| &acc + &MultiPoly::var(field, &v, i).scale(&c[i]))
}

/// Three binary forms in `u, v` of one degree, without common factor.
#[derive(Clone, PartialEq, Eq)]
pub struct Parametrization {
    comps: [MultiPoly; 3],
    degree: u32,
}

impl Parametrization {
    pub fn new(comps: [MultiPoly; 3]) -> Result<Self> {
        let ring = uv();
        let field = comps[0].field().clone();
        let comps = comps
            .iter()
            .map(|c| c.with_vars(&ring).map_err(|_| input("parametrization components must be forms in u, v")))
            .collect::<Result<Vec<_>>>()?;
        if comps.iter().all(MultiPoly::is_zero) {
            return Err(input("all parametrization components are zero"));
        }
        if comps.iter().any(|c| !c.is_homogeneous()) {
            return Err(input("parametrization components must be homogeneous"));
        }
        let degs: Vec<u32> = comps.iter().filter_map(MultiPoly::degree).collect();
        if degs.iter().any(|&d| d != degs[0]) {
            return Err(input("parametrization components have different degrees"));
        }
        let g = comps.iter().fold(MultiPoly::zero(&field, &ring), |acc, c| gcd_forms(&acc, c));
        let comps: Vec<MultiPoly> = comps.iter().map(|c| c.exact_div(&g).expect("gcd divides")).collect();
        let nonzero: Vec<&MultiPoly> = comps.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.windows(2).all(|w| w[0].proportional(w[1])) {
            return Err(input("parametrization components are proportional, the image is a point"));
        }
        let degree = nonzero[0].degree().unwrap();
        let [a, b, c]: [MultiPoly; 3] = comps.try_into().expect("three components");
        Ok(Parametrization { comps: [a, b, c], degree })
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

    /// `a·φ1 + b·φ2 + c·φ3`.
    pub fn pullback_linear(&self, c: &[FieldElement; 3]) -> MultiPoly {
        (0..3).fold(MultiPoly::zero(self.field(), &uv()), |acc, i| &acc + &self.comps[i].scale(&c[i]))
    }

    /// Substitutes forms for `u, v` in every component.
    pub fn substitute(&self, u: &MultiPoly, v: &MultiPoly) -> [MultiPoly; 3] {
        self.comps.clone().map(|c| c.substitute(&[u.clone(), v.clone()]))
    }

    /// `F(φ)`, a binary form.
    pub fn pull_back(&self, f: &MultiPoly) -> MultiPoly {
        f.substitute(&self.comps)
    }

    pub fn eval(&self, u: &FieldElement, v: &FieldElement) -> Option<ProjPoint> {
        let c: Vec<FieldElement> = self.comps.iter().map(|p| p.eval(&[u.clone(), v.clone()])).collect();
        ProjPoint::from_vec(&c).ok()
    }
}

impl fmt::Debug for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.comps[0], self.comps[1], self.comps[2])
    }
}

pub struct PlaneCurve {
    field: Field,
    implicit: OnceLock<MultiPoly>,
    param: Option<Parametrization>,
    irreducible_trusted: bool,
}

impl Clone for PlaneCurve {
    fn clone(&self) -> Self {
        let implicit = OnceLock::new();
        if let Some(f) = self.implicit.get() {
            let _ = implicit.set(f.clone());
        }
        PlaneCurve {
            field: self.field.clone(),
            implicit,
            param: self.param.clone(),
            irreducible_trusted: self.irreducible_trusted,
        }
    }
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneCurve").field("implicit", &self.implicit.get()).field("param", &self.param).finish()
    }
}

fn normalize_implicit(f: &MultiPoly) -> Result<MultiPoly> {
    let f = f.with_vars(&xyz()).map_err(|_| input("implicit equation must be a form in X, Y, Z"))?;
    if f.is_zero() {
        return Err(input("implicit equation is zero"));
    }
    if !f.is_homogeneous() {
        return Err(input("implicit equation is not homogeneous"));
    }
    if f.degree() == Some(0) {
        return Err(input("implicit equation is a nonzero constant"));
    }
    Ok(f.monic())
}

impl PlaneCurve {
    pub fn from_implicit(f: &MultiPoly, irreducible_trusted: bool) -> Result<Self> {
        let f = normalize_implicit(f)?;
        let implicit = OnceLock::new();
        let _ = implicit.set(f.clone());
        Ok(PlaneCurve { field: f.field().clone(), implicit, param: None, irreducible_trusted })
    }

    /// Curve of a parametrization; the implicit form is computed on demand.
    pub fn from_parametrization(param: Parametrization) -> Self {
        PlaneCurve { field: param.field().clone(), implicit: OnceLock::new(), param: Some(param), irreducible_trusted: true }
    }

    /// Curve carrying both representations, checked against each other.
    pub fn from_both(f: &MultiPoly, param: Parametrization) -> Result<Self> {
        let f = normalize_implicit(f)?;
        if !param.pull_back(&f).is_zero() {
            return Err(input("the parametrization does not lie on the implicit curve"));
        }
        let implicit = OnceLock::new();
        let _ = implicit.set(f.clone());
        Ok(PlaneCurve { field: f.field().clone(), implicit, param: Some(param), irreducible_trusted: true })
    }

    /// For data whose consistency follows from how it was built.
    pub(crate) fn from_both_unchecked(f: &MultiPoly, param: Parametrization) -> Result<Self> {
        let f = normalize_implicit(f)?;
        let implicit = OnceLock::new();
        let _ = implicit.set(f.clone());
        Ok(PlaneCurve { field: f.field().clone(), implicit, param: Some(param), irreducible_trusted: true })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn param(&self) -> Option<&Parametrization> {
        self.param.as_ref()
    }

    pub fn irreducible_trusted(&self) -> bool {
        self.irreducible_trusted
    }

    pub fn has_implicit(&self) -> bool {
        self.implicit.get().is_some()
    }

    /// The implicit equation, normalized monic; implicitized once if needed.
    pub fn implicit(&self) -> Result<&MultiPoly> {
        if let Some(f) = self.implicit.get() {
            return Ok(f);
        }
        let param = self.param.as_ref().ok_or_else(|| degenerate("curve has no representation"))?;
        let f = implicitize(param)?;
        let _ = self.implicit.set(f);
        Ok(self.implicit.get().expect("just set"))
    }

    pub fn degree(&self) -> Result<u32> {
        if let Some(f) = self.implicit.get() {
            return Ok(f.degree().unwrap());
        }
        match &self.param {
            Some(p) => Ok(p.degree()),
            None => Err(degenerate("curve has no representation")),
        }
    }

    pub fn contains(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.implicit()?.eval(p.coords()).is_zero())
    }

    /// Whether the curve is a line through `p`.
    pub fn is_line_through(&self, p: &ProjPoint) -> Result<bool> {
        Ok(self.degree()? == 1 && self.contains(p)?)
    }
}

/// Random invertible 3×3 matrix with small integer entries.
pub fn random_invertible<R: rand::Rng + ?Sized>(field: &Field, rng: &mut R) -> Matrix {
    loop {
        let rows: Vec<Vec<FieldElement>> =
            (0..3).map(|_| (0..3).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect()).collect();
        let m = Matrix::from_rows(field, rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}
