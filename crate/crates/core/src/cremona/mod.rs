//! Cremona reduction of rational plane curves and transport of automorphisms
//! along a reduction.

use serde::Serialize;
use serde_json::{json, Value};

use crate::curve::{Parametrization, PlaneCurve, ProjPoint};
use crate::error::{degenerate, input, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::maps::{linear_pushforward, std_quadratic_pushforward, LineMobius, PlaneRationalMap};
use crate::poly::{gcd_forms, parse_field_element, parse_poly, xyz, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub degree: u32,
    pub multiplicities: Vec<u32>,
    /// `π*(L)·(2K + C̃)`.
    pub pairing: i64,
    /// Coefficient `2 - m_i` of the exceptional curve over the `i`-th point in `2K + C̃`.
    pub exceptional_coefficients: Vec<i64>,
    pub line_equivalence_guaranteed: bool,
}

/// Intersection arithmetic on the blow-up at the given points: the exceptional
/// curves are orthogonal to `π*(L)`, so the pairing is `3·(-2) + d`.
pub fn kodaira_pairing(d: u32, mults: &[u32]) -> PairingReport {
    PairingReport {
        degree: d,
        multiplicities: mults.to_vec(),
        pairing: -6 + i64::from(d),
        exceptional_coefficients: mults.iter().map(|&m| 2 - i64::from(m)).collect(),
        line_equivalence_guaranteed: d < 6,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineEquivalence {
    EquivalentToLine,
    Unknown,
}

/// Rational curves of degree below 6 are Cremona equivalent to a line.
pub fn line_equivalence_decision(curve: &PlaneCurve) -> Result<LineEquivalence> {
    if curve.param().is_none() {
        return Err(input("the curve has no parametrization, rationality is not established"));
    }
    Ok(if curve.degree()? < 6 { LineEquivalence::EquivalentToLine } else { LineEquivalence::Unknown })
}

#[derive(Debug, Clone)]
pub enum ReductionStep {
    /// `w ↦ M·w`.
    Linear(Matrix),
    /// The standard quadratic map conjugated to have base points `P1, P2, P3`.
    StdQuadraticAt([ProjPoint; 3]),
}

/// Matrix sending the coordinate points to `P1, P2, P3`.
fn base_point_matrix(points: &[ProjPoint; 3]) -> Result<Matrix> {
    let field = points[0].field();
    let t = Matrix::from_rows(field, points.iter().map(|p| p.coords().to_vec()).collect()).transpose();
    if t.det().is_zero() {
        return Err(input("the three base points are collinear"));
    }
    Ok(t)
}

impl ReductionStep {
    pub fn map(&self) -> Result<PlaneRationalMap> {
        match self {
            ReductionStep::Linear(m) => PlaneRationalMap::linear(m),
            ReductionStep::StdQuadraticAt(points) => {
                let t = base_point_matrix(points)?;
                PlaneRationalMap::standard_quadratic(t.field()).conjugate(&t)
            }
        }
    }

    /// Quadratic steps are involutions.
    pub fn inverse_map(&self) -> Result<PlaneRationalMap> {
        match self {
            ReductionStep::Linear(m) => PlaneRationalMap::linear(&m.inverse().ok_or_else(|| input("singular matrix"))?),
            ReductionStep::StdQuadraticAt(_) => self.map(),
        }
    }

    pub fn apply(&self, curve: &PlaneCurve) -> Result<(PlaneCurve, StepRecord)> {
        match self {
            ReductionStep::Linear(m) => {
                let d = curve.degree()?;
                let image = linear_pushforward(curve, m)?;
                Ok((image, StepRecord { degree_before: d, degree_after: d, multiplicities: None }))
            }
            ReductionStep::StdQuadraticAt(points) => quadratic_at_three_points(curve, points),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ReductionStep::Linear(m) => {
                let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                json!({ "linear": rows })
            }
            ReductionStep::StdQuadraticAt(points) => {
                let pts: Vec<Vec<String>> = points.iter().map(|p| p.coords().iter().map(ToString::to_string).collect()).collect();
                json!({ "std_quadratic_at": pts })
            }
        }
    }

    pub fn from_json(value: &Value, field: &Field) -> Result<Self> {
        let entries = |v: &Value, what: &str| -> Result<Vec<Vec<FieldElement>>> {
            let rows = v.as_array().filter(|r| r.len() == 3).ok_or_else(|| input(format!("{what} needs three rows")))?;
            rows.iter()
                .map(|row| {
                    let row = row
                        .as_array()
                        .filter(|r| r.len() == 3)
                        .ok_or_else(|| input(format!("{what} rows need three entries")))?;
                    row.iter()
                        .map(|e| match e {
                            Value::String(s) => Ok(parse_field_element(s, field)?),
                            Value::Number(n) => Ok(parse_field_element(&n.to_string(), field)?),
                            _ => Err(input(format!("{what} entries must be strings or integers"))),
                        })
                        .collect()
                })
                .collect()
        };
        if let Some(m) = value.get("linear") {
            let m = Matrix::from_rows(field, entries(m, "linear step")?);
            if m.det().is_zero() {
                return Err(input("linear step matrix is singular"));
            }
            Ok(ReductionStep::Linear(m))
        } else if let Some(p) = value.get("std_quadratic_at") {
            let rows = entries(p, "std_quadratic_at")?;
            let pts = rows.iter().map(|r| ProjPoint::from_vec(r)).collect::<Result<Vec<_>>>()?;
            let points: [ProjPoint; 3] = pts.try_into().expect("three points");
            base_point_matrix(&points)?;
            Ok(ReductionStep::StdQuadraticAt(points))
        } else {
            Err(input("a reduction step is either {\"linear\": …} or {\"std_quadratic_at\": …}"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub degree_before: u32,
    pub degree_after: u32,
    /// Multiplicities at the base points consumed by a quadratic step.
    pub multiplicities: Option<[u32; 3]>,
}

/// Image of `C` under the standard quadratic map with base points `P1, P2, P3`;
/// its degree is `2d - m1 - m2 - m3`.
pub fn quadratic_at_three_points(curve: &PlaneCurve, points: &[ProjPoint; 3]) -> Result<(PlaneCurve, StepRecord)> {
    let t = base_point_matrix(points)?;
    let inv = t.inverse().expect("invertible");
    let moved = linear_pushforward(curve, &inv)?;
    let (image, report) = std_quadratic_pushforward(&moved)?;
    if let Some(k) = report.multiplicities.iter().position(|&m| m == 0) {
        return Err(input(format!("base point {} is not on the curve", points[k])));
    }
    let image = linear_pushforward(&image, &t)?;
    Ok((
        image,
        StepRecord {
            degree_before: report.degree_before,
            degree_after: report.degree_after,
            multiplicities: Some(report.multiplicities),
        },
    ))
}

/// A sequence of linear and quadratic steps carrying `start` onto `end`.
#[derive(Debug, Clone)]
pub struct ReductionChain {
    start: PlaneCurve,
    end: PlaneCurve,
    steps: Vec<ReductionStep>,
    records: Vec<StepRecord>,
}

impl ReductionChain {
    pub fn new(start: PlaneCurve) -> Self {
        ReductionChain { end: start.clone(), start, steps: vec![], records: vec![] }
    }

    pub fn build(start: PlaneCurve, steps: Vec<ReductionStep>) -> Result<Self> {
        let mut chain = Self::new(start);
        for s in steps {
            chain.push(s)?;
        }
        Ok(chain)
    }

    pub fn push(&mut self, step: ReductionStep) -> Result<()> {
        let (image, record) = step.apply(&self.end)?;
        self.end = image;
        self.steps.push(step);
        self.records.push(record);
        Ok(())
    }

    pub fn start(&self) -> &PlaneCurve {
        &self.start
    }

    pub fn end(&self) -> &PlaneCurve {
        &self.end
    }

    pub fn steps(&self) -> &[ReductionStep] {
        &self.steps
    }

    pub fn records(&self) -> &[StepRecord] {
        &self.records
    }

    /// Applies the steps to `start` again and compares with `end`.
    pub fn replay(&self) -> Result<bool> {
        let again = Self::build(self.start.clone(), self.steps.clone())?;
        Ok(again.end.implicit()?.proportional(self.end.implicit()?))
    }

    /// `s_k ∘ … ∘ s_1`.
    pub fn map(&self) -> Result<PlaneRationalMap> {
        let field = self.start.field();
        self.steps.iter().try_fold(PlaneRationalMap::identity(field), |acc, s| s.map()?.compose(&acc))
    }

    /// `s_1⁻¹ ∘ … ∘ s_k⁻¹`.
    pub fn inverse_map(&self) -> Result<PlaneRationalMap> {
        let field = self.start.field();
        self.steps.iter().try_fold(PlaneRationalMap::identity(field), |acc, s| acc.compose(&s.inverse_map()?))
    }

    /// The chain of `M·C`: undo `M`, then the original steps.
    pub fn conjugated(&self, m: &Matrix) -> Result<Self> {
        let inv = m.inverse().ok_or_else(|| input("singular matrix"))?;
        let start = linear_pushforward(&self.start, m)?;
        let steps = std::iter::once(ReductionStep::Linear(inv)).chain(self.steps.iter().cloned()).collect();
        Self::build(start, steps)
    }

    pub fn to_json(&self) -> Value {
        json!({ "steps": self.steps.iter().map(ReductionStep::to_json).collect::<Vec<_>>() })
    }

    pub fn steps_from_json(value: &Value, field: &Field) -> Result<Vec<ReductionStep>> {
        let steps = value.get("steps").and_then(Value::as_array).ok_or_else(|| input("a chain needs a \"steps\" array"))?;
        steps.iter().map(|s| ReductionStep::from_json(s, field)).collect()
    }
}

/// The lift of `g` to `ρ = [u² : uv : v²]`: `lift(g)·ρ = ρ ∘ g`, scaled by `1/det g`.
pub fn conic_lift(g: &LineMobius) -> Matrix {
    let [a, b, c, d] = g.entries();
    let field = g.field();
    let two = field.from_i64(2);
    let m = Matrix::from_rows(
        field,
        vec![vec![a * a, &(&two * a) * b, b * b], vec![a * c, &(a * d) + &(b * c), b * d], vec![c * c, &(&two * c) * d, d * d]],
    );
    let det = &(a * d) - &(b * c);
    m.scale(&det.inv().expect("det g is nonzero"))
}

/// `h` with `φ ∝ ρ ∘ h`, for a parametrization of `Y² - XZ` of degree 2.
pub fn conic_reparametrization(phi: &Parametrization) -> Option<LineMobius> {
    if phi.degree() != 2 {
        return None;
    }
    let [q0, q1, q2] = phi.components();
    if q0.is_zero() || q1.is_zero() {
        return None;
    }
    let l1 = gcd_forms(q0, q1);
    if l1.degree() != Some(1) {
        return None;
    }
    let c0 = q0.exact_div(&(&l1 * &l1)).ok()?;
    if !c0.is_constant() {
        return None;
    }
    let l2 = q1.exact_div(&l1).ok()?.scale(&c0.constant_term().inv().ok()?);
    if &(&l2 * &l2).scale(&c0.constant_term()) != q2 {
        return None;
    }
    LineMobius::new(l1.coeff(&[1, 0]), l1.coeff(&[0, 1]), l2.coeff(&[1, 0]), l2.coeff(&[0, 1])).ok()
}

/// The automorphism of `Y² - XZ` restricting to `φ ∘ g ∘ φ⁻¹` on the conic.
pub fn transported_conic_automorphism(phi: &Parametrization, g: &LineMobius) -> Result<Matrix> {
    let h =
        conic_reparametrization(phi).ok_or_else(|| degenerate("the parametrization does not factor through [u² : uv : v²]"))?;
    Ok(conic_lift(&h.compose(g).compose(&h.inverse())))
}

/// `chain⁻¹ ∘ A ∘ chain`, for `A` preserving the end curve.
pub fn conjugate_extension(chain: &ReductionChain, a: &Matrix) -> Result<PlaneRationalMap> {
    let am = PlaneRationalMap::linear(a)?;
    let f = chain.end().implicit()?;
    if !am.pull_back(f).proportional(f) {
        return Err(input("the matrix does not preserve the end curve of the chain"));
    }
    chain.inverse_map()?.compose(&am.compose(&chain.map()?)?)
}

/// A Cremona extension of the deck transformation `g` of `chain.start`,
/// through a chain ending at `Y² - XZ` with a transported parametrization.
pub fn cremona_extension(chain: &ReductionChain, g: &LineMobius) -> Result<(Matrix, PlaneRationalMap)> {
    let end = chain.end();
    if !end.implicit()?.proportional(&standard_conic(end.field())) {
        return Err(degenerate("the chain does not end at the conic Y² - XZ"));
    }
    let phi = end.param().ok_or_else(|| degenerate("the end of the chain carries no parametrization"))?;
    let a = transported_conic_automorphism(phi, g)?;
    let j = conjugate_extension(chain, &a)?;
    Ok((a, j))
}

/// `Y² - XZ` as a form.
pub fn standard_conic(field: &Field) -> MultiPoly {
    parse_poly("Y^2 - X*Z", field, &xyz()).expect("valid form")
}
