//! Worked examples and user scenario files: curve, center, candidate deck
//! generators, optional reduction chain and expected verdicts.

mod analysis;
mod builtin;
mod report;

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::cremona::{ReductionChain, ReductionStep};
use crate::curve::{Parametrization, PlaneCurve, ProjPoint};
use crate::error::{input, Error, Result};
use crate::field::{Field, FieldDescriptor, FieldElement};
use crate::galois::{ExtensionClass, GaloisVerdict};
use crate::linalg::Matrix;
use crate::maps::{linear_pushforward, LineMobius};
use crate::poly::{parse_field_element, parse_poly, uv, xyz};

pub use analysis::{analyze, element_names, reduce, Analysis, Check, Reduction, Timings};
pub use builtin::{builtin, BUILTIN_NAMES};
pub use report::{extension_report, render_report, ExtensionReport, OutputFormat, Report, Timing};

/// Verdicts a scenario claims; every present entry is checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectations {
    pub degree: Option<u32>,
    pub galois: Option<GaloisVerdict>,
    /// Element name (`identity`, `g`, `g^2`, …) to extension class.
    pub extensions: BTreeMap<String, ExtensionClass>,
    pub extendable_elements: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub field: Field,
    pub curve: PlaneCurve,
    pub point: Option<ProjPoint>,
    pub generators: Vec<LineMobius>,
    pub chain: Option<Vec<ReductionStep>>,
    pub expected: Option<Expectations>,
}

impl Scenario {
    /// The same data after the coordinate change `w ↦ M·w`; generators act on
    /// the parameter line and are unchanged.
    pub fn conjugated(&self, m: &Matrix) -> Result<Scenario> {
        let inv = m.inverse().ok_or_else(|| input("singular matrix"))?;
        let curve = linear_pushforward(&self.curve, m)?;
        let point = self.point.as_ref().map(|p| p.apply(m)).transpose()?;
        let chain =
            self.chain.as_ref().map(|steps| std::iter::once(ReductionStep::Linear(inv)).chain(steps.iter().cloned()).collect());
        Ok(Scenario {
            name: self.name.clone(),
            field: self.field.clone(),
            curve,
            point,
            generators: self.generators.clone(),
            chain,
            expected: self.expected.clone(),
        })
    }

    pub fn reduction_chain(&self) -> Result<Option<ReductionChain>> {
        self.chain.as_ref().map(|steps| ReductionChain::build(self.curve.clone(), steps.clone())).transpose()
    }

    /// Loads a built-in by name, or a scenario file.
    pub fn load(name_or_path: &str) -> Result<Scenario> {
        if let Some(s) = builtin(name_or_path) {
            return Ok(s);
        }
        let path = std::path::Path::new(name_or_path);
        if !path.exists() {
            return Err(input(format!(
                "no built-in scenario or file named {name_or_path:?} (built-ins: {})",
                BUILTIN_NAMES.join(", ")
            )));
        }
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("{name_or_path}: {e}")))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Input(msg) => input(format!("{name_or_path}: {msg}")),
            other => input(format!("{name_or_path}: {other}")),
        })
    }

    pub fn from_json(text: &str) -> Result<Scenario> {
        let raw: RawScenario = serde_json::from_str(text).map_err(|e| input(format!("malformed scenario: {e}")))?;
        raw.validate()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    field: FieldDescriptor,
    curve: RawCurve,
    point: Option<Vec<Value>>,
    #[serde(default)]
    generators: Vec<Vec<Vec<Value>>>,
    chain: Option<Value>,
    expected: Option<RawExpected>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    implicit: Option<String>,
    param: Option<Vec<String>>,
    /// Whether the implicit equation is known to be irreducible.
    #[serde(default = "yes")]
    irreducible: bool,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpected {
    degree: Option<u32>,
    galois: Option<Value>,
    #[serde(default)]
    extensions: BTreeMap<String, ExtensionClass>,
    extendable_elements: Option<Vec<String>>,
}

fn at<T>(loc: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| input(format!("{loc}: {e}")))
}

fn element(v: &Value, field: &Field, loc: &str) -> Result<FieldElement> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(input(format!("{loc}: expected a string or an integer"))),
    };
    at(loc, parse_field_element(&text, field).map_err(Error::from))
}

/// Parses `true`, `false` or `"undetermined"`.
pub fn parse_galois_value(v: &Value) -> Result<GaloisVerdict> {
    match v {
        Value::Bool(true) => Ok(GaloisVerdict::Galois),
        Value::Bool(false) => Ok(GaloisVerdict::NotGalois),
        Value::String(s) if s == "undetermined" => Ok(GaloisVerdict::Undetermined),
        _ => Err(input("expected true, false or \"undetermined\"")),
    }
}

impl RawScenario {
    fn validate(self) -> Result<Scenario> {
        let field = at("field", Field::new(self.field).map_err(Error::from))?;
        let param = match &self.curve.param {
            Some(p) if p.len() == 3 => {
                let comps = p
                    .iter()
                    .enumerate()
                    .map(|(i, t)| at(&format!("curve.param[{i}]"), parse_poly(t, &field, &uv()).map_err(Error::from)))
                    .collect::<Result<Vec<_>>>()?;
                Some(at("curve.param", Parametrization::new(comps.try_into().expect("three components")))?)
            }
            Some(p) => return Err(input(format!("curve.param: expected 3 components, got {}", p.len()))),
            None => None,
        };
        let implicit = self
            .curve
            .implicit
            .as_ref()
            .map(|t| at("curve.implicit", parse_poly(t, &field, &xyz()).map_err(Error::from)))
            .transpose()?;
        let curve = match (implicit, param) {
            (Some(f), Some(p)) => at("curve", PlaneCurve::from_both(&f, p))?,
            (Some(f), None) => at("curve.implicit", PlaneCurve::from_implicit(&f, self.curve.irreducible))?,
            (None, Some(p)) => PlaneCurve::from_parametrization(p),
            (None, None) => return Err(input("curve: needs \"implicit\" or \"param\"")),
        };
        let point = match &self.point {
            Some(v) => {
                let coords =
                    v.iter().enumerate().map(|(i, e)| element(e, &field, &format!("point[{i}]"))).collect::<Result<Vec<_>>>()?;
                Some(at("point", ProjPoint::from_vec(&coords))?)
            }
            None => None,
        };
        let mut generators = Vec::new();
        for (k, g) in self.generators.iter().enumerate() {
            let loc = format!("generators[{k}]");
            if g.len() != 2 || g.iter().any(|r| r.len() != 2) {
                return Err(input(format!("{loc}: expected a 2×2 matrix [[a, b], [c, d]]")));
            }
            let e: Vec<FieldElement> = g
                .iter()
                .flatten()
                .enumerate()
                .map(|(i, v)| element(v, &field, &format!("{loc}[{}][{}]", i / 2, i % 2)))
                .collect::<Result<_>>()?;
            let [a, b, c, d]: [FieldElement; 4] = e.try_into().expect("four entries");
            generators.push(at(&loc, LineMobius::new(a, b, c, d))?);
        }
        if !generators.is_empty() && curve.param().is_none() {
            return Err(input("generators: deck generators act on the parameter line and need \"curve.param\""));
        }
        let chain = self.chain.as_ref().map(|c| at("chain", ReductionChain::steps_from_json(c, &field))).transpose()?;
        let expected = match self.expected {
            Some(e) => Some(Expectations {
                degree: e.degree,
                galois: e.galois.as_ref().map(|v| at("expected.galois", parse_galois_value(v))).transpose()?,
                extensions: e.extensions,
                extendable_elements: e.extendable_elements,
            }),
            None => None,
        };
        Ok(Scenario { name: self.name.unwrap_or_else(|| "scenario".into()), field, curve, point, generators, chain, expected })
    }
}

#[cfg(test)]
mod tests;
