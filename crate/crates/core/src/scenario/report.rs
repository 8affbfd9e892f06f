//! Machine-readable and human-readable reports.

use serde::Serialize;
use serde_json::{json, Value};

use super::analysis::{Analysis, Check, Reduction, Timings};
use super::Scenario;
use crate::context::SolveContext;
use crate::cremona::{LineEquivalence, PairingReport, ReductionChain, StepRecord};
use crate::curve::{multiplicity_implicit, multiplicity_param};
use crate::error::Result;
use crate::galois::{ElementExtension, ExtensionClass, ExtensionWitness, GaloisMethod, GaloisVerdict};
use crate::linalg::Matrix;
use crate::maps::LineMobius;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub element: usize,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deck: Option<Vec<Vec<String>>>,
    pub verdict: ExtensionClass,
    pub jonquieres: bool,
    pub cremona: bool,
    pub proven: bool,
    pub witness: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub steps: Value,
    pub records: Vec<StepRecord>,
    pub end: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub end_parametrization: Option<[String; 3]>,
}

/// Fields appear in declaration order; absent sections are omitted.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub galois: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<GaloisMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extensions: Option<Vec<ExtensionReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extendable_elements: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_equivalence: Option<LineEquivalence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exit_code: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

fn galois_value(v: GaloisVerdict) -> Value {
    match v {
        GaloisVerdict::Galois => json!(true),
        GaloisVerdict::NotGalois => json!(false),
        GaloisVerdict::Undetermined => json!("undetermined"),
    }
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn mobius_strings(g: &LineMobius) -> Vec<Vec<String>> {
    let e: Vec<String> = g.entries().iter().map(ToString::to_string).collect();
    vec![e[..2].to_vec(), e[2..].to_vec()]
}

fn witness_json(w: &ExtensionWitness) -> Value {
    match w {
        ExtensionWitness::Jonquieres { mobius, map } => json!({ "mobius": mobius.to_string(), "map": map.to_string() }),
        ExtensionWitness::Cremona { end_matrix, map, jonquieres_refutation } => json!({
            "conic_automorphism": matrix_strings(end_matrix),
            "map": map.to_string(),
            "map_degree": map.degree(),
            "jonquieres_refutation": jonquieres_refutation,
        }),
        ExtensionWitness::Linear { matrix, jonquieres_refutation } => {
            json!({ "matrix": matrix_strings(matrix), "jonquieres_refutation": jonquieres_refutation })
        }
        ExtensionWitness::Refuted { jonquieres_refutation, linear_refutation, plane_refutation } => json!({
            "jonquieres_refutation": jonquieres_refutation,
            "linear_refutation": linear_refutation,
            "plane_refutation": plane_refutation,
        }),
        ExtensionWitness::Undetermined { reason } => json!({ "reason": reason }),
    }
}

pub fn extension_report(a: &Analysis, e: &ElementExtension) -> ExtensionReport {
    ExtensionReport {
        element: e.element,
        name: a.name_of(e.element),
        deck: e.deck.as_ref().map(mobius_strings),
        verdict: e.class,
        jonquieres: e.extends_to_jonquieres(),
        cremona: e.extends_to_plane(),
        proven: e.proven,
        witness: witness_json(&e.witness),
    }
}

impl Report {
    pub fn from_analysis(a: &Analysis, seed: u64, timings: Option<&Timings>) -> Report {
        let curve = json!({
            "degree": a.implicit.degree(),
            "implicit": a.implicit.to_string(),
            "parametrization": a.curve.param().map(|p| p.components().iter().map(ToString::to_string).collect::<Vec<_>>()),
            "center": a.center.to_string(),
            "center_multiplicity": a.model.center_multiplicity,
            "fiber_polynomial": a.model.fiber_poly.to_string(),
        });
        let cert = &a.certificate;
        Report {
            scenario: Some(a.scenario.clone()),
            field: Some(a.curve.field().descriptor().to_string()),
            seed: Some(seed),
            curve: Some(curve),
            galois: Some(galois_value(cert.verdict)),
            degree: Some(cert.degree),
            method: Some(cert.method),
            generators: Some(cert.generators.iter().map(mobius_strings).collect()),
            group_order: Some(cert.group.len()),
            detail: Some(cert.detail.clone()),
            discriminant: a.discriminant.as_ref().map(ToString::to_string),
            extensions: Some(a.extensions.iter().map(|e| extension_report(a, e)).collect()),
            extendable_elements: Some(a.extendable_elements()),
            pairing: Some(a.pairing.clone()),
            line_equivalence: a.line_equivalence,
            chain: a.chain.as_ref().map(chain_report),
            checks: Some(a.checks.clone()),
            exit_code: Some(a.exit_code()),
            timings: timings.map(timing_list),
        }
    }

    /// Degree, equations and, when a center is given, its multiplicity by both methods.
    pub fn curve_summary(s: &Scenario, ctx: &SolveContext) -> Result<Report> {
        let f = s.curve.implicit()?;
        let mut curve = json!({
            "degree": s.curve.degree()?,
            "implicit": f.to_string(),
            "parametrization": s.curve.param().map(|p| p.components().iter().map(ToString::to_string).collect::<Vec<_>>()),
        });
        let mut checks = Vec::new();
        if let Some(p) = &s.point {
            let m = multiplicity_implicit(f, p);
            curve["center"] = json!(p.to_string());
            curve["center_multiplicity"] = json!(m);
            if let Some(phi) = s.curve.param() {
                let b = multiplicity_param(phi, p, ctx.trials, ctx.seed);
                checks.push(Check {
                    name: format!("multiplicity at {p}"),
                    passed: m == b,
                    detail: format!("implicit {m}, parametric {b}"),
                });
            }
        }
        let failed = checks.iter().any(|c| !c.passed);
        Ok(Report {
            scenario: Some(s.name.clone()),
            field: Some(s.field.descriptor().to_string()),
            seed: Some(ctx.seed),
            curve: Some(curve),
            checks: Some(checks),
            exit_code: Some(i32::from(failed)),
            ..Report::default()
        })
    }

    pub fn from_reduction(s: &Scenario, r: &Reduction, seed: u64, timings: Option<&Timings>) -> Report {
        let failed = r.checks.iter().any(|c| !c.passed);
        Report {
            scenario: Some(s.name.clone()),
            field: Some(s.field.descriptor().to_string()),
            seed: Some(seed),
            pairing: Some(r.pairing.clone()),
            line_equivalence: r.line_equivalence,
            chain: r.chain.as_ref().map(chain_report),
            checks: Some(r.checks.clone()),
            exit_code: Some(i32::from(failed)),
            timings: timings.map(timing_list),
            ..Report::default()
        }
    }
}

fn chain_report(c: &ReductionChain) -> ChainReport {
    ChainReport {
        steps: c.to_json()["steps"].clone(),
        records: c.records().to_vec(),
        end: c.end().implicit().map(ToString::to_string).unwrap_or_default(),
        end_parametrization: c.end().param().map(|p| p.components().clone().map(|x| x.to_string())),
    }
}

fn timing_list(t: &Timings) -> Vec<Timing> {
    t.0.iter().map(|(s, x)| Timing { stage: s.clone(), seconds: *x }).collect()
}

/// Deterministic text for a report.
pub fn render_report(r: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(r).expect("reports serialize"),
        OutputFormat::Human => render_human(r),
    }
}

fn render_human(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    if let Some(s) = &r.scenario {
        line(format!("scenario: {s}"));
    }
    if let Some(f) = &r.field {
        line(format!("field: {f}"));
    }
    if let Some(c) = &r.curve {
        for key in ["degree", "implicit", "parametrization", "center", "center_multiplicity", "fiber_polynomial"] {
            if let Some(v) = c.get(key).filter(|v| !v.is_null()) {
                line(format!("{key}: {}", plain(v)));
            }
        }
    }
    if let Some(g) = &r.galois {
        line(format!(
            "galois: {} (degree {}, {})",
            plain(g),
            r.degree.unwrap_or(0),
            r.method.map(|m| serde_json::to_value(m).map(|v| plain(&v)).unwrap_or_default()).unwrap_or_default()
        ));
    }
    if let Some(d) = &r.detail {
        line(format!("  {d}"));
    }
    if let Some(d) = &r.discriminant {
        line(format!("discriminant: {d}"));
    }
    if let Some(gens) = &r.generators {
        for g in gens {
            line(format!("generator: [[{}], [{}]]", g[0].join(", "), g[1].join(", ")));
        }
    }
    for e in r.extensions.iter().flatten() {
        let class = serde_json::to_value(e.verdict).map(|v| plain(&v)).unwrap_or_default();
        let proof = if e.verdict == ExtensionClass::NoneFound && e.proven { " (proven)" } else { "" };
        line(format!("extension of {}: {class}{proof}", e.name));
        if let Some(m) = e.witness.get("map") {
            line(format!("  map: {}", plain(m)));
        }
    }
    if let Some(x) = &r.extendable_elements {
        line(format!("extendable elements: {}", x.join(", ")));
    }
    if let Some(p) = &r.pairing {
        line(format!(
            "pairing: {} (line equivalence {})",
            p.pairing,
            if p.line_equivalence_guaranteed { "guaranteed" } else { "not decided by degree" }
        ));
    }
    if let Some(c) = &r.chain {
        for (k, rec) in c.records.iter().enumerate() {
            line(format!("step {k}: degree {} -> {}", rec.degree_before, rec.degree_after));
        }
        line(format!("chain end: {}", c.end));
    }
    for c in r.checks.iter().flatten() {
        line(format!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
    }
    for t in r.timings.iter().flatten() {
        line(format!("time {}: {:.3}s", t.stage, t.seconds));
    }
    out
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
