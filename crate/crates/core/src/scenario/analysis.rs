//! Runs every stage on a scenario and collects oracle cross-checks.

use std::time::Instant;

use serde::Serialize;

use super::Scenario;
use crate::context::SolveContext;
use crate::cremona::{kodaira_pairing, line_equivalence_decision, LineEquivalence, PairingReport, ReductionChain, ReductionStep};
use crate::curve::{multiplicity_implicit, multiplicity_param, PlaneCurve, ProjPoint};
use crate::error::{input, Result};
use crate::galois::{
    deck_group_from_candidates, deck_group_search, discriminant, extension_verdict, galois_test_low_degree, projection_forms,
    projection_model, ElementExtension, ExtensionClass, GaloisCertificate, GaloisMethod, GaloisVerdict, ProjectionModel,
};
use crate::maps::LineMobius;
use crate::poly::MultiPoly;

/// Wall-clock time per stage, in order of execution.
#[derive(Debug, Clone, Default)]
pub struct Timings(pub Vec<(String, f64)>);

impl Timings {
    pub fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.push((label.to_string(), start.elapsed().as_secs_f64()));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub scenario: String,
    pub curve: PlaneCurve,
    pub implicit: MultiPoly,
    pub center: ProjPoint,
    pub model: ProjectionModel,
    pub certificate: GaloisCertificate,
    /// Discriminant of the fiber polynomial, for projections of degree 3.
    pub discriminant: Option<MultiPoly>,
    pub extensions: Vec<ElementExtension>,
    /// Names of the group elements, aligned with the certificate's group.
    pub names: Vec<String>,
    pub chain: Option<ReductionChain>,
    pub pairing: PairingReport,
    pub line_equivalence: Option<LineEquivalence>,
    pub checks: Vec<Check>,
}

impl Analysis {
    /// 0 when every check holds and every verdict is decided, 1 on a failed
    /// check, 3 when something is undetermined.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| !c.passed) {
            1
        } else if self.certificate.verdict == GaloisVerdict::Undetermined
            || self.extensions.iter().any(|e| e.class == ExtensionClass::Undetermined)
        {
            3
        } else {
            0
        }
    }

    pub fn extendable_elements(&self) -> Vec<String> {
        self.extensions.iter().filter(|e| e.extends_to_plane()).map(|e| self.name_of(e.element)).collect()
    }

    pub fn name_of(&self, element: usize) -> String {
        self.names.get(element).cloned().unwrap_or_else(|| format!("h{element}"))
    }
}

/// `identity`, then powers `g`, `g^2`, … of the first generator, and `h<k>` for the rest.
pub fn element_names(group: &[LineMobius], generators: &[LineMobius]) -> Vec<String> {
    group
        .iter()
        .enumerate()
        .map(|(k, h)| {
            if h.is_identity() {
                return "identity".to_string();
            }
            if let Some(g) = generators.first() {
                for j in 1..=group.len() as u32 {
                    if &g.pow(j) == h {
                        return if j == 1 { "g".into() } else { format!("g^{j}") };
                    }
                }
            }
            format!("h{k}")
        })
        .collect()
}

fn undetermined(degree: u32, detail: &str) -> GaloisCertificate {
    GaloisCertificate {
        degree,
        verdict: GaloisVerdict::Undetermined,
        method: GaloisMethod::DeckGroup,
        generators: vec![],
        group: vec![],
        detail: detail.into(),
    }
}

fn galois_certificate(
    s: &Scenario,
    model: &ProjectionModel,
    ctx: &SolveContext,
    checks: &mut Vec<Check>,
) -> Result<GaloisCertificate> {
    let p = &model.center;
    let n = model.ext_degree;
    let low = if n <= 3 && model.curve.irreducible_trusted() { galois_test_low_degree(model, ctx).ok() } else { None };
    let Some(phi) = s.curve.param() else {
        return Ok(low.unwrap_or_else(|| undetermined(n, "deck transformations need a parametrization beyond degree 3")));
    };
    let psi = projection_forms(phi, p)?;
    let deg_psi = psi[0].degree().unwrap_or(0);
    checks.push(check("projection degree", deg_psi == n, format!("deg ψ = {deg_psi}, d - m_P = {n}")));
    let mut cert = deck_group_from_candidates(phi, p, &s.generators)?;
    if cert.verdict != GaloisVerdict::Galois {
        ctx.cancel.check()?;
        cert = deck_group_search(phi, p, ctx)?;
    }
    if let Some(low) = low {
        let decided = |v: GaloisVerdict| v != GaloisVerdict::Undetermined;
        if decided(low.verdict) && decided(cert.verdict) {
            checks.push(check(
                "galois verdict oracles",
                low.verdict == cert.verdict,
                format!("{:?} by {:?}, {:?} by the deck group", low.verdict, low.method, cert.verdict),
            ));
        } else if decided(low.verdict) {
            cert = GaloisCertificate { generators: cert.generators, group: cert.group, ..low };
        }
    }
    Ok(cert)
}

fn chain_checks(s: &Scenario, ctx: &SolveContext, checks: &mut Vec<Check>) -> Result<Option<ReductionChain>> {
    let Some(steps) = &s.chain else { return Ok(None) };
    let mut chain = ReductionChain::new(s.curve.clone());
    for (k, step) in steps.iter().enumerate() {
        ctx.cancel.check()?;
        if let ReductionStep::StdQuadraticAt(points) = step {
            if let (Ok(f), Some(phi)) = (chain.end().implicit(), chain.end().param()) {
                for q in points {
                    let (a, b) = (multiplicity_implicit(f, q), multiplicity_param(phi, q, ctx.trials, ctx.seed));
                    checks.push(check(
                        format!("multiplicity at {q} (step {k})"),
                        a == b,
                        format!("implicit {a}, parametric {b}"),
                    ));
                }
            }
        }
        chain.push(step.clone())?;
        let r = chain.records()[k];
        if let Some(m) = r.multiplicities {
            let expected = 2 * r.degree_before - m.iter().sum::<u32>();
            checks.push(check(
                format!("degree formula (step {k})"),
                r.degree_after == expected,
                format!("2·{} - {} - {} - {} = {expected}, image degree {}", r.degree_before, m[0], m[1], m[2], r.degree_after),
            ));
        }
    }
    checks.push(check("chain replay", chain.replay()?, format!("end curve {}", chain.end().implicit()?)));
    Ok(Some(chain))
}

fn expectation_checks(s: &Scenario, a: &Analysis, checks: &mut Vec<Check>) {
    let Some(e) = &s.expected else { return };
    if let Some(d) = e.degree {
        checks.push(check("expected degree", a.model.ext_degree == d, format!("expected {d}, got {}", a.model.ext_degree)));
    }
    if let Some(g) = e.galois {
        checks.push(check(
            "expected galois",
            a.certificate.verdict == g,
            format!("expected {g:?}, got {:?}", a.certificate.verdict),
        ));
    }
    for (name, class) in &e.extensions {
        let got = a.extensions.iter().find(|x| &a.name_of(x.element) == name).map(|x| x.class);
        checks.push(check(
            format!("expected extension of {name}"),
            got == Some(*class),
            format!("expected {class:?}, got {}", got.map_or("nothing".into(), |c| format!("{c:?}"))),
        ));
    }
    if let Some(list) = &e.extendable_elements {
        let got = a.extendable_elements();
        checks.push(check("expected extendable elements", &got == list, format!("expected {list:?}, got {got:?}")));
    }
}

/// Outcome of replaying a scenario's reduction chain.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub chain: Option<ReductionChain>,
    pub pairing: PairingReport,
    pub line_equivalence: Option<LineEquivalence>,
    pub checks: Vec<Check>,
}

/// Replays the reduction chain with its oracle checks, and evaluates the
/// pairing and the line-equivalence decision.
pub fn reduce(s: &Scenario, ctx: &SolveContext, timings: &mut Timings) -> Result<Reduction> {
    let d = s.curve.degree()?;
    let mut checks = Vec::new();
    let chain = timings.time("reduction chain", || chain_checks(s, ctx, &mut checks))?;
    let mults: Vec<u32> =
        chain.as_ref().and_then(|c| c.records().iter().find_map(|r| r.multiplicities)).map(|m| m.to_vec()).unwrap_or_default();
    let pairing = kodaira_pairing(d, &mults);
    let line_equivalence = line_equivalence_decision(&s.curve).ok();
    checks.push(check(
        "pairing",
        pairing.pairing == i64::from(d) - 6 && pairing.line_equivalence_guaranteed == (d < 6),
        format!("π*(L)·(2K + C̃) = {} for d = {d}", pairing.pairing),
    ));
    if let Some(le) = line_equivalence {
        checks.push(check(
            "line equivalence",
            (le == LineEquivalence::EquivalentToLine) == pairing.line_equivalence_guaranteed,
            format!("{le:?}"),
        ));
    }
    Ok(Reduction { chain, pairing, line_equivalence, checks })
}

/// Runs the projection, Galois, extension and reduction stages on a scenario.
pub fn analyze(s: &Scenario, ctx: &SolveContext, timings: &mut Timings) -> Result<Analysis> {
    let p = s.point.clone().ok_or_else(|| input("the scenario has no center point"))?;
    let implicit = timings.time("implicit equation", || s.curve.implicit().cloned())?;
    let mut checks = Vec::new();
    let model = timings.time("projection model", || projection_model(&s.curve, &p))?;
    if let Some(phi) = s.curve.param() {
        let b = multiplicity_param(phi, &p, ctx.trials, ctx.seed);
        let a = model.center_multiplicity;
        checks.push(check(format!("multiplicity at {p}"), a == b, format!("implicit {a}, parametric {b}")));
    }
    ctx.cancel.check()?;
    let certificate = timings.time("galois certificate", || galois_certificate(s, &model, ctx, &mut checks))?;
    let disc = if model.ext_degree == 3 { discriminant(&model.fiber_poly, 0).ok() } else { None };
    let reduction = reduce(s, ctx, timings)?;
    let chain = reduction.chain;
    let extensions = if certificate.verdict == GaloisVerdict::Galois {
        timings.time("extensions", || extension_verdict(&s.curve, &p, &certificate.group, chain.as_ref(), ctx))?
    } else {
        vec![]
    };
    let names = if s.curve.param().is_some() {
        element_names(&certificate.group, &certificate.generators)
    } else {
        (0..extensions.len()).map(|k| if k == 0 { "identity".into() } else { format!("h{k}") }).collect()
    };
    checks.extend(reduction.checks);
    let mut analysis = Analysis {
        scenario: s.name.clone(),
        curve: s.curve.clone(),
        implicit,
        center: p,
        model,
        certificate,
        discriminant: disc,
        extensions,
        names,
        chain,
        pairing: reduction.pairing,
        line_equivalence: reduction.line_equivalence,
        checks,
    };
    let mut extra = Vec::new();
    expectation_checks(s, &analysis, &mut extra);
    analysis.checks.extend(extra);
    Ok(analysis)
}
