//! Which deck transformations extend to plane maps, and of which kind.

use serde::{Deserialize, Serialize};

use super::deck::{express_sigma_on_x, fiber_coordinates};
use super::extension::{check_extension, jonquieres_builder, linear_extension_solver, LinearOutcome};
use super::mobius::{mobius_solver, MobiusOutcome};
use super::model::{projection_model, ProjectionModel};
use crate::context::SolveContext;
use crate::cremona::{cremona_extension, ReductionChain};
use crate::curve::{has_point_of_multiplicity_ge, PlaneCurve, PointSearch, ProjPoint};
use crate::error::{degenerate, input, Result};
use crate::linalg::Matrix;
use crate::maps::{LineMobius, MobiusOverBase, PlaneRationalMap};
use crate::poly::{vars, MultiPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionClass {
    /// A de Jonquières map fixing the pencil through `P`.
    Jonquieres,
    /// A plane Cremona map, but no de Jonquières map was found.
    CremonaOnly,
    /// A linear automorphism of the plane.
    Linear,
    NoneFound,
    Undetermined,
}

#[derive(Debug, Clone)]
pub enum ExtensionWitness {
    Jonquieres { mobius: MobiusOverBase, map: PlaneRationalMap },
    Cremona { end_matrix: Matrix, map: PlaneRationalMap, jonquieres_refutation: String },
    Linear { matrix: Matrix, jonquieres_refutation: String },
    Refuted { jonquieres_refutation: String, linear_refutation: String, plane_refutation: Option<String> },
    Undetermined { reason: String },
}

#[derive(Debug, Clone)]
pub struct ElementExtension {
    /// Position in the deck group, identity first.
    pub element: usize,
    /// The deck transformation on the parameter line, when a parametrization is known.
    pub deck: Option<LineMobius>,
    pub class: ExtensionClass,
    /// For `none_found`: no birational extension exists at all.
    pub proven: bool,
    pub witness: ExtensionWitness,
}

impl ElementExtension {
    pub fn extends_to_jonquieres(&self) -> bool {
        self.class == ExtensionClass::Jonquieres
    }

    /// Some extension to a plane birational map was exhibited.
    pub fn extends_to_plane(&self) -> bool {
        matches!(self.class, ExtensionClass::Jonquieres | ExtensionClass::CremonaOnly | ExtensionClass::Linear)
    }
}

/// Whether every point of the curve has multiplicity below `d/3`; then every
/// birational self-map of the plane preserving the curve is linear.
pub fn only_linear_symmetries(curve: &PlaneCurve, ctx: &SolveContext) -> Result<Option<String>> {
    let d = curve.degree()?;
    let threshold = d.div_ceil(3);
    match has_point_of_multiplicity_ge(curve, threshold, ctx) {
        Ok(PointSearch::Empty(cert)) => Ok(Some(format!(
            "no point has multiplicity {threshold} or more, so all are below d/3 ({} resultants of degree {} have constant gcd), \
             so birational symmetries of the curve are linear",
            cert.resultants_used, cert.resultant_degree
        ))),
        Ok(_) => Ok(None),
        Err(crate::error::Error::Cancelled) => Err(crate::error::Error::Cancelled),
        Err(_) => Ok(None),
    }
}

/// The nontrivial automorphism `x ↦ -x - c1/c2` of a quadratic fiber
/// `c2·x² + c1·x + c0`, as a Möbius transformation over `k(y)`.
pub fn quadratic_involution(model: &ProjectionModel) -> Result<MobiusOverBase> {
    if model.ext_degree != 2 {
        return Err(input("the involution exists for projections of degree 2"));
    }
    let ring = vars(&["y"]);
    let c: Vec<MultiPoly> = model.x_coefficients().iter().map(|p| MultiPoly::from_uni(p, &ring, 0)).collect();
    let minus = model.curve.field().from_i64(-1);
    MobiusOverBase::new(c[2].scale(&minus), c[1].scale(&minus), MultiPoly::zero(model.curve.field(), &ring), c[2].clone())
}

fn jonquieres_witness(
    mob: MobiusOverBase,
    f: &MultiPoly,
    p: &ProjPoint,
    deck: Option<(&crate::curve::Parametrization, &LineMobius)>,
) -> Result<ElementExtension> {
    let map = jonquieres_builder(&mob, p)?;
    let check = check_extension(&map, f, p, deck);
    if !(check.passed() && check.fixes_pencil) {
        return Err(degenerate(format!("the de Jonquières map {map} fails its own verification: {check:?}")));
    }
    Ok(ElementExtension {
        element: 0,
        deck: deck.map(|(_, g)| g.clone()),
        class: ExtensionClass::Jonquieres,
        proven: true,
        witness: ExtensionWitness::Jonquieres { mobius: mob, map },
    })
}

/// Classifies every element of the deck group: `jonquieres` when a Möbius
/// action over the base exists, else `cremona_only` when the reduction chain
/// transports it to a conic automorphism, else `linear` when a matrix extends
/// it, else `none_found`. A `none_found` is proven when all points of the
/// curve have multiplicity below `d/3`, and `undetermined` when the Möbius
/// refutation is only bound-limited and no such proof is available.
pub fn extension_verdict(
    curve: &PlaneCurve,
    p: &ProjPoint,
    group: &[LineMobius],
    chain: Option<&ReductionChain>,
    ctx: &SolveContext,
) -> Result<Vec<ElementExtension>> {
    let model = projection_model(curve, p)?;
    let f = curve.implicit()?;
    let Some(phi) = curve.param() else {
        return implicit_only(&model, ctx);
    };
    let (_, y) = fiber_coordinates(phi, p)?;
    let bound = ctx.degree_bound.unwrap_or_else(|| model.default_degree_bound());
    let mut plane_proof: Option<Option<String>> = None;
    let mut out = Vec::with_capacity(group.len());
    for (k, g) in group.iter().enumerate() {
        ctx.cancel.check()?;
        let (x, sx) = express_sigma_on_x(phi, p, g)?;
        let jonq_refutation = match mobius_solver(&x, &sx, &y, bound, Some(group)) {
            MobiusOutcome::Found(m) => {
                let mut e = jonquieres_witness(m, f, p, Some((phi, g)))?;
                e.element = k;
                out.push(e);
                continue;
            }
            MobiusOutcome::NoneUpTo(b) => (format!("no Möbius action over k(y) with coefficients of degree ≤ {b}"), false),
            MobiusOutcome::NoneProven(why) => (format!("no Möbius action over k(y): {why}"), true),
        };
        let entry = |class, proven, witness| ElementExtension { element: k, deck: Some(g.clone()), class, proven, witness };
        if let Some(chain) = chain {
            if let Ok((a, j)) = cremona_extension(chain, g) {
                let check = check_extension(&j, f, p, Some((phi, g)));
                if check.passed() && check.restricts_to_deck == Some(true) {
                    out.push(entry(
                        ExtensionClass::CremonaOnly,
                        jonq_refutation.1,
                        ExtensionWitness::Cremona { end_matrix: a, map: j, jonquieres_refutation: jonq_refutation.0 },
                    ));
                    continue;
                }
            }
        }
        let linear_refutation = match linear_extension_solver(phi, g) {
            LinearOutcome::Found(a) => {
                let map = PlaneRationalMap::linear(&a)?;
                let check = check_extension(&map, f, p, Some((phi, g)));
                if !check.passed() {
                    return Err(degenerate(format!("the linear extension {map} fails its own verification")));
                }
                out.push(entry(
                    ExtensionClass::Linear,
                    jonq_refutation.1,
                    ExtensionWitness::Linear { matrix: a, jonquieres_refutation: jonq_refutation.0 },
                ));
                continue;
            }
            LinearOutcome::None(why) => why,
        };
        if plane_proof.is_none() {
            plane_proof = Some(only_linear_symmetries(curve, ctx)?);
        }
        let proof = plane_proof.clone().flatten();
        let (class, proven) = match (&proof, jonq_refutation.1) {
            (Some(_), _) => (ExtensionClass::NoneFound, true),
            (None, true) => (ExtensionClass::NoneFound, false),
            (None, false) => (ExtensionClass::Undetermined, false),
        };
        out.push(entry(
            class,
            proven,
            ExtensionWitness::Refuted { jonquieres_refutation: jonq_refutation.0, linear_refutation, plane_refutation: proof },
        ));
    }
    Ok(out)
}

/// Without a parametrization only the degree-2 involution is constructed.
fn implicit_only(model: &ProjectionModel, _ctx: &SolveContext) -> Result<Vec<ElementExtension>> {
    let f = model.curve.implicit()?;
    let field = model.curve.field();
    let mut identity = jonquieres_witness(MobiusOverBase::identity(field), f, &model.center, None)?;
    identity.element = 0;
    if model.ext_degree == 1 {
        return Ok(vec![identity]);
    }
    if model.ext_degree == 2 && !model.fiber_poly.derivative(0).is_zero() {
        let mut e = jonquieres_witness(quadratic_involution(model)?, f, &model.center, None)?;
        e.element = 1;
        return Ok(vec![identity, e]);
    }
    Ok(vec![
        identity,
        ElementExtension {
            element: 1,
            deck: None,
            class: ExtensionClass::Undetermined,
            proven: false,
            witness: ExtensionWitness::Undetermined {
                reason: "deck transformations are only constructed from a parametrization beyond degree 2".into(),
            },
        },
    ])
}
