#![allow(dead_code)]

use cremona_core::curve::{Parametrization, PlaneCurve, ProjPoint};
use cremona_core::field::{Field, FieldDescriptor, FieldElement};
use cremona_core::linalg::Matrix;
use cremona_core::maps::LineMobius;
use cremona_core::poly::{parse_field_element, parse_poly, uv, xyz, MultiPoly};
use cremona_core::scenario::Scenario;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cyc(n: u32) -> Field {
    Field::new(FieldDescriptor::Cyclotomic { n }).unwrap()
}

pub fn fp(p: u64) -> Field {
    Field::new(FieldDescriptor::Prime { p }).unwrap()
}

pub fn fields() -> Vec<Field> {
    vec![Field::rational(), cyc(3), cyc(5), cyc(8), fp(3), fp(101)]
}

pub fn plane(text: &str, f: &Field) -> MultiPoly {
    parse_poly(text, f, &xyz()).unwrap()
}

pub fn binary(text: &str, f: &Field) -> MultiPoly {
    parse_poly(text, f, &uv()).unwrap()
}

pub fn param(texts: [&str; 3], f: &Field) -> Parametrization {
    Parametrization::new(texts.map(|t| binary(t, f))).unwrap()
}

pub fn elem(text: &str, f: &Field) -> FieldElement {
    parse_field_element(text, f).unwrap()
}

pub fn matrix(f: &Field, rows: [[&str; 3]; 3]) -> Matrix {
    Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|e| elem(e, f)).collect()).collect())
}

/// Small random element, with a denominator outside characteristic p.
pub fn random_element(f: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    let a = f.random_small(rng, 9);
    let d = f.random_nonzero_int(rng, 5);
    &a * &d.inv().unwrap()
}

/// Random form of degree `d` in `X, Y, Z` (or `u, v` when `binary`).
pub fn random_form(f: &Field, rng: &mut ChaCha8Rng, d: u32, binary: bool, density: f64) -> MultiPoly {
    let vars = if binary { uv() } else { xyz() };
    let n = vars.len();
    let mut terms: Vec<(Vec<u32>, FieldElement)> = Vec::new();
    for e in cremona_core::poly::exponents_of_degree(n, d) {
        if rng.gen_bool(density) {
            terms.push((e, f.random_small(rng, 4)));
        }
    }
    MultiPoly::from_terms(f, &vars, terms)
}

pub fn random_mobius(f: &Field, rng: &mut ChaCha8Rng) -> LineMobius {
    loop {
        let e: [FieldElement; 4] = std::array::from_fn(|_| f.random_small(rng, 4));
        let [a, b, c, d] = e;
        if let Ok(g) = LineMobius::new(a, b, c, d) {
            return g;
        }
    }
}

pub struct Example {
    pub name: &'static str,
    pub curve: PlaneCurve,
    pub point: ProjPoint,
    pub generators: Vec<LineMobius>,
    /// Singular points with their multiplicities; complete for the cubics and the quartic.
    pub singular: Vec<(ProjPoint, u32)>,
}

pub fn examples() -> Vec<Example> {
    let load = |name: &'static str| Scenario::load(name).unwrap();
    let mut out = Vec::new();
    for name in ["cubic-omega", "cubic-char3", "quartic-i", "quintic-zeta5"] {
        let s = load(name);
        let f = &s.field;
        let singular = match name {
            "cubic-omega" => vec![(ProjPoint::from_i64(f, [-1, 1, 1]).unwrap(), 2)],
            "cubic-char3" => vec![(ProjPoint::from_i64(f, [1, 0, -1]).unwrap(), 2)],
            // i√2 = z + z³ in Q(ζ8)
            "quartic-i" => vec![
                (ProjPoint::from_i64(f, [0, 1, 1]).unwrap(), 2),
                (ProjPoint::parse(f, &["z+z^3", "-1", "1"]).unwrap(), 2),
                (ProjPoint::parse(f, &["z+z^3", "1", "-1"]).unwrap(), 2),
            ],
            // the remaining singular points are not defined over Q(ζ5)
            _ => vec![(ProjPoint::from_i64(f, [1, 0, 0]).unwrap(), 2), (ProjPoint::from_i64(f, [-1, 1, 0]).unwrap(), 2)],
        };
        out.push(Example { name, curve: s.curve, point: s.point.unwrap(), generators: s.generators, singular });
    }
    out
}

/// A plane cubic `[A(u,v) : u³ : v³]` moved by a random linear map fixing
/// `[1:0:0]`; projecting from that point gives `ψ ∝ [u³ : v³]` up to a Möbius
/// change of the base, with deck group generated by `diag(ω, 1)`.
pub fn seeded_cubic(seed: u64) -> (Parametrization, ProjPoint, LineMobius) {
    let f = cyc(3);
    let mut rng = rng(seed);
    let ring = uv();
    loop {
        let a: Vec<FieldElement> = (0..4).map(|_| f.random_small(&mut rng, 3)).collect();
        if a[1].is_zero() && a[2].is_zero() {
            continue;
        }
        let terms = (0..4u32).map(|k| (vec![3 - k, k], a[k as usize].clone()));
        let cubic = MultiPoly::from_terms(&f, &ring, terms.collect::<Vec<_>>());
        let base = [cubic, binary("u^3", &f), binary("v^3", &f)];
        let e: Vec<FieldElement> = (0..6).map(|_| f.random_small(&mut rng, 3)).collect();
        let rows = vec![
            vec![f.one(), e[0].clone(), e[1].clone()],
            vec![f.zero(), e[2].clone(), e[3].clone()],
            vec![f.zero(), e[4].clone(), e[5].clone()],
        ];
        let m = Matrix::from_rows(&f, rows);
        if m.det().is_zero() {
            continue;
        }
        let comps: [MultiPoly; 3] =
            std::array::from_fn(|r| (0..3).fold(MultiPoly::zero(&f, &ring), |acc, c| &acc + &base[c].scale(m.get(r, c))));
        let Ok(phi) = Parametrization::new(comps) else { continue };
        let g = LineMobius::diag(f.generator().unwrap(), f.one()).unwrap();
        return (phi, ProjPoint::from_i64(&f, [1, 0, 0]).unwrap(), g);
    }
}

/// Reproducible property-test configuration.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x6a6f_6e71),
        ..proptest::test_runner::Config::default()
    }
}

/// `c(y)` for a polynomial `c` in `y = yn/yd`, as the numerator over `yd^deg`.
fn over_base(c: &MultiPoly, y: &cremona_core::galois::ParamFn, deg: u32) -> MultiPoly {
    let f = y.field();
    let mut acc = MultiPoly::zero(f, &uv());
    for k in 0..=deg {
        let coeff = c.coeff(&[k]);
        if !coeff.is_zero() {
            acc = &acc + &(&y.num().pow(k) * &y.den().pow(deg - k)).scale(&coeff);
        }
    }
    acc
}

/// Whether `(γx + δ)·σ(x) = αx + β` holds identically on the parameter line.
pub fn mobius_congruence(
    m: &cremona_core::maps::MobiusOverBase,
    x: &cremona_core::galois::ParamFn,
    sx: &cremona_core::galois::ParamFn,
    y: &cremona_core::galois::ParamFn,
) -> bool {
    let deg = m.coefficients().iter().filter_map(MultiPoly::degree).max().unwrap_or(0);
    let [a, b, c, d] = m.coefficients().clone().map(|p| over_base(&p, y, deg));
    let (xn, xd, sn, sd) = (x.num(), x.den(), sx.num(), sx.den());
    let lhs = &(&(&c * xn) * sn) + &(&(&d * xd) * sn);
    let rhs = &(&(&a * xn) * sd) + &(&(&b * xd) * sd);
    (&lhs - &rhs).is_zero()
}
