use super::*;
use crate::field::FieldDescriptor;

fn q() -> Field {
    Field::rational()
}

fn cyc(n: u32) -> Field {
    Field::new(FieldDescriptor::Cyclotomic { n }).unwrap()
}

fn f3() -> Field {
    Field::new(FieldDescriptor::Prime { p: 3 }).unwrap()
}

fn p(text: &str, f: &Field, v: &Vars) -> MultiPoly {
    parse_poly(text, f, v).unwrap()
}

#[test]
fn parse_and_render() {
    let f = q();
    let v = xyz();
    let quartic = p("X^4 - 4*Z*Y*X^2 - Z*Y^3 + 2*Z^2*Y^2 - Y*Z^3", &f, &v);
    assert_eq!(quartic.degree(), Some(4));
    assert!(quartic.is_homogeneous());
    assert_eq!(quartic.to_string(), "X^4 - 4*X^2*Y*Z - Y^3*Z + 2*Y^2*Z^2 - Y*Z^3");
    assert_eq!(p(&quartic.to_string(), &f, &v), quartic);

    let zero = p("0", &f, &v);
    assert!(zero.is_zero());
    assert_eq!(zero.degree(), None);

    let f5 = cyc(5);
    let comp = p("u*v^6 - u^7", &f5, &uv());
    assert_eq!(comp.degree(), Some(7));
    let mixed = p("(z^2 + 1/3)*u*v - z*u^2 + 7", &f5, &uv());
    assert_eq!(p(&mixed.to_string(), &f5, &uv()), mixed);
}

#[test]
fn parse_errors() {
    let f = q();
    let v = xyz();
    let e = parse_poly("2X", &f, &v).unwrap_err();
    assert_eq!(e.pos, 1);
    assert!(parse_poly("X*W", &f, &v).unwrap_err().msg.contains("undeclared"));
    assert!(parse_poly("z*X", &f, &v).unwrap_err().msg.contains("not in"));
    assert!(parse_poly("1/3*X", &f3(), &v).is_err());
    assert!(parse_poly("X^", &f, &v).is_err());
    assert!(parse_poly("(X+Y", &f, &v).is_err());
    assert!(parse_poly("", &f, &v).is_err());
    assert!(parse_poly("X/2", &f, &v).is_err());
}

#[test]
fn frobenius_in_char_3() {
    let f = f3();
    let v = xyz();
    let s = p("X + Y", &f, &v).pow(3);
    assert_eq!(s, p("X^3 + Y^3", &f, &v));
}

#[test]
fn exact_division_and_derivative() {
    let f = q();
    let v = xyz();
    assert_eq!(p("X^2 - Y^2", &f, &v).exact_div(&p("X - Y", &f, &v)).unwrap(), p("X + Y", &f, &v));
    assert_eq!(p("X^2 + 1", &f, &v).exact_div(&p("X - Y", &f, &v)), Err(PolyError::NotDivisible));
    assert_eq!(p("X^4 - 4*Z*Y*X^2", &f, &v).derivative(0), p("4*X^3 - 8*Z*Y*X", &f, &v));
}

#[test]
fn binary_form_gcds() {
    let f = cyc(5);
    let w = uv();
    let a = p("u^5*(u^2+v^2)", &f, &w);
    let b = p("v^5*(u^2+v^2)", &f, &w);
    assert_eq!(gcd_forms(&a, &b), p("u^2 + v^2", &f, &w));
    let g = p("3*u^2 - 6*u*v", &f, &w);
    assert_eq!(gcd_forms(&g, &MultiPoly::zero(&f, &w)), g.monic());
    assert!(gcd_forms(&p("u^6 - v^6", &f, &w), &p("u^2 + v^2", &f, &w)).is_one());
    // powers of v survive dehomogenization
    assert_eq!(gcd_forms(&p("u*v^3", &f, &w), &p("v^2*(u+v)", &f, &w)), p("v^2", &f, &w));
}

#[test]
fn multivariate_gcd() {
    let f = q();
    let v = xyz();
    let common = p("X*Y - Z^2 + 3*X*Z", &f, &v);
    let a = &common * &p("X + 2*Y", &f, &v);
    let b = &common * &p("Y*Z - X^2", &f, &v);
    assert_eq!(gcd(&a, &b), common.monic());
    let c = &p("X*Y*Z", &f, &v) * &p("X^2 + Y*Z", &f, &v);
    let d = &p("X*Y*Z", &f, &v) * &p("Y^2 + X*Z", &f, &v);
    assert_eq!(gcd(&c, &d), p("X*Y*Z", &f, &v));
}

#[test]
fn form_gcd_agrees_with_affine_remainder_sequences() {
    use rand::SeedableRng;
    let f = cyc(3);
    let v = xyz();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut form = |d: u32| {
        let terms = exponents_of_degree(3, d).into_iter().map(|e| (e, f.random_small(&mut rng, 3)));
        MultiPoly::from_terms(&f, &v, terms.collect::<Vec<_>>())
    };
    for (dc, da, db) in [(1, 2, 2), (2, 2, 3), (3, 1, 2), (0, 3, 3)] {
        let (c, a, b) = (form(dc), form(da), form(db));
        if c.is_zero() || a.is_zero() || b.is_zero() {
            continue;
        }
        let (fa, fb) = (&c * &a, &c * &b);
        let g = gcd(&fa, &fb);
        assert!(fa.exact_div(&g).is_ok() && fb.exact_div(&g).is_ok());
        assert!(g.degree().unwrap() >= c.degree().unwrap());
        let affine = gcd(&fa.dehomogenize(2), &fb.dehomogenize(2));
        assert_eq!(affine.degree(), g.degree(), "{fa} / {fb}");
        assert!(affine.proportional(&g.dehomogenize(2)));
    }
}

#[test]
fn resultants() {
    let f = q();
    let v = vars(&["x", "y", "t"]);
    let a = p("x - t - t^2", &f, &v);
    let b = p("y - t^3", &f, &v);
    let r = resultant(&a, &b, "t").unwrap();
    // oracle: the resultant vanishes on the parametrization
    let t = MultiPoly::var(&f, &v, 2);
    let on_curve = r.substitute(&[&t + &t.pow(2), t.pow(3), t.clone()]);
    assert!(on_curve.is_zero());
    assert!(r.proportional(&p("y^2 - x^3 + 3*x*y + y", &f, &v)));

    let w = vars(&["x", "s", "t"]);
    let r = resultant(&p("x - s", &f, &w), &p("x - t", &f, &w), "x").unwrap();
    assert_eq!(r, p("s - t", &f, &w));
    assert!(resultant(&a, &a, "t").unwrap().is_zero());
    assert!(resultant(&p("y", &f, &v), &a, "t").is_err());
}

#[test]
fn substitution_examples() {
    let f = q();
    let v = vars(&["x", "y", "t"]);
    let fib = p("x^4 - 4*y*x^2 - y^3 + 2*y^2 - y", &f, &v);
    let t = MultiPoly::var(&f, &v, 2);
    assert!(fib.substitute(&[&t + &t.pow(3), t.pow(4), t.clone()]).is_zero());

    let g = f3();
    let w = xyz();
    let cubic = p("X^3 - Y^2*X + Z^3", &g, &w);
    assert_eq!(cubic.substitute_named(&[("X", p("X + Y", &g, &w))]), cubic);
    let id: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&g, &w, i)).collect();
    assert_eq!(cubic.substitute(&id), cubic);
}

#[test]
fn homogenization() {
    let f = q();
    let v = xyz();
    let aff = p("X^3 - 3*X*Y - Y^2 - Y", &f, &v);
    assert_eq!(aff.homogenize(2, 3).unwrap(), p("X^3 - 3*X*Y*Z - Y^2*Z - Y*Z^2", &f, &v));
    let quartic = p("X^4 - 4*Z*Y*X^2 - Z*Y^3 + 2*Z^2*Y^2 - Y*Z^3", &f, &v);
    assert_eq!(quartic.dehomogenize(2), p("X^4 - 4*Y*X^2 - Y^3 + 2*Y^2 - Y", &f, &v));
    assert_eq!(MultiPoly::one(&f, &v).homogenize(2, 0).unwrap(), MultiPoly::one(&f, &v));
    assert!(aff.homogenize(2, 2).is_err());
}

#[test]
fn proportional_tuples() {
    let f = q();
    let w = uv();
    assert!(proportional_eq(&[p("u^5*(u^2+v^2)", &f, &w), p("v^5*(u^2+v^2)", &f, &w)], &[p("u^5", &f, &w), p("v^5", &f, &w)]));
    assert!(proportional_eq(&[p("u^4", &f, &w)], &[p("2*u^4", &f, &w)]));
    assert!(!proportional_eq(&[p("u^4", &f, &w), p("v^4", &f, &w)], &[p("u^4", &f, &w), p("u*v^3", &f, &w)]));
}

#[test]
fn univariate_gcd_and_sqrt() {
    let f = q();
    let a = UniPoly::from_i64(&f, &[-1, 0, 1]).mul(&UniPoly::from_i64(&f, &[2, 1]));
    let b = UniPoly::from_i64(&f, &[-1, 0, 1]).mul(&UniPoly::from_i64(&f, &[5, 0, 3]));
    assert_eq!(a.gcd(&b), UniPoly::from_i64(&f, &[-1, 0, 1]));
    let s = UniPoly::from_i64(&f, &[3, -2, 1]);
    assert_eq!(s.mul(&s).sqrt_monic(), Some(s));
    assert!(UniPoly::from_i64(&f, &[1, 0, 1, 0, 1]).sqrt_monic().is_none());
}
