//! Rational functions on the parameter line and on the base line.

use std::fmt;

use crate::field::{Field, FieldElement};
use crate::maps::LineMobius;
use crate::poly::{gcd_forms, uv, vars, MultiPoly, UniPoly};

/// A rational function on `P¹`, the ratio of two binary forms of one degree in `u, v`.
///
/// Displayed in the affine coordinate `t = u/v`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl ParamFn {
    /// Reduces `num / den`; `den` must be nonzero.
    pub fn new(num: &MultiPoly, den: &MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let one = MultiPoly::one(den.field(), &uv());
            return ParamFn { num: num.clone(), den: one };
        }
        let g = gcd_forms(num, den);
        let (n, d) = (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"));
        let lc = d.leading_coeff().inv().expect("nonzero");
        ParamFn { num: n.scale(&lc), den: d.scale(&lc) }
    }

    pub fn constant(c: FieldElement) -> Self {
        let r = uv();
        ParamFn { num: MultiPoly::constant(c.clone(), &r), den: MultiPoly::one(c.field(), &r) }.normalized()
    }

    fn normalized(self) -> Self {
        Self::new(&self.num, &self.den)
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.den.field()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&(&self.num * &other.num), &(&self.den * &other.den))
    }

    /// `f ∘ g`.
    pub fn compose_mobius(&self, g: &LineMobius) -> Self {
        let [n, d]: [MultiPoly; 2] = g.act_on(&[self.num.clone(), self.den.clone()]).try_into().expect("two forms");
        Self::new(&n, &d)
    }

    /// Value at `[u:v]`, `None` at a pole.
    pub fn eval(&self, u: &FieldElement, v: &FieldElement) -> Option<FieldElement> {
        let pt = [u.clone(), v.clone()];
        let d = self.den.eval(&pt);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(&pt) * &d.inv().ok()?)
    }

    /// Numerator and denominator as polynomials in `t = u/v`.
    pub fn affine(&self) -> (MultiPoly, MultiPoly) {
        let r = vars(&["t"]);
        let f = |p: &MultiPoly| MultiPoly::from_terms(self.field(), &r, p.terms().map(|(m, c)| (vec![m.0[0]], c.clone())));
        (f(&self.num), f(&self.den))
    }
}

impl fmt::Display for ParamFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.affine();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n}) / ({d})")
        }
    }
}

impl fmt::Debug for ParamFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of `k(y)`, reduced with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn {
    num: UniPoly,
    den: UniPoly,
}

impl RatFn {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { den: UniPoly::constant(den.field().one()), num };
        }
        let g = num.gcd(&den);
        let (n, d) = (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"));
        let lc = d.lc().inv().expect("nonzero");
        RatFn { num: n.scale(&lc), den: d.scale(&lc) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let one = UniPoly::constant(p.field().one());
        RatFn { num: p, den: one }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).sub(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// `None` when dividing by zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| Self::new(self.num.mul(&o.den), self.den.mul(&o.num)))
    }
}

/// Multiplies a tuple of elements of `k(y)` by the lcm of their denominators.
pub fn clear_denominators(values: &[RatFn]) -> Vec<UniPoly> {
    let field = values[0].num.field().clone();
    let mut l = UniPoly::constant(field.one());
    for v in values {
        let g = l.gcd(&v.den);
        l = l.mul(&v.den).exact_div(&g).expect("gcd divides");
    }
    values.iter().map(|v| v.num.mul(&l.exact_div(&v.den).expect("lcm divisible"))).collect()
}
