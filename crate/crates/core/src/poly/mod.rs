//! Sparse multivariate polynomials over an exact field.

mod gcd;
mod parse;
pub(crate) mod resultant;
mod uni;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::field::{Field, FieldElement};

pub use gcd::{content_in, exponents_of_degree, gcd, gcd_forms, primitive_part_in};
pub use parse::{parse_field_element, parse_poly, ParseError};
pub use resultant::{resultant, resultant_formal, uni_resultant};
pub use uni::UniPoly;

/// Ordered variable names shared between polynomials of one ring.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Variables `X, Y, Z` of the projective plane.
pub fn xyz() -> Vars {
    vars(&["X", "Y", "Z"])
}

/// Variables `u, v` of the parameter line.
pub fn uv() -> Vars {
    vars(&["u", "v"])
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("exact division left a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable sets differ")]
    VarMismatch,
    #[error("requested degree {requested} is below the actual degree {actual}")]
    DegreeTooLow { requested: u32, actual: u32 },
    #[error("{0}")]
    Degenerate(String),
}

/// Exponent vector ordered graded-lexicographically (first variable most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct MultiPoly {
    field: Field,
    vars: Vars,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(field: &Field, vars: &Vars) -> Self {
        MultiPoly { field: field.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, vars: &Vars) -> Self {
        let mut p = Self::zero(c.field(), vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(field: &Field, vars: &Vars) -> Self {
        Self::constant(field.one(), vars)
    }

    pub fn var(field: &Field, vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(field.one(), vars, e)
    }

    pub fn var_named(field: &Field, vars: &Vars, name: &str) -> Self {
        let i = vars.iter().position(|v| v == name).expect("variable in ring");
        Self::var(field, vars, i)
    }

    pub fn monomial(c: FieldElement, vars: &Vars, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(c.field(), vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    pub fn from_terms(field: &Field, vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>) -> Self {
        let mut p = Self::zero(field, vars);
        for (e, c) in terms {
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElement {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Total degree; `None` is the zero polynomial's sentinel.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::total)
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::total)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::total);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(|| self.field.zero())
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, &self.vars);
        }
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn check(&self, other: &Self) {
        assert!(self.field == other.field, "polynomials over different fields");
        assert!(self.vars == other.vars, "polynomials over different variables");
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field, &self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Result<Self, PolyError> {
        self.check(d);
        let (lm, lc) = d.leading().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = lc.inv().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field, &self.vars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Err(PolyError::NotDivisible);
            }
            let e: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            let q = c * &lc_inv;
            let t = Self::monomial(q.clone(), &self.vars, e.clone());
            rem = &rem - &(&t * d);
            quot.add_term(Monomial(e), q);
        }
        Ok(quot)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.field, &self.vars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * &self.field.from_i64(k as i64));
        }
        out
    }

    /// Evaluates at a point of the ground field.
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars());
        let mut powers: Vec<Vec<FieldElement>> = point.iter().map(|p| vec![self.field.one(), p.clone()]).collect();
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Replaces every variable by a polynomial of a common target ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars());
        let target = images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<MultiPoly>> =
            images.iter().map(|p| vec![MultiPoly::one(&self.field, &target), p.clone()]).collect();
        let mut acc = MultiPoly::zero(&self.field, &target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), &target);
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes some variables by name, leaving the others unchanged.
    pub fn substitute_named(&self, assignment: &[(&str, MultiPoly)]) -> MultiPoly {
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| {
                assignment
                    .iter()
                    .find(|(n, _)| *n == self.vars[i])
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| MultiPoly::var(&self.field, &self.vars, i))
            })
            .collect();
        self.substitute(&images)
    }

    /// Sets variable `i` to a constant.
    pub fn specialize(&self, i: usize, value: &FieldElement) -> MultiPoly {
        let mut out = Self::zero(&self.field, &self.vars);
        let mut powers = vec![self.field.one()];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut e = m.0.clone();
            e[i] = 0;
            out.add_term(Monomial(e), c * &powers[k]);
        }
        out
    }

    /// Moves the polynomial into another variable list, matching names.
    pub fn with_vars(&self, target: &Vars) -> Result<MultiPoly, PolyError> {
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| target.iter().position(|w| w == v)).collect();
        let mut out = Self::zero(&self.field, target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                e[map[i].ok_or(PolyError::VarMismatch)?] = k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Homogenizes with respect to variable `i` to total degree `degree`.
    pub fn homogenize(&self, i: usize, degree: u32) -> Result<MultiPoly, PolyError> {
        let actual = self.degree().unwrap_or(0);
        if degree < actual {
            return Err(PolyError::DegreeTooLow { requested: degree, actual });
        }
        let mut out = Self::zero(&self.field, &self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[i] += degree - m.total();
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sets variable `i` to 1.
    pub fn dehomogenize(&self, i: usize) -> MultiPoly {
        self.specialize(i, &self.field.one())
    }

    /// Coefficients with respect to variable `i`, lowest power first; each lies in the same ring.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let n = self.degree_in(i).map(|d| d as usize + 1).unwrap_or(0);
        let mut out = vec![Self::zero(&self.field, &self.vars); n];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Reassembles `Σ c_k · var_i^k`.
    pub fn from_coefficients_in(field: &Field, vars: &Vars, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = Self::zero(field, vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.0.clone();
                e[i] += k as u32;
                out.add_term(Monomial(e), a.clone());
            }
        }
        out
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.total() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// The polynomial as a univariate one in variable `i`, if no other variable occurs.
    pub fn to_uni(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = vec![self.field.zero(); self.degree_in(i).map(|d| d as usize + 1).unwrap_or(0)];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            coeffs[m.0[i] as usize] = c.clone();
        }
        Some(UniPoly::new(&self.field, coeffs))
    }

    pub fn from_uni(p: &UniPoly, vars: &Vars, i: usize) -> MultiPoly {
        let n = vars.len();
        Self::from_terms(
            p.field(),
            vars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[i] = k as u32;
                (e, c.clone())
            }),
        )
    }

    /// Univariate polynomial in variable `i` after assigning all other variables.
    pub fn eval_to_uni(&self, i: usize, point: &[FieldElement]) -> UniPoly {
        let mut coeffs = vec![self.field.zero(); self.degree_in(i).map(|d| d as usize + 1).unwrap_or(0)];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &k) in m.0.iter().enumerate() {
                if j != i && k > 0 {
                    t = &t * &point[j].pow(k as u64);
                }
            }
            let slot = &mut coeffs[m.0[i] as usize];
            *slot = &*slot + &t;
        }
        UniPoly::new(&self.field, coeffs)
    }

    /// Whether the two polynomials are proportional (both zero counts as proportional).
    pub fn proportional(&self, other: &Self) -> bool {
        match (self.leading(), other.leading()) {
            (None, None) => true,
            (Some((m1, _)), Some((m2, _))) if m1 == m2 => self.monic() == other.monic(),
            _ => false,
        }
    }

    /// Scalar `c` with `self = c · other`, if one exists.
    pub fn ratio_to(&self, other: &Self) -> Option<FieldElement> {
        let (m, c) = other.leading()?;
        let (m2, c2) = self.leading()?;
        if m != m2 {
            return None;
        }
        let r = c2 * &c.inv().ok()?;
        (other.scale(&r) == *self).then_some(r)
    }
}

/// Tuples are projectively equal when all 2×2 cross products vanish.
pub fn proportional_eq(f: &[MultiPoly], g: &[MultiPoly]) -> bool {
    assert_eq!(f.len(), g.len());
    if f.iter().all(MultiPoly::is_zero) || g.iter().all(MultiPoly::is_zero) {
        return f.iter().all(MultiPoly::is_zero) && g.iter().all(MultiPoly::is_zero);
    }
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if &f[i] * &g[j] != &f[j] * &g[i] {
                return false;
            }
        }
    }
    true
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let monomial: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                    .collect();
            let (neg, mag) = if c.is_simple_term() && c.is_negative_term() { (true, -c) } else { (false, c.clone()) };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let coeff = if mag.is_simple_term() { mag.to_string() } else { format!("({mag})") };
            if monomial.is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let mut out = MultiPoly::zero(&self.field, &self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests;
