//! Dense univariate polynomials.

use std::fmt;

use crate::field::{Field, FieldElement};

/// Dense univariate polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly { field: field.clone(), coeffs: vec![] }
    }

    pub fn constant(c: FieldElement) -> Self {
        let f = c.field().clone();
        Self::new(&f, vec![c])
    }

    /// `x`.
    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero"))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(&self.field, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().inv().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(&self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (i, b) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(&self.field, quot), Self::new(&self.field, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// `lc(d)^(deg self - deg d + 1) · self mod d`.
    pub fn prem(&self, d: &Self) -> Self {
        let (Some(a), Some(b)) = (self.degree(), d.degree()) else {
            return self.clone();
        };
        if a < b {
            return self.clone();
        }
        self.scale(&d.lc().pow((a - b + 1) as u64)).rem(d)
    }

    pub fn derivative(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &self.field.from_i64(k as i64)).collect())
    }

    /// Monic gcd via the subresultant remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) =
            if self.degree() >= other.degree() { (self.clone(), other.clone()) } else { (other.clone(), self.clone()) };
        if b.is_zero() {
            return a.monic();
        }
        let one = self.field.one();
        let mut g = one.clone();
        let mut h = one;
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.prem(&b);
            if r.is_zero() {
                return b.monic();
            }
            if r.degree() == Some(0) {
                return Self::constant(self.field.one());
            }
            let denom = &g * &h.pow(delta as u64);
            a = b;
            b = r.scale(&denom.inv().expect("nonzero"));
            g = a.lc();
            h = if delta == 0 { h } else { &g.pow(delta as u64) * &h.pow(delta as u64 - 1).inv().expect("nonzero") };
        }
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(&self.field), |acc, c| acc.mul(q).add(&Self::constant(c.clone())))
    }

    /// Square root of a monic polynomial, when it is a perfect square.
    pub fn sqrt_monic(&self) -> Option<Self> {
        let n = self.degree()?;
        if n % 2 == 1 || !self.lc().is_one() {
            return None;
        }
        let m = n / 2;
        // top-down coefficient matching of r^2 = self, r monic of degree m
        let two_inv = self.field.from_i64(2).inv().ok()?;
        let mut r = vec![self.field.zero(); m + 1];
        r[m] = self.field.one();
        for k in 1..=m {
            // coefficient of x^(2m-k): 2 r_m r_{m-k} + Σ_{0<i<k} r_{m-i} r_{m-k+i}
            let mut s = self.field.zero();
            for i in 1..k {
                s = &s + &(&r[m - i] * &r[m - k + i]);
            }
            r[m - k] = &(&self.coeff(2 * m - k) - &s) * &two_inv;
        }
        let root = Self::new(&self.field, r);
        (root.mul(&root) == *self).then_some(root)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("({c})*x^{k}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
