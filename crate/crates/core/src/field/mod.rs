//! Exact coefficient fields: `Q`, cyclotomic extensions `Q(ζ_n)` and prime fields `F_p`.
//!
//! Every [`FieldElement`] carries a cheap handle to its [`Field`]. Elements of
//! characteristic-zero fields are stored as an integer coordinate vector over a
//! positive common denominator, in the power basis `1, ζ, …, ζ^(φ(n)-1)` and
//! reduced modulo `Φ_n`; `Q` is the one-dimensional case. The representation is
//! canonical, so equality is structural.

mod cyclotomic;
mod numeric;
mod prime;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use cyclotomic::{cyclotomic_polynomial, totient};
pub use numeric::{sqrt_in_field, PrecisionBudget, SqrtResult};
pub use prime::is_prime;

pub(crate) use numeric::roots_in_field;

/// Largest cyclotomic order accepted by [`Field::new`].
pub const DEFAULT_CYCLOTOMIC_CEILING: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rational,
    Cyclotomic { n: u32 },
    Prime { p: u64 },
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDescriptor::Prime { p } => p,
            _ => 0,
        }
    }

    pub fn validate(&self, ceiling: u32) -> Result<(), FieldError> {
        match *self {
            FieldDescriptor::Rational => Ok(()),
            FieldDescriptor::Cyclotomic { n } => {
                if (3..=ceiling).contains(&n) {
                    Ok(())
                } else {
                    Err(FieldError::CyclotomicOrder { n, ceiling })
                }
            }
            FieldDescriptor::Prime { p } => {
                if is_prime(p) {
                    Ok(())
                } else {
                    Err(FieldError::NotPrime(p))
                }
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Cyclotomic { n } => write!(f, "Q(zeta_{n})"),
            FieldDescriptor::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldDescriptor, FieldDescriptor),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic order {n} is outside 3..={ceiling}")]
    CyclotomicOrder { n: u32, ceiling: u32 },
    #[error("{0}")]
    NotInField(String),
}

struct FieldInner {
    desc: FieldDescriptor,
    degree: usize,
    modulus: Vec<i64>,
    reduction: Vec<Vec<BigInt>>,
}

/// Shared handle to a coefficient field.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.desc == other.inner.desc
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.inner.desc)
    }
}

/// Builds a field handle; equivalent to [`Field::new`].
pub fn make_field(desc: FieldDescriptor) -> Result<Field, FieldError> {
    Field::new(desc)
}

impl Field {
    pub fn new(desc: FieldDescriptor) -> Result<Self, FieldError> {
        Self::with_ceiling(desc, DEFAULT_CYCLOTOMIC_CEILING)
    }

    pub fn with_ceiling(desc: FieldDescriptor, ceiling: u32) -> Result<Self, FieldError> {
        desc.validate(ceiling)?;
        let modulus = match desc {
            FieldDescriptor::Rational => vec![-1, 1],
            FieldDescriptor::Cyclotomic { n } => cyclotomic_polynomial(n),
            FieldDescriptor::Prime { .. } => vec![0, 1],
        };
        let degree = modulus.len() - 1;
        let reduction = cyclotomic::reduction_table(&modulus);
        Ok(Field { inner: Arc::new(FieldInner { desc, degree, modulus, reduction }) })
    }

    pub fn rational() -> Self {
        Self::new(FieldDescriptor::Rational).expect("Q is always valid")
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.inner.desc
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.desc.characteristic()
    }

    /// Dimension over the prime field (φ(n) for `Q(ζ_n)`, 1 otherwise).
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// Coefficients of the defining polynomial `Φ_n`, constant term first.
    pub fn modulus(&self) -> &[i64] {
        &self.inner.modulus
    }

    pub fn cyclotomic_order(&self) -> Option<u32> {
        match self.inner.desc {
            FieldDescriptor::Cyclotomic { n } => Some(n),
            _ => None,
        }
    }

    fn prime(&self) -> Option<u64> {
        match self.inner.desc {
            FieldDescriptor::Prime { p } => Some(p),
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    /// The primitive root `ζ` of a cyclotomic field.
    pub fn generator(&self) -> Option<FieldElement> {
        self.cyclotomic_order()?;
        let mut coords = vec![BigInt::zero(); self.degree()];
        coords[1] = BigInt::one();
        Some(self.num(coords, BigInt::one()))
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match self.prime() {
            Some(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElement { field: self.clone(), repr: Repr::Mod(to_u64(&r)) }
            }
            None => {
                let mut coords = vec![BigInt::zero(); self.degree()];
                coords[0] = v.clone();
                self.num(coords, BigInt::one())
            }
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self.prime() {
            Some(_) => self.from_bigint(num).checked_div(&self.from_bigint(den)),
            None => {
                let mut coords = vec![BigInt::zero(); self.degree()];
                coords[0] = num.clone();
                Ok(self.num(coords, den.clone()))
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement, FieldError> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// Element from power-basis coordinates over a common denominator.
    pub fn from_coords(&self, coords: Vec<BigInt>, den: BigInt) -> Result<FieldElement, FieldError> {
        if self.prime().is_some() {
            let c = coords.into_iter().next().unwrap_or_default();
            return self.from_ratio(&c, &den);
        }
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // fold higher powers back through the reduction table
        let d = self.degree();
        let mut full = coords;
        if full.len() > d {
            let mut reduced = self.reduce_wide(&full);
            reduced.truncate(d);
            full = reduced;
        }
        full.resize(d, BigInt::zero());
        Ok(self.num(full, den))
    }

    fn num(&self, mut coords: Vec<BigInt>, mut den: BigInt) -> FieldElement {
        normalize(&mut coords, &mut den);
        FieldElement { field: self.clone(), repr: Repr::Num { coords, den } }
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_n`.
    fn reduce_wide(&self, wide: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        if wide.len() <= d {
            let mut v = wide.to_vec();
            v.resize(d, BigInt::zero());
            return v;
        }
        if wide.len() < 2 * d {
            let mut out: Vec<BigInt> = wide[..d].to_vec();
            for (k, c) in wide[d..].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, r) in out.iter_mut().zip(&self.inner.reduction[k]) {
                    if !r.is_zero() {
                        *o += c * r;
                    }
                }
            }
            return out;
        }
        // long input: plain division by the monic modulus
        let m = &self.inner.modulus;
        let mut rem = wide.to_vec();
        for k in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                if m[i] != 0 {
                    rem[k - d + i] -= &c * m[i];
                }
            }
        }
        rem.truncate(d);
        rem
    }

    /// Uniformly random small element: integer coordinates in `[-bound, bound]`.
    pub fn random_small<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement {
        match self.prime() {
            Some(p) => {
                let r = rng.gen_range(0..p);
                FieldElement { field: self.clone(), repr: Repr::Mod(r) }
            }
            None => {
                let coords = (0..self.degree()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
                self.num(coords, BigInt::one())
            }
        }
    }

    /// Small nonzero integer, drawn from `[-bound, bound] \ {0}` and reduced into the field.
    pub fn random_nonzero_int<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement {
        loop {
            let v = rng.gen_range(-bound..=bound);
            let e = self.from_i64(v);
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub(crate) fn check(&self, other: &Field) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.descriptor(), other.descriptor()))
        }
    }
}

fn to_u64(v: &BigInt) -> u64 {
    let (_, digits) = v.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

fn normalize(coords: &mut [BigInt], den: &mut BigInt) {
    if den.is_negative() {
        *den = -&*den;
        for c in coords.iter_mut() {
            *c = -&*c;
        }
    }
    if den.is_one() {
        return;
    }
    let mut g = den.clone();
    for c in coords.iter() {
        if g.is_one() {
            return;
        }
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if coords.iter().all(Zero::is_zero) {
        *den = BigInt::one();
        return;
    }
    if !g.is_one() {
        for c in coords.iter_mut() {
            *c = &*c / &g;
        }
        *den = &*den / &g;
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Num { coords: Vec<BigInt>, den: BigInt },
    Mod(u64),
}

/// An element of a [`Field`] in canonical form.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.descriptor().hash(state);
        self.repr.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Num { coords, .. } => coords.iter().all(Zero::is_zero),
            Repr::Mod(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Num { coords, den } => den.is_one() && coords[0].is_one() && coords[1..].iter().all(Zero::is_zero),
            Repr::Mod(r) => *r == 1,
        }
    }

    /// The value as a rational number when it lies in the prime subfield `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Num { coords, den } if coords[1..].iter().all(Zero::is_zero) => {
                Some(BigRational::new(coords[0].clone(), den.clone()))
            }
            _ => None,
        }
    }

    /// Residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self.repr {
            Repr::Mod(r) => Some(r),
            _ => None,
        }
    }

    /// Power-basis coordinates and the common denominator (characteristic zero only).
    pub fn coords(&self) -> Option<(&[BigInt], &BigInt)> {
        match &self.repr {
            Repr::Num { coords, den } => Some((coords, den)),
            Repr::Mod(_) => None,
        }
    }

    /// Small integers are the only elements whose text form needs no parentheses.
    pub(crate) fn is_simple_term(&self) -> bool {
        match &self.repr {
            Repr::Num { coords, .. } => coords.iter().filter(|c| !c.is_zero()).count() <= 1,
            Repr::Mod(_) => true,
        }
    }

    /// Whether the canonical text starts with a minus sign.
    pub(crate) fn is_negative_term(&self) -> bool {
        match &self.repr {
            Repr::Num { coords, .. } => {
                coords.iter().filter(|c| !c.is_zero()).count() == 1 && coords.iter().any(|c| c.is_negative())
            }
            Repr::Mod(_) => false,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check(&other.field)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check(&other.field)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check(&other.field)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check(&other.field)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.field.prime().unwrap();
                Repr::Mod(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Repr::Num { coords: a, den: da }, Repr::Num { coords: b, den: db }) => {
                if other.is_zero() {
                    return self.clone();
                }
                if self.is_zero() {
                    return other.clone();
                }
                let (mut coords, mut den) = if da == db {
                    (a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>(), da.clone())
                } else {
                    let l = da.lcm(db);
                    let fa = &l / da;
                    let fb = &l / db;
                    (a.iter().zip(b).map(|(x, y)| x * &fa + y * &fb).collect(), l)
                };
                normalize(&mut coords, &mut den);
                Repr::Num { coords, den }
            }
            _ => unreachable!("field handles already compared"),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    fn neg_ref(&self) -> Self {
        let repr = match &self.repr {
            Repr::Mod(a) => {
                let p = self.field.prime().unwrap();
                Repr::Mod(if *a == 0 { 0 } else { p - a })
            }
            Repr::Num { coords, den } => Repr::Num { coords: coords.iter().map(|c| -c).collect(), den: den.clone() },
        };
        FieldElement { field: self.field.clone(), repr }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod(prime::mul_mod(*a, *b, self.field.prime().unwrap())),
            (Repr::Num { coords: a, den: da }, Repr::Num { coords: b, den: db }) => {
                if self.is_zero() || other.is_zero() {
                    return self.field.zero();
                }
                let d = a.len();
                let mut coords = if d == 1 {
                    vec![&a[0] * &b[0]]
                } else {
                    let mut wide = vec![BigInt::zero(); 2 * d - 1];
                    for (i, x) in a.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in b.iter().enumerate() {
                            if !y.is_zero() {
                                wide[i + j] += x * y;
                            }
                        }
                    }
                    self.field.reduce_wide(&wide)
                };
                let mut den = da * db;
                normalize(&mut coords, &mut den);
                Repr::Num { coords, den }
            }
            _ => unreachable!("field handles already compared"),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &self.repr {
            Repr::Mod(a) => {
                let p = self.field.prime().unwrap();
                Ok(FieldElement { field: self.field.clone(), repr: Repr::Mod(prime::pow_mod(*a, p - 2, p)) })
            }
            Repr::Num { coords, den } => {
                if coords[1..].iter().all(Zero::is_zero) {
                    let mut c = vec![BigInt::zero(); coords.len()];
                    c[0] = den.clone();
                    return Ok(self.field.num(c, coords[0].clone()));
                }
                Ok(self.cyclotomic_inverse(coords, den))
            }
        }
    }

    /// Extended Euclid of `a(x)` against `Φ_n(x)` over `Q`.
    fn cyclotomic_inverse(&self, coords: &[BigInt], den: &BigInt) -> Self {
        type Q = BigRational;
        fn trim(p: &mut Vec<Q>) {
            while p.last().is_some_and(Zero::is_zero) {
                p.pop();
            }
        }
        fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
            let mut r = a.to_vec();
            let db = b.len() - 1;
            if r.len() < b.len() {
                return (vec![], r);
            }
            let mut q = vec![Q::zero(); r.len() - db];
            let lc = b[db].clone();
            for k in (0..q.len()).rev() {
                let c = &r[k + db] / &lc;
                if !c.is_zero() {
                    for (i, bi) in b.iter().enumerate() {
                        r[k + i] -= &c * bi;
                    }
                }
                q[k] = c;
            }
            r.truncate(db);
            trim(&mut r);
            (q, r)
        }
        fn sub_mul(s0: &[Q], q: &[Q], s1: &[Q]) -> Vec<Q> {
            let mut out = vec![Q::zero(); s0.len().max(q.len() + s1.len())];
            for (i, c) in s0.iter().enumerate() {
                out[i] += c;
            }
            for (i, a) in q.iter().enumerate() {
                for (j, b) in s1.iter().enumerate() {
                    out[i + j] -= a * b;
                }
            }
            trim(&mut out);
            out
        }
        let mut r0: Vec<Q> = self.field.modulus().iter().map(|&c| Q::from_integer(c.into())).collect();
        let mut r1: Vec<Q> = coords.iter().map(|c| Q::from_integer(c.clone())).collect();
        trim(&mut r1);
        let mut s0: Vec<Q> = vec![];
        let mut s1: Vec<Q> = vec![Q::one()];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_n is irreducible
        let g = r0[0].clone();
        let scale = Q::from_integer(den.clone()) / g;
        let terms: Vec<Q> = s0.iter().map(|c| c * &scale).collect();
        let common = terms.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut c: Vec<BigInt> = terms.iter().map(|t| (t * Q::from_integer(common.clone())).to_integer()).collect();
        c.resize(self.field.degree(), BigInt::zero());
        self.field.num(c, common)
    }

    pub fn checked_pow(&self, e: i64) -> Result<Self, FieldError> {
        let (mut base, mut exp) = if e < 0 { (self.inv()?, e.unsigned_abs()) } else { (self.clone(), e as u64) };
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// `self^e` for `e >= 0`.
    pub fn pow(&self, e: u64) -> Self {
        self.checked_pow(e as i64).expect("non-negative exponent")
    }

    /// Approximate complex value under the embedding `ζ ↦ exp(2πik/n)`.
    pub fn embed(&self, k: u32) -> num_complex::Complex64 {
        numeric::embed(self, k)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Mod(r) => write!(f, "{r}"),
            Repr::Num { coords, den } => {
                let mut first = true;
                for k in (0..coords.len()).rev() {
                    let c = &coords[k];
                    if c.is_zero() {
                        continue;
                    }
                    let q = BigRational::new(c.clone(), den.clone());
                    let neg = q.is_negative();
                    let a = q.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { '-' } else { '+' })?;
                    }
                    first = false;
                    let coeff = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
                    match k {
                        0 => write!(f, "{coeff}")?,
                        _ => {
                            if !a.is_one() {
                                write!(f, "{coeff}*")?;
                            }
                            if k == 1 {
                                write!(f, "z")?;
                            } else {
                                write!(f, "z^{k}")?;
                            }
                        }
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect(concat!("FieldElement::", stringify!($method)))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
