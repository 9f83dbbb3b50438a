//! Curves `y² = x³ + Ax² + Bx` over exact fields: twists, 2-isogenies,
//! discriminants and j-invariants, plus the checks on the quadratic family
//! and on the tabulated universal families.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CurveError;

pub mod expr;
pub mod family;
pub mod poly;
pub mod quadfamily;

pub use family::{conic_points, family_identity_check, FamilyCheckReport, FamilySpec, FamilyTable};
pub use quadfamily::{quadfamily_check, QuadFamilyRecord};

/// Commutative ring operations. Constants are built from an existing element
/// so that context (a prime, a quadratic discriminant) is carried along.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn from_int(&self, n: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn from_i64(&self, n: i64) -> Self {
        self.from_int(&BigInt::from(n))
    }
    fn zero_like(&self) -> Self {
        self.from_i64(0)
    }
    fn one_like(&self) -> Self {
        self.from_i64(1)
    }
    fn square(&self) -> Self {
        self.mul(self)
    }
    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Ring for BigRational {
    fn from_int(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// An element of `F_p`, `p` an odd prime below `2³²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        Fp { value: value.rem_euclid(p as i64) as u64, p }
    }
    pub fn value(self) -> u64 {
        self.value
    }
    pub fn prime(self) -> u64 {
        self.p
    }
    fn wrap(self, value: u64) -> Self {
        Fp { value, p: self.p }
    }
}

impl Ring for Fp {
    fn from_int(&self, n: &BigInt) -> Self {
        let r = n % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        self.wrap(r.to_u64().expect("reduced"))
    }
    fn add(&self, o: &Self) -> Self {
        self.wrap((self.value + o.value) % self.p)
    }
    fn sub(&self, o: &Self) -> Self {
        self.wrap((self.value + self.p - o.value) % self.p)
    }
    fn mul(&self, o: &Self) -> Self {
        self.wrap(((self.value as u128 * o.value as u128) % self.p as u128) as u64)
    }
    fn neg(&self) -> Self {
        self.wrap((self.p - self.value) % self.p)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let mut e = self.p - 2;
        let (mut base, mut acc) = (*self, self.wrap(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(acc)
    }
}

/// `u + v√d` in `Q(√d)`, `d` squarefree and not 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElem {
    d: i64,
    u: BigRational,
    v: BigRational,
}

impl QuadFieldElem {
    pub fn new(d: i64, u: BigRational, v: BigRational) -> Result<Self, CurveError> {
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return Err(CurveError::Field(format!("{d} is not a squarefree integer other than 0, 1")));
        }
        Ok(QuadFieldElem { d, u, v })
    }

    /// `√d`.
    pub fn sqrt_d(d: i64) -> Result<Self, CurveError> {
        Self::new(d, BigRational::zero(), BigRational::one())
    }

    pub fn rational(d: i64, u: BigRational) -> Result<Self, CurveError> {
        Self::new(d, u, BigRational::zero())
    }

    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn u(&self) -> &BigRational {
        &self.u
    }
    pub fn v(&self) -> &BigRational {
        &self.v
    }

    pub fn conjugate(&self) -> Self {
        QuadFieldElem { d: self.d, u: self.u.clone(), v: -&self.v }
    }

    /// `u² − d v²`.
    pub fn norm(&self) -> BigRational {
        &self.u * &self.u - BigRational::from_integer(self.d.into()) * &self.v * &self.v
    }

    /// The rational value, if the `√d` part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        Zero::is_zero(&self.v).then_some(&self.u)
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.d, o.d, "mixed quadratic fields");
    }
}

impl Ring for QuadFieldElem {
    fn from_int(&self, n: &BigInt) -> Self {
        QuadFieldElem { d: self.d, u: BigRational::from_integer(n.clone()), v: BigRational::zero() }
    }
    fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        QuadFieldElem { d: self.d, u: &self.u + &o.u, v: &self.v + &o.v }
    }
    fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        QuadFieldElem { d: self.d, u: &self.u - &o.u, v: &self.v - &o.v }
    }
    fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let d = BigRational::from_integer(self.d.into());
        QuadFieldElem { d: self.d, u: &self.u * &o.u + d * &self.v * &o.v, v: &self.u * &o.v + &self.v * &o.u }
    }
    fn neg(&self) -> Self {
        QuadFieldElem { d: self.d, u: -&self.u, v: -&self.v }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.u) && Zero::is_zero(&self.v)
    }
}

impl Field for QuadFieldElem {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let c = self.conjugate();
        Some(QuadFieldElem { d: self.d, u: &c.u / &n, v: &c.v / &n })
    }
}

impl fmt::Display for QuadFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*sqrt({})", self.u, self.v, self.d)
    }
}

pub(crate) fn is_squarefree(mut n: u64) -> bool {
    let mut q = 2;
    while q * q <= n {
        if n % (q * q) == 0 {
            return false;
        }
        if n % q == 0 {
            n /= q;
        }
        q += 1;
    }
    true
}

/// `y² = x³ + Ax² + Bx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeierstrassCurve<F> {
    pub a: F,
    pub b: F,
}

impl<F: Ring> WeierstrassCurve<F> {
    pub fn new(a: F, b: F) -> Self {
        WeierstrassCurve { a, b }
    }

    /// `16 B² (A² − 4B)`.
    pub fn discriminant(&self) -> F {
        let four_b = self.b.from_i64(4).mul(&self.b);
        self.b.from_i64(16).mul(&self.b.square()).mul(&self.a.square().sub(&four_b))
    }

    /// `16 (A² − 3B)`.
    pub fn c4(&self) -> F {
        let three_b = self.b.from_i64(3).mul(&self.b);
        self.a.from_i64(16).mul(&self.a.square().sub(&three_b))
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    /// `(A, B) ↦ (DA, D²B)`.
    pub fn twist(&self, d: &F) -> Result<Self, CurveError> {
        if d.is_zero() {
            return Err(CurveError::ZeroTwist);
        }
        Ok(WeierstrassCurve { a: d.mul(&self.a), b: d.square().mul(&self.b) })
    }

    /// Codomain of the 2-isogeny with kernel `{O, (0,0)}`:
    /// `(A, B) ↦ (−2A, A² − 4B)`.
    pub fn two_isogenous(&self) -> Result<Self, CurveError> {
        if self.b.is_zero() {
            return Err(CurveError::NoTwoTorsionKernel);
        }
        let four_b = self.b.from_i64(4).mul(&self.b);
        Ok(WeierstrassCurve { a: self.a.from_i64(-2).mul(&self.a), b: self.a.square().sub(&four_b) })
    }
}

impl<F: Field> WeierstrassCurve<F> {
    /// `c₄³ / Δ`.
    pub fn j_invariant(&self) -> Result<F, CurveError> {
        self.c4().pow(3).div(&self.discriminant()).ok_or(CurveError::Singular)
    }
}

impl WeierstrassCurve<BigRational> {
    pub fn from_integers(a: i64, b: i64) -> Self {
        WeierstrassCurve::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }
}

#[cfg(test)]
mod tests;
