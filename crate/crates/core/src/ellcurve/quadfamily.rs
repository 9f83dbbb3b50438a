//! `E : y² = x³ + 2ax² + (a² + 1)x` with `a = √−(2ⁿ + 1)`, computed in
//! exact `Q(√d)` arithmetic.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{QuadFieldElem, Ring, WeierstrassCurve};
use crate::error::CurveError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadFamilyRecord {
    pub n: u32,
    /// Squarefree `d` with `Q(a) = Q(√d)`.
    pub field_d: i64,
    /// `a = a_coefficient · √d`.
    pub a_coefficient: u64,
    pub plus_one_is_square: bool,
    pub plus_one_is_twice_square: bool,
    /// `Q(a) = Q(i)`: the case excluded by the proposition.
    pub gaussian: bool,
    pub discriminant: String,
    /// `Δ = −2^(2n+6)`.
    pub discriminant_ok: bool,
    /// `a² + 1 = −2u²` has a rational solution `u`.
    pub conic_solvable: bool,
    pub u: Option<String>,
    /// The twist of `E` by `a`, which is defined over `Q`.
    pub twist_a: String,
    pub twist_b: String,
    pub twist_j: String,
    /// `(level, index, genus)` stated for this `n`, if any.
    pub expected_label: Option<(u32, u64, i64)>,
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `m = core · s²` with `core` squarefree.
fn squarefree_decomposition(m: u64) -> (u64, u64) {
    let (mut core, mut s) = (1, 1);
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            s *= p;
        }
        if rest % p == 0 {
            rest /= p;
            core *= p;
        }
        p += 1;
    }
    (core * rest, s)
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

pub fn quadfamily_check(n: u32) -> Result<QuadFamilyRecord, CurveError> {
    if n == 0 || n > 60 {
        return Err(CurveError::Field(format!("n = {n} outside 1..=60")));
    }
    let m = (1u64 << n) + 1;
    let (core, s) = squarefree_decomposition(m);
    let d = -(core as i64);
    let a = QuadFieldElem::new(d, BigRational::zero(), q(s))?;
    let one = a.one_like();
    let e = WeierstrassCurve::new(a.from_i64(2).mul(&a), a.square().add(&one));

    let disc = e.discriminant();
    let expected_disc = -(BigInt::one() << (2 * n + 6));
    let discriminant_ok = disc.as_rational() == Some(&q(expected_disc));

    let a2_plus_1 = a.square().add(&one).as_rational().cloned().expect("a² is rational");
    let u = rational_sqrt(&(-a2_plus_1 / q(2)));

    let twist = e.twist(&a)?;
    let rational = |x: &QuadFieldElem| -> Result<BigRational, CurveError> {
        x.as_rational().cloned().ok_or_else(|| CurveError::Identity(format!("{x} is not rational")))
    };
    let twist_q = WeierstrassCurve::new(rational(&twist.a)?, rational(&twist.b)?);
    let twist_j = twist_q.j_invariant()?;
    if twist.j_invariant()? != QuadFieldElem::rational(d, twist_j.clone())? || e.j_invariant()? != twist.j_invariant()? {
        return Err(CurveError::Identity("j changed under twist".into()));
    }

    let expected_label = match n {
        3 => None,
        2 | 10 => Some((16, 384, 9)),
        n if n % 2 == 1 => Some((8, 24, 0)),
        _ => None,
    };
    let root = m.sqrt();
    Ok(QuadFamilyRecord {
        n,
        field_d: d,
        a_coefficient: s,
        plus_one_is_square: root * root == m,
        plus_one_is_twice_square: m % 2 == 0 && (m / 2).sqrt().pow(2) == m / 2,
        gaussian: d == -1,
        discriminant: rational(&disc)?.to_string(),
        discriminant_ok,
        conic_solvable: u.is_some(),
        u: u.map(|u| u.to_string()),
        twist_a: twist_q.a.to_string(),
        twist_b: twist_q.b.to_string(),
        twist_j: twist_j.to_string(),
        expected_label,
    })
}
