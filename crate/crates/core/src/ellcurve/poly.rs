//! Univariate polynomials over `F_p`, and functions on the conic
//! `a² + b² + 1 = 0` written as `P(b) + Q(b)·a`. Used to measure the degree
//! of the j-map of a parametrized family.

use num_bigint::BigInt;

use super::{Field, Fp, Ring};

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn constant(c: Fp) -> Self {
        PolyFp { p: c.prime(), coeffs: vec![c.value()] }.trimmed()
    }

    /// The variable.
    pub fn x(p: u64) -> Self {
        PolyFp { p, coeffs: vec![0, 1] }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> Fp {
        Fp::new(*self.coeffs.get(i).unwrap_or(&0) as i64, self.p)
    }

    pub fn eval(&self, x: Fp) -> Fp {
        self.coeffs.iter().rev().fold(Fp::new(0, self.p), |acc, &c| acc.mul(&x).add(&Fp::new(c as i64, self.p)))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeff(dd).inv().expect("nonzero leading coefficient");
        let mut r = self.clone();
        let mut q = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let f = r.coeff(rd).mul(&lead_inv);
            q[rd - dd] = f.value();
            for i in 0..=dd {
                let v = r.coeff(rd - dd + i).sub(&f.mul(&d.coeff(i)));
                r.coeffs[rd - dd + i] = v.value();
            }
            r = r.trimmed();
        }
        (PolyFp { p: self.p, coeffs: q }.trimmed(), r)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut x, mut y) = (self.clone(), o.clone());
        while y.degree().is_some() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x
    }
}

impl Ring for PolyFp {
    fn from_int(&self, n: &BigInt) -> Self {
        PolyFp::constant(Fp::new(0, self.p).from_int(n))
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&o.coeff(i)).value()).collect();
        PolyFp { p: self.p, coeffs }.trimmed()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return PolyFp { p: self.p, coeffs: vec![] };
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % p;
            }
        }
        PolyFp { p: self.p, coeffs: acc.into_iter().map(|c| c as u64).collect() }.trimmed()
    }
    fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        PolyFp { p: self.p, coeffs }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `P(b) + Q(b)·a` with `a² = −1 − b²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicFunction {
    pub p_part: PolyFp,
    pub q_part: PolyFp,
}

impl ConicFunction {
    pub fn b(p: u64) -> Self {
        ConicFunction { p_part: PolyFp::x(p), q_part: PolyFp::constant(Fp::new(0, p)) }
    }

    pub fn a(p: u64) -> Self {
        ConicFunction { p_part: PolyFp::constant(Fp::new(0, p)), q_part: PolyFp::constant(Fp::new(1, p)) }
    }

    fn a_squared(&self) -> PolyFp {
        let b = PolyFp::x(self.p_part.p);
        b.square().add(&b.one_like()).neg()
    }

    /// Norm down to `F_p(b)`: `P² − Q²·a²`.
    pub fn norm(&self) -> PolyFp {
        self.p_part.square().sub(&self.q_part.square().mul(&self.a_squared()))
    }
}

impl Ring for ConicFunction {
    fn from_int(&self, n: &BigInt) -> Self {
        ConicFunction { p_part: self.p_part.from_int(n), q_part: self.p_part.zero_like() }
    }
    fn add(&self, o: &Self) -> Self {
        ConicFunction { p_part: self.p_part.add(&o.p_part), q_part: self.q_part.add(&o.q_part) }
    }
    fn sub(&self, o: &Self) -> Self {
        ConicFunction { p_part: self.p_part.sub(&o.p_part), q_part: self.q_part.sub(&o.q_part) }
    }
    fn mul(&self, o: &Self) -> Self {
        let pp = self.p_part.mul(&o.p_part).add(&self.q_part.mul(&o.q_part).mul(&self.a_squared()));
        let qq = self.p_part.mul(&o.q_part).add(&self.q_part.mul(&o.p_part));
        ConicFunction { p_part: pp, q_part: qq }
    }
    fn neg(&self) -> Self {
        ConicFunction { p_part: self.p_part.neg(), q_part: self.q_part.neg() }
    }
    fn is_zero(&self) -> bool {
        self.p_part.is_zero() && self.q_part.is_zero()
    }
}

/// Degree of the rational function `num/den` on the projective line.
pub fn rational_degree(num: &PolyFp, den: &PolyFp) -> Option<usize> {
    let g = num.gcd(den);
    let (n, _) = num.div_rem(&g);
    let (d, _) = den.div_rem(&g);
    Some(n.degree()?.max(d.degree()?))
}
