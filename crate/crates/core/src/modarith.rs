//! 2×2 matrices over `Z/nZ` for prime powers `n`, and similitude checks for
//! `GSp_{2g}` over prime fields.
//!
//! All group computation in this crate works on [`ResidueMatrix`] values or
//! on their packed form: four 8-bit entries in one `u32`, which keeps element
//! sets as flat sorted arrays.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ArithError;

/// Largest modulus whose matrices fit the one-byte-per-entry packing.
pub const MAX_PACKED_MODULUS: u32 = 256;

/// Returns `(p, k)` when `n = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u32, n: u32) -> Option<u32> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (i64::from(a % n), i64::from(n));
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i64::from(n)) as u32)
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `|GL₂(Z/nZ)|` for a prime power `n = p^k`.
pub fn gl2_order(n: u32) -> Result<u64, ArithError> {
    let (p, k) = prime_power(n).ok_or(ArithError::NotPrimePower(n))?;
    let p = u64::from(p);
    Ok(p.pow(4 * k - 3) * (p - 1) * (p - 1) * (p + 1))
}

/// `|SL₂(Z/nZ)|` for a prime power `n = p^k`.
pub fn sl2_order(n: u32) -> Result<u64, ArithError> {
    let (p, k) = prime_power(n).ok_or(ArithError::NotPrimePower(n))?;
    let p = u64::from(p);
    Ok(p.pow(3 * k - 2) * (p - 1) * (p + 1))
}

/// A 2×2 matrix `[[a, b], [c, d]]` with entries reduced modulo `modulus`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueMatrix {
    modulus: u32,
    entries: [u32; 4],
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]] mod {}", self.modulus)
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ResidueMatrix {
    /// Builds `[[a, b], [c, d]]`, reducing each entry into `[0, modulus)`.
    pub fn new(modulus: u32, a: i64, b: i64, c: i64, d: i64) -> Result<Self, ArithError> {
        if modulus == 0 {
            return Err(ArithError::ZeroModulus);
        }
        let n = i64::from(modulus);
        let r = |x: i64| x.rem_euclid(n) as u32;
        Ok(Self { modulus, entries: [r(a), r(b), r(c), r(d)] })
    }

    pub fn from_entries(modulus: u32, entries: [u32; 4]) -> Result<Self, ArithError> {
        Self::new(
            modulus,
            i64::from(entries[0]),
            i64::from(entries[1]),
            i64::from(entries[2]),
            i64::from(entries[3]),
        )
    }

    pub fn identity(modulus: u32) -> Self {
        Self::scalar(modulus, 1)
    }

    pub fn scalar(modulus: u32, s: i64) -> Self {
        Self::new(modulus, s, 0, 0, s).expect("nonzero modulus")
    }

    pub fn diag(modulus: u32, x: i64, y: i64) -> Self {
        Self::new(modulus, x, 0, 0, y).expect("nonzero modulus")
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Entries in row-major order `[a, b, c, d]`.
    pub fn entries(&self) -> [u32; 4] {
        self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries == Self::identity(self.modulus).entries
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.modulus != other.modulus {
            return Err(ArithError::ModulusMismatch(self.modulus, other.modulus));
        }
        let n = u64::from(self.modulus);
        let [a, b, c, d] = self.entries.map(u64::from);
        let [e, f, g, h] = other.entries.map(u64::from);
        let r = |x: u64| (x % n) as u32;
        Ok(Self {
            modulus: self.modulus,
            entries: [r(a * e + b * g), r(a * f + b * h), r(c * e + d * g), r(c * f + d * h)],
        })
    }

    /// `ad − bc` reduced modulo the modulus.
    pub fn det(&self) -> u32 {
        let n = u64::from(self.modulus);
        let [a, b, c, d] = self.entries.map(u64::from);
        ((a * d % n + n - b * c % n) % n) as u32
    }

    pub fn is_invertible(&self) -> bool {
        inv_mod(self.det(), self.modulus).is_some()
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        let det = self.det();
        let u = inv_mod(det, self.modulus).ok_or(ArithError::NotInvertible { det, modulus: self.modulus })?;
        let [a, b, c, d] = self.entries.map(i64::from);
        let u = i64::from(u);
        Self::new(self.modulus, d * u, -b * u, -c * u, a * u)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same modulus");
            }
            base = base.mul(&base).expect("same modulus");
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, found by stripping prime factors from the group
    /// order rather than by iterating powers.
    pub fn order(&self) -> Result<u64, ArithError> {
        if !self.is_invertible() {
            return Err(ArithError::NotInvertible { det: self.det(), modulus: self.modulus });
        }
        if self.modulus == 1 {
            return Ok(1);
        }
        let mut ord = gl2_order(self.modulus)?;
        for q in prime_factors(ord) {
            while ord % q == 0 && self.pow(ord / q).is_identity() {
                ord /= q;
            }
        }
        Ok(ord)
    }

    /// Entrywise reduction to a divisor `m` of the modulus.
    pub fn reduce(&self, m: u32) -> Result<Self, ArithError> {
        if m == 0 || self.modulus % m != 0 {
            return Err(ArithError::NotDivisor { divisor: m, modulus: self.modulus });
        }
        Ok(Self { modulus: m, entries: self.entries.map(|x| x % m) })
    }

    /// Reinterprets the entries at a larger modulus (the canonical lift).
    pub fn lift(&self, m: u32) -> Result<Self, ArithError> {
        if m == 0 || m % self.modulus != 0 {
            return Err(ArithError::NotDivisor { divisor: self.modulus, modulus: m });
        }
        Ok(Self { modulus: m, entries: self.entries })
    }

    pub fn transpose(&self) -> Self {
        let [a, b, c, d] = self.entries;
        Self { modulus: self.modulus, entries: [a, c, b, d] }
    }

    /// One byte per entry, `a` in the low byte.
    pub fn pack(&self) -> Result<u32, ArithError> {
        if self.modulus > MAX_PACKED_MODULUS {
            return Err(ArithError::TooLargeToPack(self.modulus));
        }
        Ok(pack4(self.entries))
    }

    pub fn unpack(modulus: u32, word: u32) -> Result<Self, ArithError> {
        if modulus == 0 || modulus > MAX_PACKED_MODULUS {
            return Err(ArithError::TooLargeToPack(modulus));
        }
        let entries = unpack4(word);
        if entries.iter().any(|&x| x >= modulus) {
            return Err(ArithError::BadPackedWord { word, modulus });
        }
        Ok(Self { modulus, entries })
    }
}

pub fn mat_mul(x: &ResidueMatrix, y: &ResidueMatrix) -> Result<ResidueMatrix, ArithError> {
    x.mul(y)
}

pub fn mat_det(x: &ResidueMatrix) -> u32 {
    x.det()
}

pub fn mat_inverse(x: &ResidueMatrix) -> Result<ResidueMatrix, ArithError> {
    x.inverse()
}

pub fn mat_order(x: &ResidueMatrix) -> Result<u64, ArithError> {
    x.order()
}

pub fn reduce(x: &ResidueMatrix, m: u32) -> Result<ResidueMatrix, ArithError> {
    x.reduce(m)
}

#[inline]
pub(crate) fn pack4(e: [u32; 4]) -> u32 {
    e[0] | e[1] << 8 | e[2] << 16 | e[3] << 24
}

#[inline]
pub(crate) fn unpack4(w: u32) -> [u32; 4] {
    [w & 0xff, (w >> 8) & 0xff, (w >> 16) & 0xff, w >> 24]
}

/// Arithmetic on packed words for one fixed modulus. This is the hot path
/// for closure and conjugation, so it avoids the `Result` plumbing of
/// [`ResidueMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PackedRing {
    modulus: u32,
    mask: Option<u32>,
}

impl PackedRing {
    pub fn new(modulus: u32) -> Result<Self, ArithError> {
        if modulus == 0 || modulus > MAX_PACKED_MODULUS {
            return Err(ArithError::TooLargeToPack(modulus));
        }
        let mask = modulus.is_power_of_two().then(|| modulus - 1);
        Ok(Self { modulus, mask })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    fn red(&self, x: u32) -> u32 {
        match self.mask {
            Some(m) => x & m,
            None => x % self.modulus,
        }
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        pack4([1 % self.modulus, 0, 0, 1 % self.modulus])
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let [a, b, c, d] = unpack4(x);
        let [e, f, g, h] = unpack4(y);
        pack4([
            self.red(a * e + b * g),
            self.red(a * f + b * h),
            self.red(c * e + d * g),
            self.red(c * f + d * h),
        ])
    }

    #[inline]
    pub fn det(&self, x: u32) -> u32 {
        let [a, b, c, d] = unpack4(x);
        let n = self.modulus;
        self.red(a * d + n * n - b * c)
    }

    /// Inverse of a matrix with unit determinant.
    pub fn inv(&self, x: u32) -> u32 {
        let [a, b, c, d] = unpack4(x);
        let u = inv_mod(self.det(x), self.modulus).expect("unit determinant");
        let n = self.modulus;
        pack4([
            self.red(d * u),
            self.red((n - b) * u),
            self.red((n - c) * u),
            self.red(a * u),
        ])
    }

    #[inline]
    pub fn square(&self, x: u32) -> u32 {
        self.mul(x, x)
    }

    /// `g x g⁻¹` given `g` and its inverse.
    #[inline]
    pub fn conj(&self, g: u32, g_inv: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), g_inv)
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Entrywise reduction of a packed word to a divisor of the modulus.
    #[inline]
    pub fn reduce_word(word: u32, m: u32) -> u32 {
        pack4(unpack4(word).map(|e| e % m))
    }

    pub fn to_matrix(&self, word: u32) -> ResidueMatrix {
        ResidueMatrix { modulus: self.modulus, entries: unpack4(word) }
    }
}

/// A `2g × 2g` matrix over `Z/pZ`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    g: usize,
    p: u32,
    entries: Vec<u32>,
}

/// Largest `g` supported by the similitude checks.
pub const MAX_GENUS_G: usize = 3;

impl SymplecticMatrix {
    pub fn new(g: usize, p: u32, entries: Vec<i64>) -> Result<Self, ArithError> {
        if g == 0 || g > MAX_GENUS_G {
            return Err(ArithError::UnsupportedDimension(g));
        }
        if prime_power(p) != Some((p, 1)) {
            return Err(ArithError::NotPrime(p));
        }
        let n = 2 * g;
        if entries.len() != n * n {
            return Err(ArithError::Shape { expected: n * n, got: entries.len() });
        }
        let entries = entries.into_iter().map(|x| x.rem_euclid(i64::from(p)) as u32).collect();
        Ok(Self { g, p, entries })
    }

    pub fn identity(g: usize, p: u32) -> Result<Self, ArithError> {
        Self::scalar(g, p, 1)
    }

    pub fn scalar(g: usize, p: u32, s: i64) -> Result<Self, ArithError> {
        let n = 2 * g;
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = s;
        }
        Self::new(g, p, e)
    }

    /// The standard form `Ω = [[0, −I], [I, 0]]`.
    pub fn omega(g: usize, p: u32) -> Result<Self, ArithError> {
        let n = 2 * g;
        let mut e = vec![0; n * n];
        for i in 0..g {
            e[i * n + (g + i)] = -1;
            e[(g + i) * n + i] = 1;
        }
        Self::new(g, p, e)
    }

    /// Block matrix `[[x1, x2], [x3, x4]]` from four `g × g` blocks.
    pub fn from_blocks(g: usize, p: u32, blocks: [&[i64]; 4]) -> Result<Self, ArithError> {
        let n = 2 * g;
        let mut e = vec![0; n * n];
        for (k, blk) in blocks.iter().enumerate() {
            if blk.len() != g * g {
                return Err(ArithError::Shape { expected: g * g, got: blk.len() });
            }
            let (r0, c0) = ((k / 2) * g, (k % 2) * g);
            for i in 0..g {
                for j in 0..g {
                    e[(r0 + i) * n + c0 + j] = blk[i * g + j];
                }
            }
        }
        Self::new(g, p, e)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.p != other.p || self.g != other.g {
            return Err(ArithError::ModulusMismatch(self.p, other.p));
        }
        let n = self.dim();
        let p = u64::from(self.p);
        let mut e = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    s += u64::from(self.entries[i * n + k]) * u64::from(other.entries[k * n + j]);
                }
                e[i * n + j] = (s % p) as u32;
            }
        }
        Ok(Self { g: self.g, p: self.p, entries: e })
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut e = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                e[j * n + i] = self.entries[i * n + j];
            }
        }
        Self { g: self.g, p: self.p, entries: e }
    }

    pub fn scale(&self, s: u32) -> Self {
        let p = u64::from(self.p);
        let entries = self.entries.iter().map(|&x| (u64::from(x) * u64::from(s) % p) as u32).collect();
        Self { g: self.g, p: self.p, entries }
    }

    /// Returns `λ` when the matrix is a scalar `λ·I`.
    pub fn scalar_value(&self) -> Option<u32> {
        let n = self.dim();
        let lam = self.entries[0];
        let ok = (0..n).all(|i| (0..n).all(|j| self.entries[i * n + j] == if i == j { lam } else { 0 }));
        ok.then_some(lam)
    }

    /// The multiplier `λ` with `Mᵀ Ω M = λ Ω`, or `None` when `M ∉ GSp_{2g}`.
    pub fn gsp_mult(&self) -> Option<u32> {
        let omega = Self::omega(self.g, self.p).ok()?;
        let lhs = self.transpose().mul(&omega).ok()?.mul(self).ok()?;
        // Ω[g][0] = 1, so λ is read from that slot.
        let n = self.dim();
        let lam = lhs.entries[self.g * n];
        if lam == 0 || lhs != omega.scale(lam) {
            return None;
        }
        Some(lam)
    }
}

pub fn gsp_mult(x: &SymplecticMatrix) -> Option<u32> {
    x.gsp_mult()
}

/// The commutation test matrices: `[[A, 0], [0, −Aᵀ]]` for `A` running over
/// `I` and `I + E_ij` (these span all of `M_g`, so commuting with them is the
/// same as commuting with every `A ∈ GL_g`), plus the two unipotent shapes
/// `[[I, I], [0, −I]]` and `[[I, 0], [I, −I]]`.
pub fn gsp_test_matrices(g: usize, p: u32) -> Result<Vec<SymplecticMatrix>, ArithError> {
    let mut out = Vec::new();
    let ident: Vec<i64> = (0..g * g).map(|k| i64::from(k / g == k % g)).collect();
    let zero = vec![0i64; g * g];
    let neg_ident: Vec<i64> = ident.iter().map(|x| -x).collect();
    let mut shapes = vec![ident.clone()];
    for i in 0..g {
        for j in 0..g {
            let mut a = ident.clone();
            a[i * g + j] += 1;
            shapes.push(a);
        }
    }
    for a in &shapes {
        let mut neg_at = vec![0i64; g * g];
        for i in 0..g {
            for j in 0..g {
                neg_at[i * g + j] = -a[j * g + i];
            }
        }
        out.push(SymplecticMatrix::from_blocks(g, p, [a, &zero, &zero, &neg_at])?);
    }
    out.push(SymplecticMatrix::from_blocks(g, p, [&ident, &ident, &zero, &neg_ident])?);
    out.push(SymplecticMatrix::from_blocks(g, p, [&ident, &zero, &ident, &neg_ident])?);
    Ok(out)
}

/// Whether `x ∈ GSp_{2g}(F_p)` commutes with every test matrix. When it does,
/// `x` is a scalar `λI` and its multiplier is `λ²`.
pub fn gsp_centralizer_is_scalar(g: usize, p: u32, x: &SymplecticMatrix) -> Result<bool, ArithError> {
    if x.g != g || x.p != p {
        return Err(ArithError::ModulusMismatch(x.p, p));
    }
    if p == 2 {
        return Err(ArithError::NotOddPrime(p));
    }
    if x.gsp_mult().is_none() {
        return Err(ArithError::NotSimilitude);
    }
    for z in gsp_test_matrices(g, p)? {
        if x.mul(&z)? != z.mul(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
