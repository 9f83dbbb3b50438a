//! Truncated 2-adic matrix logarithm and exponential on `I + 4·M₂(Z₂)`, and
//! the rank-4 determinant check over all pairs of classes in `GL₂(Z/4)`.
//!
//! Arithmetic is in `Z/2^64` (wrapping `u64`). A [`PrecisionMatrix`] carries
//! the number of low-order bits known to be correct and a lower bound on the
//! 2-adic valuation of its entries. A product `XY` is known to
//! `min(e_X + v_Y, e_Y + v_X)` bits, which is what lets long series keep
//! their precision.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::LieError;
use crate::modarith::{unpack4, ResidueMatrix};
use crate::subgroup::OpenSubgroup;

pub const WORD_BITS: u32 = 64;
/// Precision at which `d` is reported.
pub const CHECK_BITS: u32 = 50;
pub const DEFAULT_MAX_RETRIES: u32 = 8;

#[inline]
fn v2(x: u64) -> u32 {
    if x == 0 {
        WORD_BITS
    } else {
        x.trailing_zeros()
    }
}

#[inline]
fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Inverse of an odd `a` mod 2^64 by Newton iteration.
fn inv_odd(a: u64) -> u64 {
    debug_assert!(a & 1 == 1);
    let mut x = a; // correct to 3 bits
    for _ in 0..5 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
    }
    x
}

/// A 2×2 matrix over `Z/2^64` known to `precision` bits, with every entry of
/// valuation at least `valuation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionMatrix {
    entries: [u64; 4],
    precision: u32,
    valuation: u32,
}

impl PrecisionMatrix {
    /// Exact integer matrix (entries taken mod 2^64).
    pub fn exact(entries: [i64; 4]) -> Self {
        Self::with_precision(entries.map(|e| e as u64), WORD_BITS)
    }

    pub fn with_precision(entries: [u64; 4], precision: u32) -> Self {
        let precision = precision.min(WORD_BITS);
        let entries = entries.map(|e| e & low_mask(precision));
        let valuation = entries.iter().map(|&e| v2(e)).min().expect("4 entries").min(precision);
        Self { entries, precision, valuation }
    }

    pub fn identity() -> Self {
        Self::exact([1, 0, 0, 1])
    }

    pub fn zero() -> Self {
        Self::exact([0; 4])
    }

    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    /// Entries as signed integers in `(−2^{e−1}, 2^{e−1}]`, `e` the precision.
    pub fn signed_entries(&self) -> [i128; 4] {
        let e = self.precision;
        self.entries.map(|x| {
            let x = i128::from(x);
            let m = 1i128 << e;
            if x > m / 2 {
                x - m
            } else {
                x
            }
        })
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    fn rebuild(entries: [u64; 4], precision: u32, valuation_bound: u32) -> Self {
        let precision = precision.min(WORD_BITS);
        let entries = entries.map(|e| e & low_mask(precision));
        let actual = entries.iter().map(|&e| v2(e)).min().expect("4 entries");
        Self { entries, precision, valuation: valuation_bound.max(actual.min(precision)) }
    }

    pub fn add(&self, o: &Self) -> Self {
        let e = [0, 1, 2, 3].map(|i| self.entries[i].wrapping_add(o.entries[i]));
        Self::rebuild(e, self.precision.min(o.precision), self.valuation.min(o.valuation))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let e = [0, 1, 2, 3].map(|i| self.entries[i].wrapping_sub(o.entries[i]));
        Self::rebuild(e, self.precision.min(o.precision), self.valuation.min(o.valuation))
    }

    pub fn neg(&self) -> Self {
        Self::zero().sub(self)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = o.entries;
        let m = |x: u64, y: u64, z: u64, w: u64| x.wrapping_mul(y).wrapping_add(z.wrapping_mul(w));
        let entries = [m(a, e, b, g), m(a, f, b, h), m(c, e, d, g), m(c, f, d, h)];
        let precision = (self.precision + o.valuation).min(o.precision + self.valuation);
        Self::rebuild(entries, precision, self.valuation + o.valuation)
    }

    /// Multiplication by an integer scalar.
    pub fn scale(&self, s: i64) -> Self {
        let s = s as u64;
        let e = self.entries.map(|x| x.wrapping_mul(s));
        Self::rebuild(e, self.precision + v2(s), self.valuation + v2(s))
    }

    /// Exact 2-adic division by `n ≠ 0`: multiply by the inverse of the odd
    /// part and shift out `v₂(n)` bits, which are lost from the precision.
    pub fn div_exact(&self, n: u64) -> Result<Self, LieError> {
        assert!(n != 0, "division by zero");
        let v = v2(n);
        if self.valuation < v {
            return Err(LieError::PrecisionUnderflow { got: self.valuation, needed: v });
        }
        let inv = inv_odd(n >> v);
        let e = self.entries.map(|x| (x >> v).wrapping_mul(inv));
        Ok(Self::rebuild(e, self.precision - v, self.valuation - v))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Whether `self ≡ other` modulo `2^bits` (and both are known that far).
    pub fn congruent(&self, other: &Self, bits: u32) -> bool {
        let m = low_mask(bits);
        self.precision >= bits
            && other.precision >= bits
            && (0..4).all(|i| (self.entries[i] ^ other.entries[i]) & m == 0)
    }
}

/// `log(M) = Σ (−1)^{n+1} (M − I)^n / n` for `M ≡ I mod 4`.
pub fn mat_log(m: &PrecisionMatrix) -> Result<PrecisionMatrix, LieError> {
    let x = m.sub(&PrecisionMatrix::identity());
    if x.precision < 2 || x.valuation < 2 {
        return Err(LieError::Precondition("I"));
    }
    let w = x.valuation;
    let mut sum = PrecisionMatrix::zero();
    let mut power = PrecisionMatrix::identity();
    let mut n: u64 = 1;
    loop {
        // Every term from n on has valuation ≥ n·w − log₂ n, increasing in n.
        let tail = (n as u32).saturating_mul(w).saturating_sub(63 - n.leading_zeros());
        if tail >= x.precision.min(WORD_BITS) {
            let mut s = sum;
            s.precision = s.precision.min(tail);
            return Ok(PrecisionMatrix::rebuild(s.entries, s.precision, s.valuation));
        }
        power = power.mul(&x);
        let term = power.div_exact(n)?;
        sum = if n % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
        n += 1;
    }
}

/// `exp(X) = Σ X^n / n!` for `X ≡ 0 mod 4`, by `T_n = T_{n−1}·X / n`.
pub fn mat_exp(x: &PrecisionMatrix) -> Result<PrecisionMatrix, LieError> {
    if x.precision < 2 || x.valuation < 2 {
        return Err(LieError::Precondition("0"));
    }
    let w = x.valuation;
    let mut sum = PrecisionMatrix::identity();
    let mut term = PrecisionMatrix::identity();
    let mut n: u64 = 1;
    loop {
        // v₂(n!) ≤ n − 1, so terms from n on have valuation ≥ n(w − 1) + 1.
        let tail = (n as u32).saturating_mul(w - 1).saturating_add(1);
        if tail >= x.precision.min(WORD_BITS) {
            let mut s = sum;
            s.precision = s.precision.min(tail);
            return Ok(PrecisionMatrix::rebuild(s.entries, s.precision, s.valuation));
        }
        term = term.mul(x).div_exact(n)?;
        sum = sum.add(&term);
        n += 1;
    }
}

/// `[X, Y] = XY − YX`.
pub fn lie_bracket(x: &PrecisionMatrix, y: &PrecisionMatrix) -> PrecisionMatrix {
    x.mul(y).sub(&y.mul(x))
}

/// Determinant mod `2^64` of the 4×4 matrix with the given columns, with the
/// number of correct bits.
fn det4(cols: [&PrecisionMatrix; 4]) -> (u64, u32) {
    let m: [[u64; 4]; 4] = cols.map(|c| c.entries);
    // Laplace expansion over permutations; entries are columns m[j][i].
    let mut det = 0u64;
    let perms = permutations4();
    for (p, sign) in perms {
        let mut t = 1u64;
        for j in 0..4 {
            t = t.wrapping_mul(m[j][p[j]]);
        }
        det = if sign { det.wrapping_add(t) } else { det.wrapping_sub(t) };
    }
    let vsum: u32 = cols.iter().map(|c| c.valuation).sum();
    let precision = cols.iter().map(|c| c.precision + vsum - c.valuation).min().expect("4 columns").min(WORD_BITS);
    (det & low_mask(precision), precision)
}

fn permutations4() -> Vec<([usize; 4], bool)> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (0..i).all(|j| p[i] != p[j])) {
                        let inversions = (0..4).map(|i| (0..i).filter(|&j| p[j] > p[i]).count()).sum::<usize>();
                        out.push((p, inversions % 2 == 0));
                    }
                }
            }
        }
    }
    out
}

/// `d = det[log A¹², log B¹², [log A¹², log B¹²], [[log A¹², log B¹²], log A¹²]]`
/// mod `2^50`.
pub fn d_determinant(a: &PrecisionMatrix, b: &PrecisionMatrix) -> Result<u64, LieError> {
    for m in [a, b] {
        let [p, q, r, s] = m.entries;
        if (p.wrapping_mul(s).wrapping_sub(q.wrapping_mul(r))) & 1 == 0 {
            return Err(LieError::Precondition("an invertible matrix mod 2"));
        }
    }
    let la = mat_log(&a.pow(12))?;
    let lb = mat_log(&b.pow(12))?;
    let c = lie_bracket(&la, &lb);
    let cc = lie_bracket(&c, &la);
    let (d, prec) = det4([&la, &lb, &c, &cc]);
    if prec < CHECK_BITS {
        return Err(LieError::PrecisionUnderflow { got: prec, needed: CHECK_BITS });
    }
    Ok(d & low_mask(CHECK_BITS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieCheckRecord {
    /// Index of the pair in the sorted enumeration of `GL₂(Z/4)²`.
    pub class: usize,
    pub a_bar: [u32; 4],
    pub b_bar: [u32; 4],
    pub a_lift: [u8; 4],
    pub b_lift: [u8; 4],
    /// `d mod 2^50`.
    pub d: u64,
    /// 2-adic valuation of `d` (below 50 for an accepted record).
    pub valuation: u32,
    /// Rejected lifts before this one.
    pub retries: u32,
}

/// The 96 elements of `GL₂(Z/4)` with entries in `{0,1,2,3}`, sorted.
pub fn gl2_mod4_elements() -> Vec<[u32; 4]> {
    OpenSubgroup::full(4).expect("modulus 4").elements().iter().map(|&w| unpack4(w)).collect()
}

/// The lift `Ā + 4·(a₁ a₂; a₃ a₄)`.
pub fn lift_from_mod4(bar: [u32; 4], a: [u8; 4]) -> PrecisionMatrix {
    PrecisionMatrix::exact([0, 1, 2, 3].map(|i| i64::from(bar[i]) + 4 * i64::from(a[i])))
}

/// Checks one pair of classes, trying up to `max_retries` random lifts.
pub fn check_class(class: usize, a_bar: [u32; 4], b_bar: [u32; 4], seed: u64, max_retries: u32) -> Result<LieCheckRecord, LieError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(class as u64);
    for attempt in 0..max_retries {
        let a_lift: [u8; 4] = std::array::from_fn(|_| rng.gen_range(1..=3));
        let b_lift: [u8; 4] = std::array::from_fn(|_| rng.gen_range(1..=3));
        let d = d_determinant(&lift_from_mod4(a_bar, a_lift), &lift_from_mod4(b_bar, b_lift))?;
        if d != 0 {
            return Ok(LieCheckRecord { class, a_bar, b_bar, a_lift, b_lift, d, valuation: v2(d), retries: attempt });
        }
    }
    Err(LieError::RetriesExhausted { class, retries: max_retries })
}

/// All `96²` pairs, in class order.
pub fn lie_check_all_classes(seed: u64, max_retries: u32) -> Result<Vec<LieCheckRecord>, LieError> {
    let elems = gl2_mod4_elements();
    let n = elems.len();
    (0..n * n).into_par_iter().map(|c| check_class(c, elems[c / n], elems[c % n], seed, max_retries)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub trials: usize,
    /// `exp(log M) ≢ M mod 2^50`, or either series failing.
    pub failures: usize,
    /// Smallest tracked precision of `log M`.
    pub min_log_precision: u32,
}

/// `exp(log M) = M mod 2^50` for random `M ≡ I mod 4`.
pub fn round_trip_check(seed: u64, trials: usize) -> RoundTripReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RoundTripReport { trials, failures: 0, min_log_precision: WORD_BITS };
    for _ in 0..trials {
        let m = random_near_identity(&mut rng, 62);
        let ok = mat_log(&m).and_then(|l| {
            report.min_log_precision = report.min_log_precision.min(l.precision());
            mat_exp(&l)
        });
        if !matches!(ok, Ok(e) if e.congruent(&m, CHECK_BITS)) {
            report.failures += 1;
        }
    }
    report
}

/// Random `M ≡ I mod 4` with entries below `2^bits`.
pub fn random_near_identity(rng: &mut impl Rng, bits: u32) -> PrecisionMatrix {
    let mut r = || 4 * rng.gen_range(0..1i64 << (bits - 2));
    PrecisionMatrix::exact([1 + r(), r(), r(), 1 + r()])
}

/// Integer matrix to a mod-`2^k` residue matrix (`k ≤ 8`), for interop.
pub fn to_residue(m: &PrecisionMatrix, k: u32) -> Result<ResidueMatrix, crate::error::ArithError> {
    let n = 1u32 << k;
    let e = m.entries.map(|x| (x & u64::from(n - 1)) as u32);
    ResidueMatrix::from_entries(n, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Signed, ToPrimitive, Zero};

    #[test]
    fn log_of_identity_is_zero() {
        let l = mat_log(&PrecisionMatrix::identity()).unwrap();
        assert_eq!(l.entries(), [0; 4]);
        assert!(l.precision() >= 50);
    }

    #[test]
    fn log_of_five() {
        let l = mat_log(&PrecisionMatrix::exact([5, 0, 0, 1])).unwrap();
        assert_eq!(l.entries()[0] % 64, 60);
        assert_eq!(l.entries()[1..], [0, 0, 0]);
        assert!(l.precision() >= 50);
        let back = mat_exp(&l).unwrap();
        assert!(back.congruent(&PrecisionMatrix::exact([5, 0, 0, 1]), 50));
    }

    #[test]
    fn exp_of_zero_and_inverse_law() {
        assert!(mat_exp(&PrecisionMatrix::zero()).unwrap().congruent(&PrecisionMatrix::identity(), 50));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = mat_log(&random_near_identity(&mut rng, 40)).unwrap();
            let p = mat_exp(&x).unwrap().mul(&mat_exp(&x.neg()).unwrap());
            assert!(p.congruent(&PrecisionMatrix::identity(), 50));
        }
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let m = random_near_identity(&mut rng, 62);
            let l = mat_log(&m).unwrap();
            assert!(l.precision() >= 50 && l.valuation() >= 2);
            assert!(mat_exp(&l).unwrap().congruent(&m, 50), "{m:?}");
        }
        for _ in 0..1000 {
            let x = random_near_identity(&mut rng, 62).sub(&PrecisionMatrix::identity());
            assert!(mat_log(&mat_exp(&x).unwrap()).unwrap().congruent(&x, 50));
        }
    }

    #[test]
    fn log_of_square_is_twice_log() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let m = random_near_identity(&mut rng, 62);
            let a = mat_log(&m.mul(&m)).unwrap();
            let b = mat_log(&m).unwrap().scale(2);
            assert!(a.congruent(&b, 50));
        }
    }

    #[test]
    fn preconditions() {
        assert!(mat_log(&PrecisionMatrix::exact([3, 0, 0, 1])).is_err());
        assert!(mat_exp(&PrecisionMatrix::exact([2, 0, 0, 0])).is_err());
        assert!(d_determinant(&PrecisionMatrix::exact([2, 0, 0, 1]), &PrecisionMatrix::identity()).is_err());
    }

    #[test]
    fn brackets() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let e12 = PrecisionMatrix::exact([0, 1, 0, 0]);
        let e21 = PrecisionMatrix::exact([0, 0, 1, 0]);
        assert_eq!(lie_bracket(&e12, &e21).signed_entries(), [1, 0, 0, -1]);
        for _ in 0..100 {
            let r = |rng: &mut ChaCha8Rng| PrecisionMatrix::exact(std::array::from_fn(|_| rng.gen_range(-1000..1000)));
            let (x, y, z) = (r(&mut rng), r(&mut rng), r(&mut rng));
            assert_eq!(lie_bracket(&x, &x).entries(), [0; 4]);
            assert_eq!(lie_bracket(&x.add(&y), &z), lie_bracket(&x, &z).add(&lie_bracket(&y, &z)));
            assert_eq!(lie_bracket(&x.scale(7), &y), lie_bracket(&x, &y).scale(7));
        }
    }

    #[test]
    fn degenerate_d() {
        let a = PrecisionMatrix::exact([5, 4, 8, 13]);
        assert_eq!(d_determinant(&a, &a).unwrap(), 0);
        let b = PrecisionMatrix::exact([3, 0, 0, 7]);
        let c = PrecisionMatrix::exact([5, 0, 0, 9]);
        assert_eq!(d_determinant(&b, &c).unwrap(), 0);
    }

    #[test]
    fn d_is_nonzero_for_a_generic_pair_and_conjugation_stable() {
        let a = PrecisionMatrix::exact([1 + 4, 4 * 2, 4 * 3, 1 + 4]);
        let b = PrecisionMatrix::exact([4 * 3, 1 + 4 * 2, 1 + 4, 4 * 2]);
        let d = d_determinant(&a, &b).unwrap();
        assert_ne!(d, 0);
        // Conjugating both by g ≡ I mod 4 keeps d nonzero.
        let g = PrecisionMatrix::exact([5, 4, 0, 1]);
        let gi = PrecisionMatrix::exact([1, -4, 0, 5]).div_exact(5).unwrap();
        assert!(g.mul(&gi).congruent(&PrecisionMatrix::identity(), 64));
        let ca = g.mul(&a).mul(&gi);
        let cb = g.mul(&b).mul(&gi);
        assert_ne!(d_determinant(&ca, &cb).unwrap(), 0);
    }

    #[test]
    fn gl2_mod4_has_96_elements() {
        assert_eq!(gl2_mod4_elements().len(), 96);
    }

    #[test]
    fn class_check_is_deterministic() {
        let e = gl2_mod4_elements();
        let r1 = check_class(17, e[3], e[40], 9, 8).unwrap();
        let r2 = check_class(17, e[3], e[40], 9, 8).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.valuation < CHECK_BITS);
    }

    /// Exact rational evaluation of `log(1 + x)` truncated far beyond 2^64.
    fn exact_log(x: i64, terms: u32) -> u64 {
        let xr = BigRational::from_integer(BigInt::from(x));
        let mut sum = BigRational::zero();
        let mut p = BigRational::one();
        for n in 1..=terms {
            p = &p * &xr;
            let t = &p / BigRational::from_integer(BigInt::from(n));
            sum = if n % 2 == 1 { sum + t } else { sum - t };
        }
        let modulus = BigInt::one() << 64;
        let den = sum.denom().clone();
        assert!((&den % 2u32).is_one(), "2-adically integral");
        let inv = den.modinv(&modulus).unwrap();
        let v = (sum.numer() * inv) % &modulus;
        let v = if v.is_negative() { v + &modulus } else { v };
        v.to_u64().unwrap()
    }

    #[test]
    fn tracked_precision_is_a_true_lower_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = 4 * rng.gen_range(-(1i64 << 20)..(1i64 << 20));
            let l = mat_log(&PrecisionMatrix::exact([1 + x, 0, 0, 1])).unwrap();
            let exact = exact_log(x, 80);
            let m = low_mask(l.precision());
            assert_eq!(l.entries()[0] & m, exact & m, "x = {x}, precision {}", l.precision());
        }
    }
}
