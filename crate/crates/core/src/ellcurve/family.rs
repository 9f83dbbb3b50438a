//! Universal families over genus-0 modular curves, stored in a versioned data
//! file, and their identity checks by specialization over prime fields.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::expr::Expr;
use super::poly::{rational_degree, ConicFunction, PolyFp};
use super::{Fp, Ring, WeierstrassCurve};
use crate::error::CurveError;

const FAMILY_TABLE_JSON: &str = include_str!("../../data/families.json");
/// SHA-256 of `data/families.json`.
pub const FAMILY_TABLE_SHA256: &str = "7691ab2fc09240bb61f996d62a0bb06b4d4c08eff565c3cb03e9e84ee4b51a58";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    /// Function field of `a² + b² + 1 = 0`.
    Conic,
    /// `Q(t)`.
    Line,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub label: String,
    pub base: Base,
    pub a: String,
    pub b: String,
}

impl FamilySpec {
    pub fn expressions(&self) -> Result<(Expr, Expr), CurveError> {
        let (a, b) = (Expr::parse(&self.a)?, Expr::parse(&self.b)?);
        let allowed: &[char] = match self.base {
            Base::Conic => &['a', 'b'],
            Base::Line => &['t'],
        };
        for v in a.variables().into_iter().chain(b.variables()) {
            if !allowed.contains(&v) {
                return Err(CurveError::UnknownVariable(v.to_string()));
            }
        }
        Ok((a, b))
    }

    /// `(level, index, genus)` from a label `level.index.genus.n`.
    pub fn label_triple(&self) -> Result<(u32, u64, i64), CurveError> {
        let parts: Vec<&str> = self.label.split('.').collect();
        let bad = || CurveError::Field(format!("malformed label {}", self.label));
        if parts.len() < 3 {
            return Err(bad());
        }
        Ok((parts[0].parse().map_err(|_| bad())?, parts[1].parse().map_err(|_| bad())?, parts[2].parse().map_err(|_| bad())?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyTable {
    pub version: u32,
    pub families: Vec<FamilySpec>,
}

impl FamilyTable {
    /// The bundled table, after checking its digest.
    pub fn builtin() -> Result<Self, CurveError> {
        Self::from_json_checked(FAMILY_TABLE_JSON, FAMILY_TABLE_SHA256)
    }

    pub fn from_json_checked(json: &str, sha256_hex: &str) -> Result<Self, CurveError> {
        let got: String = Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        if got != sha256_hex {
            return Err(CurveError::Checksum(format!("expected {sha256_hex}, got {got}")));
        }
        serde_json::from_str(json).map_err(|e| CurveError::Field(e.to_string()))
    }

    pub fn get(&self, label: &str) -> Option<&FamilySpec> {
        self.families.iter().find(|f| f.label == label)
    }
}

/// Solutions of `a² + b² = −1` over `F_p`, in order of `b` then `a`, at most
/// `count` of them.
pub fn conic_points(p: u64, count: usize) -> Vec<(u64, u64)> {
    assert!(p % 2 == 1, "p must be odd");
    let mut roots: Vec<Vec<u64>> = vec![Vec::new(); p as usize];
    for x in 0..p {
        roots[(x * x % p) as usize].push(x);
    }
    let mut out = Vec::new();
    for b in 0..p {
        let target = (2 * p - 1 - b * b % p) % p;
        for &a in &roots[target as usize] {
            if out.len() == count {
                return out;
            }
            out.push((a, b));
        }
    }
    out
}

/// The first `count` primes above `floor`.
pub fn primes_above(floor: u64, count: usize) -> Vec<u64> {
    (floor + 1..).filter(|&n| crate::modarith::is_prime(n)).take(count).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FamilyCheckConfig {
    pub primes: usize,
    pub points_per_prime: usize,
    /// Primes are taken above this bound.
    pub prime_floor: u64,
    pub seed: u64,
}

impl Default for FamilyCheckConfig {
    fn default() -> Self {
        FamilyCheckConfig { primes: 25, points_per_prime: 40, prime_floor: 1000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheckReport {
    pub label: String,
    pub base: Base,
    pub primes: Vec<u64>,
    pub specializations: usize,
    pub nonsingular: usize,
    /// Identity failures at nonsingular specializations.
    pub counterexamples: Vec<String>,
    /// Degree of `j` on the base curve, measured over the first primes.
    pub j_degree: Option<usize>,
    /// The covering degree implied by the label when `−I ∉ G`: index / 2.
    pub expected_j_degree: u64,
    /// Informational; not part of `passed`.
    pub j_degree_matches_label: bool,
    /// No counterexamples, and nonsingular at nine in ten specializations
    /// or more.
    pub passed: bool,
}

/// Relations among twists by −1, 2, −2 and the 2-isogeny with kernel
/// `{O, (0,0)}`, at one nonsingular specialization.
fn lattice_failures(e: &WeierstrassCurve<Fp>) -> Result<Vec<String>, CurveError> {
    let mut out = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            out.push(what.to_string());
        }
    };
    let j = e.j_invariant()?;
    let iso = e.two_isogenous()?;
    check(!iso.is_singular(), "2-isogenous curve is singular");
    for d in [-1, 2, -2] {
        let dd = e.a.from_i64(d);
        let t = e.twist(&dd)?;
        check(t.discriminant() == dd.pow(6).mul(&e.discriminant()), "discriminant of twist");
        check(t.j_invariant().ok() == Some(j), "j of twist");
        check(t.two_isogenous()? == iso.twist(&dd)?, "isogeny commutes with twist");
    }
    let minus = e.a.from_i64(-1);
    check(e.twist(&minus)?.twist(&minus)? == *e, "twist by -1 is an involution");
    check(e.twist(&e.a.from_i64(2))?.twist(&minus)? == e.twist(&e.a.from_i64(-2))?, "twists compose");
    let back = iso.two_isogenous()?;
    check(back == WeierstrassCurve::new(e.a.from_i64(4).mul(&e.a), e.b.from_i64(16).mul(&e.b)), "dual isogeny scaling");
    check(back.j_invariant().ok() == Some(j), "j after two isogenies");
    Ok(out)
}

/// Degree of the j-map of the family over `F_p`: the degree of `j − c` for a
/// random `c`, pushed down to the `b`-line for conic bases.
pub fn j_map_degree(spec: &FamilySpec, p: u64, rng: &mut impl Rng) -> Result<Option<usize>, CurveError> {
    let (ea, eb) = spec.expressions()?;
    let c = Fp::new(rng.gen_range(1..p) as i64, p);
    match spec.base {
        Base::Line => {
            let t = PolyFp::x(p);
            let env = |_: char| Some(t.clone());
            let e = WeierstrassCurve::new(ea.eval(&t, &env)?, eb.eval(&t, &env)?);
            let disc = e.discriminant();
            let num = e.c4().pow(3).sub(&disc.mul(&PolyFp::constant(c)));
            Ok(rational_degree(&num, &disc))
        }
        Base::Conic => {
            let (a, b) = (ConicFunction::a(p), ConicFunction::b(p));
            let env = |v: char| match v {
                'a' => Some(a.clone()),
                'b' => Some(b.clone()),
                _ => None,
            };
            let e = WeierstrassCurve::new(ea.eval(&a, &env)?, eb.eval(&a, &env)?);
            let disc = e.discriminant();
            let cc = ConicFunction { p_part: PolyFp::constant(c), q_part: PolyFp::constant(Fp::new(0, p)) };
            let num = e.c4().pow(3).sub(&disc.mul(&cc));
            Ok(rational_degree(&num.norm(), &disc.norm()))
        }
    }
}

/// Specializes the family at `points_per_prime` points over each of
/// `primes` primes and checks the twist/isogeny relations at every
/// nonsingular one.
pub fn family_identity_check(spec: &FamilySpec, cfg: &FamilyCheckConfig) -> Result<FamilyCheckReport, CurveError> {
    let (ea, eb) = spec.expressions()?;
    let (_, index, _) = spec.label_triple()?;
    let primes = primes_above(cfg.prime_floor, cfg.primes);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut specializations, mut nonsingular) = (0, 0);
    let mut counterexamples = Vec::new();
    for &p in &primes {
        let zero = Fp::new(0, p);
        let points: Vec<(u64, u64)> = match spec.base {
            Base::Conic => {
                let mut all = conic_points(p, usize::MAX);
                all.shuffle(&mut rng);
                all.truncate(cfg.points_per_prime);
                all
            }
            Base::Line => {
                let mut all: Vec<u64> = (0..p).collect();
                all.shuffle(&mut rng);
                all.into_iter().take(cfg.points_per_prime).map(|t| (t, 0)).collect()
            }
        };
        for (x, y) in points {
            specializations += 1;
            let (fx, fy) = (Fp::new(x as i64, p), Fp::new(y as i64, p));
            let env = |v: char| match (spec.base, v) {
                (Base::Conic, 'a') | (Base::Line, 't') => Some(fx),
                (Base::Conic, 'b') => Some(fy),
                _ => None,
            };
            if spec.base == Base::Conic && !fx.square().add(&fy.square()).add(&zero.one_like()).is_zero() {
                return Err(CurveError::Identity(format!("({x}, {y}) is not on the conic mod {p}")));
            }
            let e = WeierstrassCurve::new(ea.eval(&zero, &env)?, eb.eval(&zero, &env)?);
            if e.is_singular() {
                continue;
            }
            nonsingular += 1;
            for f in lattice_failures(&e)? {
                counterexamples.push(format!("p={p} point=({x},{y}): {f}"));
            }
        }
    }
    let mut j_degree = None;
    for &p in primes.iter().take(3) {
        j_degree = j_degree.max(j_map_degree(spec, p, &mut rng)?);
    }
    let expected_j_degree = index / 2;
    // Nonsingular on a dense set: all but a small fraction of points.
    let dense = nonsingular * 10 >= specializations * 9;
    let passed = counterexamples.is_empty() && dense;
    Ok(FamilyCheckReport {
        label: spec.label.clone(),
        base: spec.base,
        primes,
        specializations,
        nonsingular,
        counterexamples,
        j_degree,
        expected_j_degree,
        j_degree_matches_label: j_degree == Some(expected_j_degree as usize),
        passed,
    })
}
