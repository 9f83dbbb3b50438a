//! Finite-level open subgroups of `GL₂(Z_p)`.
//!
//! An [`OpenSubgroup`] is stored at a modulus `p^k`: the subgroup of
//! `GL₂(Z_p)` it denotes is the full preimage of the stored element set.
//! Element sets are frozen sorted arrays of packed matrices; membership is a
//! binary search.

mod builder;
mod frattini;
mod lattice;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::GroupError;
use crate::modarith::{gl2_order, pack4, prime_power, unpack4, PackedRing, ResidueMatrix};

pub(crate) use builder::GroupBuilder;
pub use frattini::{det_class_mod8, FrattiniQuotient};
pub use lattice::{gl2_generators, subgroup_classes, unit_group_generators};

/// Default cap on the number of elements of any one subgroup.
pub const DEFAULT_ELEMENT_BUDGET: usize = 1 << 25;
/// Default cap on the number of cosets enumerated for conjugacy work.
pub const DEFAULT_ORBIT_BUDGET: usize = 4096;

/// JSON form of a subgroup: generators only, never the element set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub prime: u32,
    pub modulus: u32,
    pub generators: Vec<[u32; 4]>,
}

#[derive(Clone)]
pub struct OpenSubgroup {
    prime: u32,
    ring: PackedRing,
    generators: Vec<u32>,
    elements: Arc<[u32]>,
    level: OnceLock<u32>,
}

impl std::fmt::Debug for OpenSubgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OpenSubgroup")
            .field("modulus", &self.modulus())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

impl PartialEq for OpenSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.elements == other.elements
    }
}

impl Eq for OpenSubgroup {}

fn check_modulus(modulus: u32) -> Result<(u32, PackedRing), GroupError> {
    let (p, _) = prime_power(modulus).ok_or(crate::error::ArithError::NotPrimePower(modulus))?;
    Ok((p, PackedRing::new(modulus)?))
}

impl OpenSubgroup {
    /// The subgroup generated by `gens` at `modulus`.
    pub fn closure(gens: &[ResidueMatrix], modulus: u32) -> Result<Self, GroupError> {
        Self::closure_with_budget(gens, modulus, DEFAULT_ELEMENT_BUDGET)
    }

    pub fn closure_with_budget(gens: &[ResidueMatrix], modulus: u32, budget: usize) -> Result<Self, GroupError> {
        let (prime, ring) = check_modulus(modulus)?;
        let mut words = Vec::with_capacity(gens.len());
        for g in gens {
            if g.modulus() != modulus {
                return Err(crate::error::ArithError::ModulusMismatch(g.modulus(), modulus).into());
            }
            if !g.is_invertible() {
                return Err(GroupError::NonInvertibleGenerator(g.to_string()));
            }
            words.push(g.pack()?);
        }
        Self::closure_words(prime, ring, &words, budget)
    }

    pub(crate) fn closure_words(prime: u32, ring: PackedRing, words: &[u32], budget: usize) -> Result<Self, GroupError> {
        let mut b = GroupBuilder::trivial(ring, budget, 0);
        for &w in words {
            b.add(w)?;
        }
        let (elements, gens) = b.finish();
        Ok(Self::from_parts(prime, ring, gens, elements))
    }

    pub(crate) fn from_parts(prime: u32, ring: PackedRing, generators: Vec<u32>, elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { prime, ring, generators, elements: elements.into(), level: OnceLock::new() }
    }

    /// Closure of `extra` together with an existing group.
    pub(crate) fn extend_words(&self, extra: &[u32], budget: usize) -> Result<Self, GroupError> {
        let mut b = GroupBuilder::from_group(self.ring, &self.elements, &self.generators, budget, 0);
        for &w in extra {
            b.add(w)?;
        }
        let (elements, gens) = b.finish();
        Ok(Self::from_parts(self.prime, self.ring, gens, elements))
    }

    /// All of `GL₂(Z/modulus)`.
    pub fn full(modulus: u32) -> Result<Self, GroupError> {
        let gens = gl2_generators(modulus)?;
        Self::closure(&gens, modulus)
    }

    pub fn from_spec(spec: &SubgroupSpec) -> Result<Self, GroupError> {
        let (p, _) = prime_power(spec.modulus).ok_or(crate::error::ArithError::NotPrimePower(spec.modulus))?;
        if p != spec.prime {
            return Err(GroupError::WrongPrime { prime: spec.prime, modulus: spec.modulus });
        }
        let gens = spec
            .generators
            .iter()
            .map(|e| ResidueMatrix::from_entries(spec.modulus, *e))
            .collect::<Result<Vec<_>, _>>()?;
        Self::closure(&gens, spec.modulus)
    }

    pub fn to_spec(&self) -> SubgroupSpec {
        SubgroupSpec {
            prime: self.prime,
            modulus: self.modulus(),
            generators: self.generators.iter().map(|&w| unpack4(w)).collect(),
        }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn modulus(&self) -> u32 {
        self.ring.modulus()
    }

    pub fn ring(&self) -> PackedRing {
        self.ring
    }

    pub fn generators(&self) -> Vec<ResidueMatrix> {
        self.generators.iter().map(|&w| self.ring.to_matrix(w)).collect()
    }

    pub fn generator_words(&self) -> &[u32] {
        &self.generators
    }

    /// Sorted packed elements.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains_word(&self, w: u32) -> bool {
        self.elements.binary_search(&w).is_ok()
    }

    pub fn contains(&self, x: &ResidueMatrix) -> bool {
        x.modulus() == self.modulus() && x.pack().map(|w| self.contains_word(w)).unwrap_or(false)
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.contains(&ResidueMatrix::scalar(self.modulus(), -1))
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.generators.iter().all(|&g| other.contains_word(g))
    }

    /// `[GL₂(Z/modulus) : H]`, which is also the index of the full preimage in
    /// `GL₂(Z_p)`.
    pub fn index(&self) -> u64 {
        gl2_order(self.modulus()).expect("prime power") / self.order() as u64
    }

    /// Smallest `p^j` such that the group is the full preimage of its image
    /// mod `p^j`, i.e. contains every element `≡ I mod p^j`.
    pub fn level(&self) -> u32 {
        *self.level.get_or_init(|| {
            let n = self.modulus();
            let (p, k) = prime_power(n).expect("prime power");
            if self.order() as u64 == gl2_order(n).expect("prime power") {
                return 1;
            }
            // depth[j] = #{x ∈ H : x ≡ I mod p^j}, for j ≤ k.
            let mut depth = vec![0usize; k as usize + 1];
            for &w in self.elements.iter() {
                let [a, b, c, d] = unpack4(w);
                let mut j = 0;
                let mut q = 1u32;
                while j < k {
                    let q2 = q * p;
                    if (a + q2 - 1) % q2 != 0 || b % q2 != 0 || c % q2 != 0 || (d + q2 - 1) % q2 != 0 {
                        break;
                    }
                    q = q2;
                    j += 1;
                }
                depth[j as usize] += 1;
            }
            for j in (0..k as usize).rev() {
                depth[j] += depth[j + 1];
            }
            let mut q = p;
            for j in 1..=k {
                // Γ(p^j)/Γ(p^k) has p^{4(k-j)} elements.
                if depth[j as usize] == (p as usize).pow(4 * (k - j)) {
                    return q;
                }
                q *= p;
            }
            n
        })
    }

    /// Image under reduction to a divisor `m` of the modulus.
    pub fn reduce(&self, m: u32) -> Result<Self, GroupError> {
        let n = self.modulus();
        if m == 0 || n % m != 0 {
            return Err(crate::error::ArithError::NotDivisor { divisor: m, modulus: n }.into());
        }
        let (_, ring) = check_modulus(m)?;
        let mut elements: Vec<u32> = self.elements.iter().map(|&w| PackedRing::reduce_word(w, m)).collect();
        elements.sort_unstable();
        elements.dedup();
        let mut gens: Vec<u32> = self
            .generators
            .iter()
            .map(|&w| PackedRing::reduce_word(w, m))
            .filter(|&w| w != ring.identity())
            .collect();
        gens.dedup();
        Ok(Self::from_parts(self.prime, ring, gens, elements))
    }

    /// Full preimage at a multiple `m` of the modulus.
    pub fn preimage(&self, m: u32) -> Result<Self, GroupError> {
        self.preimage_with_budget(m, DEFAULT_ELEMENT_BUDGET)
    }

    pub fn preimage_with_budget(&self, m: u32, budget: usize) -> Result<Self, GroupError> {
        let n = self.modulus();
        if m % n != 0 {
            return Err(crate::error::ArithError::NotDivisor { divisor: n, modulus: m }.into());
        }
        let (p, _) = check_modulus(m)?;
        if p != self.prime {
            return Err(GroupError::WrongPrime { prime: self.prime, modulus: m });
        }
        let ring = PackedRing::new(m)?;
        let r = m / n;
        let fiber = (r as usize).pow(4);
        if self.order().saturating_mul(fiber) > budget {
            return Err(GroupError::ElementBudget { budget });
        }
        let mut elements = Vec::with_capacity(self.order() * fiber);
        for &w in self.elements.iter() {
            let e = unpack4(w);
            for t in 0..fiber as u32 {
                let x = [t % r, t / r % r, t / (r * r) % r, t / (r * r * r)];
                elements.push(pack4([e[0] + n * x[0], e[1] + n * x[1], e[2] + n * x[2], e[3] + n * x[3]]));
            }
        }
        elements.sort_unstable();
        let mut gens = self.generators.clone();
        gens.extend(kernel_generators(m, n)?);
        Ok(Self::from_parts(self.prime, ring, gens, elements))
    }

    /// The group reduced to the modulus `max(level, floor)`.
    pub fn at_level(&self, floor: u32) -> Result<Self, GroupError> {
        let target = self.level().max(floor);
        if target >= self.modulus() {
            return Ok(self.clone());
        }
        self.reduce(target)
    }

    /// `{det h mod m : h ∈ H}` as a sorted list.
    pub fn det_image(&self, m: u32) -> Result<Vec<u32>, GroupError> {
        let n = self.modulus();
        if m == 0 || n % m != 0 {
            return Err(crate::error::ArithError::NotDivisor { divisor: m, modulus: n }.into());
        }
        let dets: Vec<u32> = self.generators.iter().map(|&w| self.ring.det(w) % m).collect();
        Ok(cyclic_closure_mod(&dets, m))
    }

    /// Whether `det(H) = Z₂^×`, certified by surjectivity mod 8.
    pub fn det_surjective_2adic(&self) -> Result<bool, GroupError> {
        if self.prime != 2 {
            return Err(GroupError::WrongPrime { prime: 2, modulus: self.modulus() });
        }
        if self.modulus() < 8 {
            return Err(GroupError::ModulusTooSmall { modulus: self.modulus(), needed: 8 });
        }
        Ok(self.det_image(8)? == [1, 3, 5, 7])
    }

    pub fn is_p_group(&self) -> bool {
        let mut n = self.order();
        while n % self.prime as usize == 0 {
            n /= self.prime as usize;
        }
        n == 1
    }

    pub fn is_two_group(&self) -> bool {
        self.order().is_power_of_two()
    }

    /// Closure of `H ∪ {−I}`.
    pub fn adjoin_minus_identity(&self) -> Result<Self, GroupError> {
        let minus = ResidueMatrix::scalar(self.modulus(), -1).pack()?;
        if self.contains_word(minus) {
            return Ok(self.clone());
        }
        self.extend_words(&[minus], DEFAULT_ELEMENT_BUDGET)
    }

    /// `H ∩ SL₂`.
    pub fn special_part(&self) -> Result<Self, GroupError> {
        let one = 1 % self.modulus();
        let elements: Vec<u32> = self.elements.iter().copied().filter(|&w| self.ring.det(w) == one).collect();
        self.subgroup_from_elements(elements)
    }

    /// Wraps a sorted element list known to be a subgroup, recovering a small
    /// generating set greedily.
    pub(crate) fn subgroup_from_elements(&self, elements: Vec<u32>) -> Result<Self, GroupError> {
        let mut b = GroupBuilder::trivial(self.ring, elements.len(), elements.len());
        for &w in &elements {
            if b.len() == elements.len() {
                break;
            }
            b.add(w)?;
        }
        let gens = b.gens().to_vec();
        Ok(Self::from_parts(self.prime, self.ring, gens, elements))
    }

    pub fn conjugate(&self, g: &ResidueMatrix) -> Result<Self, GroupError> {
        let gw = g.pack()?;
        let gi = self.ring.inv(gw);
        let mut elements: Vec<u32> = self.elements.iter().map(|&h| self.ring.conj(gw, gi, h)).collect();
        elements.sort_unstable();
        let gens = self.generators.iter().map(|&h| self.ring.conj(gw, gi, h)).collect();
        Ok(Self::from_parts(self.prime, self.ring, gens, elements))
    }

    /// Representatives `g` of the left cosets `gH` in `GL₂(Z/modulus)`.
    pub fn left_coset_reps(&self, budget: usize) -> Result<Vec<ResidueMatrix>, GroupError> {
        Ok(self.left_coset_rep_words(budget)?.into_iter().map(|w| self.ring.to_matrix(w)).collect())
    }

    pub(crate) fn left_coset_rep_words(&self, budget: usize) -> Result<Vec<u32>, GroupError> {
        let ring = self.ring;
        let index = self.index();
        if index > budget as u64 {
            return Err(GroupError::OrbitBudget { budget });
        }
        let ambient: Vec<u32> = gl2_generators(self.modulus())?.iter().map(|g| g.pack().expect("packable")).collect();
        let mut reps = vec![ring.identity()];
        if (self.order() as u64) < index.saturating_mul(8) {
            // Label each coset yH by its smallest element.
            let label = |y: u32| self.elements.iter().map(|&h| ring.mul(y, h)).min().expect("nonempty");
            let mut seen: rustc_hash::FxHashSet<u32> = rustc_hash::FxHashSet::default();
            seen.insert(label(ring.identity()));
            let mut i = 0;
            while i < reps.len() && (reps.len() as u64) < index {
                for &s in &ambient {
                    let y = ring.mul(s, reps[i]);
                    if seen.insert(label(y)) {
                        reps.push(y);
                    }
                }
                i += 1;
            }
        } else {
            let mut inv = vec![ring.identity()];
            let mut i = 0;
            while i < reps.len() && (reps.len() as u64) < index {
                for &s in &ambient {
                    let y = ring.mul(s, reps[i]);
                    if !inv.iter().any(|&ri| self.contains_word(ring.mul(ri, y))) {
                        reps.push(y);
                        inv.push(ring.inv(y));
                        if reps.len() as u64 == index {
                            break;
                        }
                    }
                }
                i += 1;
            }
        }
        debug_assert_eq!(reps.len() as u64, index);
        Ok(reps)
    }

    /// Lexicographically smallest sorted element list over all conjugates
    /// `gHg⁻¹`, `g ∈ GL₂(Z/modulus)`.
    pub fn canonical_elements(&self, budget: usize) -> Result<Vec<u32>, GroupError> {
        Ok(self.canonical_form(budget)?.0)
    }

    /// The canonical conjugate and a conjugator `g` realizing it.
    pub(crate) fn canonical_form(&self, budget: usize) -> Result<(Vec<u32>, u32), GroupError> {
        let ring = self.ring;
        let reps = self.left_coset_rep_words(budget)?;
        // Stage one: the smallest element of each conjugate. Only conjugates
        // attaining the overall minimum need a full sort.
        let mins: Vec<(u32, u32, u32)> = reps
            .iter()
            .map(|&g| {
                let gi = ring.inv(g);
                let m = self.elements.iter().map(|&h| ring.conj(g, gi, h)).min().expect("nonempty");
                (m, g, gi)
            })
            .collect();
        let best_min = mins.iter().map(|t| t.0).min().expect("at least one coset");
        let mut best: Option<(Vec<u32>, u32)> = None;
        for &(m, g, gi) in &mins {
            if m != best_min {
                continue;
            }
            let mut c: Vec<u32> = self.elements.iter().map(|&h| ring.conj(g, gi, h)).collect();
            c.sort_unstable();
            if best.as_ref().map_or(true, |b| c < b.0) {
                best = Some((c, g));
            }
        }
        Ok(best.expect("nonempty"))
    }

    /// The canonical conjugate with generators chosen greedily from its
    /// sorted element list, so that they depend only on the conjugacy class.
    pub fn canonical_representative(&self, budget: usize) -> Result<Self, GroupError> {
        let (elements, _) = self.canonical_form(budget)?;
        self.subgroup_from_elements(elements)
    }

    /// Byte string that is equal for two subgroups at the same modulus iff
    /// they are conjugate in `GL₂(Z/modulus)`.
    pub fn canonical_key(&self) -> Result<Vec<u8>, GroupError> {
        self.canonical_key_with_budget(DEFAULT_ORBIT_BUDGET)
    }

    pub fn canonical_key_with_budget(&self, budget: usize) -> Result<Vec<u8>, GroupError> {
        let elems = self.canonical_elements(budget)?;
        let mut out = Vec::with_capacity(4 + 4 * elems.len());
        out.extend_from_slice(&self.modulus().to_le_bytes());
        for w in elems {
            out.extend_from_slice(&w.to_le_bytes());
        }
        Ok(out)
    }

    /// SHA-256 of [`Self::canonical_key`], hex encoded.
    pub fn canonical_digest(&self) -> Result<String, GroupError> {
        self.canonical_digest_with_budget(DEFAULT_ORBIT_BUDGET)
    }

    pub fn canonical_digest_with_budget(&self, budget: usize) -> Result<String, GroupError> {
        let key = self.canonical_key_with_budget(budget)?;
        Ok(Sha256::digest(&key).iter().map(|b| format!("{b:02x}")).collect())
    }

    /// Some `g` with `g H g⁻¹ = other`, if the two are conjugate.
    pub fn conjugator_to(&self, other: &Self, budget: usize) -> Result<Option<ResidueMatrix>, GroupError> {
        let reps = self.left_coset_rep_words(budget)?;
        Ok(self.conjugator_among(&reps, other).map(|g| self.ring.to_matrix(g)))
    }

    /// As [`Self::conjugator_to`], with precomputed left coset representatives.
    pub(crate) fn conjugator_among(&self, reps: &[u32], other: &Self) -> Option<u32> {
        if self.modulus() != other.modulus() || self.order() != other.order() {
            return None;
        }
        let ring = self.ring;
        reps.iter().copied().find(|&g| {
            let gi = ring.inv(g);
            self.generators.iter().all(|&h| other.contains_word(ring.conj(g, gi, h)))
        })
    }

    /// A conjugation-invariant fingerprint: order, modulus, and the multiset
    /// of (trace, determinant) pairs.
    pub fn conjugacy_fingerprint(&self) -> u64 {
        let n = self.modulus();
        let mut counts = vec![0u64; (n * n) as usize];
        for &w in self.elements.iter() {
            let [a, _, _, d] = unpack4(w);
            let tr = (a + d) % n;
            counts[(tr * n + self.ring.det(w)) as usize] += 1;
        }
        let mut h = Sha256::new();
        h.update(n.to_le_bytes());
        h.update((self.order() as u64).to_le_bytes());
        for c in counts {
            h.update(c.to_le_bytes());
        }
        let d = h.finalize();
        u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
    }

    /// Subgroup generated by `{[x, g] : x ∈ A, g ∈ gens(H)}` and closed under
    /// conjugation by `H`, i.e. `[A, H]` for `A` normal in `H`.
    pub fn commutator_with(&self, a: &Self) -> Result<Self, GroupError> {
        let ring = self.ring;
        let mut seeds = Vec::new();
        for &x in a.elements.iter() {
            for &g in &self.generators {
                seeds.push(ring.commutator(x, g));
            }
        }
        self.normal_closure_words(&seeds, DEFAULT_ELEMENT_BUDGET)
    }

    /// Smallest normal subgroup of `H` containing `seeds`.
    pub(crate) fn normal_closure_words(&self, seeds: &[u32], budget: usize) -> Result<Self, GroupError> {
        let ring = self.ring;
        let mut b = GroupBuilder::trivial(ring, budget, 0);
        for &s in seeds {
            b.add(s)?;
        }
        let conj_by: Vec<(u32, u32)> = self.generators.iter().map(|&g| (g, ring.inv(g))).collect();
        loop {
            let mut grew = false;
            let current: Vec<u32> = b.gens().to_vec();
            for &x in &current {
                for &(g, gi) in &conj_by {
                    if b.add(ring.conj(g, gi, x))? {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let (elements, gens) = b.finish();
        Ok(Self::from_parts(self.prime, ring, gens, elements))
    }

    /// Lower central series `H = γ₁ ⊇ γ₂ ⊇ …` until it stabilizes.
    pub fn lower_central_series(&self) -> Result<Vec<Self>, GroupError> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_with(last)?;
            if next.order() == last.order() {
                break;
            }
            let trivial = next.order() == 1;
            series.push(next);
            if trivial {
                break;
            }
        }
        Ok(series)
    }

    /// Nilpotent iff the lower central series reaches `{I}`.
    pub fn is_nilpotent(&self) -> Result<bool, GroupError> {
        Ok(self.lower_central_series()?.last().expect("nonempty").order() == 1)
    }

    /// Nilpotent iff every Sylow subgroup is normal: for each prime `q`, the
    /// elements of `q`-power order number exactly `|H|_q`.
    pub fn is_nilpotent_by_sylow(&self) -> bool {
        let n = self.order() as u64;
        crate::modarith::prime_factors(n).into_iter().all(|q| {
            let mut part = 1u64;
            let mut m = n;
            while m % q == 0 {
                m /= q;
                part *= q;
            }
            let count = self
                .elements
                .iter()
                .filter(|&&w| {
                    let mut o = element_order(self.ring, w);
                    while o % q == 0 {
                        o /= q;
                    }
                    o == 1
                })
                .count() as u64;
            count == part
        })
    }
}

/// Order of a packed element by repeated multiplication (small groups only).
pub(crate) fn element_order(ring: PackedRing, w: u32) -> u64 {
    let id = ring.identity();
    let mut x = w;
    let mut k = 1;
    while x != id {
        x = ring.mul(x, w);
        k += 1;
    }
    k
}

/// Generators of the kernel of reduction `GL₂(Z/m) → GL₂(Z/n)`: the
/// elementary matrices `I + n·p^t·E_ij` for every layer `n·p^t < m`. One layer
/// alone is not enough when `n = 2`: squares of `I + 2E_ii` miss `I + 4E_ii`.
pub(crate) fn kernel_generators(m: u32, n: u32) -> Result<Vec<u32>, GroupError> {
    let (p, _) = prime_power(m).ok_or(crate::error::ArithError::NotPrimePower(m))?;
    let mut out = Vec::new();
    let mut q = n;
    while q < m {
        let q64 = i64::from(q);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let mut e = [1i64, 0, 0, 1];
            e[i * 2 + j] += q64;
            out.push(ResidueMatrix::new(m, e[0], e[1], e[2], e[3])?.pack()?);
        }
        q *= p;
    }
    Ok(out)
}

/// Subgroup of `(Z/m)^×` generated by `gens`, sorted.
pub(crate) fn cyclic_closure_mod(gens: &[u32], m: u32) -> Vec<u32> {
    let one = 1 % m;
    let mut set = BTreeSet::from([one]);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = (u64::from(x) * u64::from(g) % u64::from(m)) as u32;
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests;
