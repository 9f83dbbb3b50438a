//! Minimality of open subgroups of `GL₂(Z₂)`: single-group verdicts, the
//! pruned census, and non-minimality witnesses at odd primes.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, SearchError};
use crate::modarith::{gcd, PackedRing, ResidueMatrix};
use crate::modcurve;
use crate::subgroup::{
    cyclic_closure_mod, subgroup_classes, OpenSubgroup, SubgroupSpec, DEFAULT_ELEMENT_BUDGET,
};

const UNITS_MOD8: [u32; 4] = [1, 3, 5, 7];

/// Why a group is not minimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A maximal subgroup whose determinant is still surjective.
    MaximalSubgroup { subgroup: SubgroupSpec, index_in_parent: u64, det_image_mod8: Vec<u32> },
    /// A precondition of minimality that fails outright.
    FailedPrecondition { reason: String, det_image_mod8: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub verdict: bool,
    pub level: u32,
    pub is_two_group: bool,
    pub det_surjective: bool,
    /// `None` when the group is not a 2-group.
    pub frattini_rank: Option<usize>,
    pub certifying_modulus: u32,
    /// Present when the verdict was also recomputed at a larger modulus.
    pub recheck_modulus: Option<u32>,
    /// Set for finite-level certificates: the verdict concerns the finite
    /// group at this modulus, not its full preimage.
    pub verified_up_to_modulus: Option<u32>,
    /// For a minimal group, the det images mod 8 of its three maximal
    /// subgroups.
    pub maximal_det_images: Vec<Vec<u32>>,
    pub witness: Option<Witness>,
}

/// Modulus at which maximal subgroups of a level-`level` group are visible.
pub fn certifying_modulus(level: u32) -> u32 {
    (2 * level).max(8)
}

/// `h` reduced or lifted to modulus `m`.
pub fn at_modulus(h: &OpenSubgroup, m: u32) -> Result<OpenSubgroup, GroupError> {
    use std::cmp::Ordering::*;
    match h.modulus().cmp(&m) {
        Equal => Ok(h.clone()),
        Greater => h.reduce(m),
        Less => h.preimage(m),
    }
}

/// Decides minimality of the full preimage of `h` in `GL₂(Z₂)`.
pub fn is_minimal(h: &OpenSubgroup) -> Result<MinimalityReport, GroupError> {
    if h.prime() != 2 {
        return Err(GroupError::WrongPrime { prime: 2, modulus: h.modulus() });
    }
    let level = h.level();
    let m = certifying_modulus(level);
    let mut report = evaluate(&at_modulus(h, m)?)?;
    report.level = level;
    if level < 4 {
        let again = evaluate(&at_modulus(h, 2 * m)?)?;
        if again.verdict != report.verdict || again.frattini_rank != report.frattini_rank {
            return Err(GroupError::Invalid(format!("verdict at {} disagrees with verdict at {m}", 2 * m)));
        }
        report.recheck_modulus = Some(2 * m);
    }
    Ok(report)
}

/// Verdict for the finite group `h` at its own modulus, treated as a
/// certificate up to that modulus.
pub fn finite_level_report(h: &OpenSubgroup) -> Result<MinimalityReport, GroupError> {
    let mut r = evaluate(h)?;
    r.level = h.level();
    r.verified_up_to_modulus = Some(h.modulus());
    Ok(r)
}

fn evaluate(h: &OpenSubgroup) -> Result<MinimalityReport, GroupError> {
    if h.prime() != 2 {
        return Err(GroupError::WrongPrime { prime: 2, modulus: h.modulus() });
    }
    let det8 = h.det_image(8)?;
    let det_surjective = det8 == UNITS_MOD8;
    let is_two_group = h.is_two_group();
    let mut report = MinimalityReport {
        verdict: false,
        level: 0,
        is_two_group,
        det_surjective,
        frattini_rank: None,
        certifying_modulus: h.modulus(),
        recheck_modulus: None,
        verified_up_to_modulus: None,
        maximal_det_images: Vec::new(),
        witness: None,
    };
    if !det_surjective {
        report.witness =
            Some(Witness::FailedPrecondition { reason: "det is not surjective mod 8".into(), det_image_mod8: det8 });
        if is_two_group {
            report.frattini_rank = Some(h.frattini_quotient()?.rank());
        }
        return Ok(report);
    }
    if !is_two_group {
        let k = sylow_witness(h)?;
        report.witness = Some(Witness::MaximalSubgroup {
            subgroup: k.to_spec(),
            index_in_parent: (h.order() / k.order()) as u64,
            det_image_mod8: k.det_image(8)?,
        });
        return Ok(report);
    }
    let q = h.frattini_quotient()?;
    let r = q.rank();
    report.frattini_rank = Some(r);
    let [d1, d2] = q.det_functionals_mod8();
    let span = [d1, d2, d1 ^ d2];
    if r == 2 {
        report.verdict = true;
        for f in 1..4 {
            report.maximal_det_images.push(q.hyperplane_subgroup(f)?.det_image(8)?);
        }
        report.maximal_det_images.sort();
    } else {
        let f = (1..1u64 << r).find(|f| !span.contains(f)).expect("rank ≥ 3 leaves a free hyperplane");
        let k = q.hyperplane_subgroup(f)?;
        report.witness = Some(Witness::MaximalSubgroup {
            subgroup: k.to_spec(),
            index_in_parent: 2,
            det_image_mod8: k.det_image(8)?,
        });
    }
    Ok(report)
}

/// For `h` whose image mod 2 has order 3 or 6: the elements whose image mod 2
/// lies in a fixed Sylow 2-subgroup of that image. This has index 3, hence is
/// maximal, and has the same determinant image as `h`.
pub fn sylow_witness(h: &OpenSubgroup) -> Result<OpenSubgroup, GroupError> {
    if h.prime() != 2 {
        return Err(GroupError::WrongPrime { prime: 2, modulus: h.modulus() });
    }
    let image = h.reduce(2)?;
    let ring2 = image.ring();
    let sylow: Vec<u32> = match image.order() {
        3 => vec![ring2.identity()],
        6 => {
            let s = *image
                .elements()
                .iter()
                .find(|&&w| w != ring2.identity() && ring2.square(w) == ring2.identity())
                .expect("S3 has involutions");
            vec![ring2.identity(), s]
        }
        n => return Err(GroupError::Invalid(format!("image mod 2 has order {n}; the group is a 2-group"))),
    };
    let elements: Vec<u32> =
        h.elements().iter().copied().filter(|&w| sylow.contains(&PackedRing::reduce_word(w, 2))).collect();
    let k = h.subgroup_from_elements(elements)?;
    if k.order() * 3 != h.order() {
        return Err(GroupError::Invalid("Sylow preimage does not have index 3".into()));
    }
    Ok(k)
}

/// Samples `A, B ∈ H` with `det A ≡ 3`, `det B ≡ 5 (mod 8)` and returns
/// `⟨A, B⟩` at `H`'s modulus with its finite-level report.
pub fn random_two_generator(h: &OpenSubgroup, seed: u64) -> Result<(OpenSubgroup, MinimalityReport), SearchError> {
    if h.prime() != 2 || h.modulus() < 8 {
        return Err(GroupError::ModulusTooSmall { modulus: h.modulus(), needed: 8 }.into());
    }
    if !h.det_surjective_2adic()? {
        return Err(GroupError::DetNotSurjective(8).into());
    }
    let ring = h.ring();
    let pick = |rng: &mut ChaCha8Rng, class: u32| -> Option<u32> {
        let cands: Vec<u32> = h.elements().iter().copied().filter(|&w| ring.det(w) % 8 == class).collect();
        (!cands.is_empty()).then(|| cands[rng.gen_range(0..cands.len())])
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = pick(&mut rng, 3).ok_or_else(|| SearchError::Verification("no element with det ≡ 3 mod 8".into()))?;
    let b = pick(&mut rng, 5).ok_or_else(|| SearchError::Verification("no element with det ≡ 5 mod 8".into()))?;
    two_generator(&ring.to_matrix(a), &ring.to_matrix(b))
}

/// `⟨A, B⟩` with its finite-level report.
pub fn two_generator(a: &ResidueMatrix, b: &ResidueMatrix) -> Result<(OpenSubgroup, MinimalityReport), SearchError> {
    let g = OpenSubgroup::closure(&[a.clone(), b.clone()], a.modulus())?;
    let r = finite_level_report(&g)?;
    Ok((g, r))
}

/// How the census moves from a group to smaller ones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Descent {
    /// To the preimages of the 2-dimensional subspaces of the Frattini
    /// quotient on which the det character is an isomorphism. Every minimal
    /// subgroup `M ⊆ K` lies in the preimage of its own image, so no minimal
    /// group is missed, and each step removes all non-minimal directions.
    #[default]
    FrattiniComplement,
    /// To the index-2 subgroups with surjective det.
    IndexTwo,
}

/// Census parameters. Every budget is enforced with a loud failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CensusConfig {
    pub level_bound: u32,
    /// `None` for no index bound.
    pub index_bound: Option<u64>,
    /// Keep only groups of this genus; branches of larger genus are pruned.
    pub genus: Option<i64>,
    /// Chooses the starting Sylow subgroup and the generator order.
    pub seed: u64,
    pub descent: Descent,
    pub element_budget: usize,
    pub orbit_budget: usize,
    pub node_budget: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self {
            level_bound: 64,
            index_bound: Some(96),
            genus: None,
            seed: 0,
            descent: Descent::default(),
            element_budget: DEFAULT_ELEMENT_BUDGET,
            orbit_budget: 1 << 16,
            node_budget: 1_000_000,
        }
    }
}

impl CensusConfig {
    fn index_ok(&self, index: u64) -> bool {
        self.index_bound.map_or(true, |b| index <= b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    /// `level.index.genus`.
    pub label: String,
    pub level: u32,
    pub index: u64,
    pub genus: i64,
    pub contains_minus_i: bool,
    pub frattini_rank: usize,
    /// Canonical conjugate, at modulus `max(8, level)`.
    pub group: SubgroupSpec,
    /// SHA-256 of the canonical key.
    pub canonical_key: String,
}

impl CensusEntry {
    pub fn subgroup(&self) -> Result<OpenSubgroup, GroupError> {
        OpenSubgroup::from_spec(&self.group)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub config: CensusConfig,
    pub entries: Vec<CensusEntry>,
    /// `(index, distinct classes examined at that index)`.
    pub nodes_per_index: Vec<(u64, usize)>,
    pub nodes_processed: usize,
}

/// Outcome of expanding one node of the descent.
struct Expansion {
    minimal_rank: Option<usize>,
    children: Vec<OpenSubgroup>,
}

/// Node modulus: `max(8, level)`.
fn node_modulus(level: u32) -> u32 {
    level.max(8)
}

fn root_sylow(seed: u64) -> Result<OpenSubgroup, GroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let involutions = [[1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 0]];
    let s = involutions[rng.gen_range(0..3)];
    let base = OpenSubgroup::closure(&[ResidueMatrix::from_entries(2, s)?], 2)?.preimage(8)?;
    let mut gens = base.generators();
    // Shuffle the generator order.
    for i in (1..gens.len()).rev() {
        gens.swap(i, rng.gen_range(0..=i));
    }
    let p = OpenSubgroup::closure(&gens, 8)?;
    debug_assert_eq!(p, base);
    Ok(p)
}

fn parity(x: u64) -> u64 {
    u64::from(x.count_ones() & 1)
}

fn expand(node: &OpenSubgroup, cfg: &CensusConfig) -> Result<Expansion, GroupError> {
    let work = 2 * node.modulus().max(8);
    let lifted = node.preimage_with_budget(work, cfg.element_budget)?;
    let q = lifted.frattini_quotient()?;
    let r = q.rank();
    if r == 2 {
        return Ok(Expansion { minimal_rank: Some(2), children: Vec::new() });
    }
    let [d1, d2] = q.det_functionals_mod8();
    let det_class = |v: u64| parity(v & d1) | parity(v & d2) << 1;
    let mut raw = Vec::new();
    match cfg.descent {
        Descent::IndexTwo => {
            if cfg.index_ok(node.index() * 2) {
                let span = [d1, d2, d1 ^ d2];
                for f in (1..1u64 << r).filter(|f| !span.contains(f)) {
                    raw.push(q.hyperplane_subgroup_with_budget(f, cfg.element_budget)?);
                }
            }
        }
        Descent::FrattiniComplement => {
            if cfg.index_ok(node.index() << (r - 2)) {
                let first: Vec<u64> = (0..1u64 << r).filter(|&v| det_class(v) == 1).collect();
                let second: Vec<u64> = (0..1u64 << r).filter(|&v| det_class(v) == 2).collect();
                for &w1 in &first {
                    for &w2 in &second {
                        raw.push(q.span_subgroup_with_budget(&[w1, w2], cfg.element_budget)?);
                    }
                }
            }
        }
    }
    let mut children = Vec::new();
    for child in raw {
        let level = child.level();
        if level > cfg.level_bound {
            continue;
        }
        let child = child.reduce(node_modulus(level))?;
        if let Some(g) = cfg.genus {
            if modcurve::genus(&child)?.genus > g {
                continue;
            }
        }
        children.push(child);
    }
    Ok(Expansion { minimal_rank: None, children })
}

/// Pending nodes of one index, deduplicated up to conjugacy.
#[derive(Default)]
struct Layer {
    nodes: Vec<OpenSubgroup>,
    /// Left coset representatives, computed on first comparison.
    reps: Vec<Option<Vec<u32>>>,
    buckets: HashMap<(u32, u64), Vec<usize>>,
}

impl Layer {
    fn insert(&mut self, h: OpenSubgroup, orbit_budget: usize) -> Result<(), GroupError> {
        let key = (h.level(), h.conjugacy_fingerprint());
        let bucket = self.buckets.entry(key).or_default();
        for &i in bucket.iter() {
            if self.reps[i].is_none() {
                self.reps[i] = Some(self.nodes[i].left_coset_rep_words(orbit_budget)?);
            }
            if self.nodes[i].conjugator_among(self.reps[i].as_deref().expect("just set"), &h).is_some() {
                return Ok(());
            }
        }
        bucket.push(self.nodes.len());
        self.nodes.push(h);
        self.reps.push(None);
        Ok(())
    }
}

/// All conjugacy classes of minimal subgroups of `GL₂(Z₂)` within the
/// configured level, index and genus bounds, by descent from a Sylow pro-2
/// subgroup. Nodes are processed in increasing index; children always have
/// larger index than their parent.
pub fn census(cfg: &CensusConfig) -> Result<CensusResult, SearchError> {
    if !cfg.level_bound.is_power_of_two() || cfg.level_bound > 128 {
        return Err(GroupError::Invalid(format!("level bound {} must be a power of 2 at most 128", cfg.level_bound)).into());
    }
    let mut result =
        CensusResult { config: cfg.clone(), entries: Vec::new(), nodes_per_index: Vec::new(), nodes_processed: 0 };
    let root = root_sylow(cfg.seed)?;
    if root.level() > cfg.level_bound || !cfg.index_ok(root.index()) {
        return Ok(result);
    }
    let mut queue: BTreeMap<u64, Layer> = BTreeMap::new();
    queue.entry(root.index()).or_default().nodes.push(root);
    let mut minimal = Vec::new();
    const CHUNK: usize = 16;
    while let Some((index, layer)) = queue.pop_first() {
        result.nodes_per_index.push((index, layer.nodes.len()));
        for chunk in layer.nodes.chunks(CHUNK) {
            result.nodes_processed += chunk.len();
            if result.nodes_processed > cfg.node_budget {
                return Err(SearchError::Budget {
                    processed: result.nodes_processed,
                    reason: format!("node budget {} exceeded", cfg.node_budget),
                });
            }
            let expansions: Vec<Result<Expansion, GroupError>> = chunk.par_iter().map(|n| expand(n, cfg)).collect();
            for (node, e) in chunk.iter().zip(expansions) {
                let e = e.map_err(|err| match err {
                    GroupError::ElementBudget { budget } => SearchError::Budget {
                        processed: result.nodes_processed,
                        reason: format!("element budget {budget} exceeded"),
                    },
                    other => other.into(),
                })?;
                if let Some(r) = e.minimal_rank {
                    minimal.push((node.clone(), r));
                }
                for child in e.children {
                    queue.entry(child.index()).or_default().insert(child, cfg.orbit_budget)?;
                }
            }
        }
    }
    let entries: Vec<Result<Option<CensusEntry>, GroupError>> =
        minimal.par_iter().map(|(h, r)| make_entry(h, *r, cfg)).collect();
    for e in entries {
        if let Some(e) = e? {
            result.entries.push(e);
        }
    }
    result.entries.sort_by(|a, b| (a.level, a.index, &a.canonical_key).cmp(&(b.level, b.index, &b.canonical_key)));
    Ok(result)
}

fn make_entry(h: &OpenSubgroup, rank: usize, cfg: &CensusConfig) -> Result<Option<CensusEntry>, GroupError> {
    let genus = modcurve::genus(h)?.genus;
    if cfg.genus.is_some_and(|g| g != genus) {
        return Ok(None);
    }
    let canon = h.canonical_representative(cfg.orbit_budget)?;
    Ok(Some(CensusEntry {
        label: format!("{}.{}.{}", h.level(), h.index(), genus),
        level: h.level(),
        index: h.index(),
        genus,
        contains_minus_i: h.contains_minus_identity(),
        frattini_rank: rank,
        group: canon.to_spec(),
        canonical_key: canon.canonical_digest_with_budget(cfg.orbit_budget)?,
    }))
}

/// Independent recheck of a census entry: minimality recomputed at twice the
/// level with the brute-force Frattini subgroup, and the three maximal
/// subgroups' det images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCheck {
    pub label: String,
    pub minimal: bool,
    pub frattini_rank: usize,
    pub maximal_det_images: Vec<Vec<u32>>,
    /// The three det images are the three index-2 subgroups of `(Z/8)^×`,
    /// each exactly once.
    pub det_images_ok: bool,
    pub genus_ok: bool,
}

pub fn recheck_entry(entry: &CensusEntry) -> Result<EntryCheck, GroupError> {
    let h = entry.subgroup()?;
    let lifted = at_modulus(&h, certifying_modulus(h.level()))?;
    let phi = lifted.frattini_subgroup_sweep()?;
    let q = lifted.frattini_quotient_from(phi)?;
    let rank = q.rank();
    let mut images = Vec::new();
    for f in 1..1u64 << rank {
        let k = q.hyperplane_subgroup(f)?;
        images.push(k.det_image(8)?);
    }
    images.sort();
    let expected: Vec<Vec<u32>> = vec![vec![1, 3], vec![1, 5], vec![1, 7]];
    let g = modcurve::genus(&h)?;
    Ok(EntryCheck {
        label: entry.label.clone(),
        minimal: rank == 2 && lifted.det_surjective_2adic()? && lifted.is_two_group(),
        frattini_rank: rank,
        det_images_ok: images == expected,
        maximal_det_images: images,
        genus_ok: g.integrality_holds() && g.genus == entry.genus && h.level() == entry.level && h.index() == entry.index,
    })
}

/// How a non-minimality witness at an odd prime was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStrategy {
    /// Preimage of a proper cyclic subgroup mod `p` with surjective det.
    ProperSubgroupPreimage,
    /// A random two-generator proper subgroup mod `p²`.
    RandomTwoGenerator,
    /// `⟨A⟩` with `det A` a primitive root mod `p²`.
    CyclicPrimitiveDet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddPrimeWitness {
    pub subgroup: SubgroupSpec,
    pub subgroup_order: usize,
    pub preimage_order: usize,
    pub strategy: WitnessStrategy,
    pub witness: SubgroupSpec,
    pub witness_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub prime: u32,
    pub classes_total: usize,
    pub det_surjective_classes: usize,
    pub minimal_count: usize,
    pub witnesses: Vec<OddPrimeWitness>,
}

fn is_odd_prime(p: u32) -> bool {
    p >= 3 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn units_mod(n: u32) -> usize {
    (1..n).filter(|&u| gcd(u64::from(u), u64::from(n)) == 1).count()
}

/// Checks that `k` is a proper subgroup of `g` with det surjective mod the
/// common modulus.
fn verify_odd_witness(g: &OpenSubgroup, k: &OpenSubgroup) -> Result<bool, GroupError> {
    let n = g.modulus();
    Ok(k.modulus() == n && k.is_subgroup_of(g) && k.order() < g.order() && k.det_image(n)?.len() == units_mod(n))
}

/// Every subgroup class of `GL₂(Z/p)` with surjective determinant gets a
/// proper subgroup of its preimage mod `p²` with surjective determinant.
pub fn falsify_odd_prime(p: u32, seed: u64) -> Result<FalsifyReport, SearchError> {
    if !is_odd_prime(p) {
        return Err(GroupError::Arith(crate::error::ArithError::NotOddPrime(p)).into());
    }
    let classes = subgroup_classes(p)?;
    let surj: Vec<&OpenSubgroup> = classes.iter().filter(|g| g.det_image(p).is_ok_and(|d| d.len() == (p - 1) as usize)).collect();
    let found: Vec<Result<OddPrimeWitness, SearchError>> =
        surj.par_iter().enumerate().map(|(i, g)| odd_witness(g, p, seed.wrapping_add(i as u64))).collect();
    let mut witnesses = Vec::new();
    for w in found {
        witnesses.push(w?);
    }
    Ok(FalsifyReport {
        prime: p,
        classes_total: classes.len(),
        det_surjective_classes: surj.len(),
        minimal_count: surj.len() - witnesses.len(),
        witnesses,
    })
}

fn odd_witness(g: &OpenSubgroup, p: u32, seed: u64) -> Result<OddPrimeWitness, SearchError> {
    let p2 = p * p;
    let big = g.preimage(p2)?;
    let ring = big.ring();
    let small_ring = g.ring();
    let finish = |strategy, k: OpenSubgroup| -> Result<OddPrimeWitness, SearchError> {
        if !verify_odd_witness(&big, &k)? {
            return Err(SearchError::Verification(format!("{strategy:?} witness failed for {:?}", g.to_spec())));
        }
        Ok(OddPrimeWitness {
            subgroup: g.to_spec(),
            subgroup_order: g.order(),
            preimage_order: big.order(),
            strategy,
            witness: k.to_spec(),
            witness_order: k.order(),
        })
    };
    // (a) a proper cyclic subgroup mod p with surjective det.
    let prim_p = |w: u32| cyclic_closure_mod(&[small_ring.det(w)], p).len() == (p - 1) as usize;
    for &x in g.elements() {
        if prim_p(x) {
            let c = OpenSubgroup::closure_words(p, small_ring, &[x], DEFAULT_ELEMENT_BUDGET)?;
            if c.order() < g.order() {
                return finish(WitnessStrategy::ProperSubgroupPreimage, c.preimage(p2)?);
            }
        }
    }
    // (b) random two-generator subgroups mod p².
    let units = units_mod(p2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let a = big.elements()[rng.gen_range(0..big.order())];
        let b = big.elements()[rng.gen_range(0..big.order())];
        let k = OpenSubgroup::closure_words(p, ring, &[a, b], DEFAULT_ELEMENT_BUDGET)?;
        if k.order() < big.order() && k.det_image(p2)?.len() == units {
            return finish(WitnessStrategy::RandomTwoGenerator, k);
        }
    }
    // (c) a cyclic subgroup with primitive-root determinant; proper because
    // the preimage contains the non-cyclic kernel of reduction.
    for &x in big.elements() {
        if cyclic_closure_mod(&[ring.det(x)], p2).len() == units {
            let k = OpenSubgroup::closure_words(p, ring, &[x], DEFAULT_ELEMENT_BUDGET)?;
            return finish(WitnessStrategy::CyclicPrimitiveDet, k);
        }
    }
    Err(SearchError::WitnessNotFound(format!("{:?}", g.to_spec())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyReport {
    pub prime: u32,
    pub modulus: u32,
    pub subgroups_tested: usize,
    pub nilpotent: usize,
    /// Nilpotent preimages whose det mod `p` leaves the squares.
    pub violations: Vec<SubgroupSpec>,
}

/// Every subgroup of `GL₂(Z/p)` (not just class representatives), as sorted
/// element sets.
fn all_subgroups(p: u32) -> Result<Vec<OpenSubgroup>, GroupError> {
    let full = OpenSubgroup::full(p)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in subgroup_classes(p)? {
        for &g in full.elements() {
            let h = c.conjugate(&full.ring().to_matrix(g))?;
            if seen.insert(h.elements().to_vec()) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// Over all subgroups of `GL₂(Z/p²)` containing the kernel of reduction mod
/// `p`: nilpotent ones have det mod `p` inside the squares.
pub fn nilpotent_det_squares(p: u32) -> Result<NilpotencyReport, SearchError> {
    if !is_odd_prime(p) {
        return Err(GroupError::Arith(crate::error::ArithError::NotOddPrime(p)).into());
    }
    let squares: BTreeSet<u32> = (1..p).map(|x| x * x % p).collect();
    let subs = all_subgroups(p)?;
    let mut report =
        NilpotencyReport { prime: p, modulus: p * p, subgroups_tested: subs.len(), nilpotent: 0, violations: Vec::new() };
    for s in &subs {
        let n = s.preimage(p * p)?;
        let nil = n.is_nilpotent()?;
        if nil != n.is_nilpotent_by_sylow() {
            return Err(SearchError::Verification(format!("nilpotency criteria disagree on {:?}", s.to_spec())));
        }
        if nil {
            report.nilpotent += 1;
            if !n.det_image(p)?.iter().all(|d| squares.contains(d)) {
                report.violations.push(n.to_spec());
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

/// A subgroup of `(Z/2^k)^×` that is all of `(Z/8)^×` mod 8 is everything,
/// for `3 ≤ k ≤ max_k`. These unit groups are `Z/2 × Z/2^{k−2}`, so every
/// subgroup is generated by two elements and pairs enumerate the lattice.
pub fn lemma_det_mod8_certifies(max_k: u32) -> LemmaReport {
    let mut report = LemmaReport { name: "det surjective mod 8 implies surjective".into(), cases: 0, failures: Vec::new() };
    for k in 3..=max_k {
        let n = 1u32 << k;
        let units: Vec<u32> = (1..n).step_by(2).collect();
        let mut lattice = BTreeSet::new();
        for &a in &units {
            for &b in &units {
                lattice.insert(cyclic_closure_mod(&[a, b], n));
            }
        }
        for u in &lattice {
            report.cases += 1;
            let mut mod8: Vec<u32> = u.iter().map(|x| x % 8).collect();
            mod8.sort_unstable();
            mod8.dedup();
            if mod8 == UNITS_MOD8 && u.len() != units.len() {
                report.failures.push(format!("mod {n}: {u:?}"));
            }
        }
    }
    report
}

/// Every subgroup of `GL₂(Z/8)` with surjective det that is not a 2-group has
/// a maximal subgroup (of index 3) with surjective det.
pub fn lemma_non_two_group_witness() -> Result<LemmaReport, SearchError> {
    let budget = 1536;
    let mut report = LemmaReport {
        name: "non-2-groups with surjective det have a maximal subgroup with surjective det".into(),
        cases: 0,
        failures: Vec::new(),
    };
    // 2-subgroups of a Sylow subgroup with surjective det, up to conjugacy.
    let sylow = OpenSubgroup::closure(&[ResidueMatrix::new(2, 1, 1, 0, 1).map_err(GroupError::from)?], 2)?.preimage(8)?;
    let mut keys = HashSet::from([sylow.canonical_key_with_budget(budget)?]);
    let mut two_groups = vec![sylow.clone()];
    let mut i = 0;
    while i < two_groups.len() {
        let q = two_groups[i].frattini_quotient()?;
        i += 1;
        let [d1, d2] = q.det_functionals_mod8();
        for f in 1..1u64 << q.rank() {
            if [d1, d2, d1 ^ d2].contains(&f) {
                continue;
            }
            let k = q.hyperplane_subgroup(f)?;
            if keys.insert(k.canonical_key_with_budget(budget)?) {
                two_groups.push(k);
            }
        }
    }
    let full = OpenSubgroup::full(8)?;
    let ring = full.ring();
    let order3: Vec<u32> = full.elements().iter().copied().filter(|&w| ring.pow(w, 3) == ring.identity() && w != ring.identity()).collect();
    let mut seen = HashSet::new();
    for s in &two_groups {
        for &c in &order3 {
            let h = s.extend_words(&[c], DEFAULT_ELEMENT_BUDGET)?;
            if !seen.insert(h.canonical_key_with_budget(budget)?) {
                continue;
            }
            report.cases += 1;
            let ok = h.det_surjective_2adic()?
                && !h.is_two_group()
                && sylow_witness(&h).is_ok_and(|k| k.order() * 3 == h.order() && k.det_surjective_2adic().unwrap_or(false));
            if !ok {
                report.failures.push(format!("{:?}", h.to_spec()));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
