//! Incremental subgroup closure (Dimino's algorithm) over packed words.

use rustc_hash::FxHashSet;

use crate::error::GroupError;
use crate::modarith::{unpack4, PackedRing};

/// Membership structure: a dense bitmap when the whole matrix space fits in
/// 2^28 bits, a hash set otherwise.
pub(crate) enum MemberSet {
    Bits { words: Vec<u64>, n: u32 },
    Hash(FxHashSet<u32>),
}

const DENSE_LIMIT: u64 = 1 << 28;

impl MemberSet {
    pub(crate) fn new(modulus: u32, expected: usize) -> Self {
        let space = u64::from(modulus).pow(4);
        let dense = space <= 1 << 24 || (space <= DENSE_LIMIT && expected >= 1 << 16);
        if dense {
            MemberSet::Bits { words: vec![0; space.div_ceil(64) as usize], n: modulus }
        } else {
            let mut h = FxHashSet::default();
            h.reserve(expected);
            MemberSet::Hash(h)
        }
    }

    #[inline]
    fn dense_index(n: u32, w: u32) -> usize {
        let [a, b, c, d] = unpack4(w);
        (a + n * (b + n * (c + n * d))) as usize
    }

    #[inline]
    pub(crate) fn contains(&self, w: u32) -> bool {
        match self {
            MemberSet::Bits { words, n } => {
                let i = Self::dense_index(*n, w);
                words[i >> 6] >> (i & 63) & 1 == 1
            }
            MemberSet::Hash(h) => h.contains(&w),
        }
    }

    /// Returns `true` if `w` was newly inserted.
    #[inline]
    pub(crate) fn insert(&mut self, w: u32) -> bool {
        match self {
            MemberSet::Bits { words, n } => {
                let i = Self::dense_index(*n, w);
                let bit = 1u64 << (i & 63);
                let fresh = words[i >> 6] & bit == 0;
                words[i >> 6] |= bit;
                fresh
            }
            MemberSet::Hash(h) => h.insert(w),
        }
    }
}

/// A finite matrix group under construction. Elements are kept as a union of
/// right cosets of the previous stage so that adding a generator only touches
/// coset representatives.
pub(crate) struct GroupBuilder {
    ring: PackedRing,
    elems: Vec<u32>,
    set: MemberSet,
    gens: Vec<u32>,
    budget: usize,
}

impl GroupBuilder {
    pub(crate) fn trivial(ring: PackedRing, budget: usize, expected: usize) -> Self {
        let id = ring.identity();
        let mut set = MemberSet::new(ring.modulus(), expected);
        set.insert(id);
        Self { ring, elems: vec![id], set, gens: Vec::new(), budget }
    }

    /// Starts from an already closed group with known generators.
    pub(crate) fn from_group(ring: PackedRing, elements: &[u32], gens: &[u32], budget: usize, expected: usize) -> Self {
        let mut set = MemberSet::new(ring.modulus(), expected.max(elements.len()));
        for &e in elements {
            set.insert(e);
        }
        Self { ring, elems: elements.to_vec(), set, gens: gens.to_vec(), budget }
    }

    pub(crate) fn len(&self) -> usize {
        self.elems.len()
    }

    pub(crate) fn gens(&self) -> &[u32] {
        &self.gens
    }

    /// Adds `g`; returns whether the group grew.
    pub(crate) fn add(&mut self, g: u32) -> Result<bool, GroupError> {
        if self.set.contains(g) {
            return Ok(false);
        }
        let ring = self.ring;
        let base = self.elems.clone();
        self.gens.push(g);
        let mut reps = vec![ring.identity()];
        let push_coset = |y: u32, this: &mut Self, reps: &mut Vec<u32>| -> Result<(), GroupError> {
            if this.elems.len() + base.len() > this.budget {
                return Err(GroupError::ElementBudget { budget: this.budget });
            }
            for &h in &base {
                let e = ring.mul(h, y);
                this.set.insert(e);
                this.elems.push(e);
            }
            reps.push(y);
            Ok(())
        };
        push_coset(g, self, &mut reps)?;
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for k in 0..self.gens.len() {
                let y = ring.mul(r, self.gens[k]);
                if !self.set.contains(y) {
                    push_coset(y, self, &mut reps)?;
                }
            }
            i += 1;
        }
        Ok(true)
    }

    /// Sorted elements and the generators that were actually used.
    pub(crate) fn finish(self) -> (Vec<u32>, Vec<u32>) {
        let mut e = self.elems;
        e.sort_unstable();
        (e, self.gens)
    }
}
