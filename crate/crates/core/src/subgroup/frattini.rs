//! Frattini subgroups and quotients of finite 2-groups.

use super::{GroupBuilder, OpenSubgroup, DEFAULT_ELEMENT_BUDGET};
use crate::error::GroupError;
use crate::modarith::{PackedRing, ResidueMatrix};

/// `(Z/8)^× → F₂²`: 1 ↦ 0, 3 ↦ 1, 5 ↦ 2, 7 ↦ 3 (bitwise). An isomorphism,
/// since 3·5 ≡ 7.
#[inline]
pub fn det_class_mod8(u: u32) -> u8 {
    let u = u % 8;
    debug_assert!(u % 2 == 1);
    (((u >> 1) & 1) | (((u >> 2) & 1) << 1)) as u8
}

/// `H/Φ(H) ≅ F₂^r` with a chosen basis of coset representatives.
#[derive(Clone, Debug)]
pub struct FrattiniQuotient {
    ring: PackedRing,
    basis: Vec<u32>,
    phi: OpenSubgroup,
    reps: Vec<u32>,
    rep_inverses: Vec<u32>,
}

impl FrattiniQuotient {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<ResidueMatrix> {
        self.basis.iter().map(|&w| self.ring.to_matrix(w)).collect()
    }

    pub fn basis_words(&self) -> &[u32] {
        &self.basis
    }

    /// `Φ(H)`.
    pub fn phi(&self) -> &OpenSubgroup {
        &self.phi
    }

    /// Coordinates of `x` as a bitmask over the basis, or `None` if `x ∉ H`.
    pub fn coordinates_word(&self, x: u32) -> Option<u64> {
        (0..self.reps.len())
            .find(|&v| self.phi.contains_word(self.ring.mul(x, self.rep_inverses[v])))
            .map(|v| v as u64)
    }

    pub fn coordinates(&self, x: &ResidueMatrix) -> Option<u64> {
        self.coordinates_word(x.pack().ok()?)
    }

    /// The two `F₂`-linear functionals (bitmasks over the basis) of
    /// `det mod 8` composed with [`det_class_mod8`].
    pub fn det_functionals_mod8(&self) -> [u64; 2] {
        let mut out = [0u64; 2];
        for (i, &b) in self.basis.iter().enumerate() {
            let c = det_class_mod8(self.ring.det(b) % 8);
            out[0] |= u64::from(c & 1) << i;
            out[1] |= u64::from(c >> 1) << i;
        }
        out
    }

    /// Kernel of the functional `f` (nonzero bitmask): an index-2 subgroup
    /// containing `Φ(H)`.
    pub fn hyperplane_subgroup(&self, f: u64) -> Result<OpenSubgroup, GroupError> {
        self.hyperplane_subgroup_with_budget(f, DEFAULT_ELEMENT_BUDGET)
    }

    pub fn hyperplane_subgroup_with_budget(&self, f: u64, budget: usize) -> Result<OpenSubgroup, GroupError> {
        let r = self.rank();
        if f == 0 || f >> r != 0 {
            return Err(GroupError::Invalid(format!("functional {f:#b} is not a nonzero functional on F2^{r}")));
        }
        let half = self.phi.order() << (r - 1);
        if half > budget {
            return Err(GroupError::ElementBudget { budget });
        }
        let pivot = f.trailing_zeros() as usize;
        let mut gens = self.phi.generators.clone();
        gens.extend(
            (0..r)
                .filter(|&j| j != pivot)
                .map(|j| if f >> j & 1 == 0 { self.basis[j] } else { self.ring.mul(self.basis[j], self.basis[pivot]) }),
        );
        // Union of the cosets Φ·x over the kernel of f.
        let mut elements = Vec::with_capacity(half);
        for (v, &x) in self.reps.iter().enumerate() {
            if (f & v as u64).count_ones() % 2 == 0 {
                elements.extend(self.phi.elements.iter().map(|&h| self.ring.mul(h, x)));
            }
        }
        elements.sort_unstable();
        Ok(OpenSubgroup::from_parts(self.phi.prime, self.ring, gens, elements))
    }
    /// Preimage in `H` of the span of `vectors` (bitmasks over the basis).
    pub fn span_subgroup_with_budget(&self, vectors: &[u64], budget: usize) -> Result<OpenSubgroup, GroupError> {
        let r = self.rank();
        if vectors.iter().any(|&v| v >> r != 0) {
            return Err(GroupError::Invalid(format!("vector outside F2^{r}")));
        }
        let mut span = vec![0u64];
        for &v in vectors {
            if !span.contains(&v) {
                let shifted: Vec<u64> = span.iter().map(|&x| x ^ v).collect();
                span.extend(shifted);
            }
        }
        if self.phi.order() * span.len() > budget {
            return Err(GroupError::ElementBudget { budget });
        }
        let mut gens = self.phi.generators.clone();
        gens.extend(vectors.iter().map(|&v| self.reps[v as usize]));
        let mut elements = Vec::with_capacity(self.phi.order() * span.len());
        for &v in &span {
            let x = self.reps[v as usize];
            elements.extend(self.phi.elements.iter().map(|&h| self.ring.mul(h, x)));
        }
        elements.sort_unstable();
        Ok(OpenSubgroup::from_parts(self.phi.prime, self.ring, gens, elements))
    }
}

impl OpenSubgroup {
    fn require_two_group(&self) -> Result<(), GroupError> {
        if self.is_two_group() {
            Ok(())
        } else {
            Err(GroupError::NotTwoGroup { order: self.order() })
        }
    }

    /// `Φ(H)` as the normal closure of generator squares and commutators.
    pub fn frattini_subgroup(&self) -> Result<OpenSubgroup, GroupError> {
        self.frattini_subgroup_with_budget(DEFAULT_ELEMENT_BUDGET)
    }

    pub fn frattini_subgroup_with_budget(&self, budget: usize) -> Result<OpenSubgroup, GroupError> {
        self.require_two_group()?;
        let ring = self.ring;
        let g = &self.generators;
        let mut seeds: Vec<u32> = g.iter().map(|&x| ring.square(x)).collect();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                seeds.push(ring.commutator(g[i], g[j]));
            }
        }
        self.normal_closure_words(&seeds, budget)
    }

    /// `Φ(H)` by brute force: the subgroup generated by every square and by
    /// every commutator `[x, g]` with `x ∈ H`, `g` a generator.
    pub fn frattini_subgroup_sweep(&self) -> Result<OpenSubgroup, GroupError> {
        self.require_two_group()?;
        let ring = self.ring;
        let mut b = GroupBuilder::trivial(ring, self.order(), self.order());
        for &x in self.elements.iter() {
            b.add(ring.square(x))?;
            for &g in &self.generators {
                b.add(ring.commutator(x, g))?;
            }
        }
        let (elements, gens) = b.finish();
        Ok(OpenSubgroup::from_parts(self.prime, ring, gens, elements))
    }

    pub fn frattini_quotient(&self) -> Result<FrattiniQuotient, GroupError> {
        let phi = self.frattini_subgroup()?;
        self.frattini_quotient_from(phi)
    }

    /// Builds the quotient for a precomputed `Φ(H)`.
    pub fn frattini_quotient_from(&self, phi: OpenSubgroup) -> Result<FrattiniQuotient, GroupError> {
        let ring = self.ring;
        let mut basis = Vec::new();
        let mut reps = vec![ring.identity()];
        let mut rep_inverses = vec![ring.identity()];
        for &g in &self.generators {
            if rep_inverses.iter().any(|&ri| phi.contains_word(ring.mul(g, ri))) {
                continue;
            }
            if basis.len() >= 63 {
                return Err(GroupError::Invalid("Frattini quotient rank exceeds 63".into()));
            }
            basis.push(g);
            let new: Vec<u32> = reps.iter().map(|&x| ring.mul(x, g)).collect();
            rep_inverses.extend(new.iter().map(|&x| ring.inv(x)));
            reps.extend(new);
        }
        let r = basis.len();
        if self.order() != phi.order() << r {
            return Err(GroupError::Invalid(format!(
                "quotient of order {} by {} is not elementary abelian of rank {r}",
                self.order(),
                phi.order()
            )));
        }
        Ok(FrattiniQuotient { ring, basis, phi, reps, rep_inverses })
    }

    /// Every index-2 subgroup, one per hyperplane of `H/Φ(H)`.
    pub fn index2_subgroups(&self) -> Result<Vec<OpenSubgroup>, GroupError> {
        let q = self.frattini_quotient()?;
        (1..1u64 << q.rank()).map(|f| q.hyperplane_subgroup(f)).collect()
    }
}
