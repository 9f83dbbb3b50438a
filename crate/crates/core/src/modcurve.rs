//! Genus of the modular curve attached to a finite-level subgroup, from the
//! permutation action of `SL₂(Z)` on cosets of `⟨G, −I⟩ ∩ SL₂`.

use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::modarith::{gcd, sl2_order, ResidueMatrix};
use crate::subgroup::OpenSubgroup;

/// Coset-action invariants of `X_G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusData {
    /// Index of the image of `⟨G, −I⟩ ∩ SL₂` in `PSL₂`.
    pub psl_index: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub cusps: u64,
    pub genus: i64,
}

/// Signature of a genus formula: `(m, ν₂, ν₃, c) ↦ 12·g`.
pub type TwelveGenusFormula = fn(u64, u64, u64, u64) -> i64;

/// `12g = 12 + m − 3ν₂ − 4ν₃ − 6c`.
pub fn twelve_genus(m: u64, nu2: u64, nu3: u64, cusps: u64) -> i64 {
    12 + m as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * cusps as i64
}

impl GenusData {
    /// `12(g − 1) + 3ν₂ + 4ν₃ + 6c = m`.
    pub fn integrality_holds(&self) -> bool {
        12 * (self.genus - 1) + 3 * self.nu2 as i64 + 4 * self.nu3 as i64 + 6 * self.cusps as i64 == self.psl_index as i64
            && self.genus >= 0
    }
}

/// Closure of `G ∪ {−I}`.
pub fn adjoin_minus_identity(g: &OpenSubgroup) -> Result<OpenSubgroup, GroupError> {
    g.adjoin_minus_identity()
}

pub fn genus(g: &OpenSubgroup) -> Result<GenusData, GroupError> {
    genus_with_formula(g, twelve_genus)
}

/// As [`genus`], with the final formula supplied by the caller. The result is
/// rejected unless `12g` comes out divisible by 12 and nonnegative.
pub fn genus_with_formula(g: &OpenSubgroup, formula: TwelveGenusFormula) -> Result<GenusData, GroupError> {
    let (m, nu2, nu3, cusps) = coset_counts(g)?;
    let twelve_g = formula(m, nu2, nu3, cusps);
    if twelve_g % 12 != 0 || twelve_g < 0 {
        return Err(GroupError::Invalid(format!(
            "genus formula gave 12g = {twelve_g} for m={m}, nu2={nu2}, nu3={nu3}, c={cusps}"
        )));
    }
    Ok(GenusData { psl_index: m, nu2, nu3, cusps, genus: twelve_g / 12 })
}

/// `(m, ν₂, ν₃, c)` from the right coset action.
pub fn coset_counts(g: &OpenSubgroup) -> Result<(u64, u64, u64, u64), GroupError> {
    let n = g.modulus();
    let units = (1..n).filter(|&u| gcd(u64::from(u), u64::from(n)) == 1).count();
    if g.det_image(n)?.len() != units {
        return Err(GroupError::DetNotSurjective(n));
    }
    let h = g.adjoin_minus_identity()?.special_part()?;
    let ring = h.ring();
    let word = |a, b, c, d| ResidueMatrix::new(n, a, b, c, d).and_then(|m| m.pack());
    let s = word(0, -1, 1, 0)?;
    let t = word(1, 1, 0, 1)?;
    let r = word(0, -1, 1, -1)?;
    let m = sl2_order(n)? / h.order() as u64;

    let mut reps = vec![ring.identity()];
    let mut inv = vec![ring.identity()];
    let find = |y: u32, inv: &[u32]| inv.iter().position(|&ri| h.contains_word(ring.mul(y, ri)));
    let mut i = 0;
    while i < reps.len() {
        for x in [s, t] {
            let y = ring.mul(reps[i], x);
            if find(y, &inv).is_none() {
                reps.push(y);
                inv.push(ring.inv(y));
            }
        }
        i += 1;
    }
    if reps.len() as u64 != m {
        return Err(GroupError::Invalid(format!("coset enumeration found {} cosets, expected {m}", reps.len())));
    }
    let perm = |x: u32| -> Vec<usize> { reps.iter().map(|&rep| find(ring.mul(rep, x), &inv).expect("closed")).collect() };
    let fixed = |p: &[usize]| p.iter().enumerate().filter(|&(i, &j)| i == j).count() as u64;
    let ps = perm(s);
    let pr = perm(r);
    let pt = perm(t);
    let mut seen = vec![false; pt.len()];
    let mut cusps = 0;
    for start in 0..pt.len() {
        if seen[start] {
            continue;
        }
        cusps += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = pt[j];
        }
    }
    Ok((m, fixed(&ps), fixed(&pr), cusps))
}

/// `(level, index, genus)`: level and index of `G` itself in `GL₂(Z_p)`, genus
/// of the curve of `⟨G, −I⟩`.
pub fn label(g: &OpenSubgroup) -> Result<(u32, u64, i64), GroupError> {
    Ok((g.level(), g.index(), genus(g)?.genus))
}

pub fn label_string(g: &OpenSubgroup) -> Result<String, GroupError> {
    let (l, i, gen) = label(g)?;
    Ok(format!("{l}.{i}.{gen}"))
}
