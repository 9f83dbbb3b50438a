use std::collections::HashSet;

use super::{OpenSubgroup, DEFAULT_ELEMENT_BUDGET};
use crate::error::GroupError;
use crate::modarith::{gcd, gl2_order, prime_power, ResidueMatrix};

/// A small generating set of `(Z/n)^×`.
pub fn unit_group_generators(n: u32) -> Vec<u32> {
    let units: Vec<u32> = (1..n).filter(|&u| gcd(u64::from(u), u64::from(n)) == 1).collect();
    let mut gens = Vec::new();
    let mut span = super::cyclic_closure_mod(&gens, n);
    for &u in &units {
        if span.len() == units.len() {
            break;
        }
        if span.binary_search(&u).is_err() {
            gens.push(u);
            span = super::cyclic_closure_mod(&gens, n);
        }
    }
    gens
}

/// Generators of `GL₂(Z/n)`: the two elementary unipotents (which generate
/// `SL₂`) and `diag(u, 1)` for generators `u` of the unit group.
pub fn gl2_generators(n: u32) -> Result<Vec<ResidueMatrix>, GroupError> {
    prime_power(n).ok_or(crate::error::ArithError::NotPrimePower(n))?;
    let mut gens = vec![ResidueMatrix::new(n, 1, 1, 0, 1)?, ResidueMatrix::new(n, 1, 0, 1, 1)?];
    for u in unit_group_generators(n) {
        gens.push(ResidueMatrix::diag(n, i64::from(u), 1));
    }
    Ok(gens)
}

/// Representatives of the conjugacy classes of subgroups of `GL₂(Z/n)`, by
/// cyclic extension: every subgroup is a join of cyclic subgroups, so joining
/// each class representative with every cyclic subgroup reaches all classes.
/// Intended for small moduli (3, 5, 8).
pub fn subgroup_classes(n: u32) -> Result<Vec<OpenSubgroup>, GroupError> {
    let full = OpenSubgroup::full(n)?;
    let orbit_budget = gl2_order(n)? as usize;
    let ring = full.ring();
    let mut seen_cyclic = HashSet::new();
    let mut cyclic_gens = Vec::new();
    for &x in full.elements() {
        let c = OpenSubgroup::closure_words(full.prime(), ring, &[x], DEFAULT_ELEMENT_BUDGET)?;
        if seen_cyclic.insert(c.elements().to_vec()) {
            cyclic_gens.push(x);
        }
    }
    let trivial = OpenSubgroup::closure_words(full.prime(), ring, &[], DEFAULT_ELEMENT_BUDGET)?;
    let mut keys = HashSet::new();
    keys.insert(trivial.canonical_key_with_budget(orbit_budget)?);
    let mut classes = vec![trivial];
    let mut next = 0;
    while next < classes.len() {
        let h = classes[next].clone();
        next += 1;
        for &c in &cyclic_gens {
            if h.contains_word(c) {
                continue;
            }
            let k = h.extend_words(&[c], DEFAULT_ELEMENT_BUDGET)?;
            if keys.insert(k.canonical_key_with_budget(orbit_budget)?) {
                classes.push(k);
            }
        }
    }
    classes.sort_by_key(|h| (h.order(), h.elements().to_vec()));
    Ok(classes)
}
