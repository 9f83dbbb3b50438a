use minimal2::minimality::{census, is_minimal, recheck_entry, CensusConfig};
use minimal2::modcurve::genus;
use minimal2::subgroup::{OpenSubgroup, SubgroupSpec};

fn group(modulus: u32, generators: Vec<[u32; 4]>) -> OpenSubgroup {
    OpenSubgroup::from_spec(&SubgroupSpec { prime: 2, modulus, generators }).unwrap()
}

#[test]
fn census_entries_survive_a_spec_round_trip() {
    let cfg = CensusConfig { level_bound: 16, genus: Some(0), ..Default::default() };
    let res = census(&cfg).unwrap();
    assert_eq!(res.entries.len(), 12);
    for e in &res.entries {
        let h = OpenSubgroup::from_spec(&e.group).unwrap();
        assert_eq!(h.level(), e.level);
        assert_eq!(h.index(), e.index);
        assert_eq!(genus(&h).unwrap().genus, e.genus);
        assert!(is_minimal(&h).unwrap().verdict, "{}", e.label);
        let c = recheck_entry(e).unwrap();
        assert!(c.minimal && c.det_images_ok && c.genus_ok);
    }
}

#[test]
fn census_is_seed_independent() {
    let a = census(&CensusConfig { level_bound: 16, genus: Some(0), seed: 1, ..Default::default() }).unwrap();
    let b = census(&CensusConfig { level_bound: 16, genus: Some(0), seed: 99, ..Default::default() }).unwrap();
    let keys = |r: &minimal2::minimality::CensusResult| r.entries.iter().map(|e| e.canonical_key.clone()).collect::<Vec<_>>();
    assert_eq!(keys(&a), keys(&b));
}

#[test]
fn borel_mod_2_has_genus_0_and_two_cusps() {
    let b = group(2, vec![[1, 1, 0, 1]]);
    assert_eq!(b.index(), 3);
    let g = genus(&b).unwrap();
    assert_eq!((g.genus, g.cusps), (0, 2));
}

#[test]
fn full_group_is_not_minimal() {
    let g = OpenSubgroup::full(2).unwrap();
    let r = is_minimal(&g).unwrap();
    assert!(!r.verdict);
    assert!(r.witness.is_some());
}
