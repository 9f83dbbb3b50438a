use super::*;

fn m(n: u32, a: i64, b: i64, c: i64, d: i64) -> ResidueMatrix {
    ResidueMatrix::new(n, a, b, c, d).unwrap()
}

#[test]
fn full_group_is_not_minimal() {
    let r = is_minimal(&OpenSubgroup::full(2).unwrap()).unwrap();
    assert!(!r.verdict);
    assert!(!r.is_two_group);
    assert!(r.det_surjective);
    assert_eq!(r.certifying_modulus, 8);
    assert_eq!(r.recheck_modulus, Some(16));
    match r.witness.unwrap() {
        Witness::MaximalSubgroup { subgroup, index_in_parent, det_image_mod8 } => {
            assert_eq!(index_in_parent, 3);
            assert_eq!(det_image_mod8, UNITS_MOD8);
            let k = OpenSubgroup::from_spec(&subgroup).unwrap();
            assert_eq!(k.index(), 3);
            assert_eq!(k.level(), 2);
        }
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn non_surjective_det_is_not_minimal() {
    let h = OpenSubgroup::closure(&[m(8, 1, 1, 0, 1), m(8, 3, 0, 0, 1)], 8).unwrap();
    let r = is_minimal(&h).unwrap();
    assert!(!r.verdict && !r.det_surjective);
    assert!(matches!(r.witness, Some(Witness::FailedPrecondition { .. })));
}

#[test]
fn sylow_is_not_minimal() {
    let p = OpenSubgroup::closure(&[m(2, 1, 1, 0, 1)], 2).unwrap();
    let r = is_minimal(&p).unwrap();
    assert!(!r.verdict && r.is_two_group && r.det_surjective);
    assert!(r.frattini_rank.unwrap() > 2);
    match r.witness.unwrap() {
        Witness::MaximalSubgroup { det_image_mod8, index_in_parent, .. } => {
            assert_eq!(index_in_parent, 2);
            assert_eq!(det_image_mod8, UNITS_MOD8);
        }
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn forced_diagonal_pair_is_a_finite_certificate() {
    let (g, r) = two_generator(&ResidueMatrix::diag(8, 3, 1), &ResidueMatrix::diag(8, 5, 1)).unwrap();
    assert_eq!(g.order(), 4);
    assert!(r.verdict);
    assert_eq!(r.frattini_rank, Some(2));
    assert_eq!(r.verified_up_to_modulus, Some(8));
    assert_eq!(r.maximal_det_images, vec![vec![1, 3], vec![1, 5], vec![1, 7]]);
}

#[test]
fn random_two_generator_is_deterministic() {
    let h = OpenSubgroup::full(16).unwrap();
    let (a, ra) = random_two_generator(&h, 42).unwrap();
    let (b, rb) = random_two_generator(&h, 42).unwrap();
    assert_eq!(a, b);
    assert_eq!(ra, rb);
    assert!(a.det_surjective_2adic().unwrap());
}

#[test]
fn random_two_generator_in_full_gl2_mod_32() {
    let h = OpenSubgroup::full(32).unwrap();
    let mut good = 0;
    for seed in 0..10 {
        let (g, r) = random_two_generator(&h, seed).unwrap();
        assert!(r.det_surjective);
        if g.is_two_group() && r.frattini_rank == Some(2) {
            good += 1;
        }
    }
    assert!(good >= 1, "no two-generated 2-group with rank 2 in 10 samples");
}

#[test]
fn census_below_level_four_is_empty() {
    for lb in [1, 2, 4] {
        let cfg = CensusConfig { level_bound: lb, ..Default::default() };
        assert!(census(&cfg).unwrap().entries.is_empty(), "level bound {lb}");
    }
}

#[test]
fn census_level_8_genus_0() {
    let cfg = CensusConfig { level_bound: 8, genus: Some(0), ..Default::default() };
    let res = census(&cfg).unwrap();
    let labels: Vec<&str> = res.entries.iter().map(|e| e.label.as_str()).collect();
    assert_eq!(labels, vec!["8.24.0"; 4]);
    for e in &res.entries {
        assert!(!e.contains_minus_i);
        let c = recheck_entry(e).unwrap();
        assert!(c.minimal && c.det_images_ok && c.genus_ok, "{c:?}");
        let r = is_minimal(&e.subgroup().unwrap()).unwrap();
        assert!(r.verdict);
    }
}

#[test]
fn census_is_independent_of_seed() {
    let keys = |seed| {
        let cfg = CensusConfig { level_bound: 16, genus: Some(0), seed, ..Default::default() };
        census(&cfg).unwrap().entries.into_iter().map(|e| e.canonical_key).collect::<Vec<_>>()
    };
    let a = keys(1);
    assert_eq!(a, keys(2));
    assert_eq!(a, keys(3));
    assert_eq!(a.len(), 12);
}

#[test]
fn descents_agree() {
    let keys = |descent, genus, index_bound| {
        let cfg = CensusConfig { level_bound: 16, genus, index_bound, descent, ..Default::default() };
        census(&cfg).unwrap().entries.into_iter().map(|e| e.canonical_key).collect::<Vec<_>>()
    };
    assert_eq!(keys(Descent::FrattiniComplement, Some(0), Some(96)), keys(Descent::IndexTwo, Some(0), Some(96)));
    assert_eq!(keys(Descent::FrattiniComplement, Some(3), Some(192)), keys(Descent::IndexTwo, Some(3), Some(192)));
}

#[test]
fn unbounded_index_at_level_16() {
    let cfg = CensusConfig { level_bound: 16, index_bound: None, ..Default::default() };
    let res = census(&cfg).unwrap();
    let mut counts = std::collections::BTreeMap::new();
    for e in &res.entries {
        *counts.entry(e.label.as_str()).or_insert(0) += 1;
    }
    let want = [("16.192.3", 8), ("16.384.5", 8), ("16.384.9", 16), ("16.48.0", 8), ("8.24.0", 4)];
    assert_eq!(counts.into_iter().collect::<Vec<_>>(), want);
}

#[test]
fn det_pruning_is_monotone() {
    // Every subgroup of a group with non-surjective det has non-surjective det.
    let p = OpenSubgroup::closure(&[m(2, 1, 1, 0, 1)], 2).unwrap().preimage(8).unwrap();
    for k in p.index2_subgroups().unwrap() {
        if k.det_surjective_2adic().unwrap() {
            continue;
        }
        for kk in k.index2_subgroups().unwrap() {
            assert!(!kk.det_surjective_2adic().unwrap());
        }
    }
}

#[test]
fn falsify_three() {
    let r = falsify_odd_prime(3, 0).unwrap();
    assert_eq!(r.minimal_count, 0);
    assert!(r.det_surjective_classes > 0);
    assert_eq!(r.witnesses.len(), r.det_surjective_classes);
    assert!(falsify_odd_prime(4, 0).is_err());
}

#[test]
fn nilpotent_preimages_mod_9() {
    let r = nilpotent_det_squares(3).unwrap();
    assert!(r.violations.is_empty());
    assert!(r.nilpotent > 0);
}

#[test]
fn lemma_oracles() {
    let a = lemma_det_mod8_certifies(6);
    assert!(a.passed(), "{a:?}");
    let b = lemma_non_two_group_witness().unwrap();
    assert!(b.passed(), "{b:?}");
}

#[test]
fn census_config_rejects_unknown_fields() {
    assert!(serde_json::from_str::<CensusConfig>(r#"{"level_bound": 8, "bogus": 1}"#).is_err());
    let c: CensusConfig = serde_json::from_str(r#"{"level_bound": 8}"#).unwrap();
    assert_eq!(c.index_bound, Some(96));
}
