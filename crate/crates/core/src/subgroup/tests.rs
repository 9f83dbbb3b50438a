use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn m(n: u32, a: i64, b: i64, c: i64, d: i64) -> ResidueMatrix {
    ResidueMatrix::new(n, a, b, c, d).unwrap()
}

fn random_unit(rng: &mut ChaCha8Rng, n: u32) -> ResidueMatrix {
    loop {
        let x = m(n, rng.gen_range(0..n as i64), rng.gen_range(0..n as i64), rng.gen_range(0..n as i64), rng.gen_range(0..n as i64));
        if x.is_invertible() {
            return x;
        }
    }
}

#[test]
fn full_group_orders() {
    for n in [2, 3, 4, 5, 8, 9, 16] {
        let g = OpenSubgroup::full(n).unwrap();
        assert_eq!(g.order() as u64, gl2_order(n).unwrap(), "n = {n}");
        assert_eq!(g.index(), 1);
        assert_eq!(g.level(), 1);
    }
}

#[test]
fn diag_units_mod8() {
    let h = OpenSubgroup::closure(&[ResidueMatrix::diag(8, 3, 1), ResidueMatrix::diag(8, 5, 1)], 8).unwrap();
    assert_eq!(h.order(), 4);
    assert!(h.is_two_group());
    assert!(h.det_surjective_2adic().unwrap());
    let q = h.frattini_quotient().unwrap();
    assert_eq!(q.rank(), 2);
    assert_eq!(q.phi().order(), 1);
    let subs = h.index2_subgroups().unwrap();
    assert_eq!(subs.len(), 3);
    let mut dets: Vec<Vec<u32>> = subs.iter().map(|s| s.det_image(8).unwrap()).collect();
    dets.sort();
    assert_eq!(dets, vec![vec![1, 3], vec![1, 5], vec![1, 7]]);
}

#[test]
fn borel_mod2_preimage() {
    let b = OpenSubgroup::closure(&[m(2, 1, 1, 0, 1)], 2).unwrap();
    assert_eq!(b.index(), 3);
    assert_eq!(b.level(), 2);
    let p = b.preimage(8).unwrap();
    assert_eq!(p.order(), 512);
    assert_eq!(p.index(), 3);
    assert_eq!(p.level(), 2);
    assert!(p.is_two_group());
    assert!(p.det_surjective_2adic().unwrap());
    // Closure of the stored generators reproduces the preimage.
    let again = OpenSubgroup::closure(&p.generators(), 8).unwrap();
    assert_eq!(again, p);
    assert_eq!(p.reduce(2).unwrap(), b);
}

#[test]
fn kernel_generators_generate_kernel() {
    for (mm, n) in [(8, 2), (16, 2), (16, 4), (9, 3), (27, 3)] {
        let gens: Vec<ResidueMatrix> = kernel_generators(mm, n)
            .unwrap()
            .into_iter()
            .map(|w| ResidueMatrix::unpack(mm, w).unwrap())
            .collect();
        let k = OpenSubgroup::closure(&gens, mm).unwrap();
        assert_eq!(k.order(), ((mm / n) as usize).pow(4), "{mm}/{n}");
    }
}

#[test]
fn closure_idempotent_and_lagrange() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let gens: Vec<_> = (0..2).map(|_| random_unit(&mut rng, 16)).collect();
        let h = OpenSubgroup::closure(&gens, 16).unwrap();
        let h2 = OpenSubgroup::closure(&h.generators(), 16).unwrap();
        assert_eq!(h, h2);
        assert_eq!(h.order() as u64 * h.index(), gl2_order(16).unwrap());
        for &x in h.elements().iter().take(50) {
            assert!(h.contains_word(h.ring().inv(x)));
        }
    }
}

#[test]
fn level_reconstructs_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let mut gens: Vec<_> = (0..2).map(|_| random_unit(&mut rng, 16)).collect();
        gens.push(m(16, 1, 4, 0, 1));
        let h = OpenSubgroup::closure(&gens, 16).unwrap();
        let l = h.level();
        assert_eq!(16 % l, 0);
        if l < 16 && l > 1 {
            assert_eq!(h.reduce(l).unwrap().preimage(16).unwrap(), h);
            assert_ne!(h.reduce(l / 2).unwrap().preimage(16).unwrap(), h);
        }
    }
}

#[test]
fn frattini_methods_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sylow = OpenSubgroup::closure(&[m(2, 1, 1, 0, 1)], 2).unwrap().preimage(16).unwrap();
    let mut checked = 0;
    while checked < 15 {
        let gens: Vec<_> = (0..2).map(|_| random_unit(&mut rng, 16)).filter(|g| sylow.contains(g)).collect();
        if gens.is_empty() {
            continue;
        }
        let h = OpenSubgroup::closure(&gens, 16).unwrap();
        let a = h.frattini_subgroup().unwrap();
        let b = h.frattini_subgroup_sweep().unwrap();
        assert_eq!(a, b);
        let q = h.frattini_quotient().unwrap();
        assert_eq!(h.order(), a.order() << q.rank());
        for s in h.index2_subgroups().unwrap() {
            assert_eq!(s.order() * 2, h.order());
            assert!(a.is_subgroup_of(&s));
        }
        checked += 1;
    }
}

#[test]
fn det_surjective_hyperplanes() {
    let p = OpenSubgroup::closure(&[m(2, 1, 1, 0, 1)], 2).unwrap().preimage(8).unwrap();
    let q = p.frattini_quotient().unwrap();
    let [d1, d2] = q.det_functionals_mod8();
    let r = q.rank();
    let span = [d1, d2, d1 ^ d2];
    let mut good = 0;
    for f in 1..1u64 << r {
        let h = q.hyperplane_subgroup(f).unwrap();
        let surj = h.det_surjective_2adic().unwrap();
        assert_eq!(surj, !span.contains(&f), "f = {f:#b}");
        good += usize::from(surj);
    }
    assert_eq!(good, (1 << r) - 4);
}

#[test]
fn canonical_key_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let h = OpenSubgroup::closure(&[random_unit(&mut rng, 8)], 8).unwrap();
        let g = random_unit(&mut rng, 8);
        let c = h.conjugate(&g).unwrap();
        assert_eq!(h.canonical_key_with_budget(2000).unwrap(), c.canonical_key_with_budget(2000).unwrap());
        assert_eq!(h.conjugacy_fingerprint(), c.conjugacy_fingerprint());
        let x = h.conjugator_to(&c, 2000).unwrap().expect("conjugate");
        assert_eq!(h.conjugate(&x).unwrap(), c);
    }
    let a = OpenSubgroup::closure(&[ResidueMatrix::diag(8, 3, 1)], 8).unwrap();
    let b = OpenSubgroup::closure(&[ResidueMatrix::diag(8, 5, 1)], 8).unwrap();
    assert_ne!(a.canonical_key().unwrap(), b.canonical_key().unwrap());
    assert!(a.conjugator_to(&b, 2000).unwrap().is_none());
}

#[test]
fn nilpotency_criteria_agree() {
    for n in [3, 5] {
        for h in subgroup_classes(n).unwrap() {
            assert_eq!(h.is_nilpotent().unwrap(), h.is_nilpotent_by_sylow(), "{h:?}");
        }
    }
}

#[test]
fn subgroup_class_counts() {
    // GL₂(F₂) ≅ S₃ has 4 classes of subgroups; GL₂(F₃) has 16.
    assert_eq!(subgroup_classes(2).unwrap().len(), 4);
    assert_eq!(subgroup_classes(3).unwrap().len(), 16);
}

#[test]
fn special_part_and_minus_identity() {
    let b = OpenSubgroup::closure(&[m(4, 1, 1, 0, 1)], 4).unwrap();
    assert!(!b.contains_minus_identity());
    let bb = b.adjoin_minus_identity().unwrap();
    assert!(bb.contains_minus_identity());
    assert_eq!(bb.order(), 2 * b.order());
    let s = OpenSubgroup::full(4).unwrap().special_part().unwrap();
    assert_eq!(s.order() as u64, sl2_order_for(4));
}

fn sl2_order_for(n: u32) -> u64 {
    crate::modarith::sl2_order(n).unwrap()
}

#[test]
fn spec_round_trip() {
    let h = OpenSubgroup::closure(&[m(8, 3, 1, 0, 1), m(8, 1, 2, 0, 5)], 8).unwrap();
    let s = h.to_spec();
    let json = serde_json::to_string(&s).unwrap();
    let back: SubgroupSpec = serde_json::from_str(&json).unwrap();
    assert_eq!(OpenSubgroup::from_spec(&back).unwrap(), h);
    assert!(serde_json::from_str::<SubgroupSpec>(r#"{"prime":2,"modulus":8,"generators":[],"x":1}"#).is_err());
}

#[test]
fn errors() {
    assert!(OpenSubgroup::closure(&[m(8, 2, 0, 0, 1)], 8).is_err());
    assert!(OpenSubgroup::full(6).is_err());
    let odd = OpenSubgroup::closure(&[m(3, 1, 1, 0, 1)], 3).unwrap();
    assert!(odd.frattini_subgroup().is_err());
    let small = OpenSubgroup::closure(&[m(4, 1, 1, 0, 1)], 4).unwrap();
    assert!(small.det_surjective_2adic().is_err());
    assert!(matches!(
        OpenSubgroup::full(8).unwrap().preimage_with_budget(64, 1000),
        Err(GroupError::ElementBudget { .. })
    ));
}
