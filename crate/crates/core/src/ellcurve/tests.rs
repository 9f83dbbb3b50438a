use super::family::{j_map_degree, primes_above, Base, FamilyCheckConfig};
use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rand_q(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(-50i64..50).into(), rng.gen_range(1i64..20).into())
}

#[test]
fn discriminant_examples() {
    assert_eq!(WeierstrassCurve::from_integers(0, 1).discriminant(), q(-64));
    // a² = −3.
    let a = QuadFieldElem::sqrt_d(-3).unwrap();
    let e = WeierstrassCurve::new(a.from_i64(2).mul(&a), a.square().add(&a.one_like()));
    assert_eq!(e.discriminant(), a.from_i64(-256));
}

#[test]
fn j_examples() {
    assert_eq!(WeierstrassCurve::from_integers(0, 1).j_invariant().unwrap(), q(1728));
    let j = WeierstrassCurve::from_integers(-2050, 1049600).j_invariant().unwrap();
    assert_eq!(j, BigRational::new(257i64.pow(3).into(), 256.into()));
    assert_eq!(WeierstrassCurve::from_integers(2, 1).j_invariant(), Err(CurveError::Singular));
}

#[test]
fn twist_examples() {
    let e = WeierstrassCurve::from_integers(3, 7);
    assert_eq!(e.twist(&q(1)).unwrap(), e);
    assert_eq!(e.twist(&q(0)), Err(CurveError::ZeroTwist));
    let a = QuadFieldElem::sqrt_d(-5).unwrap();
    let e = WeierstrassCurve::new(a.from_i64(2).mul(&a), a.square().add(&a.one_like()));
    let t = e.twist(&a).unwrap();
    assert_eq!(t.a, a.from_i64(-10));
    assert_eq!(t.b, a.from_i64(20));
    assert_eq!(t.a, a.from_i64(2).mul(&a.square()));
}

#[test]
fn isogeny_examples() {
    let e = WeierstrassCurve::from_integers(0, 1);
    assert_eq!(e.two_isogenous().unwrap(), WeierstrassCurve::from_integers(0, -4));
    assert_eq!(WeierstrassCurve::from_integers(1, 0).two_isogenous(), Err(CurveError::NoTwoTorsionKernel));
    let a = QuadFieldElem::sqrt_d(-3).unwrap();
    let e = WeierstrassCurve::new(a.from_i64(2).mul(&a), a.square().add(&a.one_like()));
    let iso = e.two_isogenous().unwrap();
    assert!(!iso.is_singular());
    assert!(iso.j_invariant().is_ok());
}

#[test]
fn twist_and_isogeny_properties_over_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 1000 {
        let e = WeierstrassCurve::new(rand_q(&mut rng), rand_q(&mut rng));
        let d = rand_q(&mut rng);
        if e.is_singular() || Zero::is_zero(&d) {
            continue;
        }
        let t = e.twist(&d).unwrap();
        assert_eq!(t.discriminant(), d.pow(6).mul(&e.discriminant()));
        assert_eq!(t.j_invariant().unwrap(), e.j_invariant().unwrap());
        let back = e.two_isogenous().unwrap().two_isogenous().unwrap();
        assert_eq!(back, WeierstrassCurve::new(q(4) * &e.a, q(16) * &e.b));
        assert_eq!(back.j_invariant().unwrap(), e.j_invariant().unwrap());
        done += 1;
    }
}

#[test]
fn twist_and_isogeny_properties_over_fp() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    while done < 1000 {
        let p = [101u64, 1009, 65521][done % 3];
        let f = |rng: &mut ChaCha8Rng| Fp::new(rng.gen_range(0..p as i64), p);
        let (e, d) = (WeierstrassCurve::new(f(&mut rng), f(&mut rng)), f(&mut rng));
        if e.is_singular() || d.is_zero() {
            continue;
        }
        let t = e.twist(&d).unwrap();
        assert_eq!(t.discriminant(), d.pow(6).mul(&e.discriminant()));
        assert_eq!(t.j_invariant().unwrap(), e.j_invariant().unwrap());
        let back = e.two_isogenous().unwrap().two_isogenous().unwrap();
        assert_eq!(back.j_invariant().unwrap(), e.j_invariant().unwrap());
        done += 1;
    }
}

#[test]
fn quadratic_field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in [-1i64, -3, 2, 41, -1025 / 25] {
        for _ in 0..50 {
            let mut r = || QuadFieldElem::new(d, rand_q(&mut rng), rand_q(&mut rng)).unwrap();
            let (x, y, z) = (r(), r(), r());
            assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            assert_eq!(x.mul(&y), y.mul(&x));
            assert_eq!(x.mul(&x.conjugate()), QuadFieldElem::rational(d, x.norm()).unwrap());
            if !x.is_zero() {
                assert_eq!(x.mul(&x.inv().unwrap()), x.one_like());
            }
        }
    }
    assert!(QuadFieldElem::sqrt_d(12).is_err());
    assert!(QuadFieldElem::sqrt_d(1).is_err());
}

#[test]
fn conic_point_examples() {
    assert!(conic_points(5, 10).contains(&(2, 0)));
    assert!(conic_points(13, 100).contains(&(5, 0)));
    for p in [3u64, 7, 11, 101] {
        let pts = conic_points(p, usize::MAX);
        assert!(!pts.is_empty());
        for &(a, b) in &pts {
            assert_eq!((a * a + b * b + 1) % p, 0);
        }
        let mut dedup = pts.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), pts.len());
    }
}

#[test]
fn family_table_is_intact() {
    let t = FamilyTable::builtin().unwrap();
    assert_eq!(t.version, 1);
    let labels: Vec<&str> = t.families.iter().map(|f| f.label.as_str()).collect();
    assert_eq!(labels, ["16.48.0.25", "32.96.0.2", "8.24.0.44", "32.96.0.1"]);
    for f in &t.families {
        f.expressions().unwrap();
    }
    let json = serde_json::to_string(&t).unwrap();
    assert!(matches!(FamilyTable::from_json_checked(&json, family::FAMILY_TABLE_SHA256), Err(CurveError::Checksum(_))));
}

#[test]
fn table_row_at_thirteen() {
    let t = FamilyTable::builtin().unwrap();
    let (ea, eb) = t.get("16.48.0.25").unwrap().expressions().unwrap();
    let zero = Fp::new(0, 13);
    let env = |v: char| match v {
        'a' => Some(Fp::new(5, 13)),
        'b' => Some(zero),
        _ => None,
    };
    // b = 0: A = 4·(−1)·(−1) = 4, B = 8·1·1 = 8.
    let e = WeierstrassCurve::new(ea.eval(&zero, &env).unwrap(), eb.eval(&zero, &env).unwrap());
    assert_eq!((e.a.value(), e.b.value()), (4, 8));
    assert!(!e.is_singular());
}

#[test]
fn family_identities_hold() {
    let t = FamilyTable::builtin().unwrap();
    let cfg = FamilyCheckConfig { primes: 5, points_per_prime: 20, ..Default::default() };
    for f in &t.families {
        let r = family_identity_check(f, &cfg).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.specializations, 100);
        // The level-8 row is not a degree-one parametrization of its curve.
        assert_eq!(r.j_degree_matches_label, f.label != "8.24.0.44", "{r:?}");
    }
}

#[test]
fn j_degree_of_tabulated_families() {
    let t = FamilyTable::builtin().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = primes_above(10_000, 1)[0];
    for (label, deg) in [("16.48.0.25", 24), ("32.96.0.2", 48), ("8.24.0.44", 72), ("32.96.0.1", 48)] {
        assert_eq!(j_map_degree(t.get(label).unwrap(), p, &mut rng).unwrap(), Some(deg), "{label}");
    }
}

#[test]
fn transcription_error_is_detected() {
    let t = FamilyTable::builtin().unwrap();
    let mut f = t.get("16.48.0.25").unwrap().clone();
    f.b = f.b.replace("2b - 1)^2", "2b + 1)^2");
    let cfg = FamilyCheckConfig { primes: 3, points_per_prime: 10, ..Default::default() };
    let r = family_identity_check(&f, &cfg).unwrap();
    assert!(!r.j_degree_matches_label, "{r:?}");
    assert_eq!(f.base, Base::Conic);
}
