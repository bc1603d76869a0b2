use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qgroth::{CartanDatum, QuiverDatum};
use qgroth_hall::{iota_check, DHElement, FqRep, HallContext, IsoClass};

fn orientations(name: &str) -> Vec<QuiverDatum> {
    let c: CartanDatum = name.parse().unwrap();
    QuiverDatum::all_orientations(&c).unwrap()
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn presentation_relations_hold() {
    for name in ["A2", "A3"] {
        for quiver in orientations(name) {
            for q in [2u8, 3] {
                let h = HallContext::new(quiver.clone(), q).unwrap();
                let report = h.verify_dh_relations(0..=3).unwrap();
                assert!(report.checked > 0);
                assert!(report.passed(), "{name} {:?} q={q}: {:?}", quiver.arrows(), report.failures);
            }
        }
    }
}

#[test]
fn simple_toen_constants_in_rank_three() {
    let quiver = orientations("A3").remove(0);
    for q in [2u8, 3, 4] {
        let h = HallContext::new(quiver.clone(), q).unwrap();
        let s: Vec<IsoClass> = (0..3).map(|i| IsoClass::simple(3, i)).collect();
        let zero = IsoClass::zero();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(h.toen_gamma(&s[i], &s[j], &s[j], &s[i]).unwrap(), ratio(1, 1));
                    assert_eq!(h.exact_sequences(&s[j], &s[j], &s[i], &s[i]).unwrap(), (q as u64 - 1).pow(2));
                }
            }
            assert_eq!(h.toen_gamma(&s[i], &s[i], &s[i], &s[i]).unwrap(), ratio(1, 1));
            assert_eq!(h.toen_gamma(&s[i], &s[i], &zero, &zero).unwrap(), ratio(1, q as i64 - 1));
        }
    }
}

#[test]
fn a2_classification_and_hall_numbers() {
    let c: CartanDatum = "A2".parse().unwrap();
    let quiver = QuiverDatum::from_arrows(c, vec![(0, 1)]).unwrap();
    for q in [2u8, 3, 4] {
        let h = HallContext::new(quiver.clone(), q).unwrap();
        let (s1, s2) = (IsoClass::simple(2, 0), IsoClass::simple(2, 1));
        let ind = IsoClass::indecomposable(&[1, 1]);
        for a in 1..q {
            let rep = FqRep::new(q, vec![1, 1], vec![(0, 1)], vec![vec![vec![a]]]).unwrap();
            assert_eq!(h.iso_class(&rep).unwrap(), ind);
        }
        assert_eq!(h.hall_number(&s2, &s1, &ind).unwrap(), 1);
        assert_eq!(h.hall_number(&s1, &s2, &ind).unwrap(), 0);
        assert_eq!(h.hall_number(&s1, &s2, &s1.add(&s2)).unwrap(), 1);
        assert_eq!(h.hall_number(&ind, &IsoClass::zero(), &ind).unwrap(), 1);
        // S_1 ⊕ S_1 has q + 1 lines
        assert_eq!(h.hall_number(&s1, &s1, &s1.add(&s1)).unwrap(), q as u64 + 1);
    }
}

#[test]
fn riedtmann_consistency() {
    for quiver in orientations("A3").into_iter().take(2) {
        let h = HallContext::new(quiver.clone(), 2).unwrap();
        let classes: Vec<IsoClass> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 1, 1]]
            .iter()
            .flat_map(|d| h.classes_of_dim(d))
            .collect();
        for x in &classes {
            for y in &classes {
                let total: i64 = h.dim(x).iter().chain(h.dim(y).iter()).sum();
                if total > 3 {
                    continue;
                }
                let report = h.riedtmann_check(x, y).unwrap();
                assert!(report.consistent, "{:?}", report);
            }
        }
    }
}

#[test]
fn specialisation_matches_grothendieck_ring() {
    for name in ["A2", "A3"] {
        for quiver in orientations(name).into_iter().take(2) {
            for q in [2u8, 3] {
                let report = iota_check(&quiver, q, 2).unwrap();
                assert!(report.constant_identity.holds);
                assert!(!report.commutations.is_empty());
                assert!(report.passed(), "{name} {:?} q={q}: {report:#?}", quiver.xi());
            }
        }
    }
}

fn generator(h: &HallContext, (i, m): (usize, i64)) -> DHElement {
    h.z(i, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_is_associative(a in (0usize..3, 0i64..3), b in (0usize..3, 0i64..3), c in (0usize..3, 0i64..3), q in prop::sample::select(vec![2u8, 3])) {
        let quiver = orientations("A3").remove(0);
        let h = HallContext::new(quiver, q).unwrap();
        let (x, y, z) = (generator(&h, a), generator(&h, b), generator(&h, c));
        let left = h.dh_product(&h.dh_product(&x, &y).unwrap(), &z).unwrap();
        let right = h.dh_product(&x, &h.dh_product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
