use num_bigint::BigInt;
use qgroth::cartan::CartanDatum;
use qgroth::error::Error;
use std::collections::BTreeMap;
use qgroth::characters::{CharacterContext, Mode};
use qgroth::laurent::HalfLaurent;
use qgroth::monomial::Monomial;
use qgroth::quiver::QuiverDatum;

fn contexts(name: &str) -> Vec<CharacterContext> {
    let c: CartanDatum = name.parse().unwrap();
    QuiverDatum::all_orientations(&c).unwrap().into_iter().map(CharacterContext::new).collect()
}

#[test]
fn truncated_fundamentals_agree_with_tsystem() {
    for name in ["A1", "A2", "A3", "A4", "D4"] {
        for ctx in contexts(name) {
            for (i, p) in ctx.quiver().ihat_q().unwrap() {
                let kr = ctx.kr_truncated(i, 1, p).unwrap();
                match ctx.fm_fundamental(i, p) {
                    Ok(fm) => assert_eq!(ctx.truncate(&fm), kr, "{name} xi={:?} at ({}, {p})", ctx.quiver().xi(), i + 1),
                    Err(Error::NotMultiplicityFree(_)) => {
                        // compare classically; the graded lift comes from the T-system
                        let classical: BTreeMap<Monomial, BigInt> = ctx
                            .fm_classical(i, p)
                            .unwrap()
                            .into_iter()
                            .filter(|(m, _)| m.all_vars(|j, q| ctx.quiver().in_slice(j, q)))
                            .map(|(m, n)| (m, BigInt::from(n)))
                            .collect();
                        assert_eq!(classical, kr.at_t_equals_one(), "{name} at ({}, {p})", i + 1);
                        assert!(kr.is_bar_invariant());
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn tsystem_holds_in_truncated_torus() {
    for name in ["A2", "A3", "A4", "D4", "D5"] {
        for ctx in contexts(name).into_iter().take(4) {
            for (i, p) in ctx.quiver().ihat_q().unwrap() {
                let smax = ctx.kr_max_length(i, p).unwrap();
                for s in 1..smax {
                    assert!(ctx.verify_tsystem(i, s, p).unwrap(), "{name} ({}, {s}, {p})", i + 1);
                }
            }
        }
    }
}

#[test]
fn fundamental_shape() {
    for name in ["A1", "A2", "A4", "D4", "D5", "E6"] {
        let c: CartanDatum = name.parse().unwrap();
        let h = c.coxeter_number() as i64;
        let nu = c.nu();
        let ctx = CharacterContext::new(QuiverDatum::all_orientations(&c).unwrap().remove(0));
        for i in 0..c.rank() {
            let p = ctx.quiver().xi()[i];
            let ch = ctx.fm_classical(i, p).unwrap();
            let dominant: Vec<_> = ch.keys().filter(|m| m.is_dominant()).collect();
            assert_eq!(dominant, vec![&Monomial::y(i, p)]);
            let antidominant: Vec<_> = ch.keys().filter(|m| m.inv().is_dominant()).collect();
            assert_eq!(antidominant, vec![&Monomial::y(nu[i], p + h).inv()], "{name} {}", i + 1);
            assert!(ch.keys().all(|m| m.all_vars(|_, q| q >= p && q <= p + h)));
        }
    }
}

#[test]
fn e6_dimensions_and_multiplicities() {
    let c: CartanDatum = "E6".parse().unwrap();
    let ctx = CharacterContext::new(QuiverDatum::all_orientations(&c).unwrap().remove(0));
    let dim = |i: usize| ctx.fm_classical(i, ctx.quiver().xi()[i]).unwrap().values().sum::<i64>();
    assert_eq!(dim(0), 27);
    assert_eq!(dim(5), 27);
    assert_eq!(dim(1), 79);
    assert!(ctx.fm_fundamental(0, ctx.quiver().xi()[0]).is_ok());
}

#[test]
fn d4_trivalent_node_is_not_multiplicity_free() {
    let c: CartanDatum = "D4".parse().unwrap();
    let ctx = CharacterContext::new(QuiverDatum::from_xi(c, vec![4, 4, 5, 4]).unwrap());
    let ch = ctx.fm_classical(2, 5).unwrap();
    assert_eq!(ch.values().sum::<i64>(), 29);
    assert_eq!(ch.values().filter(|&&n| n == 2).count(), 1);
    assert!(matches!(ctx.fm_fundamental(2, 5), Err(Error::NotMultiplicityFree(_))));
    for i in [0, 1, 3] {
        assert_eq!(ctx.fm_classical(i, 4).unwrap().len(), 8);
    }
}

#[test]
fn simple_classes_are_positive_and_unitriangular() {
    let c: CartanDatum = "A2".parse().unwrap();
    let ctx = CharacterContext::new(QuiverDatum::from_xi(c, vec![2, 1]).unwrap());
    let labels = ["Y[1,0]Y[1,2]", "Y[1,0]Y[2,1]", "Y[2,1]Y[1,2]", "Y[1,0]Y[1,2]Y[2,1]", "Y[1,0]^2Y[1,2]"];
    for s in labels {
        let m: Monomial = s.parse().unwrap();
        for mode in [Mode::Full, Mode::Truncated] {
            let l = ctx.simple_character(&m, mode).unwrap();
            assert!(l.is_bar_invariant());
            assert_eq!(l.coeff(&m), HalfLaurent::one());
            for (_, c) in l.terms() {
                assert!(c.in_nat_laurent() && c.has_integer_exponents(), "{s}: {c}");
            }
            let expansion = ctx.standard_to_simple(&m, mode).unwrap();
            assert_eq!(expansion[0], (m.clone(), HalfLaurent::one()));
            for (_, c) in &expansion[1..] {
                assert!(c.in_negative_integer_part(), "{s}: {c}");
            }
        }
    }
}

#[test]
fn truncation_keeps_dominant_monomials() {
    let c: CartanDatum = "A3".parse().unwrap();
    let ctx = CharacterContext::new(QuiverDatum::from_xi(c, vec![2, 3, 2]).unwrap());
    for s in ["Y[1,0]Y[1,2]", "Y[2,1]Y[2,3]", "Y[1,0]Y[3,2]", "Y[2,1]Y[1,2]Y[3,2]"] {
        let m: Monomial = s.parse().unwrap();
        let full = ctx.simple_character(&m, Mode::Full).unwrap();
        let truncated = ctx.simple_character(&m, Mode::Truncated).unwrap();
        assert_eq!(ctx.truncate(&full), truncated, "{s}");
        for k in full.keys().filter(|k| k.is_dominant()) {
            assert!(truncated.contains(k), "{s}: {k}");
        }
    }
}

#[test]
fn tensor_products_of_simples() {
    let c: CartanDatum = "A3".parse().unwrap();
    let ctx = CharacterContext::new(QuiverDatum::from_xi(c, vec![2, 3, 2]).unwrap());
    let y10: Monomial = "Y[1,0]".parse().unwrap();
    let y21: Monomial = "Y[2,1]".parse().unwrap();
    let k = ctx.tensor_simple_check(&y10, &y21, Mode::Truncated).unwrap();
    assert!(k.is_some());
    let k_sq = ctx.tensor_simple_check(&y10, &y10, Mode::Full).unwrap();
    assert!(k_sq.is_some());
}

#[test]
fn dominant_pair_counts_match_root_partitions() {
    for (name, d) in [("A3", vec![1, 2, 1]), ("D4", vec![1, 1, 2, 1]), ("A4", vec![1, 1, 1, 1])] {
        let c: CartanDatum = name.parse().unwrap();
        let roots = c.positive_root_coords().to_vec();
        let ctx = CharacterContext::new(QuiverDatum::all_orientations(&c).unwrap().remove(0));
        let pairs = ctx.dominant_pairs(&d).unwrap();
        assert_eq!(pairs.len(), count_partitions(&roots, 0, &d), "{name}");
        for p in &pairs {
            assert!(p.monomial.is_dominant());
            assert!(p.a_factors.is_some());
        }
    }
}

fn count_partitions(roots: &[Vec<i64>], k: usize, rest: &[i64]) -> usize {
    if rest.iter().all(|&x| x == 0) {
        return 1;
    }
    if k == roots.len() {
        return 0;
    }
    let mut total = count_partitions(roots, k + 1, rest);
    let mut r = rest.to_vec();
    loop {
        for (x, b) in r.iter_mut().zip(&roots[k]) {
            *x -= b;
        }
        if r.iter().any(|&x| x < 0) {
            break;
        }
        total += count_partitions(roots, k + 1, &r);
    }
    total
}
