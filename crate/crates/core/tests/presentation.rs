use qgroth::cartan::CartanDatum;
use qgroth::characters::{CharacterContext, Mode};
use qgroth::monomial::Monomial;
use qgroth::presentation::{generator_vertex, verify_dual_pair, verify_relations, x_generator};
use qgroth::qgroup::QuantumGroupSide;
use qgroth::quiver::QuiverDatum;

fn orientations(name: &str) -> Vec<QuiverDatum> {
    let c: CartanDatum = name.parse().unwrap();
    QuiverDatum::all_orientations(&c).unwrap()
}

#[test]
fn relations_hold_for_sink_source_orientations() {
    for name in ["A1", "A2", "A3"] {
        let q = orientations(name).into_iter().find(|q| q.is_sink_source()).unwrap();
        let ctx = CharacterContext::new(q);
        let report = verify_relations(&ctx, 0..=3).unwrap();
        assert!(report.checked > 0);
        assert!(report.passed(), "{name}: {:?}", report.failures);
    }
}

#[test]
fn relations_hold_for_other_orientations() {
    let q = orientations("A3").into_iter().find(|q| !q.is_sink_source()).unwrap();
    let ctx = CharacterContext::new(q);
    let report = verify_relations(&ctx, 0..=3).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
}

#[test]
fn dual_pairs_commute_up_to_constant() {
    for name in ["A2", "A3", "A4"] {
        let q = orientations(name).remove(0);
        let ctx = CharacterContext::new(q.clone());
        for i in 0..q.rank() {
            for j in 0..q.rank() {
                let h = q.coxeter_number() as i64;
                if (q.xi()[i] + h - q.xi()[j]) % 2 != 0 {
                    continue;
                }
                assert!(verify_dual_pair(&ctx, i, q.xi()[i], j).unwrap(), "{name} {} {}", i + 1, j + 1);
            }
        }
    }
}

#[test]
fn level_zero_generators_map_to_chevalley_generators() {
    for q in orientations("A3") {
        let g = QuantumGroupSide::new(q.clone()).unwrap();
        let ctx = CharacterContext::new(q.clone());
        for i in 0..3 {
            let (k, p) = generator_vertex(&ctx, i, 0).unwrap();
            let pos = q.position(k, p).unwrap();
            assert_eq!(q.beta(pos), {
                let mut e = vec![0; 3];
                e[i] = 1;
                e
            });
            let x = ctx.truncate(&x_generator(&ctx, i, 0).unwrap());
            assert_eq!(x, ctx.simple_character(&Monomial::y(k, p), Mode::Truncated).unwrap());
            assert_eq!(g.phi(&x).unwrap(), g.root_vector(pos).unwrap());
        }
    }
}
