use eeq_core::category::{surjective_at, InstanceSampler, Witness};
use eeq_core::constructions::{
    ceer_as_coequalizer, counter_pi1_machine, epi_not_onto_example, remark_demo, CoCeFamily,
    KbarSurrogate,
};
use eeq_core::rel::{approximant, cantor_proj, equivalence_closure};
use proptest::prelude::*;

/// A valid family on `e` indices: each e+2 is kept or extracted at some stage <= horizon.
fn family() -> impl Strategy<Value = CoCeFamily> {
    (1u64..10, 1u64..40).prop_flat_map(|(indices, horizon)| {
        prop::collection::vec(prop::option::of(1..=horizon), indices as usize).prop_map(
            move |plan| {
                let mut fam = CoCeFamily::new(indices, horizon);
                for (e, stage) in plan.into_iter().enumerate() {
                    let e = e as u64;
                    match stage {
                        Some(t) => fam.extract(e, e + 2, t).unwrap(),
                        None => fam.keep(e, e + 2).unwrap(),
                    }
                }
                fam
            },
        )
    })
}

fn surrogate() -> impl Strategy<Value = KbarSurrogate> {
    prop::collection::btree_map(0u64..20, 0u64..=16, 1..8).prop_map(|events| {
        let mut k = KbarSurrogate::new(16);
        for (x, t) in events {
            k.enumerate(x, t).unwrap();
        }
        k
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn two_classes_and_diagonal(fam in family(), extra in 0usize..20) {
        let n = fam.indices() as usize + 2 + extra;
        let run = counter_pi1_machine(&fam, fam.horizon(), n).unwrap();
        let z = approximant(&run.z, run.z_stage, n).unwrap();
        prop_assert_eq!(z.classes_count(), 2);
        for e in 0..fam.indices() {
            prop_assert!(z.related(0, e + 2).unwrap() ^ fam.member_limit(e, e + 2));
        }
        prop_assert!(run.diagnostics.passed());
    }

    #[test]
    fn epi_omits_exactly_two(k in surrogate(), n in 2usize..48) {
        let Ok(ex) = epi_not_onto_example(&k, 16, n) else {
            // degenerate surrogates are rejected, never silently accepted
            return Ok(());
        };
        let Some(Witness::Missed(missed)) = surjective_at(&ex.alpha, ex.scope)
            .unwrap()
            .witness()
            .cloned()
        else {
            panic!("alpha should not be onto");
        };
        prop_assert_eq!(missed.len(), 2);
        let below = |parity: u64| (0..n as u64).filter(|v| v % 2 == parity && !k.in_k(v / 2, 16)).count();
        prop_assert_eq!(
            ex.diagnostics.get("omitted_nonsingleton"),
            Some(if below(0) >= 2 && below(1) >= 2 { "true" } else { "false" })
        );
        prop_assert!(ex.diagnostics.passed());
    }

    #[test]
    fn ceer_roundtrip_against_closure(seed in any::<u64>()) {
        let mut s = InstanceSampler::new(seed, 7);
        let h = s.pair_table(32, 24);
        let run = ceer_as_coequalizer(&h, 32, 32).unwrap();
        prop_assert!(run.roundtrip);
        let pairs: Vec<(u64, u64)> = (0..32)
            .map(|x| cantor_proj(h.eval(x).unwrap()))
            .collect();
        let oracle = equivalence_closure(&pairs, 32).unwrap();
        prop_assert!(approximant(&run.z, 32, 32).unwrap().same_partition(&oracle));
    }

    #[test]
    fn remark_collapses_random_ceers(seed in any::<u64>()) {
        let x = InstanceSampler::new(seed, 7).ceer(40, 8, 30);
        let demo = remark_demo(&x, 64, 64).unwrap();
        prop_assert_eq!(demo.classes, 1);
    }
}

#[test]
fn empty_surrogate_is_rejected() {
    let k = KbarSurrogate::parse("ksurrogate horizon=4\n").unwrap();
    assert!(epi_not_onto_example(&k, 4, 16)
        .unwrap_err()
        .is_surrogate_violation());
}
