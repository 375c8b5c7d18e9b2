mod common;

use common::{interior_oracle, luk};
use ldlab::comonad::{check_l1, check_monoidal_comonad};
use ldlab::em::{coalgebra_laws, enumerate_coalgebras, lifted_tensor};
use ldlab::instances::corpus::{canonical_reports, corpus};
use ldlab::instances::generate::{gen_group_hopf, gen_lukasiewicz, gen_matrix_compact, mutate, with_interior};
use ldlab::instances::instance::Instance;
use ldlab::instances::schema::{Mutation, TableTarget};
use ldlab::instances::search::{classify_interior_comonads, Tier};
use ldlab::kernel::{Scope, TensorTag};
use ldlab::report::Outcome;
use ldlab::star::{lindist_from_star, roundtrip_lindist, star_from_lindist};
use ldlab::suite;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn luk_round_trip_reproduces_the_tables(n in 2usize..=6) {
        let t = luk(n);
        let r = roundtrip_lindist(&t.bundle, &t.neg, &t.scope).unwrap();
        prop_assert!(r.passed(), "{}", r.summary());
        let sa = star_from_lindist(&t.bundle, &t.neg, &t.scope).unwrap();
        let (derived, dneg) = lindist_from_star(&sa, &t.scope).unwrap();
        let top = n - 1;
        for a in 0..n {
            prop_assert_eq!(dneg.s.obj(a).unwrap(), top - a);
            for b in 0..n {
                prop_assert_eq!(derived.par.obj(a, b).unwrap(), (a + b).min(top));
                prop_assert_eq!(derived.star.obj(a, b).unwrap(), (a + b).saturating_sub(top));
            }
        }
    }

    #[test]
    fn matrix_round_trip_passes(p in prop::sample::select(vec![2u32, 3, 5]), dmax in 1usize..=2) {
        let inst = Instance::from_file(&gen_matrix_compact(p, dmax).unwrap()).unwrap();
        let (bundle, neg) = inst.require_lindist().unwrap();
        let r = roundtrip_lindist(bundle, neg, &inst.scope).unwrap();
        prop_assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn generated_positives_pass(n in 2usize..=5, pick in any::<prop::sample::Index>()) {
        let maps = interior_oracle(n);
        let g = pick.get(&maps).clone();
        let inst = Instance::from_file(&with_interior(gen_lukasiewicz(n).unwrap(), g)).unwrap();
        let r = suite::validate(&inst, &["cat".into(), "mon-⋆".into(), "mon-⋄".into(), "tri-1".into(), "comonad".into()]).unwrap();
        prop_assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn star_table_flips_never_pass_silently(n in 2usize..=4, a in 0usize..4, b in 0usize..4, v in 0usize..4) {
        let (a, b, v) = (a % n, b % n, v % n);
        prop_assume!(v != (a + b).saturating_sub(n - 1));
        let flip = Mutation::TableEntry { target: TableTarget::Star, index: vec![a, b], value: v };
        let f = mutate(&gen_lukasiewicz(n).unwrap(), flip).unwrap();
        let r = suite::validate(&Instance::from_file(&f).unwrap(), &[]).unwrap();
        prop_assert!(!r.passed());
    }

    #[test]
    fn lifted_tensors_of_coalgebras_are_coalgebras(n in 2usize..=5, pick in any::<prop::sample::Index>()) {
        let t = luk(n);
        let g = pick.get(&interior_oracle(n)).clone();
        let (cb, _) = t.interior(g);
        prop_assume!(check_monoidal_comonad(&cb, &t.bundle.star, TensorTag::Star, &t.scope).unwrap().passed());
        let phi = cb.phi.clone().unwrap();
        let cs = enumerate_coalgebras(&cb, &t.scope).unwrap();
        for x in &cs {
            for y in &cs {
                let xy = lifted_tensor(&phi, &t.bundle.star, &cb.backend, x, y).unwrap();
                prop_assert_eq!(coalgebra_laws(&cb, xy.carrier, &xy.gamma), Outcome::Pass);
            }
        }
    }

    #[test]
    fn monoidal_interior_comonads_distribute(n in 2usize..=5) {
        let inst = Instance::from_file(&gen_lukasiewicz(n).unwrap()).unwrap();
        for row in classify_interior_comonads(&inst).unwrap() {
            prop_assert!(!row.distributive_exception, "g = {:?}", row.comonad.g);
            if row.tier >= Tier::Monoidal {
                let (bundle, _) = inst.require_lindist().unwrap();
                prop_assert!(check_l1(&row.comonad.bundle, bundle, &inst.scope).unwrap().passed());
            }
        }
    }

    #[test]
    fn reports_are_deterministic(pick in any::<prop::sample::Index>()) {
        let entries = corpus().unwrap();
        let e = pick.get(&entries);
        prop_assert_eq!(canonical_reports(&e.file), canonical_reports(&e.file.clone()));
    }
}

#[test]
fn hopf_lifted_tensors_are_coalgebras() {
    for (p, m) in [(2, 2), (3, 3), (5, 2)] {
        let inst = Instance::from_file(&gen_group_hopf(p, m).unwrap()).unwrap();
        let cb = inst.comonad.as_ref().unwrap();
        let (bundle, _) = inst.require_lindist().unwrap();
        let cs = enumerate_coalgebras(cb, &Scope::new(vec![1])).unwrap();
        for x in &cs {
            for y in &cs {
                let xy = lifted_tensor(cb.phi.as_ref().unwrap(), &bundle.star, &cb.backend, x, y).unwrap();
                assert_eq!(coalgebra_laws(cb, xy.carrier, &xy.gamma), Outcome::Pass);
            }
        }
    }
}
