mod common;

use common::{group_likes, hopf, hopf_mutated, interior_oracle, luk};
use ldlab::em::{
    build_em_category, check_lifting_axioms, checker_equivalence_suite, coalgebra_laws, enumerate_coalgebras,
    is_morphism, lift_negation_functor, lifted_tensor, Coalgebra, LiftContext,
};
use ldlab::instances::instance::Instance;
use ldlab::instances::schema::Mutation;
use ldlab::kernel::{Obj, Payload, Scope};
use ldlab::report::Outcome;
use ldlab::star::{check_star_suite, star_from_lindist};
use ldlab::suite;

fn column(c: &Coalgebra) -> Vec<u32> {
    c.gamma.matrix().unwrap().to_rows().into_iter().map(|r| r[0]).collect()
}

#[test]
fn identity_comonad_has_one_coalgebra_per_object() {
    let t = luk(3);
    let (cb, _) = t.identity();
    let cs = enumerate_coalgebras(&cb, &t.scope).unwrap();
    assert_eq!(cs.iter().map(|c| c.carrier).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert!(cs.iter().all(|c| c.gamma.dom == c.gamma.cod));
}

#[test]
fn luk3_interior_coalgebras_sit_on_fixed_points() {
    let t = luk(3);
    let g = [0, 0, 2];
    let oracle: Vec<Obj> = (0..3).filter(|&a| a <= g[a]).collect();
    let (cb, _) = t.interior(g.to_vec());
    let cs = enumerate_coalgebras(&cb, &t.scope).unwrap();
    assert_eq!(cs.iter().map(|c| c.carrier).collect::<Vec<_>>(), oracle);
    assert_eq!(oracle, vec![0, 2]);
}

#[test]
fn one_dimensional_coalgebras_are_group_likes() {
    for (p, m) in [(2, 2), (3, 3), (2, 1)] {
        let inst = hopf(p, m);
        let cb = inst.comonad.as_ref().unwrap();
        let cs = enumerate_coalgebras(cb, &Scope::new(vec![1])).unwrap();
        let oracle = group_likes(p, m);
        assert_eq!(oracle.len(), m);
        let mut found: Vec<_> = cs.iter().map(column).collect();
        found.sort();
        let mut want = oracle.clone();
        want.sort();
        assert_eq!(found, want, "F_{p}[Z/{m}]");
    }
}

#[test]
fn enumeration_respects_the_bound() {
    let inst = hopf(2, 2);
    let cb = inst.comonad.as_ref().unwrap();
    let scope = Scope::new(vec![2]).with_enum_bound(10);
    assert!(enumerate_coalgebras(cb, &scope).is_err());
}

#[test]
fn identity_em_category_is_the_base() {
    let t = luk(3);
    let (cb, lift) = t.identity();
    let em = build_em_category(&cb, &t.bundle, Some((&t.neg, &lift)), &t.scope).unwrap();
    assert!(em.report.passed(), "{}", em.report.summary());
    assert_eq!(em.coalgebras.len(), 3);
    let lifted = Instance::from_file(&em.file).unwrap();
    let r = suite::validate(&lifted, &[]).unwrap();
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn luk3_interior_em_category_is_boolean() {
    let t = luk(3);
    let (cb, lift) = t.interior(vec![0, 0, 2]);
    let em = build_em_category(&cb, &t.bundle, Some((&t.neg, &lift)), &t.scope).unwrap();
    assert!(em.report.passed(), "{}", em.report.summary());
    assert_eq!(em.coalgebras.iter().map(|c| c.carrier).collect::<Vec<_>>(), vec![0, 2]);
    let lifted = Instance::from_file(&em.file).unwrap();
    let r = suite::validate(&lifted, &[]).unwrap();
    assert!(r.passed(), "{}", r.summary());
    assert_eq!(r.verdict_of("tri-1"), Some(true));
    let (bundle, neg) = lifted.require_lindist().unwrap();
    let sa = star_from_lindist(bundle, neg, &lifted.scope).unwrap();
    let star = check_star_suite(&sa, &lifted.scope);
    assert!(star.passed(), "{}", star.summary());
    assert_eq!(star.verdict_of("star-iso"), Some(true));
}

#[test]
fn hopf_em_category_lifts_tensors_and_evaluations() {
    let inst = hopf(2, 2);
    let cb = inst.comonad.as_ref().unwrap();
    let (bundle, neg) = inst.require_lindist().unwrap();
    let lift = inst.lift.as_ref().unwrap();
    let em = build_em_category(cb, bundle, Some((neg, lift)), &inst.scope).unwrap();
    assert!(em.report.passed(), "{}", em.report.summary());
    let ones: Vec<_> = em.coalgebras.iter().filter(|c| c.carrier == 1).collect();
    assert_eq!(ones.len(), 2);
    let phi = cb.phi.as_ref().unwrap();
    for x in &ones {
        for y in &ones {
            let xy = lifted_tensor(phi, &bundle.star, &cb.backend, x, y).unwrap();
            assert_eq!(coalgebra_laws(cb, xy.carrier, &xy.gamma), Outcome::Pass);
            // g^i ⊗ g^j coacts by g^(i+j)
            let (i, j) = (column(x)[1], column(y)[1]);
            assert_eq!(column(&xy), if (i + j) % 2 == 0 { vec![1, 0] } else { vec![0, 1] });
            assert!(em.coalgebras.contains(&xy));
        }
    }
    let e = neg.e.at1(1).unwrap();
    for x in &ones {
        let sx = lift_negation_functor(cb, &neg.s, &lift.nu, x).unwrap();
        let src = lifted_tensor(phi, &bundle.star, &cb.backend, &sx, x).unwrap();
        let unit = Coalgebra { carrier: 1, gamma: cb.psi.as_ref().unwrap().unit().unwrap() };
        assert_eq!(is_morphism(cb, &e, &src, &unit), Outcome::Pass);
    }
}

#[test]
fn lifted_negation_examples() {
    let t = luk(3);
    let (cb, lift) = t.identity();
    let c = Coalgebra { carrier: 1, gamma: cb.backend.identity(1).unwrap() };
    let s = lift_negation_functor(&cb, &t.neg.s, &lift.nu, &c).unwrap();
    assert_eq!((s.carrier, s.gamma.dom, s.gamma.cod), (1, 1, 1));

    let (cb, lift) = t.interior(vec![0, 0, 2]);
    let zero = Coalgebra { carrier: 0, gamma: cb.backend.witness(0, 0, "γ").unwrap() };
    let s = lift_negation_functor(&cb, &t.neg.s, &lift.nu, &zero).unwrap();
    assert_eq!(s.carrier, 2);
    assert_eq!(s.gamma.payload, Payload::Thin);

    for (p, m) in [(2, 2), (3, 3)] {
        let inst = hopf(p, m);
        let (cb, lift, sa) = (inst.comonad.as_ref().unwrap(), inst.lift.as_ref().unwrap(), inst.star.as_ref().unwrap());
        for c in enumerate_coalgebras(cb, &Scope::new(vec![1])).unwrap() {
            let k = column(&c).iter().position(|&v| v == 1).unwrap();
            let dual = lift_negation_functor(cb, &sa.s, &lift.nu, &c).unwrap();
            let mut inverse = vec![0; m];
            inverse[(m - k) % m] = 1;
            assert_eq!(column(&dual), inverse, "F_{p}[Z/{m}], g^{k}");
        }
    }
}

#[test]
fn lifting_axioms_on_positive_instances() {
    let t = luk(3);
    for (cb, lift) in [t.identity(), t.interior(vec![0, 0, 2])] {
        let ctx = LiftContext::new(&cb, &t.bundle, &t.neg, &lift).unwrap();
        let r = check_lifting_axioms(&ctx, &t.scope);
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.axioms.len(), 4);
    }
}

#[test]
fn identity_antipode_breaks_a_lifting_axiom() {
    let inst = hopf_mutated(3, 3, Mutation::IdentityAntipode);
    let (bundle, neg) = inst.require_lindist().unwrap();
    let ctx = LiftContext::new(inst.comonad.as_ref().unwrap(), bundle, neg, inst.lift.as_ref().unwrap()).unwrap();
    let r = check_lifting_axioms(&ctx, &inst.scope);
    let failing = r.failing_ids();
    assert!(["Le", "Ln", "Le′", "Ln′"].iter().any(|id| failing.contains(&id.to_string())), "{failing:?}");
}

#[test]
fn equivalence_suite_agrees_on_every_luk3_interior_comonad() {
    let t = luk(3);
    let maps = interior_oracle(3);
    assert_eq!(maps.len(), 4);
    for g in maps {
        let (cb, lift) = t.interior(g.clone());
        let ctx = LiftContext::new(&cb, &t.bundle, &t.neg, &lift).unwrap();
        let r = checker_equivalence_suite(&ctx, &t.scope).unwrap();
        assert!(r.passed(), "g = {g:?}: {}", r.summary());
        assert_eq!(r.results("prop2-agree").count(), 4);
    }
    let (cb, lift) = t.identity();
    let ctx = LiftContext::new(&cb, &t.bundle, &t.neg, &lift).unwrap();
    let r = checker_equivalence_suite(&ctx, &t.scope).unwrap();
    assert!(r.results("prop2-agree").all(|a| a.diagram.contains("pass ⇔") && a.passed()));
}

#[test]
fn equivalence_suite_agrees_on_mutated_hopf() {
    for mutation in [Mutation::IdentityAntipode, Mutation::ZeroNu] {
        let inst = hopf_mutated(3, 3, mutation.clone());
        let r = suite::equivalence(&inst).unwrap();
        assert!(r.passed(), "{mutation:?}: {}", r.summary());
        // at least one axiom fails on both sides
        assert!(r.axioms.iter().any(|a| a.diagram.contains("fail ⇔") && a.diagram.ends_with("fail")), "{mutation:?}");
    }
}
