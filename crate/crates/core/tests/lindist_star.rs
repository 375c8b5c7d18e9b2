use ldlab::instances::build::{partial_eval, partial_eval_p, thin_star};
use std::sync::Arc;

use ldlab::instances::build::*;
use ldlab::kernel::{Backend, Scope};
use ldlab::lindist::{check_lindist_negation_suite, check_lindist_suite};
use ldlab::star::{check_star_suite, lindist_from_star, roundtrip_lindist, roundtrip_star, star_from_lindist};

fn luk3() -> (ldlab::lindist::LindistBundle, ldlab::lindist::Negation, Scope) {
    let l = lukasiewicz_tables(3);
    let bundle = thin_lindist(l.backend.clone(), (2, l.star), (0, l.par));
    let neg = thin_negation(&bundle, l.neg.clone(), l.neg);
    let scope = Scope::full(&l.backend);
    (bundle, neg, scope)
}

fn f2() -> (Arc<Backend>, Scope) {
    let b = matrix_backend(2, vec![1, 2]).unwrap();
    (b, Scope::new(vec![1, 2]))
}

#[test]
fn luk3_lindist_negation_suite_passes() {
    let (bundle, neg, scope) = luk3();
    let r = check_lindist_negation_suite(&bundle, &neg, &scope);
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn matrix_lindist_negation_suite_passes() {
    let (b, scope) = f2();
    let bundle = matrix_lindist(b);
    let r = check_lindist_negation_suite(&bundle, &matrix_negation(), &scope);
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn matrix_star_suite_passes() {
    let (b, scope) = f2();
    let r = check_star_suite(&matrix_star(b), &scope);
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn luk3_translations_roundtrip() {
    let (bundle, neg, scope) = luk3();
    let sa = star_from_lindist(&bundle, &neg, &scope).unwrap();
    let r = check_star_suite(&sa, &scope);
    assert!(r.passed(), "{}", r.summary());
    let r = roundtrip_lindist(&bundle, &neg, &scope).unwrap();
    assert!(r.passed(), "{}", r.summary());
    let r = roundtrip_star(&sa, &scope).unwrap();
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn matrix_translations_roundtrip() {
    let (b, scope) = f2();
    let bundle = matrix_lindist(b.clone());
    let neg = matrix_negation();
    let sa = star_from_lindist(&bundle, &neg, &scope).unwrap();
    let r = check_star_suite(&sa, &scope);
    assert!(r.passed(), "{}", r.summary());
    let r = roundtrip_lindist(&bundle, &neg, &scope).unwrap();
    assert!(r.passed(), "{}", r.summary());
    let sa = matrix_star(b);
    let (lb, ln) = lindist_from_star(&sa, &scope).unwrap();
    let r = check_lindist_negation_suite(&lb, &ln, &scope);
    assert!(r.passed(), "{}", r.summary());
    let r = roundtrip_star(&sa, &scope).unwrap();
    assert!(r.passed(), "{}", r.summary());
    let _ = check_lindist_suite(&lb, &scope);
}

use ldlab::kernel::{Family, Functor, MatrixCat, Morphism, Obj, Payload, TableCat, Tensor, TensorTag, Variance};
use ldlab::lindist::{check_lindist, check_triangle_identities, LindistBundle, Negation};
use ldlab::matrix::Matrix;
use ldlab::report::FailureKind;
use ldlab::star::check_star_hom_bijection;

const L3: [&str; 3] = ["0", "1/2", "1"];

#[test]
fn luk3_tensors_differ_at_half() {
    let l = lukasiewicz_tables(3);
    let (st, pr) = (|a: usize, b: usize| (a + b).saturating_sub(2), |a: usize, b: usize| (a + b).min(2));
    assert_eq!((l.star[1][1], l.par[1][1]), (st(1, 1), pr(1, 1)));
    assert_eq!((L3[l.star[1][1]], L3[l.par[1][1]]), ("0", "1"));
    let (bundle, _, scope) = luk3();
    let r = check_lindist(&bundle, &scope);
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn reversed_left_distribution_is_missing_where_strict() {
    let (mut bundle, _, scope) = luk3();
    let (st, pr) = (bundle.star.clone(), bundle.par.clone());
    let (s2, p2) = (st.clone(), pr.clone());
    bundle.dl = Family::thin(
        bundle.backend.clone(),
        "∂l",
        3,
        move |x| pr.obj(st.obj(x[0], x[1])?, x[2]),
        move |x| s2.obj(x[0], p2.obj(x[1], x[2])?),
    );
    let r = check_lindist(&bundle, &scope);
    assert!(!r.passed());
    let typed = r.axioms.iter().find(|a| a.diagram == "∂l, ∂r components are well-typed").unwrap();
    // the reversed arrow exists only where A⋆(B⋄C) = (A⋆B)⋄C
    let mut oracle = Vec::new();
    for (a, la) in L3.iter().enumerate() {
        for (b, lb) in L3.iter().enumerate() {
            for (c, lc) in L3.iter().enumerate() {
                let left = (a + (b + c).min(2)).saturating_sub(2);
                let right = ((a + b).saturating_sub(2) + c).min(2);
                if right > left {
                    oracle.push(vec![la.to_string(), lb.to_string(), lc.to_string()]);
                }
            }
        }
    }
    let found: Vec<_> = typed.counterexamples.iter().map(|c| c.tuple.clone()).collect();
    assert_eq!(found, oracle);
    assert!(typed.counterexamples.iter().all(|c| c.kind == FailureKind::WitnessMissing));
    // (½,½,½) has a witness both ways
    assert!(!found.contains(&vec!["1/2".into(), "1/2".into(), "1/2".into()]));
}

#[test]
fn luk3_triangle_identities_hold() {
    let (bundle, neg, scope) = luk3();
    let r = check_triangle_identities(&bundle, &neg, &scope);
    assert!(r.passed(), "{}", r.summary());
    for id in ["tri-1", "tri-2", "tri-3", "tri-4"] {
        assert_eq!(r.results(id).map(|a| a.checked).sum::<usize>(), 3);
    }
}

#[test]
fn matrix_triangle_identities_hold_up_to_dim_3() {
    let b = matrix_backend(2, vec![1, 2, 3]).unwrap();
    let r = check_triangle_identities(&matrix_lindist(b), &matrix_negation(), &Scope::new(vec![1, 2, 3]));
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn zero_coevaluation_breaks_triangles() {
    let b = matrix_backend(2, vec![1, 2]).unwrap();
    let mut neg = matrix_negation();
    neg.n = Family::new("n", 1, |x| Ok(MatrixCat::morphism(Matrix::zeros(x[0] * x[0], 1))));
    let r = check_triangle_identities(&matrix_lindist(b), &neg, &Scope::new(vec![1, 2]));
    let tri1 = r.results("tri-1").next().unwrap();
    assert_eq!(tri1.counterexamples.len(), 2);
    assert!(tri1.counterexamples.iter().all(|c| c.kind == FailureKind::WitnessesDiffer));
    assert_eq!(r.verdict_of("tri-3"), Some(true));
}

#[test]
fn luk3_star_structure_is_pointwise() {
    let (bundle, neg, scope) = luk3();
    let sa = star_from_lindist(&bundle, &neg, &scope).unwrap();
    for a in 0..3 {
        // 1 − (1 − a) = a
        assert_eq!(sa.sp.obj(sa.s.obj(a).unwrap()).unwrap(), a);
        assert!(sa.to_sps.at1(a).is_ok() && sa.from_sps.at1(a).is_ok());
        for b in 0..3 {
            assert!(sa.eval.at(&[a, b]).is_ok(), "e_(a,b) at {a},{b}");
            assert!(sa.eval_p.at(&[b, a]).is_ok());
        }
    }
}

#[test]
fn matrix_evaluation_is_partial_evaluation() {
    let b = matrix_backend(2, vec![1, 2, 3]).unwrap();
    let scope = Scope::new(vec![1, 2, 3]);
    let sa = star_from_lindist(&matrix_lindist(b), &matrix_negation(), &scope).unwrap();
    for a in 1..=3 {
        for x in 1..=3 {
            let e = sa.eval.at(&[a, x]).unwrap();
            assert_eq!(e.matrix().unwrap(), &partial_eval(a, x), "e_({a},{x})");
            let ep = sa.eval_p.at(&[x, a]).unwrap();
            assert_eq!(ep.matrix().unwrap(), &partial_eval_p(x, a));
        }
    }
    let r = check_star_hom_bijection(&sa, &Scope::new(vec![1, 2]));
    assert!(r.passed(), "{}", r.summary());
}

fn point() -> (LindistBundle, Negation, Scope) {
    let t = TableCat::new(vec!["*".into()], vec![(0, 0)], vec![0], &[(0, 0, 0)]).unwrap();
    let b = Arc::new(Backend::Table(t));
    let one = b.identity(0).unwrap();
    let o1 = one.clone();
    let tensor = |tag| {
        let o = one.clone();
        Tensor::new(tag, 0, |_, _| Ok(0), move |_, _| Ok(o.clone()))
    };
    let fam = |name: &str, arity| {
        let o = o1.clone();
        Family::new(name, arity, move |_| Ok(o.clone()))
    };
    let neg_fun = |name: &str| Functor::new(name, Variance::Contravariant, |_| Ok(0), |f: &Morphism| Ok(f.clone()));
    let bundle = LindistBundle {
        backend: b.clone(),
        star: tensor(TensorTag::Star),
        par: tensor(TensorTag::Par),
        dl: fam("∂l", 3),
        dr: fam("∂r", 3),
        sym: None,
    };
    let neg = Negation {
        s: neg_fun("S"),
        sp: neg_fun("S′"),
        e: fam("e", 1),
        n: fam("n", 1),
        ep: fam("e′", 1),
        np: fam("n′", 1),
    };
    (bundle, neg, Scope::full(&b))
}

#[test]
fn one_object_instance_collapses_to_identities() {
    let (bundle, neg, scope) = point();
    let sa = star_from_lindist(&bundle, &neg, &scope).unwrap();
    let only = |m: Morphism| assert_eq!(m.payload, Payload::Table(0));
    for f in [&sa.to_sps, &sa.from_sps, &sa.to_ssp, &sa.from_ssp] {
        only(f.at1(0).unwrap());
    }
    only(sa.eval.at(&[0, 0]).unwrap());
    only(sa.eval_p.at(&[0, 0]).unwrap());
    let (lb, ln) = lindist_from_star(&sa, &scope).unwrap();
    assert_eq!(lb.par.unit, lb.star.unit);
    only(lb.dl(0, 0, 0).unwrap());
    only(lb.dr(0, 0, 0).unwrap());
    only(ln.n.at1(0).unwrap());
    let r = check_lindist_negation_suite(&lb, &ln, &scope);
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn luk3_derived_par_is_truncated_sum() {
    let l = lukasiewicz_tables(3);
    let sa = thin_star(l.backend.clone(), (2, l.star.clone()), l.neg.clone(), l.neg.clone());
    let scope = Scope::full(&l.backend);
    let (lb, _) = lindist_from_star(&sa, &scope).unwrap();
    let half = |k: Obj| num_rational::Ratio::new(k, 2);
    for a in 0..3 {
        for b in 0..3 {
            let got = half(lb.par.obj(a, b).unwrap());
            let want = (half(a) + half(b)).min(num_rational::Ratio::from_integer(1));
            assert_eq!(got, want, "{a}⋄{b}");
        }
    }
    assert_eq!(lb.par.unit, 0);
}

#[test]
fn matrix_derived_par_multiplies_dimensions() {
    let b = matrix_backend(2, vec![1, 2, 3]).unwrap();
    let (lb, _) = lindist_from_star(&matrix_star(b), &Scope::new(vec![1, 2, 3])).unwrap();
    for a in 1..=3 {
        for x in 1..=3 {
            assert_eq!(lb.par.obj(a, x).unwrap(), x * a);
        }
    }
}

#[test]
fn luk3_hom_bijection_on_all_triples() {
    let (bundle, neg, scope) = luk3();
    let sa = star_from_lindist(&bundle, &neg, &scope).unwrap();
    let r = check_star_hom_bijection(&sa, &scope);
    assert!(r.passed(), "{}", r.summary());
    let bij = r.axioms.iter().find(|a| a.diagram.starts_with("hom(")).unwrap();
    assert_eq!(bij.checked, 27);
    // both sides inhabited together: a⋆b ≤ 1−c iff a ≤ 1−(b⋆c)
    for a in 0..3usize {
        for x in 0..3usize {
            for c in 0..3usize {
                let left = (a + x).saturating_sub(2) <= 2 - c;
                let right = a <= 2 - (x + c).saturating_sub(2);
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn matrix_hom_bijection_and_zeroed_evaluation() {
    let b = matrix_backend(2, vec![1, 2]).unwrap();
    let scope = Scope::new(vec![1, 2]);
    // (1,2,1): hom(1⊗2, S1) and hom(1, S(2⊗1)) both hold 2^2 matrices
    assert_eq!(b.hom_size(2, 1), 4);
    assert_eq!(b.hom_size(1, 2), 4);
    let sa = matrix_star(b.clone());
    assert!(check_star_hom_bijection(&sa, &scope).passed());
    let mut broken = sa.clone();
    broken.eval = sa.eval.overridden(vec![2, 1], b.zero(4, 1));
    let r = check_star_hom_bijection(&broken, &scope);
    let bij = r.axioms.iter().find(|a| a.diagram.starts_with("hom(")).unwrap();
    assert!(!bij.passed());
    assert!(bij.counterexamples.iter().all(|c| c.tuple[1..] == ["2", "1"]));
}
