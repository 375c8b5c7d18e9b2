//! Linearly distributive structure and negations.
//!
//! Composites that the literature writes with unit isomorphisms such as
//! `A ≅ I ⋆ A` are formed with those isomorphisms as identities: every
//! monoidal structure here is strict, so `I ⋆ A` and `A` are the same object.

use std::sync::Arc;

use crate::kernel::{
    check_category_laws, check_monoidal_laws, check_symmetry_laws, Backend, Family, Fault, Functor, Morphism, Obj,
    Scope, Symmetry, Tensor,
};
use crate::report::{equation, labels, run_check, run_objects, AxiomResult, CheckReport, Outcome};

pub const STRICT_UNIT_NOTE: &str = "unit isomorphisms are identities (strict monoidal structures)";
pub const COHERENCE_NOTE: &str = "coherence subset only";

/// `(⋆, I)`, `(⋄, J)` and the linear distributions
/// `∂l_{A,B,C}: A⋆(B⋄C) → (A⋆B)⋄C` and `∂r_{A,B,C}: (B⋄C)⋆A → B⋄(C⋆A)`.
#[derive(Clone, Debug)]
pub struct LindistBundle {
    pub backend: Arc<Backend>,
    pub star: Tensor,
    pub par: Tensor,
    pub dl: Family,
    pub dr: Family,
    /// Symmetry of `⋄`; only the bialgebra construction uses it.
    pub sym: Option<Symmetry>,
}

/// Negations `S`, `S′` with `e_A: SA⋆A → J`, `n_A: I → A⋄SA`,
/// `e′_A: A⋆S′A → J`, `n′_A: I → S′A⋄A`.
#[derive(Clone, Debug)]
pub struct Negation {
    pub s: Functor,
    pub sp: Functor,
    pub e: Family,
    pub n: Family,
    pub ep: Family,
    pub np: Family,
}

impl LindistBundle {
    pub fn id(&self, a: Obj) -> Result<Morphism, Fault> {
        self.backend.identity(a)
    }

    pub fn dl(&self, a: Obj, b: Obj, c: Obj) -> Result<Morphism, Fault> {
        self.dl.at(&[a, b, c])
    }

    pub fn dr(&self, a: Obj, b: Obj, c: Obj) -> Result<Morphism, Fault> {
        self.dr.at(&[a, b, c])
    }

    pub fn i(&self) -> Obj {
        self.star.unit
    }

    pub fn j(&self) -> Obj {
        self.par.unit
    }
}

pub(crate) fn generators(backend: &Backend, scope: &Scope) -> Vec<Morphism> {
    scope.pairs().into_iter().flat_map(|[a, b]| backend.generators(a, b)).collect()
}

fn typed(m: Result<Morphism, Fault>, dom: Result<Obj, Fault>, cod: Result<Obj, Fault>) -> Outcome {
    match (m, dom, cod) {
        (Ok(m), Ok(d), Ok(c)) => Outcome::require((m.dom, m.cod) == (d, c), || {
            format!("component has type {} -> {}, expected {} -> {}", m.dom, m.cod, d, c)
        }),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => Outcome::from_fault(&e),
    }
}

/// Component typing and naturality of `∂l`, `∂r` in each variable, plus the
/// checked coherence subset.
pub fn check_lindist(bundle: &LindistBundle, scope: &Scope) -> CheckReport {
    let b = &*bundle.backend;
    let (st, pr) = (&bundle.star, &bundle.par);
    let mut report = CheckReport::new(scope.describe(b));
    report.note(COHERENCE_NOTE);
    report.note(STRICT_UNIT_NOTE);
    let triples = scope.triples();

    report.push(run_objects(b, "lindist-nat", "∂l, ∂r components are well-typed", &triples, |&[x, y, z]| {
        let l = typed(
            bundle.dl(x, y, z),
            pr.obj(y, z).and_then(|yz| st.obj(x, yz)),
            st.obj(x, y).and_then(|xy| pr.obj(xy, z)),
        );
        if l != Outcome::Pass {
            return l;
        }
        typed(bundle.dr(x, y, z), pr.obj(y, z).and_then(|yz| st.obj(yz, x)), st.obj(z, x).and_then(|zx| pr.obj(y, zx)))
    }));

    let gens = generators(b, scope);
    let mut tuples = Vec::new();
    for f in &gens {
        for [u, v] in scope.pairs() {
            tuples.push((f.clone(), u, v));
        }
    }
    let label = |(f, u, v): &(Morphism, Obj, Obj)| {
        let mut l = vec![b.describe(f)];
        l.extend(labels(b, &[*u, *v]));
        l
    };
    let id = |x| b.identity(x);

    // ∂l_{A,B,C}: A⋆(B⋄C) → (A⋆B)⋄C
    report.push(run_check("lindist-nat", "∂l natural in A", &tuples, label, |(f, y, z)| {
        let lhs = (|| b.seq(&[st.mor(f, &pr.mor(&id(*y)?, &id(*z)?)?)?, bundle.dl(f.cod, *y, *z)?]))();
        let rhs = (|| b.seq(&[bundle.dl(f.dom, *y, *z)?, pr.mor(&st.mor(f, &id(*y)?)?, &id(*z)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check("lindist-nat", "∂l natural in B", &tuples, label, |(g, x, z)| {
        let lhs = (|| b.seq(&[st.mor(&id(*x)?, &pr.mor(g, &id(*z)?)?)?, bundle.dl(*x, g.cod, *z)?]))();
        let rhs = (|| b.seq(&[bundle.dl(*x, g.dom, *z)?, pr.mor(&st.mor(&id(*x)?, g)?, &id(*z)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check("lindist-nat", "∂l natural in C", &tuples, label, |(h, x, y)| {
        let lhs = (|| b.seq(&[st.mor(&id(*x)?, &pr.mor(&id(*y)?, h)?)?, bundle.dl(*x, *y, h.cod)?]))();
        let rhs = (|| b.seq(&[bundle.dl(*x, *y, h.dom)?, pr.mor(&st.mor(&id(*x)?, &id(*y)?)?, h)?]))();
        equation(b, lhs, rhs)
    }));
    // ∂r_{A,B,C}: (B⋄C)⋆A → B⋄(C⋆A)
    report.push(run_check("lindist-nat", "∂r natural in A", &tuples, label, |(f, y, z)| {
        let lhs = (|| b.seq(&[st.mor(&pr.mor(&id(*y)?, &id(*z)?)?, f)?, bundle.dr(f.cod, *y, *z)?]))();
        let rhs = (|| b.seq(&[bundle.dr(f.dom, *y, *z)?, pr.mor(&id(*y)?, &st.mor(&id(*z)?, f)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check("lindist-nat", "∂r natural in B", &tuples, label, |(g, x, z)| {
        let lhs = (|| b.seq(&[st.mor(&pr.mor(g, &id(*z)?)?, &id(*x)?)?, bundle.dr(*x, g.cod, *z)?]))();
        let rhs = (|| b.seq(&[bundle.dr(*x, g.dom, *z)?, pr.mor(g, &st.mor(&id(*z)?, &id(*x)?)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check("lindist-nat", "∂r natural in C", &tuples, label, |(h, x, y)| {
        let lhs = (|| b.seq(&[st.mor(&pr.mor(&id(*y)?, h)?, &id(*x)?)?, bundle.dr(*x, *y, h.cod)?]))();
        let rhs = (|| b.seq(&[bundle.dr(*x, *y, h.dom)?, pr.mor(&id(*y)?, &st.mor(h, &id(*x)?)?)?]))();
        equation(b, lhs, rhs)
    }));

    check_coherence(bundle, scope, &mut report);
    report
}

fn check_coherence(bundle: &LindistBundle, scope: &Scope, report: &mut CheckReport) {
    let b = &*bundle.backend;
    let (st, pr) = (&bundle.star, &bundle.par);
    let (i, j) = (bundle.i(), bundle.j());
    let id = |x| b.identity(x);
    let pairs = scope.pairs();

    report.push(run_objects(b, "coh-subset", "∂l_{I,B,C} = 1, ∂l_{A,B,J} = 1", &pairs, |&[x, y]| {
        let first = equation(b, bundle.dl(i, x, y), pr.obj(x, y).and_then(id));
        if first != Outcome::Pass {
            return first;
        }
        equation(b, bundle.dl(x, y, j), st.obj(x, y).and_then(id))
    }));
    report.push(run_objects(b, "coh-subset", "∂r_{I,B,C} = 1, ∂r_{A,J,C} = 1", &pairs, |&[x, y]| {
        let first = equation(b, bundle.dr(i, x, y), pr.obj(x, y).and_then(id));
        if first != Outcome::Pass {
            return first;
        }
        equation(b, bundle.dr(x, j, y), st.obj(y, x).and_then(id))
    }));

    let quads = scope.quads();
    report.push(run_objects(
        b,
        "coh-subset",
        "∂l_{A⋆A′,B,C} = ∂l_{A,A′⋆B,C}∘(1⋆∂l_{A′,B,C})",
        &quads,
        |&[a, a2, x, y]| {
            let lhs = (|| bundle.dl(st.obj(a, a2)?, x, y))();
            let rhs = (|| b.seq(&[st.mor(&id(a)?, &bundle.dl(a2, x, y)?)?, bundle.dl(a, st.obj(a2, x)?, y)?]))();
            equation(b, lhs, rhs)
        },
    ));
    report.push(run_objects(
        b,
        "coh-subset",
        "∂l_{A,B,C⋄D} = (∂l_{A,B,C}⋄1)∘∂l_{A,B⋄C,D}",
        &quads,
        |&[a, x, y, z]| {
            let lhs = (|| bundle.dl(a, x, pr.obj(y, z)?))();
            let rhs = (|| b.seq(&[bundle.dl(a, pr.obj(x, y)?, z)?, pr.mor(&bundle.dl(a, x, y)?, &id(z)?)?]))();
            equation(b, lhs, rhs)
        },
    ));
    report.push(run_objects(
        b,
        "coh-subset",
        "∂r_{A⋆A′,B,C} = ∂r_{A′,B,C⋆A}∘(∂r_{A,B,C}⋆1)",
        &quads,
        |&[a, a2, x, y]| {
            let lhs = (|| bundle.dr(st.obj(a, a2)?, x, y))();
            let rhs = (|| b.seq(&[st.mor(&bundle.dr(a, x, y)?, &id(a2)?)?, bundle.dr(a2, x, st.obj(y, a)?)?]))();
            equation(b, lhs, rhs)
        },
    ));
    report.push(run_objects(
        b,
        "coh-subset",
        "∂r_{A,B⋄B′,C} = (1⋄∂r_{A,B′,C})∘∂r_{A,B,B′⋄C}",
        &quads,
        |&[a, x, x2, y]| {
            let lhs = (|| bundle.dr(a, pr.obj(x, x2)?, y))();
            let rhs = (|| b.seq(&[bundle.dr(a, x, pr.obj(x2, y)?)?, pr.mor(&id(x)?, &bundle.dr(a, x2, y)?)?]))();
            equation(b, lhs, rhs)
        },
    ));
    report.push(run_objects(
        b,
        "coh-subset",
        "∂r_{D,A⋆B,C}∘(∂l_{A,B,C}⋆1) = ∂l_{A,B,C⋆D}∘(1⋆∂r_{D,B,C})",
        &quads,
        |&[a, x, y, d]| {
            let lhs = (|| b.seq(&[st.mor(&bundle.dl(a, x, y)?, &id(d)?)?, bundle.dr(d, st.obj(a, x)?, y)?]))();
            let rhs = (|| b.seq(&[st.mor(&id(a)?, &bundle.dr(d, x, y)?)?, bundle.dl(a, x, st.obj(y, d)?)?]))();
            equation(b, lhs, rhs)
        },
    ));
}

/// `S1 = 1` and `S(g∘f) = Sf∘Sg` over scoped identities and composable
/// generator pairs.
pub fn check_contravariant(b: &Backend, s: &Functor, name: &str, scope: &Scope) -> Vec<AxiomResult> {
    let id = |x| b.identity(x);
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();
    let gens = generators(b, scope);
    let mut pairs = Vec::new();
    for f in &gens {
        for g in gens.iter().filter(|g| g.dom == f.cod) {
            pairs.push((f.clone(), g.clone()));
        }
    }
    vec![
        run_objects(b, "neg-fun", &format!("{name}1 = 1"), &singles, |&[a]| {
            equation(b, id(a).and_then(|i| s.mor(&i)), s.obj(a).and_then(id))
        }),
        run_check(
            "neg-fun",
            &format!("{name}(g∘f) = {name}f∘{name}g"),
            &pairs,
            |(f, g)| vec![b.describe(g), b.describe(f)],
            |(f, g)| {
                let lhs = b.compose(g, f).and_then(|gf| s.mor(&gf));
                let rhs = (|| b.compose(&s.mor(f)?, &s.mor(g)?))();
                equation(b, lhs, rhs)
            },
        ),
    ]
}

/// Contravariant functoriality of `S`, `S′` and dinaturality of `e`, `n`,
/// `e′`, `n′`.
pub fn check_negation_laws(bundle: &LindistBundle, neg: &Negation, scope: &Scope) -> CheckReport {
    let b = &*bundle.backend;
    let (st, pr) = (&bundle.star, &bundle.par);
    let mut report = CheckReport::new(scope.describe(b));
    let gens = generators(b, scope);
    let id = |x| b.identity(x);

    report.extend(check_contravariant(b, &neg.s, "S", scope));
    report.extend(check_contravariant(b, &neg.sp, "S′", scope));

    let describe = |f: &Morphism| vec![b.describe(f)];
    report.push(run_check("neg-dinat", "e_A∘(Sf⋆1) = e_B∘(1⋆f)", &gens, describe, |f| {
        let lhs = (|| b.seq(&[st.mor(&neg.s.mor(f)?, &id(f.dom)?)?, neg.e.at1(f.dom)?]))();
        let rhs = (|| b.seq(&[st.mor(&id(neg.s.obj(f.cod)?)?, f)?, neg.e.at1(f.cod)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check("neg-dinat", "(f⋄1)∘n_A = (1⋄Sf)∘n_B", &gens, describe, |f| {
        let lhs = (|| b.seq(&[neg.n.at1(f.dom)?, pr.mor(f, &id(neg.s.obj(f.dom)?)?)?]))();
        let rhs = (|| b.seq(&[neg.n.at1(f.cod)?, pr.mor(&id(f.cod)?, &neg.s.mor(f)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check("neg-dinat", "e′_A∘(1⋆S′f) = e′_B∘(f⋆1)", &gens, describe, |f| {
        let lhs = (|| b.seq(&[st.mor(&id(f.dom)?, &neg.sp.mor(f)?)?, neg.ep.at1(f.dom)?]))();
        let rhs = (|| b.seq(&[st.mor(f, &id(neg.sp.obj(f.cod)?)?)?, neg.ep.at1(f.cod)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check("neg-dinat", "(1⋄f)∘n′_A = (S′f⋄1)∘n′_B", &gens, describe, |f| {
        let lhs = (|| b.seq(&[neg.np.at1(f.dom)?, pr.mor(&id(neg.sp.obj(f.dom)?)?, f)?]))();
        let rhs = (|| b.seq(&[neg.np.at1(f.cod)?, pr.mor(&neg.sp.mor(f)?, &id(f.cod)?)?]))();
        equation(b, lhs, rhs)
    }));
    report
}

/// The four triangle identities, per scoped object.
pub fn check_triangle_identities(bundle: &LindistBundle, neg: &Negation, scope: &Scope) -> CheckReport {
    let b = &*bundle.backend;
    let (st, pr) = (&bundle.star, &bundle.par);
    let mut report = CheckReport::new(scope.describe(b));
    report.note(STRICT_UNIT_NOTE);
    let id = |x| b.identity(x);
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();

    report.push(run_objects(b, "tri-1", "(1⋄e)∘∂r∘(n⋆1) = 1_A", &singles, |&[a]| {
        let lhs = (|| {
            let sa = neg.s.obj(a)?;
            b.seq(&[st.mor(&neg.n.at1(a)?, &id(a)?)?, bundle.dr(a, a, sa)?, pr.mor(&id(a)?, &neg.e.at1(a)?)?])
        })();
        equation(b, lhs, id(a))
    }));
    report.push(run_objects(b, "tri-2", "(e⋄1)∘∂l∘(1⋆n) = 1_SA", &singles, |&[a]| {
        let sa = neg.s.obj(a);
        let lhs = (|| {
            let sa = neg.s.obj(a)?;
            b.seq(&[st.mor(&id(sa)?, &neg.n.at1(a)?)?, bundle.dl(sa, a, sa)?, pr.mor(&neg.e.at1(a)?, &id(sa)?)?])
        })();
        equation(b, lhs, sa.and_then(id))
    }));
    report.push(run_objects(b, "tri-3", "(e′⋄1)∘∂l∘(1⋆n′) = 1_A", &singles, |&[a]| {
        let lhs = (|| {
            let spa = neg.sp.obj(a)?;
            b.seq(&[st.mor(&id(a)?, &neg.np.at1(a)?)?, bundle.dl(a, spa, a)?, pr.mor(&neg.ep.at1(a)?, &id(a)?)?])
        })();
        equation(b, lhs, id(a))
    }));
    report.push(run_objects(b, "tri-4", "(1⋄e′)∘∂r∘(n′⋆1) = 1_S′A", &singles, |&[a]| {
        let spa = neg.sp.obj(a);
        let lhs = (|| {
            let spa = neg.sp.obj(a)?;
            b.seq(&[st.mor(&neg.np.at1(a)?, &id(spa)?)?, bundle.dr(spa, spa, a)?, pr.mor(&id(spa)?, &neg.ep.at1(a)?)?])
        })();
        equation(b, lhs, spa.and_then(id))
    }));
    report
}

/// Category, monoidal, symmetry (when present) and linear-distribution laws.
pub fn check_lindist_suite(bundle: &LindistBundle, scope: &Scope) -> CheckReport {
    let mut report = check_category_laws(&bundle.backend, scope);
    report.absorb(check_lindist_structure(bundle, scope));
    report
}

/// Everything in [`check_lindist_suite`] above the category laws.
pub fn check_lindist_structure(bundle: &LindistBundle, scope: &Scope) -> CheckReport {
    let b = &*bundle.backend;
    let mut report = check_monoidal_laws(b, &bundle.star, scope);
    report.absorb(check_monoidal_laws(b, &bundle.par, scope));
    if let Some(sym) = &bundle.sym {
        let mon = match sym.tensor {
            crate::kernel::TensorTag::Star => &bundle.star,
            crate::kernel::TensorTag::Par => &bundle.par,
        };
        report.absorb(check_symmetry_laws(b, mon, sym, scope));
    }
    report.absorb(check_lindist(bundle, scope));
    report
}

/// [`check_lindist_suite`] plus negation laws and triangle identities.
pub fn check_lindist_negation_suite(bundle: &LindistBundle, neg: &Negation, scope: &Scope) -> CheckReport {
    let mut report = check_lindist_suite(bundle, scope);
    report.absorb(check_negation_laws(bundle, neg, scope));
    report.absorb(check_triangle_identities(bundle, neg, scope));
    report
}
