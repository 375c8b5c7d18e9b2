//! Star-autonomous structure and the translations to and from linearly
//! distributive categories with negation.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{
    check_category_laws, check_monoidal_laws, Backend, Family, Fault, Functor, Morphism, Obj, Scope, Tensor, TensorTag,
};
use crate::lindist::{
    check_contravariant, check_lindist, check_lindist_negation_suite, check_lindist_structure, check_negation_laws,
    check_triangle_identities, generators, LindistBundle, Negation, STRICT_UNIT_NOTE,
};
use crate::matrix::Matrix;
use crate::report::{
    equation, exists, labels, run_check, run_objects, AxiomResult, CheckReport, Counterexample, FailureKind, Outcome,
};

/// A strict monoidal `(⊗, I)` with star operations `S`, `S′`, the
/// equivalence witnesses between `A`, `S′SA` and `SS′A`, and the evaluations
/// `e_{A,B}: S(A⊗B)⊗A → SB` and `e′_{B,A}: B⊗S′(A⊗B) → S′A`.
#[derive(Clone, Debug)]
pub struct StarAutonomous {
    pub backend: Arc<Backend>,
    pub tensor: Tensor,
    pub s: Functor,
    pub sp: Functor,
    /// `A → S′SA`
    pub to_sps: Family,
    /// `S′SA → A`
    pub from_sps: Family,
    /// `A → SS′A`
    pub to_ssp: Family,
    /// `SS′A → A`
    pub from_ssp: Family,
    /// `e_{A,B}`, indexed `[A, B]`.
    pub eval: Family,
    /// `e′_{B,A}`, indexed `[B, A]`.
    pub eval_p: Family,
}

impl StarAutonomous {
    pub fn i(&self) -> Obj {
        self.tensor.unit
    }
}

/// Equivalence witnesses, typing of the evaluations and the hom-bijection.
pub fn check_star_autonomous(sa: &StarAutonomous, scope: &Scope) -> CheckReport {
    let b = &*sa.backend;
    let t = &sa.tensor;
    let mut report = CheckReport::new(scope.describe(b));
    report.extend(check_contravariant(b, &sa.s, "S", scope));
    report.extend(check_contravariant(b, &sa.sp, "S′", scope));
    let id = |x| b.identity(x);
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();
    let sps = |a| sa.sp.obj(sa.s.obj(a)?);
    let ssp = |a| sa.s.obj(sa.sp.obj(a)?);

    for (name, to, from, dd) in [
        ("S′S", &sa.to_sps, &sa.from_sps, &sps as &(dyn Fn(Obj) -> Result<Obj, Fault> + Sync)),
        ("SS′", &sa.to_ssp, &sa.from_ssp, &ssp),
    ] {
        report.push(run_objects(b, "star-equiv", &format!("A → {name}A → A is 1"), &singles, |&[a]| {
            equation(b, (|| b.seq(&[to.at1(a)?, from.at1(a)?]))(), id(a))
        }));
        report.push(run_objects(b, "star-equiv", &format!("{name}A → A → {name}A is 1"), &singles, |&[a]| {
            equation(b, (|| b.seq(&[from.at1(a)?, to.at1(a)?]))(), dd(a).and_then(id))
        }));
        let gens = generators(b, scope);
        let dd_mor = |f: &Morphism| -> Result<Morphism, Fault> {
            if name == "S′S" {
                sa.sp.mor(&sa.s.mor(f)?)
            } else {
                sa.s.mor(&sa.sp.mor(f)?)
            }
        };
        report.push(run_check(
            "star-equiv",
            &format!("A → {name}A natural"),
            &gens,
            |f| vec![b.describe(f)],
            |f| {
                let lhs = (|| b.seq(&[f.clone(), to.at1(f.cod)?]))();
                let rhs = (|| b.seq(&[to.at1(f.dom)?, dd_mor(f)?]))();
                equation(b, lhs, rhs)
            },
        ));
    }

    let pairs = scope.pairs();
    report.push(run_objects(b, "star-iso", "e_{A,B}, e′_{B,A} are well-typed", &pairs, |&[x, y]| {
        let check = |m: Result<Morphism, Fault>, d: Result<Obj, Fault>, c: Result<Obj, Fault>| match (m, d, c) {
            (Ok(m), Ok(d), Ok(c)) => Outcome::require((m.dom, m.cod) == (d, c), || {
                format!("component has type {} -> {}, expected {} -> {}", m.dom, m.cod, d, c)
            }),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => Outcome::from_fault(&e),
        };
        let first = check(sa.eval.at(&[x, y]), (|| t.obj(sa.s.obj(t.obj(x, y)?)?, x))(), sa.s.obj(y));
        if first != Outcome::Pass {
            return first;
        }
        check(sa.eval_p.at(&[y, x]), (|| t.obj(y, sa.sp.obj(t.obj(x, y)?)?))(), sa.sp.obj(x))
    }));
    report.absorb(check_star_hom_bijection(sa, scope));
    report
}

/// `g ↦ e_{B,C}∘(g⊗1_B)`: hom(A, S(B⊗C)) → hom(A⊗B, SC).
fn uncurry(sa: &StarAutonomous, g: &Morphism, bb: Obj, c: Obj) -> Result<Morphism, Fault> {
    let b = &*sa.backend;
    b.seq(&[sa.tensor.mor(g, &b.identity(bb)?)?, sa.eval.at(&[bb, c])?])
}

/// The map induced by `e_{B,C}` between `hom(A⊗B, SC)` and `hom(A, S(B⊗C))`
/// is a bijection, natural in `A`. Hom-sets within `scope.hom_bound` are
/// enumerated; larger matrix hom-sets are decided by rank, the map being
/// linear.
pub fn check_star_hom_bijection(sa: &StarAutonomous, scope: &Scope) -> CheckReport {
    let b = &*sa.backend;
    let t = &sa.tensor;
    let mut report = CheckReport::new(scope.describe(b));
    let triples = scope.triples();
    report.push(run_objects(b, "star-iso", "hom(A⊗B, SC) ≅ hom(A, S(B⊗C))", &triples, |&[a, x, c]| {
        let objs = (|| Ok::<_, Fault>((sa.s.obj(t.obj(x, c)?)?, t.obj(a, x)?, sa.s.obj(c)?)))();
        let (sbc, ab, sc) = match objs {
            Ok(v) => v,
            Err(e) => return Outcome::from_fault(&e),
        };
        let (left, right) = (b.hom_size(a, sbc), b.hom_size(ab, sc));
        if left <= scope.hom_bound && right <= scope.hom_bound {
            let homs = b.hom(a, sbc, scope.hom_bound).expect("within bound");
            let mut seen = HashSet::new();
            for g in &homs {
                match uncurry(sa, g, x, c) {
                    Ok(h) => {
                        if (h.dom, h.cod) != (ab, sc) {
                            return Outcome::Fail(
                                FailureKind::IllTyped,
                                format!("image of {} has the wrong type", b.describe(g)),
                            );
                        }
                        if !seen.insert(h.payload) {
                            return Outcome::require(false, || format!("not injective: {} collides", b.describe(g)));
                        }
                    }
                    Err(e) => return Outcome::from_fault(&e),
                }
            }
            Outcome::require(seen.len() as u128 == right, || {
                format!("not surjective: image has {} of {} morphisms", seen.len(), right)
            })
        } else if let Some(field) = b.field() {
            let basis = b.generators(a, sbc);
            let mut cols = Vec::with_capacity(basis.len());
            for g in &basis {
                match uncurry(sa, g, x, c) {
                    Ok(h) => cols.push(h.matrix().expect("matrix backend").entries().to_vec()),
                    Err(e) => return Outcome::from_fault(&e),
                }
            }
            let n = ab * sc;
            if n != basis.len() {
                return Outcome::require(false, || "hom-set dimensions differ".into());
            }
            let mut m = Matrix::zeros(n, n);
            for (j, col) in cols.iter().enumerate() {
                for (i, &v) in col.iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            Outcome::require(m.inverse(&field).is_some(), || "induced linear map is singular".into())
        } else {
            Outcome::Skip
        }
    }));

    let mut tuples = Vec::new();
    for f in generators(b, scope) {
        for [x, c] in scope.pairs() {
            tuples.push((f.clone(), x, c));
        }
    }
    report.push(run_check(
        "star-iso",
        "natural in A: ẽ(g∘f) = ẽ(g)∘(f⊗1)",
        &tuples,
        |(f, x, c)| {
            let mut l = vec![b.describe(f)];
            l.extend(labels(b, &[*x, *c]));
            l
        },
        |(f, x, c)| {
            let sbc = match t.obj(*x, *c).and_then(|xc| sa.s.obj(xc)) {
                Ok(o) => o,
                Err(e) => return Outcome::from_fault(&e),
            };
            for g in b.generators(f.cod, sbc) {
                let lhs = (|| uncurry(sa, &b.compose(&g, f)?, *x, *c))();
                let rhs = (|| b.seq(&[t.mor(f, &b.identity(*x)?)?, uncurry(sa, &g, *x, *c)?]))();
                let o = equation(b, lhs, rhs);
                if o != Outcome::Pass {
                    return o;
                }
            }
            Outcome::Pass
        },
    ));
    report
}

/// Full star-autonomous suite including category and monoidal laws.
pub fn check_star_suite(sa: &StarAutonomous, scope: &Scope) -> CheckReport {
    let b = &*sa.backend;
    let mut report = check_category_laws(b, scope);
    report.absorb(check_monoidal_laws(b, &sa.tensor, scope));
    report.absorb(check_star_autonomous(sa, scope));
    report
}

/// Star-autonomous structure of a linearly distributive category with
/// negation: `⊗ := ⋆`, equivalence witnesses and evaluations as composites of
/// the distributions with the (co)evaluations.
pub fn star_from_lindist(bundle: &LindistBundle, neg: &Negation, scope: &Scope) -> Result<StarAutonomous> {
    let mut pre = check_lindist(bundle, scope);
    pre.absorb(check_negation_laws(bundle, neg, scope));
    pre.absorb(check_triangle_identities(bundle, neg, scope));
    if !pre.passed() {
        return Err(Error::precondition("star_from_lindist", pre));
    }
    let b = bundle.backend.clone();
    let (st, pr) = (bundle.star.clone(), bundle.par.clone());

    let to_sps = {
        let (bd, ng, b, st, pr) = (bundle.clone(), neg.clone(), b.clone(), st.clone(), pr.clone());
        Family::new("A→S′SA", 1, move |xs| {
            let a = xs[0];
            let sa = ng.s.obj(a)?;
            let spsa = ng.sp.obj(sa)?;
            b.seq(&[
                st.mor(&ng.np.at1(sa)?, &b.identity(a)?)?,
                bd.dr(a, spsa, sa)?,
                pr.mor(&b.identity(spsa)?, &ng.e.at1(a)?)?,
            ])
        })
    };
    let from_sps = {
        let (bd, ng, b, st, pr) = (bundle.clone(), neg.clone(), b.clone(), st.clone(), pr.clone());
        Family::new("S′SA→A", 1, move |xs| {
            let a = xs[0];
            let sa = ng.s.obj(a)?;
            let spsa = ng.sp.obj(sa)?;
            b.seq(&[
                st.mor(&ng.n.at1(a)?, &b.identity(spsa)?)?,
                bd.dr(spsa, a, sa)?,
                pr.mor(&b.identity(a)?, &ng.ep.at1(sa)?)?,
            ])
        })
    };
    let to_ssp = {
        let (bd, ng, b, st, pr) = (bundle.clone(), neg.clone(), b.clone(), st.clone(), pr.clone());
        Family::new("A→SS′A", 1, move |xs| {
            let a = xs[0];
            let spa = ng.sp.obj(a)?;
            let sspa = ng.s.obj(spa)?;
            b.seq(&[
                st.mor(&b.identity(a)?, &ng.n.at1(spa)?)?,
                bd.dl(a, spa, sspa)?,
                pr.mor(&ng.ep.at1(a)?, &b.identity(sspa)?)?,
            ])
        })
    };
    let from_ssp = {
        let (bd, ng, b, st, pr) = (bundle.clone(), neg.clone(), b.clone(), st.clone(), pr.clone());
        Family::new("SS′A→A", 1, move |xs| {
            let a = xs[0];
            let spa = ng.sp.obj(a)?;
            let sspa = ng.s.obj(spa)?;
            b.seq(&[
                st.mor(&b.identity(sspa)?, &ng.np.at1(a)?)?,
                bd.dl(sspa, spa, a)?,
                pr.mor(&ng.e.at1(spa)?, &b.identity(a)?)?,
            ])
        })
    };
    // e_{A,B} = (e_{A⋆B}⋄1)∘∂l∘(1⋆1⋆n_B)
    let eval = {
        let (bd, ng, b, st, pr) = (bundle.clone(), neg.clone(), b.clone(), st.clone(), pr.clone());
        Family::new("e_{A,B}", 2, move |xs| {
            let (a, y) = (xs[0], xs[1]);
            let ab = st.obj(a, y)?;
            let head = st.obj(ng.s.obj(ab)?, a)?;
            let sy = ng.s.obj(y)?;
            b.seq(&[
                st.mor(&b.identity(head)?, &ng.n.at1(y)?)?,
                bd.dl(head, y, sy)?,
                pr.mor(&ng.e.at1(ab)?, &b.identity(sy)?)?,
            ])
        })
    };
    let eval = eval.memoized();
    // e′_{B,A} = (1⋄e′_{A⋆B})∘∂r∘(n′_A⋆1⋆1)
    let eval_p = {
        let (bd, ng, b, st, pr) = (bundle.clone(), neg.clone(), b.clone(), st.clone(), pr.clone());
        Family::new("e′_{B,A}", 2, move |xs| {
            let (y, a) = (xs[0], xs[1]);
            let ab = st.obj(a, y)?;
            let tail = st.obj(y, ng.sp.obj(ab)?)?;
            let spa = ng.sp.obj(a)?;
            b.seq(&[
                st.mor(&ng.np.at1(a)?, &b.identity(tail)?)?,
                bd.dr(tail, spa, a)?,
                pr.mor(&b.identity(spa)?, &ng.ep.at1(ab)?)?,
            ])
        })
    };
    let eval_p = eval_p.memoized();
    Ok(StarAutonomous {
        backend: b,
        tensor: st.retagged(TensorTag::Star),
        s: neg.s.clone(),
        sp: neg.sp.clone(),
        to_sps,
        from_sps,
        to_ssp,
        from_ssp,
        eval,
        eval_p,
    })
}

/// Whether the canonical identifications used by [`lindist_from_star`] can be
/// taken as identities: on non-thin backends `S` and `S′` must agree and be
/// involutive on scoped objects and generators.
fn check_strict_duality(sa: &StarAutonomous, scope: &Scope) -> Result<()> {
    let b = &*sa.backend;
    if b.is_thin() {
        return Ok(());
    }
    for &a in &scope.objects {
        let (s, sp) = (sa.s.obj(a), sa.sp.obj(a));
        let ss = s.clone().and_then(|x| sa.s.obj(x));
        if s != sp || ss != Ok(a) {
            return Err(Error::NotStrict(format!("S and S′ differ or are not involutive at object {}", b.label(a))));
        }
    }
    for f in generators(b, scope) {
        let (s, sp) = (sa.s.mor(&f), sa.sp.mor(&f));
        let ss = s.clone().and_then(|x| sa.s.mor(&x));
        if s != sp || ss.as_ref() != Ok(&f) {
            return Err(Error::NotStrict(format!("S and S′ differ or are not involutive at {}", b.describe(&f))));
        }
    }
    Ok(())
}

/// Linearly distributive structure with negation of a star-autonomous
/// category: `⋆ := ⊗`, `A⋄B := S′(SB⊗SA)`, `J := SI`, with the distributions,
/// evaluations and coevaluations built from `e_{A,B}` and `e′_{B,A}`.
///
/// Objects the construction identifies (`S′(SC⊗SB)` and `S(S′C⊗S′B)`,
/// `SS′I` and `I`, ...) are related by canonical isomorphisms: order
/// witnesses on thin backends, identities elsewhere once strict duality has
/// been verified on scope.
pub fn lindist_from_star(sa: &StarAutonomous, scope: &Scope) -> Result<(LindistBundle, Negation)> {
    let pre = check_star_autonomous(sa, scope);
    if !pre.passed() {
        return Err(Error::precondition("lindist_from_star", pre));
    }
    check_strict_duality(sa, scope)?;
    let b = sa.backend.clone();
    let t = sa.tensor.retagged(TensorTag::Star);
    let i = sa.i();
    let j = sa.s.obj(i).map_err(|e| Error::NotStrict(e.to_string()))?;

    let par = {
        let (s1, sp1, t1) = (sa.s.clone(), sa.sp.clone(), t.clone());
        let (s2, sp2, t2) = (sa.s.clone(), sa.sp.clone(), t.clone());
        Tensor::new(
            TensorTag::Par,
            j,
            move |x, y| sp1.obj(t1.obj(s1.obj(y)?, s1.obj(x)?)?),
            move |f, g| sp2.mor(&t2.mor(&s2.mor(g)?, &s2.mor(f)?)?),
        )
    };

    // ∂l = e′_{A, SC⊗S(A⊗B)}∘(1⊗S′(1⊗e_{A,B}))
    let dl = {
        let (sa, b, t) = (sa.clone(), b.clone(), t.clone());
        Family::new("∂l", 3, move |xs| {
            let (x, y, z) = (xs[0], xs[1], xs[2]);
            let sz = sa.s.obj(z)?;
            let inner = t.mor(&b.identity(sz)?, &sa.eval.at(&[x, y])?)?;
            let yy = t.obj(sz, sa.s.obj(t.obj(x, y)?)?)?;
            b.seq(&[t.mor(&b.identity(x)?, &sa.sp.mor(&inner)?)?, sa.eval_p.at(&[x, yy])?])
        })
    };
    let dl = dl.memoized();
    // ∂r = iso∘e_{A, S′(C⊗A)⊗S′B}∘(S(e′_{A,C}⊗1)⊗1)∘iso
    let dr = {
        let (sa, b, t) = (sa.clone(), b.clone(), t.clone());
        Family::new("∂r", 3, move |xs| {
            let (x, y, z) = (xs[0], xs[1], xs[2]);
            let (spy, spz) = (sa.sp.obj(y)?, sa.sp.obj(z)?);
            let dom = sa.sp.obj(t.obj(sa.s.obj(z)?, sa.s.obj(y)?)?)?;
            let alt = sa.s.obj(t.obj(spz, spy)?)?;
            let iso_in = t.mor(&b.canonical_iso(dom, alt, "S′(SC⊗SB) ≅ S(S′C⊗S′B)")?, &b.identity(x)?)?;
            let ev = t.mor(&sa.eval_p.at(&[x, z])?, &b.identity(spy)?)?;
            let step = t.mor(&sa.s.mor(&ev)?, &b.identity(x)?)?;
            let yy = t.obj(sa.sp.obj(t.obj(z, x)?)?, spy)?;
            let e = sa.eval.at(&[x, yy])?;
            let target = sa.sp.obj(t.obj(sa.s.obj(t.obj(z, x)?)?, sa.s.obj(y)?)?)?;
            let iso_out = b.canonical_iso(e.cod, target, "S(S′(C⊗A)⊗S′B) ≅ B⋄(C⋆A)")?;
            b.seq(&[iso_in, step, e, iso_out])
        })
    };
    let dr = dr.memoized();
    let e = {
        let (sa, i) = (sa.clone(), i);
        Family::new("e", 1, move |xs| sa.eval.at(&[xs[0], i]))
    };
    let ep = {
        let (sa, b, i, j) = (sa.clone(), b.clone(), i, j);
        Family::new("e′", 1, move |xs| {
            let m = sa.eval_p.at(&[xs[0], i])?;
            b.seq(&[m.clone(), b.canonical_iso(m.cod, j, "S′I ≅ SI")?])
        })
    };
    // n_A = iso∘Se′_{A,I}∘iso
    let n = {
        let (sa, b, t, i) = (sa.clone(), b.clone(), t.clone(), i);
        Family::new("n", 1, move |xs| {
            let a = xs[0];
            let m = sa.s.mor(&sa.eval_p.at(&[a, i])?)?;
            let target = sa.sp.obj(t.obj(sa.s.obj(sa.s.obj(a)?)?, sa.s.obj(a)?)?)?;
            b.seq(&[
                b.canonical_iso(i, m.dom, "I ≅ SS′I")?,
                m.clone(),
                b.canonical_iso(m.cod, target, "S(A⊗S′A) ≅ A⋄SA")?,
            ])
        })
    };
    // n′_A = iso∘S′e_{A,I}∘iso
    let np = {
        let (sa, b, t, i) = (sa.clone(), b.clone(), t.clone(), i);
        Family::new("n′", 1, move |xs| {
            let a = xs[0];
            let m = sa.sp.mor(&sa.eval.at(&[a, i])?)?;
            let spa = sa.sp.obj(a)?;
            let target = sa.sp.obj(t.obj(sa.s.obj(a)?, sa.s.obj(spa)?)?)?;
            b.seq(&[
                b.canonical_iso(i, m.dom, "I ≅ S′SI")?,
                m.clone(),
                b.canonical_iso(m.cod, target, "S′(SA⊗A) ≅ S′A⋄A")?,
            ])
        })
    };
    Ok((
        LindistBundle { backend: b, star: t, par, dl, dr, sym: None },
        Negation { s: sa.s.clone(), sp: sa.sp.clone(), e, n, ep, np },
    ))
}

/// Canonical maps relating a linearly distributive category with negation
/// to the one re-derived from its star-autonomous structure:
/// `κ_{A,B}: S′(SB⋆SA) → A⋄B` and `ι: SI → J`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub kappa: Family,
    pub iota: Family,
}

pub fn certificate(bundle: &LindistBundle, neg: &Negation) -> Certificate {
    // κ = (1⋄1⋄e′_X)∘(1⋄∂r)∘(1⋄(n_B⋆1))∘∂r∘(n_A⋆1), X = SB⋆SA
    let kappa = {
        let (bd, ng) = (bundle.clone(), neg.clone());
        Family::new("κ", 2, move |xs| {
            let (a, y) = (xs[0], xs[1]);
            let (b, st, pr) = (&*bd.backend, &bd.star, &bd.par);
            let (sa, sy) = (ng.s.obj(a)?, ng.s.obj(y)?);
            let x = st.obj(sy, sa)?;
            let spx = ng.sp.obj(x)?;
            let tail = st.obj(sa, spx)?;
            b.seq(&[
                st.mor(&ng.n.at1(a)?, &b.identity(spx)?)?,
                bd.dr(spx, a, sa)?,
                pr.mor(&b.identity(a)?, &st.mor(&ng.n.at1(y)?, &b.identity(tail)?)?)?,
                pr.mor(&b.identity(a)?, &bd.dr(tail, y, sy)?)?,
                pr.mor(&b.identity(a)?, &pr.mor(&b.identity(y)?, &ng.ep.at1(x)?)?)?,
            ])
        })
        .memoized()
    };
    let iota = {
        let ng = neg.clone();
        let i = bundle.i();
        Family::new("ι", 0, move |_| ng.e.at1(i))
    };
    Certificate { kappa, iota }
}

/// Compares `derived` (the round trip through star-autonomous structure) with
/// `bundle` through the certificate: object tables agree exactly, `κ` is a
/// natural isomorphism carrying the derived distributions, evaluations and
/// coevaluations to the original ones.
pub fn check_roundtrip(
    bundle: &LindistBundle,
    neg: &Negation,
    derived: &LindistBundle,
    dneg: &Negation,
    scope: &Scope,
) -> CheckReport {
    let b = &*bundle.backend;
    let (st, pr, dpr) = (&bundle.star, &bundle.par, &derived.par);
    let cert = certificate(bundle, neg);
    let kappa = |x: Obj, y: Obj| cert.kappa.at(&[x, y]);
    let iota = || cert.iota.at(&[]);
    let mut report = CheckReport::new(scope.describe(b));
    report.note(STRICT_UNIT_NOTE);
    let id = |x| b.identity(x);
    let pairs = scope.pairs();
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();

    report.push(same_object("J reproduced", b, derived.j(), bundle.j()));
    report.push(run_objects(b, "roundtrip", "⋄ reproduced on objects", &pairs, |&[x, y]| {
        match (dpr.obj(x, y), pr.obj(x, y)) {
            (Ok(l), Ok(r)) => {
                Outcome::require(l == r, || format!("derived {} but original {}", b.label(l), b.label(r)))
            }
            (Err(e), _) | (_, Err(e)) => Outcome::from_fault(&e),
        }
    }));
    report.push(run_objects(b, "roundtrip", "κ invertible", &pairs, |&[x, y]| {
        exists(kappa(x, y).and_then(|k| b.inverse(&k)))
    }));
    report.push(run_objects(b, "roundtrip", "ι invertible", &[[]], |_| exists(iota().and_then(|k| b.inverse(&k)))));
    let gens = generators(b, scope);
    let mut fg = Vec::new();
    for f in &gens {
        for g in &gens {
            fg.push((f.clone(), g.clone()));
        }
    }
    report.push(run_check(
        "roundtrip",
        "κ natural",
        &fg,
        |(f, g)| vec![b.describe(f), b.describe(g)],
        |(f, g)| {
            let lhs = (|| b.seq(&[dpr.mor(f, g)?, kappa(f.cod, g.cod)?]))();
            let rhs = (|| b.seq(&[kappa(f.dom, g.dom)?, pr.mor(f, g)?]))();
            equation(b, lhs, rhs)
        },
    ));
    let triples = scope.triples();
    report.push(run_objects(b, "roundtrip", "κ∘∂l′ = ∂l∘(1⋆κ)", &triples, |&[x, y, z]| {
        let lhs = (|| b.seq(&[derived.dl(x, y, z)?, kappa(st.obj(x, y)?, z)?]))();
        let rhs = (|| b.seq(&[st.mor(&id(x)?, &kappa(y, z)?)?, bundle.dl(x, y, z)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_objects(b, "roundtrip", "κ∘∂r′ = ∂r∘(κ⋆1)", &triples, |&[x, y, z]| {
        let lhs = (|| b.seq(&[derived.dr(x, y, z)?, kappa(y, st.obj(z, x)?)?]))();
        let rhs = (|| b.seq(&[st.mor(&kappa(y, z)?, &id(x)?)?, bundle.dr(x, y, z)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_objects(b, "roundtrip", "ι∘e′ = e, ι∘e′′ = e′", &singles, |&[a]| {
        let o = equation(b, (|| b.seq(&[dneg.e.at1(a)?, iota()?]))(), neg.e.at1(a));
        if o != Outcome::Pass {
            return o;
        }
        equation(b, (|| b.seq(&[dneg.ep.at1(a)?, iota()?]))(), neg.ep.at1(a))
    }));
    report.push(run_objects(b, "roundtrip", "κ∘n′ = n, κ∘n′′ = n′", &singles, |&[a]| {
        let o = equation(b, (|| b.seq(&[dneg.n.at1(a)?, kappa(a, neg.s.obj(a)?)?]))(), neg.n.at1(a));
        if o != Outcome::Pass {
            return o;
        }
        equation(b, (|| b.seq(&[dneg.np.at1(a)?, kappa(neg.sp.obj(a)?, a)?]))(), neg.np.at1(a))
    }));
    report
}

fn same_object(diagram: &str, b: &Backend, derived: Obj, original: Obj) -> AxiomResult {
    let failure = (derived != original).then(|| Counterexample {
        tuple: vec![],
        kind: FailureKind::Violated,
        detail: format!("derived {} but original {}", b.label(derived), b.label(original)),
    });
    AxiomResult::single("roundtrip", diagram, failure)
}

/// `lindist → star → lindist` followed by [`check_roundtrip`]; the derived
/// structure is also run through the full linearly distributive suite, minus
/// the category laws when it sits on the same backend.
pub fn roundtrip_lindist(bundle: &LindistBundle, neg: &Negation, scope: &Scope) -> Result<CheckReport> {
    let sa = star_from_lindist(bundle, neg, scope)?;
    let (derived, dneg) = lindist_from_star(&sa, scope)?;
    let mut report = check_roundtrip(bundle, neg, &derived, &dneg, scope);
    if Arc::ptr_eq(&derived.backend, &bundle.backend) {
        report.absorb(check_lindist_structure(&derived, scope));
        report.absorb(check_negation_laws(&derived, &dneg, scope));
        report.absorb(check_triangle_identities(&derived, &dneg, scope));
    } else {
        report.absorb(check_lindist_negation_suite(&derived, &dneg, scope));
    }
    Ok(report)
}

/// `star → lindist → star`, compared component by component: the
/// identifications are identities under strict duality, so equality is exact.
pub fn roundtrip_star(sa: &StarAutonomous, scope: &Scope) -> Result<CheckReport> {
    let (bundle, neg) = lindist_from_star(sa, scope)?;
    let back = star_from_lindist(&bundle, &neg, scope)?;
    let b = &*sa.backend;
    let mut report = CheckReport::new(scope.describe(b));
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();
    let pairs = scope.pairs();
    for (name, x, y) in [
        ("A → S′SA reproduced", &sa.to_sps, &back.to_sps),
        ("S′SA → A reproduced", &sa.from_sps, &back.from_sps),
        ("A → SS′A reproduced", &sa.to_ssp, &back.to_ssp),
        ("SS′A → A reproduced", &sa.from_ssp, &back.from_ssp),
    ] {
        report.push(run_objects(b, "roundtrip", name, &singles, |&[a]| equation(b, y.at1(a), x.at1(a))));
    }
    report.push(run_objects(b, "roundtrip", "e_{A,B} reproduced", &pairs, |&[x, y]| {
        equation(b, back.eval.at(&[x, y]), sa.eval.at(&[x, y]))
    }));
    report.push(run_objects(b, "roundtrip", "e′_{B,A} reproduced", &pairs, |&[x, y]| {
        equation(b, back.eval_p.at(&[x, y]), sa.eval_p.at(&[x, y]))
    }));
    Ok(report)
}
