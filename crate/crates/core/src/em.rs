//! Coalgebras of a comonad, the lifted structure on them, and the four lifting
//! axioms for the negations together with their coalgebra-morphism readings.

use std::collections::{BTreeMap, HashMap};

use crate::comonad::{
    check_comonad, check_l1, check_l2, check_monoidal_comonad, check_nu, ComonadBundle, MonoidalStructure, NegationLift,
};
use crate::error::{Error, Result};
use crate::instances::schema::{
    BackendSpec, Component, FunctorTable, InstanceFile, LindistSpec, NegationSpec, TensorTable,
};
use crate::kernel::{Family, Fault, Functor, Morphism, Obj, Payload, Scope, Tensor, TensorTag};
use crate::lindist::{generators, LindistBundle, Negation};
use crate::report::{equation, run_check, run_objects, AxiomResult, CheckReport, Counterexample, FailureKind, Outcome};

/// `(A, γ: A → GA)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coalgebra {
    pub carrier: Obj,
    pub gamma: Morphism,
}

/// `ε∘γ = 1` and `Gγ∘γ = δ∘γ`.
pub fn coalgebra_laws(cb: &ComonadBundle, carrier: Obj, gamma: &Morphism) -> Outcome {
    let b = &*cb.backend;
    let counit = (|| b.seq(&[gamma.clone(), cb.eps.at1(carrier)?]))();
    match equation(b, counit, b.identity(carrier)) {
        Outcome::Pass => {
            let lhs = (|| b.seq(&[gamma.clone(), cb.g.mor(gamma)?]))();
            let rhs = (|| b.seq(&[gamma.clone(), cb.delta.at1(carrier)?]))();
            equation(b, lhs, rhs)
        }
        other => other,
    }
}

/// Every coalgebra structure on every scoped object, in scope order and then
/// hom-set order.
pub fn enumerate_coalgebras(cb: &ComonadBundle, scope: &Scope) -> Result<Vec<Coalgebra>> {
    let b = &*cb.backend;
    let mut out = Vec::new();
    for &a in &scope.objects {
        let ga = cb.g(a)?;
        for gamma in b.hom(a, ga, scope.enum_bound)? {
            if coalgebra_laws(cb, a, &gamma) == Outcome::Pass {
                out.push(Coalgebra { carrier: a, gamma });
            }
        }
    }
    Ok(out)
}

/// `(GA, δ_A)`.
pub fn cofree(cb: &ComonadBundle, a: Obj) -> Result<Coalgebra, Fault> {
    Ok(Coalgebra { carrier: cb.g(a)?, gamma: cb.delta.at1(a)? })
}

/// `Gf∘α = β∘f`.
pub fn is_morphism(cb: &ComonadBundle, f: &Morphism, x: &Coalgebra, y: &Coalgebra) -> Outcome {
    let b = &*cb.backend;
    if (f.dom, f.cod) != (x.carrier, y.carrier) {
        return Outcome::Fail(FailureKind::IllTyped, "carriers do not match".into());
    }
    let lhs = (|| b.seq(&[x.gamma.clone(), cb.g.mor(f)?]))();
    let rhs = b.seq(&[f.clone(), y.gamma.clone()]);
    equation(b, lhs, rhs)
}

/// `(A⊗B, m∘(α⊗β))`.
pub fn lifted_tensor(
    m: &MonoidalStructure,
    t: &Tensor,
    b: &crate::kernel::Backend,
    x: &Coalgebra,
    y: &Coalgebra,
) -> Result<Coalgebra, Fault> {
    Ok(Coalgebra {
        carrier: t.obj(x.carrier, y.carrier)?,
        gamma: b.seq(&[t.mor(&x.gamma, &y.gamma)?, m.at(x.carrier, y.carrier)?])?,
    })
}

/// `(unit, m0)`.
pub fn lifted_unit(m: &MonoidalStructure, t: &Tensor) -> Result<Coalgebra, Fault> {
    Ok(Coalgebra { carrier: t.unit, gamma: m.unit()? })
}

/// `(SA, GSγ∘ν_A)` without checking the coalgebra laws.
pub fn lifted_negation(cb: &ComonadBundle, s: &Functor, nu: &Family, c: &Coalgebra) -> Result<Coalgebra, Fault> {
    let b = &*cb.backend;
    Ok(Coalgebra { carrier: s.obj(c.carrier)?, gamma: b.seq(&[nu.at1(c.carrier)?, cb.g.mor(&s.mor(&c.gamma)?)?])? })
}

/// [`lifted_negation`], required to satisfy both coalgebra laws.
pub fn lift_negation_functor(cb: &ComonadBundle, s: &Functor, nu: &Family, c: &Coalgebra) -> Result<Coalgebra> {
    let out = lifted_negation(cb, s, nu, c)?;
    match coalgebra_laws(cb, out.carrier, &out.gamma) {
        Outcome::Pass => Ok(out),
        Outcome::Skip => Err(Error::Inconsistent("lifted negation could not be evaluated".into())),
        Outcome::Fail(_, detail) => Err(Error::Inconsistent(format!(
            "lifted negation of {} is not a coalgebra although the lift was assumed valid: {detail}",
            cb.backend.describe(&c.gamma)
        ))),
    }
}

/// Object part of a functor on coalgebras.
pub type LiftedFunctor<'a> = dyn Fn(&Coalgebra) -> Result<Coalgebra> + Sync + 'a;

/// Recovers `ν_A = γ̃_(GA,δ_A)∘Sε_A` from a lift of `S`, after checking that
/// the lift sits over `S` on the cofree coalgebras and on the images `Gf` of
/// scoped generators.
pub fn nu_from_lifted_functor(
    cb: &ComonadBundle,
    s: &Functor,
    lifted: &LiftedFunctor,
    scope: &Scope,
) -> Result<Family> {
    let b = &*cb.backend;
    let mut table = BTreeMap::new();
    let mut lifts = BTreeMap::new();
    for &a in &scope.objects {
        let free = cofree(cb, a)?;
        let l = lifted(&free)?;
        let want = s.obj(free.carrier)?;
        if l.carrier != want {
            return Err(Error::NonCommutingLift(format!(
                "lift of the cofree coalgebra on {} has carrier {}, expected {}",
                b.label(a),
                b.label(l.carrier),
                b.label(want)
            )));
        }
        let nu = b.seq(&[s.mor(&cb.eps.at1(a)?)?, l.gamma.clone()])?;
        table.insert(a, nu);
        lifts.insert(a, l);
    }
    for f in generators(b, scope) {
        let gf = cb.g.mor(&f)?;
        let sgf = s.mor(&gf)?;
        if let Outcome::Fail(_, detail) = is_morphism(cb, &sgf, &lifts[&f.cod], &lifts[&f.dom]) {
            return Err(Error::NonCommutingLift(format!(
                "SGf is not a morphism between the lifts for f = {}: {detail}",
                b.describe(&f)
            )));
        }
    }
    Ok(Family::new("ν", 1, move |x| {
        table.get(&x[0]).cloned().ok_or_else(|| Fault::Undefined(format!("ν outside scope at {}", x[0])))
    }))
}

fn require(cb: &ComonadBundle, which: TensorTag) -> Result<&MonoidalStructure> {
    cb.structure(which).ok_or_else(|| {
        Error::MissingStructure(format!("comonad {} carries no monoidal structure for {which}", cb.name))
    })
}

/// Which of the four lifting axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LiftAxiom {
    Le,
    Ln,
    LeP,
    LnP,
}

impl LiftAxiom {
    pub const ALL: [LiftAxiom; 4] = [LiftAxiom::Le, LiftAxiom::Ln, LiftAxiom::LeP, LiftAxiom::LnP];

    pub fn id(self) -> &'static str {
        match self {
            LiftAxiom::Le => "Le",
            LiftAxiom::Ln => "Ln",
            LiftAxiom::LeP => "Le′",
            LiftAxiom::LnP => "Ln′",
        }
    }

    /// Id of the coalgebra-morphism reading.
    pub fn coalgebra_id(self) -> &'static str {
        match self {
            LiftAxiom::Le => "coalg-e",
            LiftAxiom::Ln => "coalg-n",
            LiftAxiom::LeP => "coalg-e′",
            LiftAxiom::LnP => "coalg-n′",
        }
    }
}

/// Everything a lifting-axiom check needs.
#[derive(Clone, Copy)]
pub struct LiftContext<'a> {
    pub cb: &'a ComonadBundle,
    pub bundle: &'a LindistBundle,
    pub neg: &'a Negation,
    pub lift: &'a NegationLift,
    pub phi: &'a MonoidalStructure,
    pub psi: &'a MonoidalStructure,
}

impl<'a> LiftContext<'a> {
    pub fn new(
        cb: &'a ComonadBundle,
        bundle: &'a LindistBundle,
        neg: &'a Negation,
        lift: &'a NegationLift,
    ) -> Result<Self> {
        Ok(Self { cb, bundle, neg, lift, phi: require(cb, TensorTag::Star)?, psi: require(cb, TensorTag::Par)? })
    }
}

/// One lifting axiom at every scoped object.
pub fn check_lift_axiom(ctx: &LiftContext, which: LiftAxiom, scope: &Scope) -> AxiomResult {
    let LiftContext { cb, bundle, neg, lift, phi, psi } = *ctx;
    let b = &*cb.backend;
    let (st, pr, g) = (&bundle.star, &bundle.par, &cb.g);
    let id = |x| b.identity(x);
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();
    match which {
        LiftAxiom::Le => run_objects(b, "Le", "ψ0∘e_A∘(1⋆ε) = Ge_GA∘φ∘(ν_A⋆δ_A)", &singles, |&[a]| {
            let lhs = (|| {
                let sa = neg.s.obj(a)?;
                b.seq(&[st.mor(&id(sa)?, &cb.eps.at1(a)?)?, neg.e.at1(a)?, psi.unit()?])
            })();
            let rhs = (|| {
                let ga = g.obj(a)?;
                b.seq(&[
                    st.mor(&lift.nu.at1(a)?, &cb.delta.at1(a)?)?,
                    phi.at(neg.s.obj(ga)?, ga)?,
                    g.mor(&neg.e.at1(ga)?)?,
                ])
            })();
            equation(b, lhs, rhs)
        }),
        LiftAxiom::Ln => {
            run_objects(b, "Ln", "G(1⋄Sε)∘Gn_A∘φ0 = G(1⋄Sδ)∘ψ∘(1⋄ν_GA)∘n_GA", &singles, |&[a]| {
                let lhs = (|| {
                    b.seq(&[
                        phi.unit()?,
                        g.mor(&neg.n.at1(a)?)?,
                        g.mor(&pr.mor(&id(a)?, &neg.s.mor(&cb.eps.at1(a)?)?)?)?,
                    ])
                })();
                let rhs = (|| {
                    let ga = g.obj(a)?;
                    let sgga = neg.s.obj(g.obj(ga)?)?;
                    b.seq(&[
                        neg.n.at1(ga)?,
                        pr.mor(&id(ga)?, &lift.nu.at1(ga)?)?,
                        psi.at(a, sgga)?,
                        g.mor(&pr.mor(&id(a)?, &neg.s.mor(&cb.delta.at1(a)?)?)?)?,
                    ])
                })();
                equation(b, lhs, rhs)
            })
        }
        LiftAxiom::LeP => {
            run_objects(b, "Le′", "ψ0∘e′_A∘(ε⋆1) = Ge′_GA∘φ∘(δ_A⋆ν′_A)", &singles, |&[a]| {
                let lhs = (|| {
                    let spa = neg.sp.obj(a)?;
                    b.seq(&[st.mor(&cb.eps.at1(a)?, &id(spa)?)?, neg.ep.at1(a)?, psi.unit()?])
                })();
                let rhs = (|| {
                    let ga = g.obj(a)?;
                    b.seq(&[
                        st.mor(&cb.delta.at1(a)?, &lift.nup.at1(a)?)?,
                        phi.at(ga, neg.sp.obj(ga)?)?,
                        g.mor(&neg.ep.at1(ga)?)?,
                    ])
                })();
                equation(b, lhs, rhs)
            })
        }
        LiftAxiom::LnP => run_objects(
            b,
            "Ln′",
            "G(S′ε⋄1)∘Gn′_A∘φ0 = G(S′δ⋄1)∘ψ∘(ν′_GA⋄1)∘n′_GA",
            &singles,
            |&[a]| {
                let lhs = (|| {
                    b.seq(&[
                        phi.unit()?,
                        g.mor(&neg.np.at1(a)?)?,
                        g.mor(&pr.mor(&neg.sp.mor(&cb.eps.at1(a)?)?, &id(a)?)?)?,
                    ])
                })();
                let rhs = (|| {
                    let ga = g.obj(a)?;
                    let spgga = neg.sp.obj(g.obj(ga)?)?;
                    b.seq(&[
                        neg.np.at1(ga)?,
                        pr.mor(&lift.nup.at1(ga)?, &id(ga)?)?,
                        psi.at(spgga, a)?,
                        g.mor(&pr.mor(&neg.sp.mor(&cb.delta.at1(a)?)?, &id(a)?)?)?,
                    ])
                })();
                equation(b, lhs, rhs)
            },
        ),
    }
}

pub fn check_le(ctx: &LiftContext, scope: &Scope) -> CheckReport {
    single_report(ctx, LiftAxiom::Le, scope)
}

pub fn check_ln(ctx: &LiftContext, scope: &Scope) -> CheckReport {
    single_report(ctx, LiftAxiom::Ln, scope)
}

pub fn check_lep(ctx: &LiftContext, scope: &Scope) -> CheckReport {
    single_report(ctx, LiftAxiom::LeP, scope)
}

pub fn check_lnp(ctx: &LiftContext, scope: &Scope) -> CheckReport {
    single_report(ctx, LiftAxiom::LnP, scope)
}

fn single_report(ctx: &LiftContext, which: LiftAxiom, scope: &Scope) -> CheckReport {
    let mut report = CheckReport::new(scope.describe(&ctx.cb.backend));
    report.push(check_lift_axiom(ctx, which, scope));
    report
}

/// All four lifting axioms.
pub fn check_lifting_axioms(ctx: &LiftContext, scope: &Scope) -> CheckReport {
    let mut report = CheckReport::new(scope.describe(&ctx.cb.backend));
    for which in LiftAxiom::ALL {
        report.push(check_lift_axiom(ctx, which, scope));
    }
    report
}

/// Whether the lifted `e`, `n`, `e′` or `n′` at each coalgebra is a
/// coalgebra morphism between the lifted objects.
pub fn check_coalgebra_reading(ctx: &LiftContext, which: LiftAxiom, coalgebras: &[Coalgebra]) -> AxiomResult {
    let LiftContext { cb, bundle, neg, lift, phi, psi } = *ctx;
    let b = &*cb.backend;
    let (st, pr) = (&bundle.star, &bundle.par);
    let unit_i = lifted_unit(phi, st);
    let unit_j = lifted_unit(psi, pr);
    let label = |c: &Coalgebra| vec![b.label(c.carrier), b.describe(&c.gamma)];
    let diagram = match which {
        LiftAxiom::Le => "e: S̃A⋆A → J is a coalgebra morphism",
        LiftAxiom::Ln => "n: I → A⋄S̃A is a coalgebra morphism",
        LiftAxiom::LeP => "e′: A⋆S̃′A → J is a coalgebra morphism",
        LiftAxiom::LnP => "n′: I → S̃′A⋄A is a coalgebra morphism",
    };
    run_check(which.coalgebra_id(), diagram, coalgebras, label, |c| {
        let a = c.carrier;
        let r = (|| -> Result<Outcome, Fault> {
            Ok(match which {
                LiftAxiom::Le => {
                    let x = lifted_negation(cb, &neg.s, &lift.nu, c)?;
                    is_morphism(cb, &neg.e.at1(a)?, &lifted_tensor(phi, st, b, &x, c)?, &unit_j.clone()?)
                }
                LiftAxiom::Ln => {
                    let x = lifted_negation(cb, &neg.s, &lift.nu, c)?;
                    is_morphism(cb, &neg.n.at1(a)?, &unit_i.clone()?, &lifted_tensor(psi, pr, b, c, &x)?)
                }
                LiftAxiom::LeP => {
                    let x = lifted_negation(cb, &neg.sp, &lift.nup, c)?;
                    is_morphism(cb, &neg.ep.at1(a)?, &lifted_tensor(phi, st, b, c, &x)?, &unit_j.clone()?)
                }
                LiftAxiom::LnP => {
                    let x = lifted_negation(cb, &neg.sp, &lift.nup, c)?;
                    is_morphism(cb, &neg.np.at1(a)?, &unit_i.clone()?, &lifted_tensor(psi, pr, b, &x, c)?)
                }
            })
        })();
        r.unwrap_or_else(|e| Outcome::from_fault(&e))
    })
}

/// Enumerated coalgebras on scoped objects together with the cofree
/// coalgebras `(GA, δ_A)` on them, without repeats.
pub fn coalgebras_with_cofree(cb: &ComonadBundle, scope: &Scope) -> Result<Vec<Coalgebra>> {
    let mut all = enumerate_coalgebras(cb, scope)?;
    for &a in &scope.objects {
        let c = cofree(cb, a)?;
        if !all.contains(&c) {
            all.push(c);
        }
    }
    Ok(all)
}

/// For each lifting axiom, compares its verdict with the verdict of its
/// coalgebra-morphism reading over the enumerated and cofree coalgebras.
/// The report passes iff all four pairs agree; it does not say whether the
/// axioms themselves hold.
pub fn checker_equivalence_suite(ctx: &LiftContext, scope: &Scope) -> Result<CheckReport> {
    let coalgebras = coalgebras_with_cofree(ctx.cb, scope)?;
    let mut report = CheckReport::new(scope.describe(&ctx.cb.backend));
    report.note(format!("{} coalgebras including cofree ones", coalgebras.len()));
    for which in LiftAxiom::ALL {
        let axiom = check_lift_axiom(ctx, which, scope);
        let reading = check_coalgebra_reading(ctx, which, &coalgebras);
        let verdict = |r: &AxiomResult| if r.passed() { "pass" } else { "fail" };
        let diagram = format!("{} {} ⇔ {} {}", which.id(), verdict(&axiom), which.coalgebra_id(), verdict(&reading));
        let failure = (axiom.passed() != reading.passed()).then(|| Counterexample {
            tuple: vec![which.id().into()],
            kind: FailureKind::Violated,
            detail: "axiom and coalgebra-morphism verdicts disagree".into(),
        });
        report.push(AxiomResult::single("prop2-agree", &diagram, failure));
    }
    Ok(report)
}

/// An Eilenberg–Moore category restricted to scoped carriers, exported as a
/// finite-table instance, with the checks that its structure maps are
/// coalgebra morphisms.
#[derive(Clone, Debug)]
pub struct EmCategory {
    pub coalgebras: Vec<Coalgebra>,
    pub file: InstanceFile,
    pub report: CheckReport,
}

struct EmTables<'a> {
    cb: &'a ComonadBundle,
    coalgebras: Vec<Coalgebra>,
    index: HashMap<(Obj, Payload), usize>,
    morphisms: Vec<(usize, usize, Morphism)>,
    by_hom: HashMap<(usize, usize, Payload), usize>,
}

impl<'a> EmTables<'a> {
    fn find(&self, c: &Coalgebra) -> Option<usize> {
        self.index.get(&(c.carrier, c.gamma.payload.clone())).copied()
    }

    fn mor(&self, dom: usize, cod: usize, m: &Morphism) -> Option<usize> {
        self.by_hom.get(&(dom, cod, m.payload.clone())).copied()
    }

    fn label(&self, i: usize) -> String {
        let b = &*self.cb.backend;
        let c = &self.coalgebras[i];
        match &c.gamma.payload {
            Payload::Matrix(m) => format!("{}:{:?}", b.label(c.carrier), m.to_rows()),
            _ => b.label(c.carrier),
        }
    }
}

fn failure(detail: impl Into<String>) -> Outcome {
    Outcome::Fail(FailureKind::Violated, detail.into())
}

/// Lifted tensor on objects and morphisms, or a list of failures.
fn lift_tensor_tables(
    em: &EmTables,
    m: &MonoidalStructure,
    t: &Tensor,
    report: &mut CheckReport,
) -> (TensorTable, HashMap<(usize, usize), usize>) {
    let b = &*em.cb.backend;
    let n = em.coalgebras.len();
    let pairs: Vec<[usize; 2]> = (0..n).flat_map(|i| (0..n).map(move |j| [i, j])).collect();
    let lifted: Vec<Result<Option<usize>, String>> = pairs
        .iter()
        .map(|&[i, j]| match lifted_tensor(m, t, b, &em.coalgebras[i], &em.coalgebras[j]) {
            Ok(c) => match em.find(&c) {
                Some(k) => Ok(Some(k)),
                None if em.coalgebras.iter().any(|x| x.carrier == c.carrier) => Err(format!(
                    "lifted {} of {} and {} is not an enumerated coalgebra",
                    t.tag,
                    em.label(i),
                    em.label(j)
                )),
                None => Ok(None),
            },
            Err(Fault::Undefined(_)) => Ok(None),
            Err(e) => Err(e.to_string()),
        })
        .collect();
    let mut objects = Vec::new();
    let mut obj_map = HashMap::new();
    report.push(run_check(
        "lift-coalg",
        &format!("lifted {} of coalgebras is a coalgebra", t.tag),
        &pairs,
        |&[i, j]| vec![em.label(i), em.label(j)],
        |&[i, j]| match &lifted[i * n + j] {
            Ok(Some(_)) => Outcome::Pass,
            Ok(None) => Outcome::Skip,
            Err(e) => failure(e.clone()),
        },
    ));
    for (&[i, j], r) in pairs.iter().zip(&lifted) {
        if let Ok(Some(k)) = r {
            objects.push([i, j, *k]);
            obj_map.insert((i, j), *k);
        }
    }

    let mut mor_pairs = Vec::new();
    for (fi, (fd, fc, _)) in em.morphisms.iter().enumerate() {
        for (gi, (gd, gc, _)) in em.morphisms.iter().enumerate() {
            if obj_map.contains_key(&(*fd, *gd)) && obj_map.contains_key(&(*fc, *gc)) {
                mor_pairs.push([fi, gi]);
            }
        }
    }
    let found: Vec<Result<usize, String>> = {
        use rayon::prelude::*;
        mor_pairs
            .par_iter()
            .map(|&[fi, gi]| {
                let (fd, fc, f) = &em.morphisms[fi];
                let (gd, gc, g) = &em.morphisms[gi];
                let fg = t.mor(f, g).map_err(|e| e.to_string())?;
                em.mor(obj_map[&(*fd, *gd)], obj_map[&(*fc, *gc)], &fg)
                    .ok_or_else(|| format!("{} of coalgebra morphisms is not a coalgebra morphism", t.tag))
            })
            .collect()
    };
    let mut morphisms = Vec::new();
    let mut tuples = Vec::new();
    for (&[fi, gi], r) in mor_pairs.iter().zip(&found) {
        tuples.push((fi, gi, r.clone()));
        if let Ok(h) = r {
            morphisms.push([fi, gi, *h]);
        }
    }
    report.push(run_check(
        "lift-coalg",
        &format!("lifted {} of coalgebra morphisms is a coalgebra morphism", t.tag),
        &tuples,
        |(fi, gi, _)| vec![format!("#{fi}"), format!("#{gi}")],
        |(_, _, r)| match r {
            Ok(_) => Outcome::Pass,
            Err(e) => failure(e.clone()),
        },
    ));
    let unit = match lifted_unit(m, t).ok().and_then(|c| em.find(&c)) {
        Some(u) => u,
        None => {
            report.push(AxiomResult::single(
                "lift-coalg",
                &format!("unit of {} is a coalgebra", t.tag),
                Some(Counterexample {
                    tuple: vec![b.label(t.unit)],
                    kind: FailureKind::Violated,
                    detail: "lifted unit is not an enumerated coalgebra (is the unit in scope?)".into(),
                }),
            ));
            0
        }
    };
    (TensorTable { unit, objects, morphisms }, obj_map)
}

/// Components of a base family at lifted object tuples, kept when they are
/// coalgebra morphisms between the lifted domain and codomain.
fn lift_family<const N: usize>(
    em: &EmTables,
    id: &str,
    diagram: &str,
    tuples: &[[usize; N]],
    base: impl Fn(&[Obj]) -> Result<Morphism, Fault> + Sync,
    ends: impl Fn(&[usize; N]) -> Option<(usize, usize)> + Sync,
    report: &mut CheckReport,
) -> Vec<Component> {
    use rayon::prelude::*;
    let found: Vec<Option<Result<usize, String>>> = tuples
        .par_iter()
        .map(|t| {
            let (dom, cod) = ends(t)?;
            let carriers: Vec<Obj> = t.iter().map(|&i| em.coalgebras[i].carrier).collect();
            Some(match base(&carriers) {
                Ok(m) => em
                    .mor(dom, cod, &m)
                    .ok_or_else(|| format!("{} is not a coalgebra morphism", em.cb.backend.describe(&m))),
                Err(e) => Err(e.to_string()),
            })
        })
        .collect();
    report.push(run_check(
        id,
        diagram,
        &(0..tuples.len()).collect::<Vec<_>>(),
        |&k| tuples[k].iter().map(|&i| em.label(i)).collect(),
        |&k| match &found[k] {
            None => Outcome::Skip,
            Some(Ok(_)) => Outcome::Pass,
            Some(Err(e)) => failure(e.clone()),
        },
    ));
    tuples
        .iter()
        .zip(found)
        .filter_map(|(t, r)| match r {
            Some(Ok(m)) => Some(Component { at: t.to_vec(), morphism: m }),
            _ => None,
        })
        .collect()
}

/// Builds the Eilenberg–Moore category on scoped carriers with lifted `⋆`
/// (via `φ`), `⋄` (via `ψ`), linear distributions, the symmetry when present
/// and, given a lift, the negations. Requires the comonad, monoidal and
/// lifting-hexagon laws (and the `ν` squares when a lift is given).
pub fn build_em_category(
    cb: &ComonadBundle,
    bundle: &LindistBundle,
    negation: Option<(&Negation, &NegationLift)>,
    scope: &Scope,
) -> Result<EmCategory> {
    let b = &*cb.backend;
    let mut pre = check_comonad(cb, scope);
    pre.absorb(check_monoidal_comonad(cb, &bundle.star, TensorTag::Star, scope)?);
    pre.absorb(check_monoidal_comonad(cb, &bundle.par, TensorTag::Par, scope)?);
    pre.absorb(check_l1(cb, bundle, scope)?);
    pre.absorb(check_l2(cb, bundle, scope)?);
    if let Some((neg, lift)) = negation {
        pre.absorb(check_nu(cb, &neg.s, &neg.sp, lift, scope));
    }
    if !pre.passed() {
        return Err(Error::precondition("Eilenberg–Moore lifting", pre));
    }
    let phi = require(cb, TensorTag::Star)?;
    let psi = require(cb, TensorTag::Par)?;

    let coalgebras = enumerate_coalgebras(cb, scope)?;
    let index = coalgebras.iter().enumerate().map(|(i, c)| ((c.carrier, c.gamma.payload.clone()), i)).collect();
    let n = coalgebras.len();
    let mut morphisms = Vec::new();
    let mut by_hom = HashMap::new();
    let mut identities = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (&coalgebras[i], &coalgebras[j]);
            for f in b.hom(x.carrier, y.carrier, scope.enum_bound)? {
                if is_morphism(cb, &f, x, y) == Outcome::Pass {
                    if i == j && f == b.identity(x.carrier)? {
                        identities[i] = morphisms.len();
                    }
                    by_hom.insert((i, j, f.payload.clone()), morphisms.len());
                    morphisms.push((i, j, f));
                }
            }
        }
    }
    let mut em = EmTables { cb, coalgebras, index, morphisms, by_hom };

    let mut compose = Vec::new();
    {
        let mut out_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, (d, _, _)) in em.morphisms.iter().enumerate() {
            out_of.entry(*d).or_default().push(k);
        }
        for (fi, (fd, fc, f)) in em.morphisms.iter().enumerate() {
            for &gi in out_of.get(fc).map(Vec::as_slice).unwrap_or(&[]) {
                let (_, gc, g) = &em.morphisms[gi];
                let h = b.compose(g, f)?;
                let hi = em.mor(*fd, *gc, &h).ok_or_else(|| {
                    Error::Inconsistent("composite of coalgebra morphisms is not a coalgebra morphism".into())
                })?;
                compose.push([gi, fi, hi]);
            }
        }
    }

    let mut report = CheckReport::new(scope.describe(b));
    report.note("lifted structure maps reuse the base morphisms");
    if n == 0 {
        report.note("no coalgebras in scope; checks are vacuous");
    }
    let (star, star_map) = lift_tensor_tables(&em, phi, &bundle.star, &mut report);
    let (par, par_map) = lift_tensor_tables(&em, psi, &bundle.par, &mut report);
    let triples: Vec<[usize; 3]> =
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| [i, j, k]))).collect();
    let sp = |i, j| star_map.get(&(i, j)).copied();
    let pp = |i, j| par_map.get(&(i, j)).copied();
    let dl = lift_family(
        &em,
        "lift-coalg",
        "∂l is a coalgebra morphism",
        &triples,
        |x| bundle.dl.at(x),
        |&[x, y, z]| Some((sp(x, pp(y, z)?)?, pp(sp(x, y)?, z)?)),
        &mut report,
    );
    let dr = lift_family(
        &em,
        "lift-coalg",
        "∂r is a coalgebra morphism",
        &triples,
        |x| bundle.dr.at(x),
        |&[x, y, z]| Some((sp(pp(y, z)?, x)?, pp(y, sp(z, x)?)?)),
        &mut report,
    );
    let pairs: Vec<[usize; 2]> = (0..n).flat_map(|i| (0..n).map(move |j| [i, j])).collect();
    let sym = bundle.sym.as_ref().filter(|s| s.tensor == TensorTag::Par).map(|s| {
        lift_family(
            &em,
            "lift-coalg",
            "symmetry of ⋄ is a coalgebra morphism",
            &pairs,
            |x| s.braid.at(x),
            |&[x, y]| Some((pp(x, y)?, pp(y, x)?)),
            &mut report,
        )
    });

    let lindist = LindistSpec::Table { star: star.clone(), par: par.clone(), dl, dr, sym };
    let negation_spec =
        negation.map(|(neg, lift)| lift_negations(&mut em, neg, lift, &star, &par, &sp, &pp, &mut report));

    let labels: Vec<String> = (0..n).map(|i| em.label(i)).collect();
    let mut file = InstanceFile::new(
        format!("{}-em", cb.name),
        BackendSpec::FiniteTable {
            objects: labels,
            morphisms: em.morphisms.iter().map(|(d, c, _)| [*d, *c]).collect(),
            identities,
            compose,
        },
    );
    file.lindist = Some(lindist);
    file.negation = negation_spec;
    Ok(EmCategory { coalgebras: em.coalgebras, file, report })
}

#[allow(clippy::too_many_arguments)]
fn lift_negations(
    em: &mut EmTables,
    neg: &Negation,
    lift: &NegationLift,
    star: &TensorTable,
    par: &TensorTable,
    sp: &(dyn Fn(usize, usize) -> Option<usize> + Sync),
    pp: &(dyn Fn(usize, usize) -> Option<usize> + Sync),
    report: &mut CheckReport,
) -> NegationSpec {
    let cb = em.cb;
    let n = em.coalgebras.len();
    let singles: Vec<usize> = (0..n).collect();
    let lift_one = |s: &Functor, nu: &Family, name: &str, report: &mut CheckReport| {
        let images: Vec<Result<usize, String>> = singles
            .iter()
            .map(|&i| {
                let c = lifted_negation(cb, s, nu, &em.coalgebras[i]).map_err(|e| e.to_string())?;
                em.find(&c).ok_or_else(|| format!("lifted {name} is not an enumerated coalgebra"))
            })
            .collect();
        report.push(run_check(
            "lift-coalg",
            &format!("lifted {name} of a coalgebra is a coalgebra"),
            &singles,
            |&i| vec![em.label(i)],
            |&i| match &images[i] {
                Ok(_) => Outcome::Pass,
                Err(e) => failure(e.clone()),
            },
        ));
        let obj: Vec<Option<usize>> = images.iter().map(|r| r.as_ref().ok().copied()).collect();
        let mut table = FunctorTable { objects: Vec::new(), morphisms: Vec::new() };
        for (i, o) in obj.iter().enumerate() {
            if let Some(o) = o {
                table.objects.push([i, *o]);
            }
        }
        let mut bad = Vec::new();
        for (k, (d, c, f)) in em.morphisms.iter().enumerate() {
            if let (Some(sd), Some(sc)) = (obj[*d], obj[*c]) {
                match s.mor(f).ok().and_then(|sf| em.mor(sc, sd, &sf)) {
                    Some(h) => table.morphisms.push([k, h]),
                    None => bad.push(k),
                }
            }
        }
        report.push(AxiomResult::single(
            "lift-coalg",
            &format!("{name} of a coalgebra morphism is a coalgebra morphism"),
            bad.first().map(|&k| Counterexample {
                tuple: vec![format!("#{k}")],
                kind: FailureKind::Violated,
                detail: format!("{name}f is not a coalgebra morphism"),
            }),
        ));
        (table, obj)
    };
    let (s_table, s_obj) = lift_one(&neg.s, &lift.nu, "S", report);
    let (sp_table, sp_obj) = lift_one(&neg.sp, &lift.nup, "S′", report);
    let ones: Vec<[usize; 1]> = singles.iter().map(|&i| [i]).collect();
    let (iu, ju) = (star.unit, par.unit);
    let e = lift_family(
        em,
        "lift-coalg",
        "e is a coalgebra morphism",
        &ones,
        |x| neg.e.at(x),
        |&[a]| Some((sp(s_obj[a]?, a)?, ju)),
        report,
    );
    let nn = lift_family(
        em,
        "lift-coalg",
        "n is a coalgebra morphism",
        &ones,
        |x| neg.n.at(x),
        |&[a]| Some((iu, pp(a, s_obj[a]?)?)),
        report,
    );
    let ep = lift_family(
        em,
        "lift-coalg",
        "e′ is a coalgebra morphism",
        &ones,
        |x| neg.ep.at(x),
        |&[a]| Some((sp(a, sp_obj[a]?)?, ju)),
        report,
    );
    let np = lift_family(
        em,
        "lift-coalg",
        "n′ is a coalgebra morphism",
        &ones,
        |x| neg.np.at(x),
        |&[a]| Some((iu, pp(sp_obj[a]?, a)?)),
        report,
    );
    NegationSpec::Table { s: s_table, sp: sp_table, e, n: nn, ep, np }
}
