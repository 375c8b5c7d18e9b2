//! Comonads on a star-autonomous category whose coalgebras form a
//! star-autonomous category, compared with the linearly distributive
//! axiomatization, and the compact case.

use crate::algebra::compact_par;
use crate::comonad::{
    check_comonad, check_l1, check_l2, check_monoidal_comonad, check_nu, ComonadBundle, MonoidalStructure, NegationLift,
};
use crate::em::{check_lift_axiom, LiftAxiom, LiftContext};
use crate::error::{Error, Result};
use crate::kernel::{Family, Fault, Obj, Scope, TensorTag};
use crate::lindist::{generators, LindistBundle, Negation};
use crate::report::{
    equation, run_objects, AxiomResult, CheckReport, Correspondence, Counterexample, FailureKind, Verdict,
};
use crate::star::{lindist_from_star, star_from_lindist, StarAutonomous};

/// The two equivalence squares and the two evaluation hexagons.
pub fn check_star_comonad(
    cb: &ComonadBundle,
    sa: &StarAutonomous,
    lift: &NegationLift,
    scope: &Scope,
) -> Result<CheckReport> {
    let phi = cb
        .structure(TensorTag::Star)
        .ok_or_else(|| Error::MissingStructure(format!("comonad {} carries no monoidal structure for ⊗", cb.name)))?;
    let b = &*cb.backend;
    let (t, g, s, sp) = (&sa.tensor, &cb.g, &sa.s, &sa.sp);
    let id = |x| b.identity(x);
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();
    let pairs = scope.pairs();
    let mut report = CheckReport::new(scope.describe(b));
    report.note("canonical isomorphisms are the recorded equivalence witnesses");

    report.push(run_objects(b, "SC-1", "G(A→SS′A)∘(SS′GA→GA) = GSν′∘ν_S′G", &singles, |&[a]| {
        let lhs = (|| b.seq(&[sa.from_ssp.at1(g.obj(a)?)?, g.mor(&sa.to_ssp.at1(a)?)?]))();
        let rhs = (|| b.seq(&[lift.nu.at1(sp.obj(g.obj(a)?)?)?, g.mor(&s.mor(&lift.nup.at1(a)?)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_objects(b, "SC-2", "G(A→S′SA)∘(S′SGA→GA) = GS′ν∘ν′_SG", &singles, |&[a]| {
        let lhs = (|| b.seq(&[sa.from_sps.at1(g.obj(a)?)?, g.mor(&sa.to_sps.at1(a)?)?]))();
        let rhs = (|| b.seq(&[lift.nup.at1(s.obj(g.obj(a)?)?)?, g.mor(&sp.mor(&lift.nu.at1(a)?)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_objects(
        b,
        "SC-3",
        "ν∘e_{A,B}∘(1⊗ε) = Ge_{GA,GB}∘G(Sφ⊗1)∘φ∘(ν⊗δ)",
        &pairs,
        |&[x, y]| {
            let lhs = (|| {
                let sxy = s.obj(t.obj(x, y)?)?;
                b.seq(&[t.mor(&id(sxy)?, &cb.eps.at1(x)?)?, sa.eval.at(&[x, y])?, lift.nu.at1(y)?])
            })();
            let rhs = (|| {
                let (gx, gy) = (g.obj(x)?, g.obj(y)?);
                let sgxy = s.obj(g.obj(t.obj(x, y)?)?)?;
                b.seq(&[
                    t.mor(&lift.nu.at1(t.obj(x, y)?)?, &cb.delta.at1(x)?)?,
                    phi.at(sgxy, gx)?,
                    g.mor(&t.mor(&s.mor(&phi.at(x, y)?)?, &id(gx)?)?)?,
                    g.mor(&sa.eval.at(&[gx, gy])?)?,
                ])
            })();
            equation(b, lhs, rhs)
        },
    ));
    report.push(run_objects(
        b,
        "SC-4",
        "ν′∘e′_{B,A}∘(ε⊗1) = Ge′_{GB,GA}∘G(1⊗S′φ)∘φ∘(δ⊗ν′)",
        &pairs,
        |&[x, y]| {
            let lhs = (|| {
                let spxy = sp.obj(t.obj(x, y)?)?;
                b.seq(&[t.mor(&cb.eps.at1(y)?, &id(spxy)?)?, sa.eval_p.at(&[y, x])?, lift.nup.at1(x)?])
            })();
            let rhs = (|| {
                let (gx, gy) = (g.obj(x)?, g.obj(y)?);
                let spgxy = sp.obj(g.obj(t.obj(x, y)?)?)?;
                b.seq(&[
                    t.mor(&cb.delta.at1(y)?, &lift.nup.at1(t.obj(x, y)?)?)?,
                    phi.at(gy, spgxy)?,
                    g.mor(&t.mor(&id(gy)?, &sp.mor(&phi.at(x, y)?)?)?)?,
                    g.mor(&sa.eval_p.at(&[gy, gx])?)?,
                ])
            })();
            equation(b, lhs, rhs)
        },
    ));
    Ok(report)
}

/// Per-diagram summary of [`check_star_comonad`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarComonadVerdict {
    /// `SC-1`, `SC-2`.
    pub equivalence: [bool; 2],
    /// `SC-3`, `SC-4`.
    pub evaluation: [bool; 2],
    pub counterexamples: Vec<(String, Counterexample)>,
    pub overall: bool,
}

impl StarComonadVerdict {
    pub fn from_report(report: &CheckReport) -> Self {
        let ok = |id| report.verdict_of(id).unwrap_or(false);
        let equivalence = [ok("SC-1"), ok("SC-2")];
        let evaluation = [ok("SC-3"), ok("SC-4")];
        let counterexamples = report
            .axioms
            .iter()
            .filter(|r| r.id.starts_with("SC-"))
            .flat_map(|r| r.counterexamples.iter().map(move |c| (r.id.clone(), c.clone())))
            .collect();
        Self { equivalence, evaluation, counterexamples, overall: equivalence.iter().chain(&evaluation).all(|&v| v) }
    }
}

pub fn star_comonad_verdict(
    cb: &ComonadBundle,
    sa: &StarAutonomous,
    lift: &NegationLift,
    scope: &Scope,
) -> Result<StarComonadVerdict> {
    Ok(StarComonadVerdict::from_report(&check_star_comonad(cb, sa, lift, scope)?))
}

/// Monoidal structure for the derived `A⋄B = S′(SB⊗SA)`, `J = SI`, built
/// from `φ` and the lifts:
/// `ψ_{A,B} = G(ε⋄ε)∘GS′ξ∘ν′_{SGB⊗SGA}` where
/// `ξ = φ∘((GSδ_B∘ν_GB)⊗(GSδ_A∘ν_GA))` is the coaction on `SGB⊗SGA`, and
/// `ψ0 = GSφ0∘ν_I`.
pub fn derived_par_structure(
    cb: &ComonadBundle,
    sa: &StarAutonomous,
    lift: &NegationLift,
) -> Result<MonoidalStructure> {
    let phi = cb
        .structure(TensorTag::Star)
        .ok_or_else(|| Error::MissingStructure(format!("comonad {} carries no monoidal structure for ⊗", cb.name)))?
        .clone();
    let map = {
        let (cb, sa, lift, phi) = (cb.clone(), sa.clone(), lift.clone(), phi.clone());
        Family::new("ψ", 2, move |xs| {
            let (x, y) = (xs[0], xs[1]);
            let b = &*cb.backend;
            let (g, s, sp, t) = (&cb.g, &sa.s, &sa.sp, &sa.tensor);
            let (gx, gy) = (g.obj(x)?, g.obj(y)?);
            let free = |a: Obj, ga: Obj| b.seq(&[lift.nu.at1(ga)?, g.mor(&s.mor(&cb.delta.at1(a)?)?)?]);
            let (sgx, sgy) = (s.obj(gx)?, s.obj(gy)?);
            let xi = b.seq(&[t.mor(&free(y, gy)?, &free(x, gx)?)?, phi.at(sgy, sgx)?])?;
            let counits = sp.mor(&t.mor(&s.mor(&cb.eps.at1(y)?)?, &s.mor(&cb.eps.at1(x)?)?)?)?;
            b.seq(&[lift.nup.at1(t.obj(sgy, sgx)?)?, g.mor(&sp.mor(&xi)?)?, g.mor(&counits)?])
        })
    };
    let unit = {
        let (cb, sa, lift) = (cb.clone(), sa.clone(), lift.clone());
        Family::new("ψ0", 0, move |_| {
            let b = &*cb.backend;
            b.seq(&[lift.nu.at1(sa.i())?, cb.g.mor(&sa.s.mor(&phi.unit()?)?)?])
        })
    };
    Ok(MonoidalStructure { map, unit })
}

/// Comonad, monoidal, `L1`, `L2`, lift and lifting-axiom checks.
fn lindist_side(
    cb: &ComonadBundle,
    bundle: &LindistBundle,
    neg: &Negation,
    lift: &NegationLift,
    scope: &Scope,
) -> Result<CheckReport> {
    let mut report = check_comonad(cb, scope);
    report.absorb(check_monoidal_comonad(cb, &bundle.star, TensorTag::Star, scope)?);
    report.absorb(check_monoidal_comonad(cb, &bundle.par, TensorTag::Par, scope)?);
    report.absorb(check_l1(cb, bundle, scope)?);
    report.absorb(check_l2(cb, bundle, scope)?);
    report.absorb(check_nu(cb, &neg.s, &neg.sp, lift, scope));
    let ctx = LiftContext::new(cb, bundle, neg, lift)?;
    for which in LiftAxiom::ALL {
        report.push(check_lift_axiom(&ctx, which, scope));
    }
    Ok(report)
}

/// Comonad, monoidal for `⊗`, lift and the four star-comonad diagrams.
fn star_side(cb: &ComonadBundle, sa: &StarAutonomous, lift: &NegationLift, scope: &Scope) -> Result<CheckReport> {
    let mut report = check_comonad(cb, scope);
    report.absorb(check_monoidal_comonad(cb, &sa.tensor, TensorTag::Star, scope)?);
    report.absorb(check_nu(cb, &sa.s, &sa.sp, lift, scope));
    report.absorb(check_star_comonad(cb, sa, lift, scope)?);
    Ok(report)
}

/// The structure a comonad sits on.
#[derive(Clone, Copy)]
pub enum Ambient<'a> {
    Star(&'a StarAutonomous),
    Lindist(&'a LindistBundle, &'a Negation),
}

/// Translates the ambient structure to the other side, runs both
/// axiomatizations and records whether their overall verdicts agree.
///
/// From a star-autonomous category the `⋄` structure of the comonad is
/// [`derived_par_structure`]; from a linearly distributive one the comonad is
/// used as given.
pub fn notions_coincide(
    cb: &ComonadBundle,
    lift: &NegationLift,
    ambient: Ambient,
    scope: &Scope,
) -> Result<CheckReport> {
    let (lindist_report, star_report) = match ambient {
        Ambient::Star(sa) => {
            let (bundle, neg) = lindist_from_star(sa, scope)?;
            let mut derived = cb.clone();
            derived.psi = Some(derived_par_structure(cb, sa, lift)?);
            (lindist_side(&derived, &bundle, &neg, lift, scope)?, star_side(cb, sa, lift, scope)?)
        }
        Ambient::Lindist(bundle, neg) => {
            let sa = star_from_lindist(bundle, neg, scope)?;
            (lindist_side(cb, bundle, neg, lift, scope)?, star_side(cb, &sa, lift, scope)?)
        }
    };
    let mut report = CheckReport::new(lindist_report.scope.clone());
    let side = |name: &str, r: &CheckReport| {
        let failing = r.failing_ids();
        if failing.is_empty() {
            format!("{name}: pass")
        } else {
            format!("{name}: fail ({})", failing.join(", "))
        }
    };
    report.note(side("lifting axioms", &lindist_report));
    report.note(side("star-autonomous comonad", &star_report));
    let (l, s) = (lindist_report.passed(), star_report.passed());
    let verdict = |v: bool| if v { "pass" } else { "fail" };
    let failure = (l != s).then(|| Counterexample {
        tuple: vec![cb.name.clone()],
        kind: FailureKind::Violated,
        detail: "the two axiomatizations disagree".into(),
    });
    report.push(AxiomResult::single(
        "coincide",
        &format!("lifting axioms {} ⇔ star-autonomous comonad {}", verdict(l), verdict(s)),
        failure,
    ));
    Ok(report)
}

/// The lifting axioms, their compact-case Hopf labels, and the label table.
const HOPF_LABELS: [(LiftAxiom, &str, &str); 4] = [
    (LiftAxiom::Le, "(5)", "BV-23"),
    (LiftAxiom::Ln, "(6)", "BV-22"),
    (LiftAxiom::LeP, "(7)", "BV-21"),
    (LiftAxiom::LnP, "(8)", "BV-20"),
];

/// Every scoped object pair and generator pair on which `⋆` and `⋄` differ,
/// plus the units if they differ.
pub fn compact_mismatches(bundle: &LindistBundle, scope: &Scope) -> Vec<(String, String)> {
    let b = &*bundle.backend;
    let (st, pr) = (&bundle.star, &bundle.par);
    let mut out = Vec::new();
    for [x, y] in scope.pairs() {
        let (l, r) = (st.obj(x, y), pr.obj(x, y));
        if l != r {
            let show = |v: Result<Obj, Fault>| v.map(|o| b.label(o)).unwrap_or_else(|e| e.to_string());
            out.push((
                format!("{}, {}", b.label(x), b.label(y)),
                format!("{0}⋆{1} = {2} ≠ {3} = {0}⋄{1}", b.label(x), b.label(y), show(l), show(r)),
            ));
        }
    }
    if st.unit != pr.unit {
        out.push(("I, J".to_string(), format!("I = {} ≠ {} = J", b.label(st.unit), b.label(pr.unit))));
    }
    if out.is_empty() {
        let gens = generators(b, scope);
        for f in &gens {
            for h in &gens {
                let (l, r) = (st.mor(f, h), pr.mor(f, h));
                let differ = match (&l, &r) {
                    (Ok(l), Ok(r)) => l != r,
                    (Err(Fault::Undefined(_)), _) | (_, Err(Fault::Undefined(_))) => false,
                    _ => true,
                };
                if differ {
                    out.push((b.describe(f), format!("{}: f⋆g ≠ f⋄g", b.describe(h))));
                }
            }
        }
    }
    out
}

/// Checks the lifting axioms with `⋆ = ⋄` and labels them with the Hopf
/// comonad axioms they become in the compact case. A comonad without `⋄`
/// structure uses its `⊗` structure for both.
pub fn compact_hopf_check(
    cb: &ComonadBundle,
    bundle: &LindistBundle,
    neg: &Negation,
    lift: &NegationLift,
    scope: &Scope,
) -> Result<CheckReport> {
    let pairs = compact_mismatches(bundle, scope);
    if let Some((at, detail)) = pairs.first() {
        return Err(Error::NotCompact { detail: format!("at ({at}): {detail}"), pairs });
    }
    let cb = if cb.psi.is_none() { compact_par(cb) } else { cb.clone() };
    let ctx = LiftContext::new(&cb, bundle, neg, lift)?;
    let mut report = CheckReport::new(scope.describe(&cb.backend));
    report.note("⋆ = ⋄ and I = J on scope");
    for (which, label, hopf) in HOPF_LABELS {
        let r = check_lift_axiom(&ctx, which, scope);
        let verdict = r.verdict;
        let mut mirrored = r.clone();
        mirrored.id = hopf.into();
        mirrored.diagram = format!("Hopf comonad axiom via {}", which.id());
        report.push(r);
        report.push(mirrored);
        report.correspondence.push(Correspondence {
            axiom: which.id().into(),
            label: label.into(),
            hopf_axiom: hopf.into(),
            verdict,
        });
    }
    Ok(report)
}

/// Whether every row of a [`compact_hopf_check`] correspondence table passed.
pub fn hopf_axioms_hold(report: &CheckReport) -> bool {
    !report.correspondence.is_empty() && report.correspondence.iter().all(|c| c.verdict != Verdict::Fail)
}
