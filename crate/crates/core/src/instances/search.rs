//! Exhaustive search over interior comonads of a thin instance.

use crate::comonad::{
    check_comonad, check_l1, check_l2, check_monoidal_comonad, check_nu, ComonadBundle, NegationLift,
};
use crate::em::{check_lifting_axioms, LiftContext};
use crate::error::{Error, Result};
use crate::kernel::{Backend, Obj, Scope, TensorTag};
use crate::lindist::{LindistBundle, Negation};
use crate::report::{labels, AxiomResult, CheckReport, Counterexample, FailureKind};
use crate::star::{star_from_lindist, StarAutonomous};
use crate::star_comonad::check_star_comonad;

use super::build::{interior_comonad, interior_lift};
use super::instance::Instance;

/// Classification levels, each contained in the previous one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tier {
    Comonad = 1,
    Monoidal,
    Distributive,
    NuLiftable,
    StarComonad,
}

impl Tier {
    pub const ALL: [Tier; 5] = [Tier::Comonad, Tier::Monoidal, Tier::Distributive, Tier::NuLiftable, Tier::StarComonad];

    pub fn label(self) -> &'static str {
        match self {
            Tier::Comonad => "comonad only",
            Tier::Monoidal => "monoidal",
            Tier::Distributive => "L1/L2",
            Tier::NuLiftable => "ν-liftable",
            Tier::StarComonad => "star-autonomous comonad",
        }
    }
}

/// One interior comonad with the structure maps that exist for it.
#[derive(Clone, Debug)]
pub struct InteriorComonad {
    pub g: Vec<Obj>,
    pub bundle: ComonadBundle,
    pub lift: NegationLift,
    /// Names of structure maps with at least one missing component.
    pub missing: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Classified {
    pub comonad: InteriorComonad,
    pub tier: Tier,
    /// Monoidal for both tensors but `L1` or `L2` fails.
    pub distributive_exception: bool,
    /// The lifting axioms and the star-comonad diagrams disagree.
    pub coincidence_exception: bool,
}

fn thin_parts(inst: &Instance) -> Result<(&LindistBundle, &Negation)> {
    if !inst.backend.is_thin() {
        return Err(Error::InvalidParameter("interior comonad search needs a thin backend".into()));
    }
    inst.require_lindist()
}

/// Every `g` with `g ≤ 1`, `g` monotone and `g∘g = g`, in lexicographic order.
pub fn interior_maps(backend: &Backend, bound: u128) -> Result<Vec<Vec<Obj>>> {
    let Backend::Thin(p) = backend else {
        return Err(Error::InvalidParameter("interior comonad search needs a thin backend".into()));
    };
    let n = p.len();
    let total = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::InvalidParameter(format!("{n}^{n} candidate maps exceed the enumeration bound {bound}")));
    }
    // Each g(a) ranges over the elements below a, so only those are enumerated.
    let below: Vec<Vec<Obj>> = (0..n).map(|a| (0..n).filter(|&x| p.leq(x, a)).collect()).collect();
    let mut out = Vec::new();
    let mut g = vec![0; n];
    fn go(k: usize, below: &[Vec<Obj>], g: &mut Vec<Obj>, out: &mut Vec<Vec<Obj>>, p: &crate::kernel::ThinPoset) {
        if k == g.len() {
            let n = g.len();
            let monotone = (0..n).all(|a| (0..n).all(|b| !p.leq(a, b) || p.leq(g[a], g[b])));
            if monotone && (0..n).all(|a| g[g[a]] == g[a]) {
                out.push(g.clone());
            }
            return;
        }
        for &x in &below[k] {
            g[k] = x;
            go(k + 1, below, g, out, p);
        }
    }
    go(0, &below, &mut g, &mut out, p);
    Ok(out)
}

/// The interior comonads of a thin instance with their order-witness
/// structure, tagged with the structure maps that fail to exist.
pub fn enumerate_interior_comonads(inst: &Instance) -> Result<Vec<InteriorComonad>> {
    let (bundle, neg) = thin_parts(inst)?;
    let scope = &inst.scope;
    let maps = interior_maps(&inst.backend, scope.enum_bound)?;
    Ok(maps
        .into_iter()
        .map(|g| {
            let cb = interior_comonad(inst.backend.clone(), g.clone(), Some(&bundle.star), Some(&bundle.par));
            let lift = interior_lift(&cb, &neg.s, &neg.sp);
            let missing = missing_structure(&cb, &lift, scope);
            InteriorComonad { g, bundle: cb, lift, missing }
        })
        .collect())
}

fn missing_structure(cb: &ComonadBundle, lift: &NegationLift, scope: &Scope) -> Vec<String> {
    let mut out = Vec::new();
    for (m, name) in [(&cb.phi, "φ"), (&cb.psi, "ψ")] {
        let Some(m) = m else { continue };
        if scope.pairs().iter().any(|&[a, b]| m.at(a, b).is_err()) {
            out.push(format!("{name} missing"));
        }
        if m.unit().is_err() {
            out.push(format!("{name}0 missing"));
        }
    }
    for (nu, name) in [(&lift.nu, "ν"), (&lift.nup, "ν′")] {
        if scope.objects.iter().any(|&a| nu.at1(a).is_err()) {
            out.push(format!("{name} missing"));
        }
    }
    out
}

fn classify_one(
    c: InteriorComonad,
    bundle: &LindistBundle,
    neg: &Negation,
    sa: &StarAutonomous,
    scope: &Scope,
) -> Result<Classified> {
    let cb = &c.bundle;
    let comonad = check_comonad(cb, scope).passed();
    let monoidal = check_monoidal_comonad(cb, &bundle.star, TensorTag::Star, scope)?.passed()
        && check_monoidal_comonad(cb, &bundle.par, TensorTag::Par, scope)?.passed();
    let distributive = check_l1(cb, bundle, scope)?.passed() && check_l2(cb, bundle, scope)?.passed();
    let nu = check_nu(cb, &neg.s, &neg.sp, &c.lift, scope).passed();
    let lifting = check_lifting_axioms(&LiftContext::new(cb, bundle, neg, &c.lift)?, scope).passed();
    let star_side = check_star_comonad(cb, sa, &c.lift, scope)?.passed();
    let reached = [comonad, monoidal, distributive, nu, lifting];
    let tier = Tier::ALL
        .into_iter()
        .zip(reached)
        .take_while(|&(_, ok)| ok)
        .last()
        .map(|(t, _)| t)
        .ok_or_else(|| Error::Inconsistent("an interior map failed the comonad laws".into()))?;
    Ok(Classified {
        distributive_exception: comonad && monoidal && !distributive,
        coincidence_exception: tier >= Tier::NuLiftable && lifting != star_side,
        comonad: c,
        tier,
    })
}

pub fn classify_interior_comonads(inst: &Instance) -> Result<Vec<Classified>> {
    let (bundle, neg) = thin_parts(inst)?;
    let sa = star_from_lindist(bundle, neg, &inst.scope)?;
    enumerate_interior_comonads(inst)?.into_iter().map(|c| classify_one(c, bundle, neg, &sa, &inst.scope)).collect()
}

/// How many comonads reach at least each tier.
pub fn tier_counts(rows: &[Classified]) -> [usize; 5] {
    Tier::ALL.map(|t| rows.iter().filter(|r| r.tier >= t).count())
}

/// One row per comonad naming its tier, the nested counts as a note, and
/// failing rows for any exception to `L1`/`L2` or to the coincidence.
pub fn search(inst: &Instance) -> Result<CheckReport> {
    let rows = classify_interior_comonads(inst)?;
    let b = &*inst.backend;
    let mut report = CheckReport::new(inst.scope.describe(b));
    report.instance_digest = inst.digest();
    let counts = tier_counts(&rows);
    let table: Vec<String> = Tier::ALL.iter().zip(counts).map(|(t, n)| format!("{} {n}", t.label())).collect();
    report.note(format!("tier counts: {}", table.join(", ")));
    for r in &rows {
        let g = labels(b, &r.comonad.g).join(", ");
        let mut diagram = format!("g = ({g}): {}", r.tier.label());
        if !r.comonad.missing.is_empty() {
            diagram.push_str(&format!(" [{}]", r.comonad.missing.join(", ")));
        }
        report.push(AxiomResult::single("search", &diagram, None));
    }
    let exception = |pick: fn(&Classified) -> bool, detail: &str| {
        rows.iter().find(|r| pick(r)).map(|r| Counterexample {
            tuple: labels(b, &r.comonad.g),
            kind: FailureKind::Violated,
            detail: detail.into(),
        })
    };
    report.push(AxiomResult::single(
        "L1",
        "every comonad monoidal for both tensors satisfies L1 and L2",
        exception(|r| r.distributive_exception, "monoidal for ⋆ and ⋄ but L1 or L2 fails"),
    ));
    report.push(AxiomResult::single(
        "coincide",
        "lifting axioms ⇔ star-comonad diagrams for every ν-liftable comonad",
        exception(|r| r.coincidence_exception, "the two axiomatizations disagree"),
    ));
    Ok(report)
}
