//! Comonads, their monoidal structure for either tensor, and lifts of the
//! negations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{Backend, Family, Fault, Functor, Morphism, Obj, Scope, Tensor, TensorTag};
use crate::lindist::{generators, LindistBundle};
use crate::report::{equation, run_check, run_objects, CheckReport, Outcome};

/// Structure maps `GA⊗GB → G(A⊗B)` (arity 2) and `I → GI` (arity 0).
#[derive(Clone, Debug)]
pub struct MonoidalStructure {
    pub map: Family,
    pub unit: Family,
}

impl MonoidalStructure {
    pub fn at(&self, a: Obj, b: Obj) -> Result<Morphism, Fault> {
        self.map.at(&[a, b])
    }

    pub fn unit(&self) -> Result<Morphism, Fault> {
        self.unit.at(&[])
    }
}

/// `G` with `δ_A: GA → G²A`, `ε_A: GA → A` and optional structure for `⋆`
/// (`φ`, `φ0`) and for `⋄` (`ψ`, `ψ0`).
#[derive(Clone, Debug)]
pub struct ComonadBundle {
    pub name: String,
    pub backend: Arc<Backend>,
    pub g: Functor,
    pub delta: Family,
    pub eps: Family,
    pub phi: Option<MonoidalStructure>,
    pub psi: Option<MonoidalStructure>,
}

/// `ν_A: SA → GSGA` and `ν′_A: S′A → GS′GA`.
#[derive(Clone, Debug)]
pub struct NegationLift {
    pub nu: Family,
    pub nup: Family,
}

impl ComonadBundle {
    /// `G = Id`, `δ = ε = 1`, no monoidal structure.
    pub fn identity(backend: Arc<Backend>) -> ComonadBundle {
        let id1 = |name: &str| {
            let b = backend.clone();
            Family::new(name, 1, move |x| b.identity(x[0]))
        };
        ComonadBundle {
            name: "identity".into(),
            g: Functor::identity(),
            delta: id1("δ"),
            eps: id1("ε"),
            phi: None,
            psi: None,
            backend,
        }
    }

    /// Identity comonad with identity structure maps for the given tensors.
    pub fn identity_on(backend: Arc<Backend>, star: &Tensor, par: &Tensor) -> ComonadBundle {
        let mut cb = ComonadBundle::identity(backend.clone());
        cb.phi = Some(identity_structure(backend.clone(), star, "φ"));
        cb.psi = Some(identity_structure(backend, par, "ψ"));
        cb
    }

    pub fn g(&self, a: Obj) -> Result<Obj, Fault> {
        self.g.obj(a)
    }

    pub fn structure(&self, which: TensorTag) -> Option<&MonoidalStructure> {
        match which {
            TensorTag::Star => self.phi.as_ref(),
            TensorTag::Par => self.psi.as_ref(),
        }
    }

    fn require(&self, which: TensorTag) -> Result<&MonoidalStructure> {
        self.structure(which).ok_or_else(|| {
            Error::MissingStructure(format!("comonad {} carries no monoidal structure for {}", self.name, which))
        })
    }
}

fn identity_structure(backend: Arc<Backend>, t: &Tensor, name: &str) -> MonoidalStructure {
    let (b1, b2, t1, unit) = (backend.clone(), backend, t.clone(), t.unit);
    MonoidalStructure {
        map: Family::new(name, 2, move |x| b1.identity(t1.obj(x[0], x[1])?)),
        unit: Family::new(format!("{name}0"), 0, move |_| b2.identity(unit)),
    }
}

impl NegationLift {
    pub fn identity(backend: Arc<Backend>, s: &Functor, sp: &Functor) -> NegationLift {
        let (b1, b2, s, sp) = (backend.clone(), backend, s.clone(), sp.clone());
        NegationLift {
            nu: Family::new("ν", 1, move |x| b1.identity(s.obj(x[0])?)),
            nup: Family::new("ν′", 1, move |x| b2.identity(sp.obj(x[0])?)),
        }
    }
}

/// Functoriality of `G`, naturality of `δ`, `ε`, coassociativity and counits.
pub fn check_comonad(cb: &ComonadBundle, scope: &Scope) -> CheckReport {
    let b = &*cb.backend;
    let g = &cb.g;
    let id = |x| b.identity(x);
    let mut report = CheckReport::new(scope.describe(b));
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();
    let gens = generators(b, scope);
    let mut pairs = Vec::new();
    for f in &gens {
        for h in gens.iter().filter(|h| h.dom == f.cod) {
            pairs.push((f.clone(), h.clone()));
        }
    }
    let describe = |f: &Morphism| vec![b.describe(f)];

    report.push(run_objects(b, "comonad", "G1 = 1", &singles, |&[a]| {
        equation(b, id(a).and_then(|i| g.mor(&i)), g.obj(a).and_then(id))
    }));
    report.push(run_check(
        "comonad",
        "G(h∘f) = Gh∘Gf",
        &pairs,
        |(f, h)| vec![b.describe(h), b.describe(f)],
        |(f, h)| {
            let lhs = b.compose(h, f).and_then(|hf| g.mor(&hf));
            let rhs = (|| b.compose(&g.mor(h)?, &g.mor(f)?))();
            equation(b, lhs, rhs)
        },
    ));
    report.push(run_check("comonad", "δ natural: G²f∘δ = δ∘Gf", &gens, describe, |f| {
        let lhs = (|| b.seq(&[cb.delta.at1(f.dom)?, g.mor(&g.mor(f)?)?]))();
        let rhs = (|| b.seq(&[g.mor(f)?, cb.delta.at1(f.cod)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check("comonad", "ε natural: f∘ε = ε∘Gf", &gens, describe, |f| {
        let lhs = (|| b.seq(&[cb.eps.at1(f.dom)?, f.clone()]))();
        let rhs = (|| b.seq(&[g.mor(f)?, cb.eps.at1(f.cod)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_objects(b, "comonad", "coassociativity Gδ∘δ = δ_G∘δ", &singles, |&[a]| {
        let lhs = (|| b.seq(&[cb.delta.at1(a)?, g.mor(&cb.delta.at1(a)?)?]))();
        let rhs = (|| b.seq(&[cb.delta.at1(a)?, cb.delta.at1(g.obj(a)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_objects(b, "comonad", "counit Gε∘δ = 1 = ε_G∘δ", &singles, |&[a]| {
        let left = (|| b.seq(&[cb.delta.at1(a)?, g.mor(&cb.eps.at1(a)?)?]))();
        match equation(b, left, g.obj(a).and_then(id)) {
            Outcome::Pass => {
                let right = (|| b.seq(&[cb.delta.at1(a)?, cb.eps.at1(g.obj(a)?)?]))();
                equation(b, right, g.obj(a).and_then(id))
            }
            other => other,
        }
    }));
    report
}

/// The monoidal-comonad laws for one tensor: naturality, associativity and
/// unit of the structure maps, and `ε`, `δ` monoidal.
pub fn check_monoidal_comonad(
    cb: &ComonadBundle,
    tensor: &Tensor,
    which: TensorTag,
    scope: &Scope,
) -> Result<CheckReport> {
    let m = cb.require(which)?;
    let b = &*cb.backend;
    let g = &cb.g;
    let t = tensor;
    let id = |x| b.identity(x);
    let key = format!("moncom-{which}");
    let key = key.as_str();
    let mut report = CheckReport::new(scope.describe(b));
    let pairs = scope.pairs();
    let triples = scope.triples();
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();
    let gens = generators(b, scope);
    let mut fg = Vec::new();
    for f in &gens {
        for h in &gens {
            fg.push((f.clone(), h.clone()));
        }
    }

    report.push(run_objects(b, key, "structure maps are well-typed", &pairs, |&[x, y]| {
        let got = m.at(x, y);
        let want = (|| Ok::<_, Fault>((t.obj(g.obj(x)?, g.obj(y)?)?, g.obj(t.obj(x, y)?)?)))();
        match (got, want) {
            (Ok(f), Ok(w)) => Outcome::require((f.dom, f.cod) == w, || {
                format!("component has type {} -> {}", b.label(f.dom), b.label(f.cod))
            }),
            (Err(e), _) | (_, Err(e)) => Outcome::from_fault(&e),
        }
    }));
    report.push(run_check(
        key,
        "natural: G(f⊗g)∘m = m∘(Gf⊗Gg)",
        &fg,
        |(f, h)| vec![b.describe(f), b.describe(h)],
        |(f, h)| {
            let lhs = (|| b.seq(&[m.at(f.dom, h.dom)?, g.mor(&t.mor(f, h)?)?]))();
            let rhs = (|| b.seq(&[t.mor(&g.mor(f)?, &g.mor(h)?)?, m.at(f.cod, h.cod)?]))();
            equation(b, lhs, rhs)
        },
    ));
    report.push(run_objects(b, key, "associative: m∘(m⊗1) = m∘(1⊗m)", &triples, |&[x, y, z]| {
        let lhs = (|| b.seq(&[t.mor(&m.at(x, y)?, &id(g.obj(z)?)?)?, m.at(t.obj(x, y)?, z)?]))();
        let rhs = (|| b.seq(&[t.mor(&id(g.obj(x)?)?, &m.at(y, z)?)?, m.at(x, t.obj(y, z)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_objects(b, key, "unital: m∘(m0⊗1) = 1 = m∘(1⊗m0)", &singles, |&[a]| {
        let ga = g.obj(a).and_then(id);
        let left = (|| b.seq(&[t.mor(&m.unit()?, &id(g.obj(a)?)?)?, m.at(t.unit, a)?]))();
        match equation(b, left, ga.clone()) {
            Outcome::Pass => {
                let right = (|| b.seq(&[t.mor(&id(g.obj(a)?)?, &m.unit()?)?, m.at(a, t.unit)?]))();
                equation(b, right, ga)
            }
            other => other,
        }
    }));
    report.push(run_objects(b, key, "ε monoidal: ε∘m = ε⊗ε, ε∘m0 = 1", &pairs, |&[x, y]| {
        let lhs = (|| b.seq(&[m.at(x, y)?, cb.eps.at1(t.obj(x, y)?)?]))();
        let rhs = (|| t.mor(&cb.eps.at1(x)?, &cb.eps.at1(y)?))();
        match equation(b, lhs, rhs) {
            Outcome::Pass => {
                let lhs = (|| b.seq(&[m.unit()?, cb.eps.at1(t.unit)?]))();
                equation(b, lhs, id(t.unit))
            }
            other => other,
        }
    }));
    report.push(run_objects(
        b,
        key,
        "δ monoidal: δ∘m = Gm∘m_G∘(δ⊗δ), δ∘m0 = Gm0∘m0",
        &pairs,
        |&[x, y]| {
            let lhs = (|| b.seq(&[m.at(x, y)?, cb.delta.at1(t.obj(x, y)?)?]))();
            let rhs = (|| {
                b.seq(&[
                    t.mor(&cb.delta.at1(x)?, &cb.delta.at1(y)?)?,
                    m.at(g.obj(x)?, g.obj(y)?)?,
                    g.mor(&m.at(x, y)?)?,
                ])
            })();
            match equation(b, lhs, rhs) {
                Outcome::Pass => {
                    let lhs = (|| b.seq(&[m.unit()?, cb.delta.at1(t.unit)?]))();
                    let rhs = (|| b.seq(&[m.unit()?, g.mor(&m.unit()?)?]))();
                    equation(b, lhs, rhs)
                }
                other => other,
            }
        },
    ));
    Ok(report)
}

fn both(cb: &ComonadBundle) -> Result<(&MonoidalStructure, &MonoidalStructure)> {
    Ok((cb.require(TensorTag::Star)?, cb.require(TensorTag::Par)?))
}

/// `G∂l∘φ∘(1⋆ψ) = ψ∘(φ⋄1)∘∂l` over scoped triples.
pub fn check_l1(cb: &ComonadBundle, bundle: &LindistBundle, scope: &Scope) -> Result<CheckReport> {
    let (phi, psi) = both(cb)?;
    let b = &*cb.backend;
    let (st, pr, g) = (&bundle.star, &bundle.par, &cb.g);
    let id = |x| b.identity(x);
    let mut report = CheckReport::new(scope.describe(b));
    report.note("hexagons evaluated at every scoped object triple");
    report.push(run_objects(b, "L1", "G∂l∘φ∘(1⋆ψ) = ψ∘(φ⋄1)∘∂l", &scope.triples(), |&[x, y, z]| {
        let lhs = (|| {
            b.seq(&[st.mor(&id(g.obj(x)?)?, &psi.at(y, z)?)?, phi.at(x, pr.obj(y, z)?)?, g.mor(&bundle.dl(x, y, z)?)?])
        })();
        let rhs = (|| {
            b.seq(&[
                bundle.dl(g.obj(x)?, g.obj(y)?, g.obj(z)?)?,
                pr.mor(&phi.at(x, y)?, &id(g.obj(z)?)?)?,
                psi.at(st.obj(x, y)?, z)?,
            ])
        })();
        equation(b, lhs, rhs)
    }));
    Ok(report)
}

/// `G∂r∘φ∘(ψ⋆1) = ψ∘(1⋄φ)∘∂r` over scoped triples.
pub fn check_l2(cb: &ComonadBundle, bundle: &LindistBundle, scope: &Scope) -> Result<CheckReport> {
    let (phi, psi) = both(cb)?;
    let b = &*cb.backend;
    let (st, pr, g) = (&bundle.star, &bundle.par, &cb.g);
    let id = |x| b.identity(x);
    let mut report = CheckReport::new(scope.describe(b));
    report.note("hexagons evaluated at every scoped object triple");
    report.push(run_objects(b, "L2", "G∂r∘φ∘(ψ⋆1) = ψ∘(1⋄φ)∘∂r", &scope.triples(), |&[x, y, z]| {
        let lhs = (|| {
            b.seq(&[st.mor(&psi.at(y, z)?, &id(g.obj(x)?)?)?, phi.at(pr.obj(y, z)?, x)?, g.mor(&bundle.dr(x, y, z)?)?])
        })();
        let rhs = (|| {
            b.seq(&[
                bundle.dr(g.obj(x)?, g.obj(y)?, g.obj(z)?)?,
                pr.mor(&id(g.obj(y)?)?, &phi.at(z, x)?)?,
                psi.at(y, st.obj(z, x)?)?,
            ])
        })();
        equation(b, lhs, rhs)
    }));
    Ok(report)
}

/// Both squares for `ν` (against `S`) and `ν′` (against `S′`), plus
/// naturality of each.
pub fn check_nu(cb: &ComonadBundle, s: &Functor, sp: &Functor, lift: &NegationLift, scope: &Scope) -> CheckReport {
    let b = &*cb.backend;
    let mut report = CheckReport::new(scope.describe(b));
    for (neg, nu, name) in [(s, &lift.nu, "ν"), (sp, &lift.nup, "ν′")] {
        push_nu_checks(cb, neg, nu, name, scope, &mut report);
    }
    report
}

fn push_nu_checks(cb: &ComonadBundle, s: &Functor, nu: &Family, name: &str, scope: &Scope, report: &mut CheckReport) {
    let b = &*cb.backend;
    let g = &cb.g;
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();
    let gens = generators(b, scope);
    report.push(run_objects(b, "nu-1", &format!("ε_SG∘{name} = Sε"), &singles, |&[a]| {
        let lhs = (|| b.seq(&[nu.at1(a)?, cb.eps.at1(s.obj(g.obj(a)?)?)?]))();
        let rhs = cb.eps.at1(a).and_then(|e| s.mor(&e));
        equation(b, lhs, rhs)
    }));
    report.push(run_objects(b, "nu-2", &format!("δ_SG∘{name} = G²Sδ∘G{name}_G∘{name}"), &singles, |&[a]| {
        let lhs = (|| b.seq(&[nu.at1(a)?, cb.delta.at1(s.obj(g.obj(a)?)?)?]))();
        let rhs = (|| b.seq(&[nu.at1(a)?, g.mor(&nu.at1(g.obj(a)?)?)?, g.mor(&g.mor(&s.mor(&cb.delta.at1(a)?)?)?)?]))();
        equation(b, lhs, rhs)
    }));
    report.push(run_check(
        "nu-2",
        &format!("{name} natural: {name}∘Sf = GSGf∘{name}"),
        &gens,
        |f| vec![b.describe(f)],
        |f| {
            let lhs = (|| b.seq(&[s.mor(f)?, nu.at1(f.dom)?]))();
            let rhs = (|| b.seq(&[nu.at1(f.cod)?, g.mor(&s.mor(&g.mor(f)?)?)?]))();
            equation(b, lhs, rhs)
        },
    ));
}

/// The comonad laws plus whatever monoidal structure is present, against the
/// given tensors.
pub fn check_comonad_suite(cb: &ComonadBundle, star: &Tensor, par: Option<&Tensor>, scope: &Scope) -> CheckReport {
    let mut report = check_comonad(cb, scope);
    if cb.phi.is_some() {
        if let Ok(r) = check_monoidal_comonad(cb, star, TensorTag::Star, scope) {
            report.absorb(r);
        }
    }
    if let (Some(par), true) = (par, cb.psi.is_some()) {
        if let Ok(r) = check_monoidal_comonad(cb, par, TensorTag::Par, scope) {
            report.absorb(r);
        }
    }
    report
}
