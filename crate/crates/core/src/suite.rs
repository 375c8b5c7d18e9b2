//! Instance-level entry points: validation by axiom group, EM export,
//! translation, coincidence and the compact-case comparison.

use crate::algebra::{check_bialgebra, check_hopf, matrix_swap_family};
use crate::comonad::{check_comonad, check_l1, check_l2, check_monoidal_comonad, check_nu};
use crate::em::{build_em_category, check_lifting_axioms, checker_equivalence_suite, EmCategory, LiftContext};
use crate::error::{Error, Result};
use crate::instances::instance::Instance;
use crate::instances::schema::{InstanceFile, LindistSpec, NegationSpec, StarSpec, ThinTable};
use crate::kernel::{
    check_category_laws, check_monoidal_laws, check_symmetry_laws, Backend, Functor, Obj, Tensor, TensorTag,
};
use crate::lindist::{check_lindist, check_negation_laws, check_triangle_identities};
use crate::report::CheckReport;
use crate::star::{
    check_star_autonomous, check_star_suite, lindist_from_star, roundtrip_lindist, roundtrip_star, star_from_lindist,
};
use crate::star_comonad::{check_star_comonad, compact_hopf_check, notions_coincide, Ambient};

/// Axiom groups accepted by [`validate`], with the ids each one produces.
pub const GROUPS: &[(&str, &[&str])] = &[
    ("cat", &["cat"]),
    ("tensor", &["mon-⋆", "mon-⋄", "sym"]),
    ("lindist", &["lindist-nat", "coh-subset"]),
    ("negation", &["neg-fun", "neg-dinat", "tri-1", "tri-2", "tri-3", "tri-4"]),
    ("star", &["star-equiv", "star-iso"]),
    ("bialgebra", &["bialg", "hopf"]),
    ("comonad", &["comonad"]),
    ("monoidal", &["moncom-⋆", "moncom-⋄"]),
    ("L1", &["L1"]),
    ("L2", &["L2"]),
    ("nu", &["nu-1", "nu-2"]),
    ("lifting", &["Le", "Ln", "Le′", "Ln′"]),
    ("star-comonad", &["SC-1", "SC-2", "SC-3", "SC-4"]),
];

/// A parsed `--axioms` selection: whole groups, plus single ids whose rows
/// are kept while the rest of their group is dropped.
#[derive(Clone, Debug, Default)]
struct Selection {
    groups: Vec<&'static str>,
    ids: Vec<String>,
}

fn select(filter: &[String]) -> Result<Option<Selection>> {
    if filter.is_empty() {
        return Ok(None);
    }
    let mut sel = Selection::default();
    for f in filter {
        if let Some((g, _)) = GROUPS.iter().find(|(g, _)| g == f) {
            if !sel.groups.contains(g) {
                sel.groups.push(g);
            }
        } else if let Some((g, _)) = GROUPS.iter().find(|(_, ids)| ids.contains(&f.as_str())) {
            if !sel.groups.contains(g) {
                sel.groups.push(g);
            }
            sel.ids.push(f.clone());
        } else {
            return Err(Error::InvalidParameter(format!("unknown axiom or group {f:?}")));
        }
    }
    Ok(Some(sel))
}

/// Runs the requested axiom groups, or every group the instance has the
/// structure for. An explicitly requested group whose structure is absent is
/// an error.
pub fn validate(inst: &Instance, filter: &[String]) -> Result<CheckReport> {
    let sel = select(filter)?;
    let scope = &inst.scope;
    let b = &*inst.backend;
    let mut report = CheckReport::new(scope.describe(b));
    report.instance_digest = inst.digest();
    for (group, _) in GROUPS {
        let explicit = sel.as_ref().is_some_and(|s| s.groups.contains(group));
        if sel.is_some() && !explicit {
            continue;
        }
        match run_group(inst, group)? {
            Some(r) => report.absorb(r),
            None if explicit => return Err(missing_for(group)),
            None => {}
        }
    }
    if let Some(sel) = sel {
        let keep = |id: &str| {
            let group = GROUPS.iter().find(|(_, ids)| ids.contains(&id)).map(|(g, _)| *g);
            let narrowed = group.is_some_and(|g| {
                GROUPS
                    .iter()
                    .find(|(k, _)| *k == g)
                    .is_some_and(|(_, ids)| ids.iter().any(|i| sel.ids.iter().any(|s| s == i)))
            });
            !narrowed || sel.ids.iter().any(|s| s == id)
        };
        let axioms = std::mem::take(&mut report.axioms);
        report.overall = true;
        report.extend(axioms.into_iter().filter(|r| keep(&r.id)));
    }
    Ok(report)
}

fn missing_for(group: &str) -> Error {
    let needs = match group {
        "tensor" | "lindist" => "a lindist or star section",
        "negation" => "lindist and negation sections",
        "star" => "a star section",
        "bialgebra" => "a bialgebra or hopf section",
        "monoidal" | "L1" | "L2" | "lifting" => "a comonad with structure for both tensors",
        "nu" => "a comonad and a negation lift",
        "star-comonad" => "a star section, a monoidal comonad and a negation lift",
        _ => "a comonad section",
    };
    Error::MissingStructure(format!("axiom group {group} needs {needs}"))
}

/// `None` when the instance lacks the structure for `group`.
fn run_group(inst: &Instance, group: &str) -> Result<Option<CheckReport>> {
    let scope = &inst.scope;
    let b = &*inst.backend;
    let both = inst.comonad.as_ref().filter(|cb| cb.phi.is_some() && cb.psi.is_some());
    let r = match group {
        "cat" => Some(check_category_laws(b, scope)),
        "tensor" => {
            if let Some(l) = &inst.lindist {
                let mut r = check_monoidal_laws(b, &l.star, scope);
                r.absorb(check_monoidal_laws(b, &l.par, scope));
                if let Some(sym) = &l.sym {
                    let mon = if sym.tensor == TensorTag::Star { &l.star } else { &l.par };
                    r.absorb(check_symmetry_laws(b, mon, sym, scope));
                }
                Some(r)
            } else {
                inst.star.as_ref().map(|sa| check_monoidal_laws(b, &sa.tensor, scope))
            }
        }
        "lindist" => inst.lindist.as_ref().map(|l| check_lindist(l, scope)),
        "negation" => match inst.require_lindist() {
            Ok((l, n)) => {
                let mut r = check_negation_laws(l, n, scope);
                r.absorb(check_triangle_identities(l, n, scope));
                Some(r)
            }
            Err(_) => None,
        },
        "star" => inst.star.as_ref().map(|sa| check_star_autonomous(sa, scope)),
        "bialgebra" => {
            let tensor = inst.lindist.as_ref().map(|l| &l.star).or(inst.star.as_ref().map(|s| &s.tensor));
            let braid = inst.lindist.as_ref().and_then(|l| l.sym.as_ref()).map(|s| s.braid.clone());
            let c = braid.unwrap_or_else(matrix_swap_family);
            match (tensor, &inst.hopf, &inst.bialgebra) {
                (Some(t), Some(h), _) => Some(check_hopf(b, t, &c, h, scope)),
                (Some(t), None, Some(bi)) => {
                    let par = inst.lindist.as_ref().map(|l| &l.par).unwrap_or(t);
                    Some(check_bialgebra(b, par, &c, bi, scope))
                }
                _ => None,
            }
        }
        "comonad" => inst.comonad.as_ref().map(|cb| check_comonad(cb, scope)),
        "monoidal" => match (&inst.comonad, &inst.lindist, &inst.star) {
            (Some(cb), Some(l), _) if cb.phi.is_some() || cb.psi.is_some() => {
                let mut r = CheckReport::new(scope.describe(b));
                if cb.phi.is_some() {
                    r.absorb(check_monoidal_comonad(cb, &l.star, TensorTag::Star, scope)?);
                }
                if cb.psi.is_some() {
                    r.absorb(check_monoidal_comonad(cb, &l.par, TensorTag::Par, scope)?);
                }
                Some(r)
            }
            (Some(cb), None, Some(sa)) if cb.phi.is_some() => {
                Some(check_monoidal_comonad(cb, &sa.tensor, TensorTag::Star, scope)?)
            }
            _ => None,
        },
        "L1" => match (both, &inst.lindist) {
            (Some(cb), Some(l)) => Some(check_l1(cb, l, scope)?),
            _ => None,
        },
        "L2" => match (both, &inst.lindist) {
            (Some(cb), Some(l)) => Some(check_l2(cb, l, scope)?),
            _ => None,
        },
        "nu" => {
            let negs: Option<(&Functor, &Functor)> = match (&inst.negation, &inst.star) {
                (Some(n), _) => Some((&n.s, &n.sp)),
                (None, Some(sa)) => Some((&sa.s, &sa.sp)),
                _ => None,
            };
            match (&inst.comonad, &inst.lift, negs) {
                (Some(cb), Some(lift), Some((s, sp))) => Some(check_nu(cb, s, sp, lift, scope)),
                _ => None,
            }
        }
        "lifting" => match (both, &inst.lift, inst.require_lindist()) {
            (Some(cb), Some(lift), Ok((l, n))) => Some(check_lifting_axioms(&LiftContext::new(cb, l, n, lift)?, scope)),
            _ => None,
        },
        "star-comonad" => match (&inst.comonad, &inst.lift, &inst.star) {
            (Some(cb), Some(lift), Some(sa)) if cb.phi.is_some() => Some(check_star_comonad(cb, sa, lift, scope)?),
            _ => None,
        },
        _ => unreachable!("group names come from GROUPS"),
    };
    Ok(r)
}

/// The Eilenberg–Moore category of the instance's comonad as a new
/// instance file, with the lift report.
pub fn lift(inst: &Instance) -> Result<EmCategory> {
    let cb = inst.require_comonad()?;
    let bundle = inst
        .lindist
        .as_ref()
        .ok_or_else(|| Error::MissingStructure(format!("instance {} has no lindist section", inst.file.name)))?;
    let neg = match (&inst.negation, &inst.lift) {
        (Some(n), Some(l)) => Some((n, l)),
        _ => None,
    };
    let mut em = build_em_category(cb, bundle, neg, &inst.scope)?;
    em.report.instance_digest = inst.digest();
    Ok(em)
}

/// Which side [`translate`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Star,
    Lindist,
}

/// The requested side of the ambient structure (by default whichever side
/// the file does not lead with), written into a copy of the file, with the
/// translated suite and the round-trip check.
pub fn translate(inst: &Instance, to: Option<Target>) -> Result<(InstanceFile, CheckReport)> {
    let scope = &inst.scope;
    let b = &*inst.backend;
    let mut out = InstanceFile::new(format!("{}-translated", inst.file.name), inst.file.backend.clone());
    out.scope = inst.file.scope.clone();
    let to = match to {
        Some(t) => t,
        None if inst.lindist.is_some() && inst.negation.is_some() => Target::Star,
        None => Target::Lindist,
    };
    let mut report;
    if to == Target::Star {
        let (bundle, neg) = inst.require_lindist()?;
        let sa = star_from_lindist(bundle, neg, scope)?;
        report = check_star_suite(&sa, scope);
        report.absorb(roundtrip_lindist(bundle, neg, scope)?);
        match b {
            Backend::Thin(_) => {
                out.lindist =
                    Some(LindistSpec::Thin { star: thin_table(b, &bundle.star)?, par: thin_table(b, &bundle.par)? });
                out.negation = Some(NegationSpec::Thin { s: thin_map(b, &neg.s)?, sp: thin_map(b, &neg.sp)? });
                out.star = Some(StarSpec::Thin {
                    tensor: thin_table(b, &sa.tensor)?,
                    s: thin_map(b, &sa.s)?,
                    sp: thin_map(b, &sa.sp)?,
                });
            }
            Backend::Matrix(_) => {
                out.lindist = Some(LindistSpec::Kronecker);
                out.negation = Some(NegationSpec::Dual);
                out.star = Some(StarSpec::Dual);
            }
            Backend::Table(_) => return Err(table_output()),
        }
    } else {
        let sa = inst.star.as_ref().ok_or_else(|| missing_star(inst))?;
        let (bundle, neg) = lindist_from_star(sa, scope)?;
        report = check_category_laws(b, scope);
        report.absorb(check_monoidal_laws(b, &bundle.star, scope));
        report.absorb(check_monoidal_laws(b, &bundle.par, scope));
        report.absorb(check_lindist(&bundle, scope));
        report.absorb(check_negation_laws(&bundle, &neg, scope));
        report.absorb(check_triangle_identities(&bundle, &neg, scope));
        report.absorb(roundtrip_star(sa, scope)?);
        match b {
            Backend::Thin(_) => {
                out.star = Some(StarSpec::Thin {
                    tensor: thin_table(b, &sa.tensor)?,
                    s: thin_map(b, &sa.s)?,
                    sp: thin_map(b, &sa.sp)?,
                });
                out.lindist =
                    Some(LindistSpec::Thin { star: thin_table(b, &bundle.star)?, par: thin_table(b, &bundle.par)? });
                out.negation = Some(NegationSpec::Thin { s: thin_map(b, &neg.s)?, sp: thin_map(b, &neg.sp)? });
            }
            Backend::Matrix(_) => {
                out.star = Some(StarSpec::Dual);
                out.lindist = Some(LindistSpec::Kronecker);
                out.negation = Some(NegationSpec::Dual);
            }
            Backend::Table(_) => return Err(table_output()),
        }
    }
    report.instance_digest = inst.digest();
    Ok((out, report))
}

fn missing_star(inst: &Instance) -> Error {
    Error::MissingStructure(format!("instance {} has no star section", inst.file.name))
}

fn table_output() -> Error {
    Error::InvalidParameter("translated files are written for thin and matrix backends only".into())
}

fn thin_objects(b: &Backend) -> Vec<Obj> {
    b.objects().unwrap_or_default()
}

fn thin_table(b: &Backend, t: &Tensor) -> Result<ThinTable> {
    let objs = thin_objects(b);
    let table = objs
        .iter()
        .map(|&x| objs.iter().map(|&y| t.obj(x, y)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ThinTable { unit: t.unit, table })
}

fn thin_map(b: &Backend, f: &Functor) -> Result<Vec<Obj>> {
    Ok(thin_objects(b).into_iter().map(|x| f.obj(x)).collect::<Result<Vec<_>, _>>()?)
}

/// Runs both comonad axiomatizations. The ambient is the star section when
/// there is one, otherwise the lindist and negation sections.
pub fn coincide(inst: &Instance) -> Result<CheckReport> {
    let cb = inst.require_comonad()?;
    let lift = inst.require_lift()?;
    let ambient = match (&inst.star, inst.require_lindist()) {
        (Some(sa), _) => Ambient::Star(sa),
        (None, Ok((l, n))) => Ambient::Lindist(l, n),
        (None, Err(e)) => return Err(e),
    };
    let mut r = notions_coincide(cb, lift, ambient, &inst.scope)?;
    r.instance_digest = inst.digest();
    Ok(r)
}

/// Lifting axioms against the coalgebra-morphism reading.
pub fn equivalence(inst: &Instance) -> Result<CheckReport> {
    let cb = inst.require_comonad()?;
    let lift = inst.require_lift()?;
    let (l, n) = inst.require_lindist()?;
    let mut r = checker_equivalence_suite(&LiftContext::new(cb, l, n, lift)?, &inst.scope)?;
    r.instance_digest = inst.digest();
    Ok(r)
}

pub fn compact(inst: &Instance) -> Result<CheckReport> {
    let cb = inst.require_comonad()?;
    let lift = inst.require_lift()?;
    let (l, n) = inst.require_lindist()?;
    let mut r = compact_hopf_check(cb, l, n, lift, &inst.scope)?;
    r.instance_digest = inst.digest();
    Ok(r)
}
