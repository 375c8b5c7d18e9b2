//! Base law checkers: category, strict monoidal and symmetry laws.

use rayon::prelude::*;

use super::{Backend, Fault, Morphism, Obj, Scope, Symmetry, Tensor};
use crate::report::{equation, labels, run_check, run_objects, CheckReport, Outcome};

fn mor_labels(backend: &Backend, ms: &[&Morphism]) -> Vec<String> {
    ms.iter().map(|m| backend.describe(m)).collect()
}

/// Associativity over every composable triple and unit laws over every
/// morphism between scoped objects. Hom-sets are enumerated in full when the
/// triple count per object quadruple stays within `scope.hom_bound`, otherwise
/// the generating sets are used (composition is trilinear on matrices).
pub fn check_category_laws(backend: &Backend, scope: &Scope) -> CheckReport {
    let mut report = CheckReport::new(scope.describe(backend));
    let objs = &scope.objects;
    let mut homs = std::collections::BTreeMap::new();
    let mut reduced = false;
    for &a in objs {
        for &b in objs {
            let full = backend.hom(a, b, scope.hom_bound).ok();
            homs.insert((a, b), full);
        }
    }
    let pool = |a: Obj, b: Obj, full: bool| -> Vec<Morphism> {
        match (&homs[&(a, b)], full) {
            (Some(h), true) => h.clone(),
            _ => backend.generators(a, b),
        }
    };
    let mut triples = Vec::new();
    for [a, b, c, d] in scope.quads() {
        let size = backend.hom_size(a, b).saturating_mul(backend.hom_size(b, c)).saturating_mul(backend.hom_size(c, d));
        let full = size <= scope.hom_bound && [(a, b), (b, c), (c, d)].iter().all(|k| homs[k].is_some());
        reduced |= !full;
        for f in pool(a, b, full) {
            for g in pool(b, c, full) {
                for h in pool(c, d, full) {
                    triples.push((f.clone(), g.clone(), h.clone()));
                }
            }
        }
    }
    if reduced {
        report.note("associativity checked on generating sets where hom-sets exceed the bound");
    }
    report.push(run_check(
        "cat",
        "associativity h∘(g∘f) = (h∘g)∘f",
        &triples,
        |(f, g, h)| mor_labels(backend, &[h, g, f]),
        |(f, g, h)| {
            let lhs = backend.compose(g, f).and_then(|gf| backend.compose(h, &gf));
            let rhs = backend.compose(h, g).and_then(|hg| backend.compose(&hg, f));
            equation(backend, lhs, rhs)
        },
    ));
    let mut singles = Vec::new();
    for &a in objs {
        for &b in objs {
            singles.extend(pool(a, b, homs[&(a, b)].is_some()));
        }
    }
    report.push(run_check(
        "cat",
        "identities 1∘f = f = f∘1",
        &singles,
        |f| mor_labels(backend, &[f]),
        |f| {
            let left = backend.identity(f.cod).and_then(|id| backend.compose(&id, f));
            match equation(backend, left, Ok(f.clone())) {
                Outcome::Pass => {
                    let right = backend.identity(f.dom).and_then(|id| backend.compose(f, &id));
                    equation(backend, right, Ok(f.clone()))
                }
                other => other,
            }
        },
    ));
    report
}

/// Strict associativity and unit on objects, functoriality and strict
/// associativity on (generating) morphisms.
pub fn check_monoidal_laws(backend: &Backend, mon: &Tensor, scope: &Scope) -> CheckReport {
    let id = format!("mon-{}", mon.tag);
    let mut report = CheckReport::new(scope.describe(backend));
    let triples = scope.triples();
    let pairs = scope.pairs();
    let singles: Vec<[Obj; 1]> = scope.objects.iter().map(|&a| [a]).collect();

    report.push(run_objects(backend, &id, "associativity on objects", &triples, |&[a, b, c]| {
        let lhs = mon.obj(a, b).and_then(|ab| mon.obj(ab, c));
        let rhs = mon.obj(b, c).and_then(|bc| mon.obj(a, bc));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => Outcome::require(l == r, || {
                format!("(A⊗B)⊗C = {} but A⊗(B⊗C) = {}", backend.label(l), backend.label(r))
            }),
            (Err(e), _) | (_, Err(e)) => Outcome::from_fault(&e),
        }
    }));
    report.push(run_objects(backend, &id, "unit on objects", &singles, |&[a]| {
        let u = mon.unit;
        match (mon.obj(u, a), mon.obj(a, u)) {
            (Ok(l), Ok(r)) => Outcome::require(l == a && r == a, || {
                format!("I⊗A = {}, A⊗I = {}, A = {}", backend.label(l), backend.label(r), backend.label(a))
            }),
            (Err(e), _) | (_, Err(e)) => Outcome::from_fault(&e),
        }
    }));
    report.push(run_objects(backend, &id, "1⊗1 = 1", &pairs, |&[a, b]| {
        let lhs = backend.identity(a).and_then(|ia| backend.identity(b).and_then(|ib| mon.mor(&ia, &ib)));
        let rhs = mon.obj(a, b).and_then(|ab| backend.identity(ab));
        equation(backend, lhs, rhs)
    }));

    // Generating morphisms between scoped objects.
    let mut gens = Vec::new();
    for &[a, b] in &pairs {
        gens.extend(backend.generators(a, b));
    }

    let mut fg = Vec::new();
    for f in &gens {
        for g in &gens {
            fg.push((f.clone(), g.clone()));
        }
    }
    report.push(run_check(
        &id,
        "bifunctor: f⊗g = (f⊗1)∘(1⊗g) = (1⊗g)∘(f⊗1)",
        &fg,
        |(f, g)| mor_labels(backend, &[f, g]),
        |(f, g)| {
            let direct = mon.mor(f, g);
            let via_left = backend.identity(f.dom).and_then(|id| mon.mor(&id, g)).and_then(|ig| {
                backend.identity(g.cod).and_then(|id| mon.mor(f, &id)).and_then(|fi| backend.compose(&fi, &ig))
            });
            match equation(backend, direct.clone(), via_left) {
                Outcome::Pass => {
                    let via_right = backend.identity(g.dom).and_then(|id| mon.mor(f, &id)).and_then(|fi| {
                        backend.identity(f.cod).and_then(|id| mon.mor(&id, g)).and_then(|ig| backend.compose(&ig, &fi))
                    });
                    equation(backend, direct, via_right)
                }
                other => other,
            }
        },
    ));

    let mut composable = Vec::new();
    for f in &gens {
        for g in gens.iter().filter(|g| g.dom == f.cod) {
            for &c in &scope.objects {
                composable.push((f.clone(), g.clone(), c));
            }
        }
    }
    report.push(run_check(
        &id,
        "functoriality (g∘f)⊗1 = (g⊗1)∘(f⊗1), 1⊗(g∘f) = (1⊗g)∘(1⊗f)",
        &composable,
        |(f, g, c)| {
            let mut v = mor_labels(backend, &[g, f]);
            v.push(backend.label(*c));
            v
        },
        |(f, g, c)| {
            let ic = match backend.identity(*c) {
                Ok(i) => i,
                Err(e) => return Outcome::from_fault(&e),
            };
            let gf = backend.compose(g, f);
            let lhs = gf.clone().and_then(|gf| mon.mor(&gf, &ic));
            let rhs = mon.mor(f, &ic).and_then(|fi| mon.mor(g, &ic).and_then(|gi| backend.compose(&gi, &fi)));
            match equation(backend, lhs, rhs) {
                Outcome::Pass => {
                    let lhs = gf.and_then(|gf| mon.mor(&ic, &gf));
                    let rhs = mon.mor(&ic, f).and_then(|if_| mon.mor(&ic, g).and_then(|ig| backend.compose(&ig, &if_)));
                    equation(backend, lhs, rhs)
                }
                other => other,
            }
        },
    ));

    // Triples where f⊗g or g⊗h is undefined would be skipped, so only the
    // rest are enumerated and the others are added to the skip count.
    let defined = |f: &Morphism, g: &Morphism| !matches!(mon.mor(f, g), Err(Fault::Undefined(_)));
    let right: Vec<Vec<usize>> = (0..gens.len())
        .into_par_iter()
        .map(|j| (0..gens.len()).filter(|&k| defined(&gens[j], &gens[k])).collect())
        .collect();
    let mut fgh = Vec::new();
    for i in 0..gens.len() {
        for &j in &right[i] {
            for &k in &right[j] {
                fgh.push([i, j, k]);
            }
        }
    }
    let mut assoc = run_check(
        &id,
        "associativity on morphisms (f⊗g)⊗h = f⊗(g⊗h)",
        &fgh,
        |t| mor_labels(backend, &[&gens[t[0]], &gens[t[1]], &gens[t[2]]]),
        |&[i, j, k]| {
            let (f, g, h) = (&gens[i], &gens[j], &gens[k]);
            let lhs = mon.mor(f, g).and_then(|fg| mon.mor(&fg, h));
            let rhs = mon.mor(g, h).and_then(|gh| mon.mor(f, &gh));
            equation(backend, lhs, rhs)
        },
    );
    assoc.skipped += gens.len().pow(3) - fgh.len();
    report.push(assoc);
    report.push(run_check(
        &id,
        "unit on morphisms 1_I⊗f = f = f⊗1_I",
        &gens,
        |f| mor_labels(backend, &[f]),
        |f| {
            let iu = match backend.identity(mon.unit) {
                Ok(i) => i,
                Err(e) => return Outcome::from_fault(&e),
            };
            match equation(backend, mon.mor(&iu, f), Ok(f.clone())) {
                Outcome::Pass => equation(backend, mon.mor(f, &iu), Ok(f.clone())),
                other => other,
            }
        },
    ));
    report
}

/// Naturality, involutivity and the two strict hexagons of a braiding.
pub fn check_symmetry_laws(backend: &Backend, mon: &Tensor, sym: &Symmetry, scope: &Scope) -> CheckReport {
    let mut report = CheckReport::new(scope.describe(backend));
    let c = &sym.braid;
    let pairs = scope.pairs();
    let mut gens = Vec::new();
    for &[a, b] in &pairs {
        gens.extend(backend.generators(a, b));
    }
    let mut fg = Vec::new();
    for f in &gens {
        for g in &gens {
            fg.push((f.clone(), g.clone()));
        }
    }
    report.push(run_check(
        "sym",
        "naturality c∘(f⊗g) = (g⊗f)∘c",
        &fg,
        |(f, g)| {
            let mut v = labels(backend, &[f.dom, g.dom]);
            v.extend(mor_labels(backend, &[f, g]));
            v
        },
        |(f, g)| {
            let lhs = mon.mor(f, g).and_then(|fg| c.at(&[f.cod, g.cod]).and_then(|cc| backend.compose(&cc, &fg)));
            let rhs = c.at(&[f.dom, g.dom]).and_then(|cc| mon.mor(g, f).and_then(|gf| backend.compose(&gf, &cc)));
            equation(backend, lhs, rhs)
        },
    ));
    report.push(run_objects(backend, "sym", "involution c_{B,A}∘c_{A,B} = 1", &pairs, |&[a, b]| {
        let lhs = c.at(&[a, b]).and_then(|ab| c.at(&[b, a]).and_then(|ba| backend.compose(&ba, &ab)));
        let rhs = mon.obj(a, b).and_then(|ab| backend.identity(ab));
        equation(backend, lhs, rhs)
    }));
    let triples = scope.triples();
    report.push(run_objects(
        backend,
        "sym",
        "hexagon c_{A,B⊗C} = (1⊗c_{A,C})∘(c_{A,B}⊗1)",
        &triples,
        |&[a, b, cc]| {
            let lhs = mon.obj(b, cc).and_then(|bc| c.at(&[a, bc]));
            let rhs = (|| {
                let step1 = mon.mor(&c.at(&[a, b])?, &backend.identity(cc)?)?;
                let step2 = mon.mor(&backend.identity(b)?, &c.at(&[a, cc])?)?;
                backend.compose(&step2, &step1)
            })();
            equation(backend, lhs, rhs)
        },
    ));
    report.push(run_objects(
        backend,
        "sym",
        "hexagon c_{A⊗B,C} = (c_{A,C}⊗1)∘(1⊗c_{B,C})",
        &triples,
        |&[a, b, cc]| {
            let lhs = mon.obj(a, b).and_then(|ab| c.at(&[ab, cc]));
            let rhs = (|| {
                let step1 = mon.mor(&backend.identity(a)?, &c.at(&[b, cc])?)?;
                let step2 = mon.mor(&c.at(&[a, cc])?, &backend.identity(b)?)?;
                backend.compose(&step2, &step1)
            })();
            equation(backend, lhs, rhs)
        },
    ));
    report
}
