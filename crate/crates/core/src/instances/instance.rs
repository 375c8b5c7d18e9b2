//! Runtime structure assembled from an [`InstanceFile`], with its recorded
//! mutations applied.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{bialgebra_comonad, compact_par, hopf_structure, Bialgebra, HopfAlgebra};
use crate::comonad::{ComonadBundle, MonoidalStructure, NegationLift};
use crate::error::{Error, Result};
use crate::kernel::{
    Backend, Family, Fault, Functor, MatrixCat, Morphism, Obj, Payload, Scope, Symmetry, TableCat, Tensor, TensorTag,
    ThinPoset, Variance,
};
use crate::lindist::{LindistBundle, Negation};
use crate::matrix::Matrix;
use crate::star::StarAutonomous;

use super::build::{
    interior_comonad, interior_lift, matrix_backend, matrix_lindist, matrix_negation, matrix_star, thin_lindist,
    thin_negation, thin_star,
};
use super::schema::{
    BackendSpec, BialgebraSpec, ComonadSpec, Component, FunctorTable, HopfSpec, InstanceFile, LiftSpec, LindistSpec,
    MatrixTarget, Mutation, NegationSpec, StarSpec, TableTarget, TensorTable,
};

/// Everything an instance file describes, ready for the checkers.
#[derive(Clone, Debug)]
pub struct Instance {
    pub file: InstanceFile,
    pub backend: Arc<Backend>,
    pub scope: Scope,
    pub lindist: Option<LindistBundle>,
    pub negation: Option<Negation>,
    pub star: Option<StarAutonomous>,
    pub comonad: Option<ComonadBundle>,
    pub lift: Option<NegationLift>,
    pub bialgebra: Option<Bialgebra>,
    pub hopf: Option<HopfAlgebra>,
}

impl Instance {
    pub fn from_file(file: &InstanceFile) -> Result<Instance> {
        let (effective, flags) = apply_mutations(file)?;
        build(file.clone(), &effective, flags)
    }

    pub fn parse(text: &str) -> Result<Instance> {
        Instance::from_file(&InstanceFile::parse(text)?)
    }

    pub fn digest(&self) -> String {
        self.file.digest()
    }

    pub fn with_enum_bound(mut self, bound: u128) -> Self {
        self.scope.enum_bound = bound;
        self
    }

    pub fn require_lindist(&self) -> Result<(&LindistBundle, &Negation)> {
        match (&self.lindist, &self.negation) {
            (Some(l), Some(n)) => Ok((l, n)),
            (None, _) => Err(missing(&self.file.name, "lindist")),
            (_, None) => Err(missing(&self.file.name, "negation")),
        }
    }

    pub fn require_comonad(&self) -> Result<&ComonadBundle> {
        self.comonad.as_ref().ok_or_else(|| missing(&self.file.name, "comonad"))
    }

    pub fn require_lift(&self) -> Result<&NegationLift> {
        self.lift.as_ref().ok_or_else(|| missing(&self.file.name, "negation_lift"))
    }
}

fn missing(name: &str, section: &str) -> Error {
    Error::MissingStructure(format!("instance {name} has no {section} section"))
}

/// Mutations that change structure maps rather than table entries.
#[derive(Clone, Copy, Debug, Default)]
struct Flags {
    drop_swap: bool,
    zero_nu: bool,
}

fn nonexistent(what: impl Into<String>) -> Error {
    Error::InvalidParameter(format!("mutation targets a nonexistent component: {}", what.into()))
}

/// The file with table and matrix mutations written in, and the remaining
/// mutations as flags. `identity-antipode` becomes an antipode rewrite.
fn apply_mutations(file: &InstanceFile) -> Result<(InstanceFile, Flags)> {
    let mut f = file.clone();
    let mut flags = Flags::default();
    for m in &file.mutations {
        match m {
            Mutation::TableEntry { target, index, value } => table_entry(&mut f, *target, index, *value)?,
            Mutation::MatrixEntry { target, row, col, value } => matrix_entry(&mut f, *target, *row, *col, *value)?,
            Mutation::DropSwapInPhi => {
                if !matches!(f.comonad, Some(ComonadSpec::Hopf)) {
                    return Err(nonexistent("φ of a Hopf comonad"));
                }
                flags.drop_swap = true;
            }
            Mutation::ZeroNu => {
                if f.negation_lift.is_none() || !matches!(f.backend, BackendSpec::MatrixField { .. }) {
                    return Err(nonexistent("ν on a matrix backend"));
                }
                flags.zero_nu = true;
            }
            Mutation::IdentityAntipode => {
                let h = f.hopf.as_mut().ok_or_else(|| nonexistent("antipode"))?;
                let n = h.carrier;
                h.antipode = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
            }
        }
    }
    Ok((f, flags))
}

fn table_entry(f: &mut InstanceFile, target: TableTarget, index: &[usize], value: Obj) -> Result<()> {
    let mut tables: Vec<&mut Vec<Vec<Obj>>> = Vec::new();
    let mut maps: Vec<&mut Vec<Obj>> = Vec::new();
    let primed = target == TableTarget::Sp;
    match target {
        TableTarget::Star | TableTarget::Par => {
            if let Some(LindistSpec::Thin { star, par }) = f.lindist.as_mut() {
                tables.push(if target == TableTarget::Star { &mut star.table } else { &mut par.table });
            }
            if let (TableTarget::Star, Some(StarSpec::Thin { tensor, .. })) = (target, f.star.as_mut()) {
                tables.push(&mut tensor.table);
            }
        }
        TableTarget::S | TableTarget::Sp => {
            if let Some(NegationSpec::Thin { s, sp }) = f.negation.as_mut() {
                maps.push(if primed { sp } else { s });
            }
            if let Some(StarSpec::Thin { s, sp, .. }) = f.star.as_mut() {
                maps.push(if primed { sp } else { s });
            }
        }
        TableTarget::G => {
            if let Some(ComonadSpec::Interior { g }) = f.comonad.as_mut() {
                maps.push(g);
            }
        }
    }
    if tables.is_empty() && maps.is_empty() {
        return Err(nonexistent(format!("{target:?} table")));
    }
    for t in tables {
        let [i, j] = index else { return Err(nonexistent("tensor entries take two indices")) };
        let cell =
            t.get_mut(*i).and_then(|row| row.get_mut(*j)).ok_or_else(|| nonexistent(format!("entry {index:?}")))?;
        *cell = value;
    }
    for m in maps {
        let [i] = index else { return Err(nonexistent("functor entries take one index")) };
        *m.get_mut(*i).ok_or_else(|| nonexistent(format!("entry {index:?}")))? = value;
    }
    Ok(())
}

fn matrix_entry(f: &mut InstanceFile, target: MatrixTarget, row: usize, col: usize, value: u32) -> Result<()> {
    let rows: &mut Vec<Vec<u32>> = if let Some(h) = f.hopf.as_mut() {
        match target {
            MatrixTarget::Mul => &mut h.mul,
            MatrixTarget::Unit => &mut h.unit,
            MatrixTarget::Comul => &mut h.comul,
            MatrixTarget::Counit => &mut h.counit,
            MatrixTarget::Antipode => &mut h.antipode,
        }
    } else if let Some(BialgebraSpec::Matrix { mul, unit, comul, counit, .. }) = f.bialgebra.as_mut() {
        match target {
            MatrixTarget::Mul => mul,
            MatrixTarget::Unit => unit,
            MatrixTarget::Comul => comul,
            MatrixTarget::Counit => counit,
            MatrixTarget::Antipode => return Err(nonexistent("a bialgebra has no antipode")),
        }
    } else {
        return Err(nonexistent("structure matrices"));
    };
    let cell = rows
        .get_mut(row)
        .and_then(|r| r.get_mut(col))
        .ok_or_else(|| nonexistent(format!("{target:?} entry ({row}, {col})")))?;
    *cell = value;
    Ok(())
}

fn schema(e: impl std::fmt::Display) -> Error {
    Error::Schema(e.to_string())
}

fn make_backend(spec: &BackendSpec) -> Result<Arc<Backend>> {
    match spec {
        BackendSpec::ThinQuantale { carrier, leq } => {
            let n = carrier.len();
            let mut rel = vec![vec![false; n]; n];
            for (i, row) in rel.iter_mut().enumerate() {
                row[i] = true;
            }
            for &[a, b] in leq {
                if a >= n || b >= n {
                    return Err(schema(format!("order pair [{a}, {b}] outside the carrier")));
                }
                rel[a][b] = true;
            }
            Ok(Arc::new(Backend::Thin(ThinPoset::from_relation(carrier.clone(), rel).map_err(schema)?)))
        }
        BackendSpec::MatrixField { p, objects } => matrix_backend(*p, objects.clone()),
        BackendSpec::FiniteTable { objects, morphisms, identities, compose } => {
            let morphisms = morphisms.iter().map(|&[d, c]| (d, c)).collect();
            let compose: Vec<_> = compose.iter().map(|&[g, f, h]| (g, f, h)).collect();
            let t = TableCat::new(objects.clone(), morphisms, identities.clone(), &compose).map_err(schema)?;
            Ok(Arc::new(Backend::Table(t)))
        }
    }
}

fn check_table(backend: &Backend, table: &[Vec<Obj>], what: &str) -> Result<()> {
    let n = backend.objects().map(|o| o.len()).unwrap_or(0);
    if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(schema(format!("{what} table must be {n}×{n} with entries below {n}")));
    }
    Ok(())
}

fn check_map(backend: &Backend, map: &[Obj], what: &str) -> Result<()> {
    let n = backend.objects().map(|o| o.len()).unwrap_or(0);
    if map.len() != n || map.iter().any(|&x| x >= n) {
        return Err(schema(format!("{what} must list {n} objects below {n}")));
    }
    Ok(())
}

fn table_morphism(backend: &Arc<Backend>, id: usize) -> Result<Morphism, Fault> {
    match &**backend {
        Backend::Table(t) => t.try_morphism(id),
        _ => Err(Fault::IllTyped("morphism ids need a finite-table backend".into())),
    }
}

fn morphism_id(m: &Morphism) -> Result<usize, Fault> {
    match m.payload {
        Payload::Table(id) => Ok(id),
        _ => Err(Fault::IllTyped("expected a finite-table morphism".into())),
    }
}

fn table_tensor(backend: &Arc<Backend>, tag: TensorTag, t: &TensorTable) -> Tensor {
    let objs: HashMap<(Obj, Obj), Obj> = t.objects.iter().map(|&[a, b, c]| ((a, b), c)).collect();
    let mors: HashMap<(usize, usize), usize> = t.morphisms.iter().map(|&[f, g, h]| ((f, g), h)).collect();
    let b = backend.clone();
    Tensor::new(
        tag,
        t.unit,
        move |x, y| objs.get(&(x, y)).copied().ok_or_else(|| Fault::Undefined(format!("{tag} of {x} and {y}"))),
        move |f, g| {
            let (fi, gi) = (morphism_id(f)?, morphism_id(g)?);
            let h = mors.get(&(fi, gi)).ok_or_else(|| Fault::Undefined(format!("{tag} of #{fi} and #{gi}")))?;
            table_morphism(&b, *h)
        },
    )
}

fn table_functor(backend: &Arc<Backend>, name: &str, variance: Variance, t: &FunctorTable) -> Functor {
    let objs: HashMap<Obj, Obj> = t.objects.iter().map(|&[a, b]| (a, b)).collect();
    let mors: HashMap<usize, usize> = t.morphisms.iter().map(|&[a, b]| (a, b)).collect();
    let b = backend.clone();
    let label = name.to_string();
    Functor::new(
        name,
        variance,
        move |a| objs.get(&a).copied().ok_or_else(|| Fault::Undefined(format!("{label} at {a}"))),
        move |f| {
            let id = morphism_id(f)?;
            let h = mors.get(&id).ok_or_else(|| Fault::Undefined(format!("functor at #{id}")))?;
            table_morphism(&b, *h)
        },
    )
}

fn table_family(backend: &Arc<Backend>, name: &str, arity: usize, cs: &[Component]) -> Family {
    let map: HashMap<Vec<Obj>, usize> = cs.iter().map(|c| (c.at.clone(), c.morphism)).collect();
    let b = backend.clone();
    let label = name.to_string();
    Family::new(name, arity, move |x| {
        let id = map.get(x).ok_or_else(|| Fault::Undefined(format!("{label} at {x:?}")))?;
        table_morphism(&b, *id)
    })
}

fn matrix_of(rows: &[Vec<u32>], backend: &Backend, what: &str) -> Result<Matrix> {
    let field = backend.field().ok_or_else(|| schema(format!("{what} needs a matrix-field backend")))?;
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    if rows.is_empty() || rows.iter().any(|r| r.len() != cols) {
        return Err(schema(format!("{what} must be a non-empty rectangular matrix")));
    }
    let mut m = Matrix::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            m.set(i, j, field.reduce(u64::from(v)));
        }
    }
    Ok(m)
}

fn expect_shape(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if (m.rows(), m.cols()) != (rows, cols) {
        return Err(schema(format!("{what} must be {rows}×{cols}, found {}×{}", m.rows(), m.cols())));
    }
    Ok(())
}

fn hopf_of(h: &HopfSpec, backend: &Backend) -> Result<HopfAlgebra> {
    let n = h.carrier;
    let mul = matrix_of(&h.mul, backend, "mul")?;
    let unit = matrix_of(&h.unit, backend, "unit")?;
    let comul = matrix_of(&h.comul, backend, "comul")?;
    let counit = matrix_of(&h.counit, backend, "counit")?;
    let antipode = matrix_of(&h.antipode, backend, "antipode")?;
    expect_shape(&mul, n, n * n, "mul")?;
    expect_shape(&unit, n, 1, "unit")?;
    expect_shape(&comul, n * n, n, "comul")?;
    expect_shape(&counit, 1, n, "counit")?;
    expect_shape(&antipode, n, n, "antipode")?;
    Ok(HopfAlgebra {
        bialgebra: Bialgebra {
            carrier: n,
            mul: Ok(MatrixCat::morphism(mul)),
            unit: Ok(MatrixCat::morphism(unit)),
            comul: Ok(MatrixCat::morphism(comul)),
            counit: Ok(MatrixCat::morphism(counit)),
        },
        antipode: Ok(MatrixCat::morphism(antipode)),
    })
}

fn build(original: InstanceFile, f: &InstanceFile, flags: Flags) -> Result<Instance> {
    let backend = make_backend(&f.backend)?;
    let scope = match &f.scope {
        Some(objs) => {
            if let Some(&bad) = objs.iter().find(|&&o| !backend.contains(o)) {
                return Err(schema(format!("scope object {bad} is not in the backend")));
            }
            Scope::new(objs.clone())
        }
        None => Scope::full(&backend),
    };

    let lindist = match &f.lindist {
        None => None,
        Some(LindistSpec::Thin { star, par }) => {
            check_table(&backend, &star.table, "⋆")?;
            check_table(&backend, &par.table, "⋄")?;
            Some(thin_lindist(backend.clone(), (star.unit, star.table.clone()), (par.unit, par.table.clone())))
        }
        Some(LindistSpec::Kronecker) => {
            if backend.field().is_none() {
                return Err(schema("kronecker lindist needs a matrix-field backend"));
            }
            Some(matrix_lindist(backend.clone()))
        }
        Some(LindistSpec::Table { star, par, dl, dr, sym }) => Some(LindistBundle {
            star: table_tensor(&backend, TensorTag::Star, star),
            par: table_tensor(&backend, TensorTag::Par, par),
            dl: table_family(&backend, "∂l", 3, dl),
            dr: table_family(&backend, "∂r", 3, dr),
            sym: sym.as_ref().map(|cs| Symmetry { tensor: TensorTag::Par, braid: table_family(&backend, "c", 2, cs) }),
            backend: backend.clone(),
        }),
    };

    let negation = match &f.negation {
        None => None,
        Some(spec) => {
            let bundle = lindist.as_ref().ok_or_else(|| schema("negation needs a lindist section"))?;
            Some(match spec {
                NegationSpec::Thin { s, sp } => {
                    check_map(&backend, s, "S")?;
                    check_map(&backend, sp, "S′")?;
                    thin_negation(bundle, s.clone(), sp.clone())
                }
                NegationSpec::Dual => {
                    if backend.field().is_none() {
                        return Err(schema("dual negation needs a matrix-field backend"));
                    }
                    matrix_negation()
                }
                NegationSpec::Table { s, sp, e, n, ep, np } => Negation {
                    s: table_functor(&backend, "S", Variance::Contravariant, s),
                    sp: table_functor(&backend, "S′", Variance::Contravariant, sp),
                    e: table_family(&backend, "e", 1, e),
                    n: table_family(&backend, "n", 1, n),
                    ep: table_family(&backend, "e′", 1, ep),
                    np: table_family(&backend, "n′", 1, np),
                },
            })
        }
    };

    let star = match &f.star {
        None => None,
        Some(StarSpec::Thin { tensor, s, sp }) => {
            if !backend.is_thin() {
                return Err(schema("thin star section needs a thin-quantale backend"));
            }
            check_table(&backend, &tensor.table, "⊗")?;
            check_map(&backend, s, "S")?;
            check_map(&backend, sp, "S′")?;
            Some(thin_star(backend.clone(), (tensor.unit, tensor.table.clone()), s.clone(), sp.clone()))
        }
        Some(StarSpec::Dual) => {
            if backend.field().is_none() {
                return Err(schema("dual star section needs a matrix-field backend"));
            }
            Some(matrix_star(backend.clone()))
        }
    };

    let hopf = match &f.hopf {
        Some(h) => Some(hopf_of(h, &backend)?),
        None => None,
    };
    let bialgebra = match &f.bialgebra {
        None => None,
        Some(BialgebraSpec::Thin { carrier }) => {
            let bundle = lindist.as_ref().ok_or_else(|| schema("bialgebra needs a lindist section"))?;
            Some(Bialgebra::thin(&backend, &bundle.par, *carrier)?)
        }
        Some(BialgebraSpec::Matrix { carrier, mul, unit, comul, counit }) => {
            let n = *carrier;
            let mats = [
                (matrix_of(mul, &backend, "mul")?, n, n * n, "mul"),
                (matrix_of(unit, &backend, "unit")?, n, 1, "unit"),
                (matrix_of(comul, &backend, "comul")?, n * n, n, "comul"),
                (matrix_of(counit, &backend, "counit")?, 1, n, "counit"),
            ];
            for (m, r, c, what) in &mats {
                expect_shape(m, *r, *c, what)?;
            }
            let [mul, unit, comul, counit] = mats.map(|(m, ..)| Ok(MatrixCat::morphism(m)));
            Some(Bialgebra { carrier: n, mul, unit, comul, counit })
        }
    };

    let star_tensor = lindist.as_ref().map(|l| &l.star).or(star.as_ref().map(|s| &s.tensor));
    let par_tensor = lindist.as_ref().map(|l| &l.par);
    let functors = negation.as_ref().map(|n| (&n.s, &n.sp)).or(star.as_ref().map(|s| (&s.s, &s.sp)));

    let mut hopf_lift = None;
    let comonad = match &f.comonad {
        None => None,
        Some(ComonadSpec::Identity) => {
            let mut cb = ComonadBundle::identity(backend.clone());
            if let Some(st) = star_tensor {
                let pr = par_tensor.unwrap_or(st);
                let with = ComonadBundle::identity_on(backend.clone(), st, pr);
                cb.phi = with.phi;
                cb.psi = par_tensor.and(with.psi);
            }
            Some(cb)
        }
        Some(ComonadSpec::Interior { g }) => {
            if !backend.is_thin() {
                return Err(schema("interior comonads need a thin-quantale backend"));
            }
            check_map(&backend, g, "g")?;
            Some(interior_comonad(backend.clone(), g.clone(), star_tensor, par_tensor))
        }
        Some(ComonadSpec::Bialgebra) => {
            let bi = bialgebra.as_ref().ok_or_else(|| schema("bialgebra comonad needs a bialgebra section"))?;
            let bundle = lindist.as_ref().ok_or_else(|| schema("bialgebra comonad needs a lindist section"))?;
            Some(bialgebra_comonad(bi, bundle)?)
        }
        Some(ComonadSpec::Hopf) => {
            let h = hopf.as_ref().ok_or_else(|| schema("Hopf comonad needs a hopf section"))?;
            let sa = star.as_ref().ok_or_else(|| schema("Hopf comonad needs a star section"))?;
            let (mut cb, lift) = hopf_structure(h, sa)?;
            if flags.drop_swap {
                cb.phi = Some(untwisted_phi(h, &backend)?);
            }
            if lindist.is_some() {
                cb = compact_par(&cb);
            }
            hopf_lift = Some(lift);
            Some(cb)
        }
    };

    let lift = match (&f.negation_lift, &f.comonad, &comonad) {
        (None, ..) => None,
        (Some(LiftSpec::Canonical), Some(kind), Some(cb)) => {
            let (s, sp) = functors.ok_or_else(|| schema("a negation lift needs negations"))?;
            Some(match kind {
                ComonadSpec::Identity => NegationLift::identity(backend.clone(), s, sp),
                ComonadSpec::Interior { .. } => interior_lift(cb, s, sp),
                ComonadSpec::Hopf => hopf_lift.take().expect("built with the Hopf comonad"),
                ComonadSpec::Bialgebra => {
                    return Err(Error::MissingStructure("no canonical negation lift for a bialgebra comonad".into()))
                }
            })
        }
        (Some(_), ..) => return Err(schema("negation_lift needs a comonad section")),
    };
    let lift = match (lift, flags.zero_nu) {
        (Some(l), true) => Some(zero_nu(&l)),
        (l, _) => l,
    };

    Ok(Instance { file: original, backend, scope, lindist, negation, star, comonad, lift, bialgebra, hopf })
}

/// `φ = μ⊗1⊗1` with the middle swap left out.
fn untwisted_phi(h: &HopfAlgebra, backend: &Backend) -> Result<MonoidalStructure> {
    let field = backend.field().ok_or_else(|| schema("Hopf comonad needs a matrix backend"))?;
    let mu = h.bialgebra.mul.clone()?.matrix().cloned().expect("matrix payload");
    let eta = h.bialgebra.unit.clone()?;
    let n = h.bialgebra.carrier;
    Ok(MonoidalStructure {
        map: Family::new("φ", 2, move |x| {
            crate::kernel::check_size(n * x[0] * x[1], n * n * x[0] * x[1])?;
            Ok(MatrixCat::morphism(mu.kron(&Matrix::identity(x[0] * x[1]), &field)))
        }),
        unit: Family::new("φ0", 0, move |_| Ok(eta.clone())),
    })
}

/// `ν := 0` with the original types.
fn zero_nu(l: &NegationLift) -> NegationLift {
    let nu = l.nu.mapped(|_, m| match m.matrix() {
        Some(x) => Ok(MatrixCat::morphism(Matrix::zeros(x.rows(), x.cols()))),
        None => Err(Fault::IllTyped("ν is not a matrix".into())),
    });
    NegationLift { nu, nup: l.nup.clone() }
}
