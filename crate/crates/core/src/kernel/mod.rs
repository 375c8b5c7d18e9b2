//! Finite, exactly decidable category backends and the structure vocabulary
//! (functors, tensors, families of morphisms) that every other module is
//! written against.
//!
//! Three backends are supported:
//!
//! * [`ThinPoset`]: a preorder viewed as a thin category. Morphisms carry no
//!   data; a morphism `a -> b` exists iff `a <= b`.
//! * [`MatrixCat`]: objects are dimensions, morphisms are matrices over F_p.
//! * [`TableCat`]: an explicitly tabulated finite category.
//!
//! Structure maps are closures returning `Result<Morphism, Fault>`. A
//! [`Fault::Missing`] means a required order witness does not exist (only
//! possible on thin backends); [`Fault::Undefined`] means the value lies
//! outside a partial table and the enclosing check skips the tuple.

mod laws;
mod matrix_cat;
mod table;
mod thin;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::PrimeField;
use crate::matrix::Matrix;

pub use laws::{check_category_laws, check_monoidal_laws, check_symmetry_laws};
pub use matrix_cat::{check_size, MatrixCat, MAX_ENTRIES};
pub use table::{TableCat, TableError};
pub use thin::{ThinError, ThinPoset};

/// Index of an object within its backend. For the matrix backend this is the
/// dimension itself.
pub type Obj = usize;

/// Default cap on the number of candidates any exhaustive enumeration visits.
pub const DEFAULT_ENUM_BOUND: u128 = 1_000_000;

/// Default cap on the size of a single hom-set enumerated for bijection checks.
pub const DEFAULT_HOM_BOUND: u128 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    /// The unique witness of `dom <= cod`.
    Thin,
    Matrix(Matrix),
    /// Global morphism id of a table backend.
    Table(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub dom: Obj,
    pub cod: Obj,
    pub payload: Payload,
}

impl Morphism {
    pub fn matrix(&self) -> Option<&Matrix> {
        match &self.payload {
            Payload::Matrix(m) => Some(m),
            _ => None,
        }
    }
}

/// Why a diagram could not be evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Fault {
    #[error("witness missing for {label}: {dom} -> {cod}")]
    Missing { label: String, dom: String, cod: String },
    #[error("cannot compose {g} after {f}")]
    Composition { g: String, f: String },
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("ill-typed: {0}")]
    IllTyped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("hom-set {dom} -> {cod} has {size} elements, above the enumeration bound {bound}")]
    ScopeTooLarge { dom: String, cod: String, size: u128, bound: u128 },
    #[error("object {0} is not in the backend")]
    UnknownObject(Obj),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    ThinQuantale,
    MatrixField,
    FiniteTable,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::ThinQuantale => "thin-quantale",
            BackendKind::MatrixField => "matrix-field",
            BackendKind::FiniteTable => "finite-table",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Backend {
    Thin(ThinPoset),
    Matrix(MatrixCat),
    Table(TableCat),
}

impl Backend {
    pub fn kind(&self) -> BackendKind {
        match self {
            Backend::Thin(_) => BackendKind::ThinQuantale,
            Backend::Matrix(_) => BackendKind::MatrixField,
            Backend::Table(_) => BackendKind::FiniteTable,
        }
    }

    pub fn is_thin(&self) -> bool {
        matches!(self, Backend::Thin(_))
    }

    pub fn field(&self) -> Option<PrimeField> {
        match self {
            Backend::Matrix(m) => Some(m.field()),
            _ => None,
        }
    }

    pub fn label(&self, a: Obj) -> String {
        match self {
            Backend::Thin(t) => t.label(a),
            Backend::Matrix(_) => a.to_string(),
            Backend::Table(t) => t.label(a),
        }
    }

    pub fn contains(&self, a: Obj) -> bool {
        match self {
            Backend::Thin(t) => a < t.len(),
            Backend::Matrix(_) => true,
            Backend::Table(t) => a < t.object_count(),
        }
    }

    /// All objects, for backends where that is finite.
    pub fn objects(&self) -> Option<Vec<Obj>> {
        match self {
            Backend::Thin(t) => Some((0..t.len()).collect()),
            Backend::Matrix(_) => None,
            Backend::Table(t) => Some((0..t.object_count()).collect()),
        }
    }

    pub fn identity(&self, a: Obj) -> Result<Morphism, Fault> {
        match self {
            Backend::Thin(_) => Ok(Morphism { dom: a, cod: a, payload: Payload::Thin }),
            Backend::Matrix(_) => {
                matrix_cat::check_size(a, a)?;
                Ok(MatrixCat::morphism(Matrix::identity(a)))
            }
            Backend::Table(t) => t.identity(a),
        }
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism, Fault> {
        if f.cod != g.dom {
            return Err(Fault::Composition { g: self.describe(g), f: self.describe(f) });
        }
        match (self, &g.payload, &f.payload) {
            (Backend::Thin(_), Payload::Thin, Payload::Thin) => {
                Ok(Morphism { dom: f.dom, cod: g.cod, payload: Payload::Thin })
            }
            (Backend::Matrix(m), Payload::Matrix(gm), Payload::Matrix(fm)) => {
                Ok(MatrixCat::morphism(gm.mul(fm, &m.field())))
            }
            (Backend::Table(t), Payload::Table(gi), Payload::Table(fi)) => t.compose(*gi, *fi),
            _ => Err(Fault::IllTyped(format!("payload kinds do not match the {} backend", self.kind()))),
        }
    }

    /// Composes in diagrammatic order: `seq(&[f, g, h]) = h ∘ g ∘ f`.
    pub fn seq(&self, arrows: &[Morphism]) -> Result<Morphism, Fault> {
        let mut it = arrows.iter();
        let first = it.next().ok_or_else(|| Fault::IllTyped("empty composite".into()))?;
        it.try_fold(first.clone(), |acc, next| self.compose(next, &acc))
    }

    /// The order witness `dom -> cod`; only meaningful on thin backends.
    pub fn witness(&self, dom: Obj, cod: Obj, label: &str) -> Result<Morphism, Fault> {
        match self {
            Backend::Thin(t) => {
                if t.leq(dom, cod) {
                    Ok(Morphism { dom, cod, payload: Payload::Thin })
                } else {
                    Err(Fault::Missing { label: label.to_string(), dom: t.label(dom), cod: t.label(cod) })
                }
            }
            _ => Err(Fault::IllTyped(format!("order witness requested on {} backend", self.kind()))),
        }
    }

    /// Canonical isomorphism between two objects that the strict encoding
    /// identifies: identity when equal, otherwise the order witness on thin
    /// backends.
    pub fn canonical_iso(&self, dom: Obj, cod: Obj, label: &str) -> Result<Morphism, Fault> {
        match self {
            Backend::Thin(_) => {
                self.witness(cod, dom, label)?;
                self.witness(dom, cod, label)
            }
            _ if dom == cod => self.identity(dom),
            _ => Err(Fault::IllTyped(format!(
                "{label}: no canonical identification {} -> {}",
                self.label(dom),
                self.label(cod)
            ))),
        }
    }

    /// Size of `hom(a, b)`, saturating.
    pub fn hom_size(&self, a: Obj, b: Obj) -> u128 {
        match self {
            Backend::Thin(t) => u128::from(t.leq(a, b)),
            Backend::Matrix(m) => Matrix::count(b, a, &m.field()),
            Backend::Table(t) => t.hom_ids(a, b).len() as u128,
        }
    }

    /// Every morphism `a -> b` in deterministic order, refusing hom-sets larger
    /// than `bound`.
    pub fn hom(&self, a: Obj, b: Obj, bound: u128) -> Result<Vec<Morphism>, KernelError> {
        let size = self.hom_size(a, b);
        if size > bound {
            return Err(KernelError::ScopeTooLarge { dom: self.label(a), cod: self.label(b), size, bound });
        }
        Ok(match self {
            Backend::Thin(_) => self.witness(a, b, "hom").into_iter().collect(),
            Backend::Matrix(m) => Matrix::enumerate(b, a, m.field()).map(MatrixCat::morphism).collect(),
            Backend::Table(t) => t.hom_ids(a, b).iter().map(|&id| t.morphism(id)).collect(),
        })
    }

    /// A generating set for `hom(a, b)` under the operations every structure
    /// in this crate is built from: the witness on thin backends, the
    /// elementary matrices on the matrix backend (all structure there is
    /// linear), and the full hom-set on table backends.
    pub fn generators(&self, a: Obj, b: Obj) -> Vec<Morphism> {
        match self {
            Backend::Thin(_) => self.witness(a, b, "hom").into_iter().collect(),
            Backend::Matrix(_) => {
                let mut out = Vec::with_capacity(a * b);
                for r in 0..b {
                    for c in 0..a {
                        out.push(MatrixCat::morphism(Matrix::unit(b, a, r, c)));
                    }
                }
                out
            }
            Backend::Table(t) => t.hom_ids(a, b).iter().map(|&id| t.morphism(id)).collect(),
        }
    }

    /// Two-sided inverse of `m`, if it has one.
    pub fn inverse(&self, m: &Morphism) -> Result<Morphism, Fault> {
        let none = || Fault::Missing { label: "inverse".into(), dom: self.label(m.cod), cod: self.label(m.dom) };
        match (self, &m.payload) {
            (Backend::Thin(_), _) => self.witness(m.cod, m.dom, "inverse"),
            (Backend::Matrix(c), Payload::Matrix(a)) => a.inverse(&c.field()).map(MatrixCat::morphism).ok_or_else(none),
            (Backend::Table(t), _) => {
                let (ida, idb) = (self.identity(m.dom)?, self.identity(m.cod)?);
                for &g in t.hom_ids(m.cod, m.dom) {
                    let g = t.morphism(g);
                    if self.compose(&g, m)? == ida && self.compose(m, &g)? == idb {
                        return Ok(g);
                    }
                }
                Err(none())
            }
            _ => Err(Fault::IllTyped("payload does not match backend".into())),
        }
    }

    /// Zero morphism; only the matrix backend has one.
    pub fn zero(&self, a: Obj, b: Obj) -> Result<Morphism, Fault> {
        match self {
            Backend::Matrix(_) => Ok(MatrixCat::morphism(Matrix::zeros(b, a))),
            _ => Err(Fault::IllTyped(format!("no zero morphisms on {} backend", self.kind()))),
        }
    }

    pub fn describe(&self, m: &Morphism) -> String {
        let head = format!("{} -> {}", self.label(m.dom), self.label(m.cod));
        match &m.payload {
            Payload::Thin => head,
            Payload::Matrix(mat) if mat.rows() * mat.cols() <= 16 => {
                format!("{head} {:?}", mat.to_rows())
            }
            Payload::Matrix(mat) => format!("{head} ({}x{} matrix)", mat.rows(), mat.cols()),
            Payload::Table(id) => format!("{head} #{id}"),
        }
    }

    /// Human-readable reason two parallel morphisms differ.
    pub fn difference(&self, lhs: &Morphism, rhs: &Morphism) -> String {
        match (&lhs.payload, &rhs.payload) {
            (Payload::Matrix(a), Payload::Matrix(b)) => match a.first_difference(b) {
                Some((r, c, x, y)) => format!("entry ({r},{c}): {x} != {y}"),
                None => "shapes differ".into(),
            },
            (Payload::Table(a), Payload::Table(b)) => format!("#{a} != #{b}"),
            _ => "payloads differ".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variance {
    Covariant,
    Contravariant,
}

type ObjMap = Arc<dyn Fn(Obj) -> Result<Obj, Fault> + Send + Sync>;
type MorMap = Arc<dyn Fn(&Morphism) -> Result<Morphism, Fault> + Send + Sync>;
type ObjMap2 = Arc<dyn Fn(Obj, Obj) -> Result<Obj, Fault> + Send + Sync>;
type MorMap2 = Arc<dyn Fn(&Morphism, &Morphism) -> Result<Morphism, Fault> + Send + Sync>;
type Component = Arc<dyn Fn(&[Obj]) -> Result<Morphism, Fault> + Send + Sync>;

/// Object and morphism parts of a (possibly contravariant) endofunctor.
#[derive(Clone)]
pub struct Functor {
    pub name: String,
    pub variance: Variance,
    obj: ObjMap,
    mor: MorMap,
}

impl Functor {
    pub fn new<O, M>(name: impl Into<String>, variance: Variance, obj: O, mor: M) -> Self
    where
        O: Fn(Obj) -> Result<Obj, Fault> + Send + Sync + 'static,
        M: Fn(&Morphism) -> Result<Morphism, Fault> + Send + Sync + 'static,
    {
        Self { name: name.into(), variance, obj: Arc::new(obj), mor: Arc::new(mor) }
    }

    pub fn identity() -> Self {
        Self::new("Id", Variance::Covariant, Ok, |f| Ok(f.clone()))
    }

    /// A functor on a thin backend is determined by its object map.
    pub fn thin(backend: Arc<Backend>, name: &str, variance: Variance, table: Vec<Obj>) -> Self {
        let table = Arc::new(table);
        let label = name.to_string();
        let t2 = table.clone();
        Self::new(
            name,
            variance,
            move |a| table.get(a).copied().ok_or_else(|| Fault::Undefined(format!("object {a}"))),
            move |f| {
                let (d, c) = (lookup(&t2, f.dom)?, lookup(&t2, f.cod)?);
                match variance {
                    Variance::Covariant => backend.witness(d, c, &label),
                    Variance::Contravariant => backend.witness(c, d, &label),
                }
            },
        )
    }

    pub fn is_contravariant(&self) -> bool {
        self.variance == Variance::Contravariant
    }

    pub fn obj(&self, a: Obj) -> Result<Obj, Fault> {
        (self.obj)(a)
    }

    pub fn mor(&self, f: &Morphism) -> Result<Morphism, Fault> {
        (self.mor)(f)
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &Functor) -> Functor {
        let variance = if self.variance == other.variance { Variance::Covariant } else { Variance::Contravariant };
        let (a, b) = (self.clone(), other.clone());
        let (c, d) = (self.clone(), other.clone());
        Functor::new(
            format!("{}{}", other.name, self.name),
            variance,
            move |x| b.obj(a.obj(x)?),
            move |f| d.mor(&c.mor(f)?),
        )
    }
}

fn lookup(table: &[Obj], a: Obj) -> Result<Obj, Fault> {
    table.get(a).copied().ok_or_else(|| Fault::Undefined(format!("object {a}")))
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functor").field("name", &self.name).field("variance", &self.variance).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TensorTag {
    Star,
    Par,
}

impl fmt::Display for TensorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TensorTag::Star => "⋆",
            TensorTag::Par => "⋄",
        })
    }
}

/// A strict monoidal product.
#[derive(Clone)]
pub struct Tensor {
    pub tag: TensorTag,
    pub unit: Obj,
    obj: ObjMap2,
    mor: MorMap2,
}

impl Tensor {
    pub fn new<O, M>(tag: TensorTag, unit: Obj, obj: O, mor: M) -> Self
    where
        O: Fn(Obj, Obj) -> Result<Obj, Fault> + Send + Sync + 'static,
        M: Fn(&Morphism, &Morphism) -> Result<Morphism, Fault> + Send + Sync + 'static,
    {
        Self { tag, unit, obj: Arc::new(obj), mor: Arc::new(mor) }
    }

    /// Tensor on a thin backend from its operation table.
    pub fn thin(backend: Arc<Backend>, tag: TensorTag, unit: Obj, table: Vec<Vec<Obj>>) -> Self {
        let table = Arc::new(table);
        let t2 = table.clone();
        let label = format!("{tag} on morphisms");
        Self::new(
            tag,
            unit,
            move |a, b| thin_entry(&table, a, b),
            move |f, g| {
                let d = thin_entry(&t2, f.dom, g.dom)?;
                let c = thin_entry(&t2, f.cod, g.cod)?;
                backend.witness(d, c, &label)
            },
        )
    }

    pub fn obj(&self, a: Obj, b: Obj) -> Result<Obj, Fault> {
        (self.obj)(a, b)
    }

    pub fn mor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, Fault> {
        (self.mor)(f, g)
    }

    /// Left-nested product of several objects; the unit for an empty list.
    pub fn objs(&self, xs: &[Obj]) -> Result<Obj, Fault> {
        xs.iter().try_fold(self.unit, |acc, &x| self.obj(acc, x))
    }

    /// Left-nested product of at least one morphism.
    pub fn mors(&self, fs: &[Morphism]) -> Result<Morphism, Fault> {
        let (first, rest) = fs.split_first().ok_or_else(|| Fault::IllTyped("empty tensor".into()))?;
        rest.iter().try_fold(first.clone(), |acc, f| self.mor(&acc, f))
    }

    pub fn with_unit(&self, unit: Obj) -> Tensor {
        Tensor { unit, ..self.clone() }
    }

    pub fn retagged(&self, tag: TensorTag) -> Tensor {
        Tensor { tag, ..self.clone() }
    }
}

fn thin_entry(table: &[Vec<Obj>], a: Obj, b: Obj) -> Result<Obj, Fault> {
    table.get(a).and_then(|row| row.get(b)).copied().ok_or_else(|| Fault::Undefined(format!("table entry ({a},{b})")))
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor").field("tag", &self.tag).field("unit", &self.unit).finish()
    }
}

/// An object-indexed family of morphisms (the components of a natural or
/// dinatural transformation).
#[derive(Clone)]
pub struct Family {
    pub name: String,
    pub arity: usize,
    comp: Component,
}

impl Family {
    pub fn new<F>(name: impl Into<String>, arity: usize, comp: F) -> Self
    where
        F: Fn(&[Obj]) -> Result<Morphism, Fault> + Send + Sync + 'static,
    {
        Self { name: name.into(), arity, comp: Arc::new(comp) }
    }

    /// A family on a thin backend: the witness between two object expressions.
    pub fn thin<D, C>(backend: Arc<Backend>, name: &str, arity: usize, dom: D, cod: C) -> Self
    where
        D: Fn(&[Obj]) -> Result<Obj, Fault> + Send + Sync + 'static,
        C: Fn(&[Obj]) -> Result<Obj, Fault> + Send + Sync + 'static,
    {
        let label = name.to_string();
        Self::new(name, arity, move |xs| backend.witness(dom(xs)?, cod(xs)?, &label))
    }

    pub fn at(&self, xs: &[Obj]) -> Result<Morphism, Fault> {
        if xs.len() != self.arity {
            return Err(Fault::IllTyped(format!("{} expects {} objects, got {}", self.name, self.arity, xs.len())));
        }
        (self.comp)(xs)
    }

    pub fn at1(&self, a: Obj) -> Result<Morphism, Fault> {
        self.at(&[a])
    }

    pub fn renamed(&self, name: impl Into<String>) -> Family {
        Family { name: name.into(), ..self.clone() }
    }

    /// Same family with one component replaced.
    pub fn overridden(&self, tuple: Vec<Obj>, value: Result<Morphism, Fault>) -> Family {
        let inner = self.comp.clone();
        Family::new(
            self.name.clone(),
            self.arity,
            move |xs| {
                if xs == tuple.as_slice() {
                    value.clone()
                } else {
                    inner(xs)
                }
            },
        )
    }

    /// Same family, computing each component at most once.
    pub fn memoized(&self) -> Family {
        let inner = self.comp.clone();
        let cache: Mutex<HashMap<Vec<Obj>, Result<Morphism, Fault>>> = Mutex::default();
        Family::new(self.name.clone(), self.arity, move |xs| {
            if let Some(hit) = cache.lock().expect("family cache").get(xs) {
                return hit.clone();
            }
            let value = inner(xs);
            cache.lock().expect("family cache").insert(xs.to_vec(), value.clone());
            value
        })
    }

    /// Same family with every component post-processed.
    pub fn mapped<F>(&self, f: F) -> Family
    where
        F: Fn(&[Obj], Morphism) -> Result<Morphism, Fault> + Send + Sync + 'static,
    {
        let inner = self.comp.clone();
        Family::new(self.name.clone(), self.arity, move |xs| f(xs, inner(xs)?))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family").field("name", &self.name).field("arity", &self.arity).finish()
    }
}

/// A symmetry (braiding) for one tensor.
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub tensor: TensorTag,
    pub braid: Family,
}

/// The finite part of a backend a check quantifies over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub objects: Vec<Obj>,
    /// Cap for exhaustive candidate enumeration (coalgebra search).
    pub enum_bound: u128,
    /// Cap for a single hom-set enumerated in bijection checks.
    pub hom_bound: u128,
}

impl Scope {
    pub fn new(objects: Vec<Obj>) -> Self {
        Self { objects, enum_bound: DEFAULT_ENUM_BOUND, hom_bound: DEFAULT_HOM_BOUND }
    }

    /// Every object of an enumerable backend, or the declared objects of a
    /// matrix backend.
    pub fn full(backend: &Backend) -> Self {
        match backend {
            Backend::Matrix(m) => Self::new(m.declared().to_vec()),
            other => Self::new(other.objects().unwrap_or_default()),
        }
    }

    pub fn with_enum_bound(mut self, bound: u128) -> Self {
        self.enum_bound = bound;
        self
    }

    pub fn describe(&self, backend: &Backend) -> String {
        let objs: Vec<_> = self.objects.iter().map(|&o| backend.label(o)).collect();
        format!("{} objects [{}]", backend.kind(), objs.join(", "))
    }

    pub fn pairs(&self) -> Vec<[Obj; 2]> {
        let o = &self.objects;
        o.iter().flat_map(|&a| o.iter().map(move |&b| [a, b])).collect()
    }

    pub fn triples(&self) -> Vec<[Obj; 3]> {
        let o = &self.objects;
        o.iter().flat_map(|&a| o.iter().flat_map(move |&b| o.iter().map(move |&c| [a, b, c]))).collect()
    }

    pub fn quads(&self) -> Vec<[Obj; 4]> {
        self.triples().into_iter().flat_map(|[a, b, c]| self.objects.iter().map(move |&d| [a, b, c, d])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l3() -> Backend {
        Backend::Thin(ThinPoset::chain(&["0", "1/2", "1"]))
    }

    #[test]
    fn thin_composition_is_the_unique_witness() {
        let b = l3();
        let f = b.witness(0, 1, "f").unwrap();
        let g = b.witness(1, 2, "g").unwrap();
        assert_eq!(b.compose(&g, &f).unwrap(), b.witness(0, 2, "h").unwrap());
    }

    #[test]
    fn f2_composition_uses_field_arithmetic() {
        let b = Backend::Matrix(MatrixCat::new(PrimeField::new(2).unwrap(), vec![1, 2]));
        let f2 = PrimeField::new(2).unwrap();
        let g = MatrixCat::morphism(Matrix::from_rows(&[vec![1, 1]], &f2));
        let f = MatrixCat::morphism(Matrix::from_rows(&[vec![1], vec![1]], &f2));
        let h = b.compose(&g, &f).unwrap();
        assert_eq!(h.matrix().unwrap(), &Matrix::zeros(1, 1));
    }

    #[test]
    fn identity_is_neutral() {
        let b = l3();
        let f = b.witness(0, 2, "f").unwrap();
        assert_eq!(b.compose(&b.identity(2).unwrap(), &f).unwrap(), f);
    }

    #[test]
    fn mismatched_composition_names_both_morphisms() {
        let b = l3();
        let f = b.witness(0, 1, "f").unwrap();
        let g = b.witness(2, 2, "g").unwrap();
        match b.compose(&g, &f) {
            Err(Fault::Composition { g, f }) => {
                assert_eq!(g, "1 -> 1");
                assert_eq!(f, "0 -> 1/2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_witness_is_reported() {
        let b = l3();
        assert!(matches!(b.witness(2, 0, "x"), Err(Fault::Missing { .. })));
    }

    #[test]
    fn hom_enumeration_respects_bound() {
        let b = Backend::Matrix(MatrixCat::new(PrimeField::new(2).unwrap(), vec![1, 2, 3]));
        assert_eq!(b.hom(2, 2, 100).unwrap().len(), 16);
        assert!(matches!(b.hom(3, 3, 100), Err(KernelError::ScopeTooLarge { size: 512, .. })));
    }

    #[test]
    fn family_override_replaces_one_component() {
        let b = Arc::new(l3());
        let id = {
            let b = b.clone();
            Family::new("id", 1, move |xs| b.identity(xs[0]))
        };
        let broken = id.overridden(vec![1], Err(Fault::Undefined("gone".into())));
        assert!(broken.at1(0).is_ok());
        assert!(broken.at1(1).is_err());
        assert!(id.at(&[0, 1]).is_err());
    }
}
