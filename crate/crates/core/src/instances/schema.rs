//! The JSON instance format. Every section is tagged by `kind` and rejects
//! unknown fields.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kernel::Obj;
use crate::report::SCHEMA_VERSION;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub name: String,
    pub backend: BackendSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope: Option<Vec<Obj>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lindist: Option<LindistSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negation: Option<NegationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<StarSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comonad: Option<ComonadSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negation_lift: Option<LiftSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bialgebra: Option<BialgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mutations: Vec<Mutation>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BackendSpec {
    /// A poset; `leq` lists the non-reflexive pairs `a ≤ b`.
    ThinQuantale {
        carrier: Vec<String>,
        leq: Vec<[Obj; 2]>,
    },
    MatrixField {
        p: u32,
        objects: Vec<Obj>,
    },
    /// Morphisms are `[dom, cod]`; `compose` entries are `[g, f, g∘f]`.
    FiniteTable {
        objects: Vec<String>,
        morphisms: Vec<[Obj; 2]>,
        identities: Vec<usize>,
        compose: Vec<[usize; 3]>,
    },
}

/// Operation table of a thin tensor with its unit.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ThinTable {
    pub unit: Obj,
    pub table: Vec<Vec<Obj>>,
}

/// A partial tensor on a finite-table backend: `[a, b, a⊗b]` on objects and
/// `[f, g, f⊗g]` on morphism ids.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TensorTable {
    pub unit: Obj,
    pub objects: Vec<[usize; 3]>,
    pub morphisms: Vec<[usize; 3]>,
}

/// `[x, Fx]` on objects and on morphism ids.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FunctorTable {
    pub objects: Vec<[usize; 2]>,
    pub morphisms: Vec<[usize; 2]>,
}

/// Component at an object tuple, as a morphism id.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub at: Vec<Obj>,
    pub morphism: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LindistSpec {
    /// Linear distributions and the symmetry of `⋄` are order witnesses.
    Thin { star: ThinTable, par: ThinTable },
    /// `⋆ = ⋄ = ⊗`, identity distributions, swap symmetry.
    Kronecker,
    Table {
        star: TensorTable,
        par: TensorTable,
        dl: Vec<Component>,
        dr: Vec<Component>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sym: Option<Vec<Component>>,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum NegationSpec {
    /// Object tables of `S`, `S′`; everything else is a witness.
    Thin { s: Vec<Obj>, sp: Vec<Obj> },
    /// Transpose and the standard pairings.
    Dual,
    Table {
        s: FunctorTable,
        sp: FunctorTable,
        e: Vec<Component>,
        n: Vec<Component>,
        ep: Vec<Component>,
        np: Vec<Component>,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StarSpec {
    Thin { tensor: ThinTable, s: Vec<Obj>, sp: Vec<Obj> },
    Dual,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ComonadSpec {
    /// `G = Id`; structure maps are identities.
    Identity,
    /// A deflationary idempotent monotone map on a thin backend. `δ`, `ε`, and
    /// the structure maps for both tensors are witnesses.
    Interior { g: Vec<Obj> },
    /// `B⋄−` from the `bialgebra` section.
    Bialgebra,
    /// `H⊗−` from the `hopf` section.
    Hopf,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LiftSpec {
    /// The lift that goes with the comonad kind: identities, order witnesses,
    /// or the antipode-twisted dual coaction.
    Canonical,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BialgebraSpec {
    /// Structure maps are order witnesses on the carrier.
    Thin { carrier: Obj },
    /// Structure matrices over the backend's field, as rows.
    Matrix { carrier: usize, mul: Vec<Vec<u32>>, unit: Vec<Vec<u32>>, comul: Vec<Vec<u32>>, counit: Vec<Vec<u32>> },
}

/// Hopf algebra with respect to the star-autonomous tensor.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HopfSpec {
    pub carrier: usize,
    pub mul: Vec<Vec<u32>>,
    pub unit: Vec<Vec<u32>>,
    pub comul: Vec<Vec<u32>>,
    pub counit: Vec<Vec<u32>>,
    pub antipode: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum TableTarget {
    Star,
    Par,
    S,
    Sp,
    G,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixTarget {
    Mul,
    Unit,
    Comul,
    Counit,
    Antipode,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Mutation {
    /// Overwrite one entry of a thin table (`index` has length 2 for tensors,
    /// 1 for functors).
    TableEntry { target: TableTarget, index: Vec<usize>, value: Obj },
    /// Overwrite one entry of a bialgebra or Hopf structure matrix.
    MatrixEntry { target: MatrixTarget, row: usize, col: usize, value: u32 },
    /// `φ := (μ⊗1⊗1)` without the middle swap.
    DropSwapInPhi,
    /// `ν := 0`.
    ZeroNu,
    /// `s := 1`.
    IdentityAntipode,
}

impl InstanceFile {
    pub fn new(name: impl Into<String>, backend: BackendSpec) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            name: name.into(),
            backend,
            scope: None,
            lindist: None,
            negation: None,
            star: None,
            comonad: None,
            negation_lift: None,
            bialgebra: None,
            hopf: None,
            mutations: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    /// sha256 of the compact serialization.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("instance serializes");
        let hash = Sha256::digest(&bytes);
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}
