//! The regression corpus: generated and mutated instances with the verdicts
//! they are expected to produce.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::suite;

use super::generate::{gen_group_hopf, gen_lukasiewicz, gen_matrix_compact, mutate, with_identity, with_interior};
use super::instance::Instance;
use super::schema::{InstanceFile, MatrixTarget, Mutation, TableTarget};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    /// Overall verdict of `validate` with no axiom filter.
    pub validate: bool,
    /// Axiom ids that must appear among the failures.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub must_fail: Vec<String>,
    /// Verdict both comonad axiomatizations must reach; absent when the
    /// ambient structure itself is broken.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comonad: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub file: InstanceFile,
    pub expect: Expectation,
    pub mutated: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub file: String,
    pub mutated: bool,
    #[serde(flatten)]
    pub expect: Expectation,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

fn entry(name: &str, mut file: InstanceFile, validate: bool, must_fail: &[&str], comonad: Option<bool>) -> CorpusEntry {
    file.name = name.into();
    CorpusEntry {
        mutated: !file.mutations.is_empty(),
        file,
        expect: Expectation { validate, must_fail: must_fail.iter().map(|s| s.to_string()).collect(), comonad },
    }
}

pub fn corpus() -> Result<Vec<CorpusEntry>> {
    let l3 = gen_lukasiewicz(3)?;
    let l3_identity = with_identity(l3.clone());
    let l3_interior = with_interior(l3.clone(), vec![0, 0, 2]);
    let f22 = gen_group_hopf(2, 2)?;
    let f33 = gen_group_hopf(3, 3)?;
    let table = |target, index: Vec<usize>, value| Mutation::TableEntry { target, index, value };
    Ok(vec![
        entry("l3-identity", l3_identity.clone(), true, &[], Some(true)),
        entry("l3-interior", l3_interior.clone(), true, &[], Some(true)),
        entry("l4-interior", with_interior(gen_lukasiewicz(4)?, vec![0, 0, 0, 3]), true, &[], Some(true)),
        entry("f2-z2-hopf", f22.clone(), true, &[], Some(true)),
        entry("f3-z3-hopf", f33.clone(), true, &[], Some(true)),
        entry("f2-d2-identity", with_identity(gen_matrix_compact(2, 2)?), true, &[], Some(true)),
        entry("l3-star-flip", mutate(&l3_identity, table(TableTarget::Star, vec![0, 1], 2))?, false, &["mon-⋆"], None),
        entry(
            "l3-interior-g-flip",
            mutate(&l3_interior, table(TableTarget::G, vec![0], 1))?,
            false,
            &["comonad"],
            Some(false),
        ),
        entry(
            "f2-z2-antipode-flip",
            mutate(&f22, Mutation::MatrixEntry { target: MatrixTarget::Antipode, row: 0, col: 1, value: 1 })?,
            false,
            &["hopf", "SC-3"],
            Some(false),
        ),
        entry(
            "f3-z3-identity-antipode",
            mutate(&f33, Mutation::IdentityAntipode)?,
            false,
            &["hopf", "Le"],
            Some(false),
        ),
        entry("f3-z3-drop-swap", mutate(&f33, Mutation::DropSwapInPhi)?, false, &["moncom-⋆"], Some(false)),
        entry("f2-z2-drop-swap", mutate(&f22, Mutation::DropSwapInPhi)?, false, &["moncom-⋆"], Some(false)),
        entry("f2-z2-zero-nu", mutate(&f22, Mutation::ZeroNu)?, false, &["nu-1"], Some(false)),
    ])
}

pub fn manifest(entries: &[CorpusEntry]) -> Manifest {
    Manifest {
        entries: entries
            .iter()
            .map(|e| ManifestEntry {
                file: format!("{}.json", e.file.name),
                mutated: e.mutated,
                expect: e.expect.clone(),
            })
            .collect(),
    }
}

/// Writes every corpus instance and `manifest.json` into `dir`.
pub fn seed_corpus(dir: &Path) -> Result<Manifest> {
    let io = |e: std::io::Error| Error::InvalidParameter(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let entries = corpus()?;
    for e in &entries {
        std::fs::write(dir.join(format!("{}.json", e.file.name)), e.file.to_json()).map_err(io)?;
    }
    let m = manifest(&entries);
    let mut text = serde_json::to_string_pretty(&m).expect("manifest serializes");
    text.push('\n');
    std::fs::write(dir.join("manifest.json"), text).map_err(io)?;
    Ok(m)
}

pub fn load_manifest(dir: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(dir.join("manifest.json"))
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", dir.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))
}

/// What running an instance produced, against what was expected.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: String,
    pub validate: CheckReport,
    /// Overall verdicts of the two comonad axiomatizations, when they ran.
    pub comonad: Option<(bool, bool)>,
    pub problems: Vec<String>,
}

impl Outcome {
    pub fn as_expected(&self) -> bool {
        self.problems.is_empty()
    }
}

fn side_passes(notes: &[String], side: &str) -> Option<bool> {
    notes.iter().find_map(|n| n.strip_prefix(side)).map(|rest| rest.starts_with(": pass"))
}

pub fn check_entry(file: &InstanceFile, expect: &Expectation) -> Result<Outcome> {
    let inst = Instance::from_file(file)?;
    let validate = suite::validate(&inst, &[])?;
    let mut problems = Vec::new();
    if validate.passed() != expect.validate {
        problems.push(format!("validate {} but expected {}", validate.passed(), expect.validate));
    }
    let failing = validate.failing_ids();
    for id in &expect.must_fail {
        if !failing.contains(id) {
            problems.push(format!("{id} was expected to fail"));
        }
    }
    let comonad = match suite::coincide(&inst) {
        Ok(r) => {
            let l = side_passes(&r.notes, "lifting axioms");
            let s = side_passes(&r.notes, "star-autonomous comonad");
            l.zip(s)
        }
        Err(_) => None,
    };
    match (expect.comonad, comonad) {
        (Some(v), Some((l, s))) if l != v || s != v => {
            problems.push(format!("comonad verdicts ({l}, {s}) but expected {v}"))
        }
        (Some(_), None) => problems.push("comonad axiomatizations did not run".into()),
        _ => {}
    }
    Ok(Outcome { name: file.name.clone(), validate, comonad, problems })
}

/// Canonical text of every report the instance supports, errors included,
/// keyed by command.
pub fn canonical_reports(file: &InstanceFile) -> Vec<(String, String)> {
    let inst = match Instance::from_file(file) {
        Ok(i) => i,
        Err(e) => return vec![("build".into(), format!("error: {e}\n"))],
    };
    let render = |r: Result<CheckReport>| match r {
        Ok(r) => r.to_canonical_json(),
        Err(e) => format!("error: {e}\n"),
    };
    vec![
        ("validate".into(), render(suite::validate(&inst, &[]))),
        ("coincide".into(), render(suite::coincide(&inst))),
        ("equivalence".into(), render(suite::equivalence(&inst))),
        ("compact".into(), render(suite::compact(&inst))),
    ]
}
