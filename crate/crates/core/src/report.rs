//! Machine-readable verdicts and the generic diagram-checking loop.
//!
//! Every check in the crate funnels through [`run_check`]: it evaluates a
//! closure over an ordered list of object tuples (in parallel), classifies
//! each outcome, and assembles an [`AxiomResult`] in input order, so reports
//! are byte-identical across runs regardless of scheduling.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::kernel::{Backend, Fault, Morphism, Obj};

pub const SCHEMA_VERSION: u32 = 1;

/// Documented axiom identifiers and what each one asserts.
pub const CATALOGUE: &[(&str, &str)] = &[
    ("cat", "composition is associative and unital"),
    ("mon-⋆", "⋆ is a strict monoidal structure: associative and unital on objects, functorial"),
    ("mon-⋄", "⋄ is a strict monoidal structure: associative and unital on objects, functorial"),
    ("sym", "braiding is natural, involutive and satisfies both strict hexagons"),
    ("lindist-nat", "linear distributions ∂l, ∂r are natural in each variable"),
    ("coh-subset", "checked coherence subset: unit collapses, ⋆/⋄ associativity squares, ∂l/∂r interchange"),
    ("neg-fun", "negations S, S′ are contravariant functors"),
    ("neg-dinat", "evaluations e, e′ and coevaluations n, n′ are dinatural"),
    ("tri-1", "(1⋄e)∘∂r∘(n⋆1) = 1_A"),
    ("tri-2", "(e⋄1)∘∂l∘(1⋆n) = 1_SA"),
    ("tri-3", "(e′⋄1)∘∂l∘(1⋆n′) = 1_A"),
    ("tri-4", "(1⋄e′)∘∂r∘(n′⋆1) = 1_S′A"),
    ("star-equiv", "A ≅ S′SA and A ≅ SS′A: witnesses are mutually inverse and natural"),
    ("star-iso", "hom(A⊗B, SC) ≅ hom(A, S(B⊗C)) induced by e_{B,C} is a natural bijection"),
    ("bialg", "bialgebra laws: (co)associativity, (co)units, compatibility"),
    ("hopf", "antipode laws μ∘(s⊗1)∘d = η∘cu = μ∘(1⊗s)∘d"),
    ("comonad", "G functorial, δ and ε natural, coassociativity and counit laws"),
    ("moncom-⋆", "φ, φ0 make G monoidal for ⋆ and δ, ε are monoidal transformations"),
    ("moncom-⋄", "ψ, ψ0 make G monoidal for ⋄ and δ, ε are monoidal transformations"),
    ("L1", "∂l lifts: G∂l∘φ∘(1⋆ψ) = ψ∘(φ⋄1)∘∂l"),
    ("L2", "∂r lifts: G∂r∘φ∘(ψ⋆1) = ψ∘(1⋄φ)∘∂r"),
    ("nu-1", "ε_{SG}∘ν = Sε (and primed)"),
    ("nu-2", "δ_{SG}∘ν = G²Sδ∘Gν_G∘ν (and primed); ν natural"),
    ("Le", "ψ0∘e∘(1⋆ε) = Ge_G∘φ∘(ν⋆δ)"),
    ("Ln", "G(1⋄Sε)∘Gn∘φ0 = G(1⋄Sδ)∘ψ∘(1⋄ν_G)∘n_G"),
    ("Le′", "ψ0∘e′∘(ε⋆1) = Ge′_G∘φ∘(δ⋆ν′)"),
    ("Ln′", "G(S′ε⋄1)∘Gn′∘φ0 = G(S′δ⋄1)∘ψ∘(ν′_G⋄1)∘n′_G"),
    ("coalg-e", "e is a coalgebra morphism for every enumerated coalgebra"),
    ("coalg-n", "n is a coalgebra morphism for every enumerated coalgebra"),
    ("coalg-e′", "e′ is a coalgebra morphism for every enumerated coalgebra"),
    ("coalg-n′", "n′ is a coalgebra morphism for every enumerated coalgebra"),
    ("SC-1", "SS′G ≅ G ≅ GSS′ agrees with GSν′∘ν"),
    ("SC-2", "S′SG ≅ G ≅ GS′S agrees with GS′ν∘ν′"),
    ("SC-3", "ν∘e_{A,B}∘(1⊗ε) = Ge_{GA,GB}∘G(Sφ⊗1)∘φ∘(ν⊗δ)"),
    ("SC-4", "ν′∘e′_{B,A}∘(ε⊗1) = Ge′_{GB,GA}∘G(1⊗S′φ)∘φ∘(δ⊗ν′)"),
    ("BV-23", "Hopf comonad axiom matched with Le in the compact case"),
    ("BV-22", "Hopf comonad axiom matched with Ln in the compact case"),
    ("BV-21", "Hopf comonad axiom matched with Le′ in the compact case"),
    ("BV-20", "Hopf comonad axiom matched with Ln′ in the compact case"),
    ("roundtrip", "translated structure agrees with the original through the recorded isomorphisms"),
    ("coincide", "both comonad axiomatizations reach the same verdict"),
    ("prop2-agree", "lifting axiom verdict equals the direct coalgebra-morphism verdict"),
    ("lift-coalg", "lifted structure maps are coalgebra morphisms"),
    ("search", "classification tiers of interior comonads"),
];

pub fn describe_axiom(id: &str) -> Option<&'static str> {
    CATALOGUE.iter().find(|(k, _)| *k == id).map(|(_, d)| *d)
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing in scope to check.
    Vacuous,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// A required arrow does not exist (thin backends).
    WitnessMissing,
    /// Both sides exist but are different morphisms.
    WitnessesDiffer,
    /// A composite could not be formed; indicates malformed structure.
    IllTyped,
    /// An object-level or set-level condition failed.
    Violated,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub tuple: Vec<String>,
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub id: String,
    pub diagram: String,
    pub verdict: Verdict,
    pub checked: usize,
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// A single set-level verdict (no per-tuple iteration).
    pub fn single(id: &str, diagram: &str, failure: Option<Counterexample>) -> Self {
        Self {
            id: id.into(),
            diagram: diagram.into(),
            verdict: if failure.is_some() { Verdict::Fail } else { Verdict::Pass },
            checked: 1,
            skipped: 0,
            counterexamples: failure.into_iter().collect(),
            elapsed: Duration::ZERO,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub axiom: String,
    pub label: String,
    pub hopf_axiom: String,
    pub verdict: Verdict,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub schema_version: u32,
    pub instance_digest: String,
    pub scope: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub axioms: Vec<AxiomResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub correspondence: Vec<Correspondence>,
    pub overall: bool,
}

impl CheckReport {
    pub fn new(scope: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            instance_digest: String::new(),
            scope: scope.into(),
            notes: Vec::new(),
            axioms: Vec::new(),
            correspondence: Vec::new(),
            overall: true,
        }
    }

    pub fn push(&mut self, r: AxiomResult) {
        self.overall &= r.passed();
        self.axioms.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = AxiomResult>) {
        for r in rs {
            self.push(r);
        }
    }

    /// Appends another report's axioms and notes.
    pub fn absorb(&mut self, other: CheckReport) {
        for n in other.notes {
            self.note(n);
        }
        self.extend(other.axioms);
        self.correspondence.extend(other.correspondence);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn passed(&self) -> bool {
        self.overall
    }

    /// Results for one axiom id.
    pub fn results(&self, id: &str) -> impl Iterator<Item = &AxiomResult> {
        let id = id.to_string();
        self.axioms.iter().filter(move |r| r.id == id)
    }

    /// Whether every diagram under `id` passed; `None` when `id` was not run.
    pub fn verdict_of(&self, id: &str) -> Option<bool> {
        let mut any = false;
        let mut ok = true;
        for r in self.results(id) {
            any = true;
            ok &= r.passed();
        }
        any.then_some(ok)
    }

    pub fn failing_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = Vec::new();
        for r in self.axioms.iter().filter(|r| !r.passed()) {
            if !ids.contains(&r.id) {
                ids.push(r.id.clone());
            }
        }
        ids
    }

    /// Canonical form: pretty JSON without timings.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn timings(&self) -> Vec<(String, String, Duration)> {
        self.axioms.iter().map(|r| (r.id.clone(), r.diagram.clone(), r.elapsed)).collect()
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scope: {}\n", self.scope));
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let w = self.axioms.iter().map(|r| r.id.chars().count()).max().unwrap_or(4).max(4);
        for r in &self.axioms {
            let v = match r.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Vacuous => "VAC ",
            };
            let pad = w - r.id.chars().count();
            out.push_str(&format!(
                "{v}  {}{}  {:<40} checked {:>6}  skipped {:>5}",
                r.id,
                " ".repeat(pad),
                r.diagram,
                r.checked,
                r.skipped
            ));
            if let Some(c) = r.counterexamples.first() {
                out.push_str(&format!("  e.g. ({}) {}", c.tuple.join(", "), c.detail));
            }
            out.push('\n');
        }
        if !self.correspondence.is_empty() {
            out.push_str("correspondence:\n");
            for c in &self.correspondence {
                out.push_str(&format!("  {} {} <-> {}  {:?}\n", c.label, c.axiom, c.hopf_axiom, c.verdict));
            }
        }
        out.push_str(&format!("overall: {}\n", if self.overall { "PASS" } else { "FAIL" }));
        out
    }
}

/// Result of evaluating one tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip,
    Fail(FailureKind, String),
}

impl Outcome {
    pub fn from_fault(fault: &Fault) -> Outcome {
        match fault {
            Fault::Undefined(_) => Outcome::Skip,
            Fault::Missing { .. } => Outcome::Fail(FailureKind::WitnessMissing, fault.to_string()),
            Fault::Composition { .. } | Fault::IllTyped(_) => Outcome::Fail(FailureKind::IllTyped, fault.to_string()),
        }
    }

    /// Pass iff `cond`, otherwise a [`FailureKind::Violated`] failure.
    pub fn require(cond: bool, detail: impl FnOnce() -> String) -> Outcome {
        if cond {
            Outcome::Pass
        } else {
            Outcome::Fail(FailureKind::Violated, detail())
        }
    }
}

/// Compares two evaluated sides of a diagram.
///
/// Undefined values skip the tuple; missing witnesses and ill-typed composites
/// fail it. On thin backends parallel witnesses always compare equal, so a
/// failure there is always an existence failure.
pub fn equation(backend: &Backend, lhs: Result<Morphism, Fault>, rhs: Result<Morphism, Fault>) -> Outcome {
    match (lhs, rhs) {
        (Err(e), _) | (_, Err(e)) if matches!(e, Fault::Undefined(_)) => Outcome::Skip,
        (Err(e), _) | (_, Err(e)) => Outcome::from_fault(&e),
        (Ok(l), Ok(r)) => {
            if (l.dom, l.cod) != (r.dom, r.cod) {
                Outcome::Fail(
                    FailureKind::IllTyped,
                    format!(
                        "sides have types {} -> {} and {} -> {}",
                        backend.label(l.dom),
                        backend.label(l.cod),
                        backend.label(r.dom),
                        backend.label(r.cod)
                    ),
                )
            } else if l.payload != r.payload {
                Outcome::Fail(FailureKind::WitnessesDiffer, backend.difference(&l, &r))
            } else {
                Outcome::Pass
            }
        }
    }
}

/// Pass iff the morphism can be constructed.
pub fn exists(result: Result<Morphism, Fault>) -> Outcome {
    match result {
        Ok(_) => Outcome::Pass,
        Err(e) => Outcome::from_fault(&e),
    }
}

pub fn labels(backend: &Backend, objs: &[Obj]) -> Vec<String> {
    objs.iter().map(|&o| backend.label(o)).collect()
}

/// Evaluates `eval` on every tuple and assembles the result in input order.
pub fn run_check<T, L, E>(id: &str, diagram: &str, tuples: &[T], label: L, eval: E) -> AxiomResult
where
    T: Sync,
    L: Fn(&T) -> Vec<String> + Sync,
    E: Fn(&T) -> Outcome + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<Outcome> = tuples.par_iter().map(&eval).collect();
    let mut checked = 0;
    let mut skipped = 0;
    let mut counterexamples = Vec::new();
    for (t, o) in tuples.iter().zip(outcomes) {
        match o {
            Outcome::Pass => checked += 1,
            Outcome::Skip => skipped += 1,
            Outcome::Fail(kind, detail) => {
                checked += 1;
                counterexamples.push(Counterexample { tuple: label(t), kind, detail });
            }
        }
    }
    let verdict = if !counterexamples.is_empty() {
        Verdict::Fail
    } else if checked == 0 {
        Verdict::Vacuous
    } else {
        Verdict::Pass
    };
    AxiomResult {
        id: id.into(),
        diagram: diagram.into(),
        verdict,
        checked,
        skipped,
        counterexamples,
        elapsed: start.elapsed(),
    }
}

/// [`run_check`] over object tuples, labelled through the backend.
pub fn run_objects<const N: usize, E>(
    backend: &Backend,
    id: &str,
    diagram: &str,
    tuples: &[[Obj; N]],
    eval: E,
) -> AxiomResult
where
    E: Fn(&[Obj; N]) -> Outcome + Sync,
{
    run_check(id, diagram, tuples, |t| labels(backend, t), eval)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ThinPoset;

    #[test]
    fn catalogue_ids_are_unique() {
        let mut ids: Vec<_> = CATALOGUE.iter().map(|(k, _)| *k).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert!(describe_axiom("L1").is_some());
    }

    #[test]
    fn verdicts_and_ordering() {
        let tuples: Vec<[usize; 1]> = (0..50).map(|i| [i]).collect();
        let r = run_check(
            "x",
            "d",
            &tuples,
            |t| vec![t[0].to_string()],
            |t| {
                if t[0] % 7 == 3 {
                    Outcome::Fail(FailureKind::Violated, "bad".into())
                } else if t[0] % 5 == 0 {
                    Outcome::Skip
                } else {
                    Outcome::Pass
                }
            },
        );
        assert_eq!(r.verdict, Verdict::Fail);
        let failing: Vec<_> = r.counterexamples.iter().map(|c| c.tuple[0].clone()).collect();
        assert_eq!(failing, vec!["3", "10", "17", "24", "31", "38", "45"]);
        assert_eq!(r.skipped, 8);
        assert_eq!(r.checked, 42);
        let empty: Vec<[usize; 1]> = vec![];
        assert_eq!(run_check("x", "d", &empty, |_| vec![], |_| Outcome::Pass).verdict, Verdict::Vacuous);
    }

    #[test]
    fn equation_distinguishes_missing_from_differing() {
        let b = Backend::Thin(ThinPoset::chain(&["0", "1"]));
        let ok = b.witness(0, 1, "w");
        assert_eq!(equation(&b, ok.clone(), ok.clone()), Outcome::Pass);
        match equation(&b, ok, b.witness(1, 0, "w")) {
            Outcome::Fail(FailureKind::WitnessMissing, _) => {}
            other => panic!("{other:?}"),
        }
        assert_eq!(equation(&b, Err(Fault::Undefined("x".into())), b.witness(1, 0, "w")), Outcome::Skip);
    }

    #[test]
    fn canonical_json_has_no_timings() {
        let mut rep = CheckReport::new("s");
        let mut r = AxiomResult::single("cat", "d", None);
        r.elapsed = Duration::from_secs(3);
        rep.push(r);
        let j = rep.to_canonical_json();
        assert!(!j.contains("elapsed"));
        let back: CheckReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_canonical_json(), j);
    }
}
