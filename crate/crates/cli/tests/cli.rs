use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ldlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldlab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn failing_ids(r: &Value) -> Vec<String> {
    r["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["verdict"] == "fail")
        .map(|a| a["id"].as_str().unwrap().to_string())
        .collect()
}

struct Work(TempDir);

impl Work {
    fn new() -> Self {
        Work(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn generate(&self, name: &str, gen: &str, params: &str) -> PathBuf {
        let out = self.path(name);
        let o = ldlab(&["generate", gen, "--params", params, "--out", s(&out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        out
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let w = Work::new();
    let l3 = w.generate("l3.json", "lukasiewicz", "n=3");
    let o = ldlab(&["validate", s(&l3)]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["overall"], true);

    let flipped = w.path("l3-flip.json");
    let flip = r#"{"op": "table-entry", "target": "star", "index": [0, 1], "value": 2}"#;
    assert_eq!(code(&ldlab(&["mutate", s(&l3), flip, "--out", s(&flipped)])), 0);
    let o = ldlab(&["validate", s(&flipped)]);
    assert_eq!(code(&o), 1);
    assert!(failing_ids(&report(&o)).contains(&"mon-⋆".to_string()));

    let mut raw: Value = serde_json::from_str(&std::fs::read_to_string(&l3).unwrap()).unwrap();
    raw["colour"] = Value::from("blue");
    let unknown = w.path("unknown.json");
    std::fs::write(&unknown, raw.to_string()).unwrap();
    assert_eq!(code(&ldlab(&["validate", s(&unknown)])), 2);

    std::fs::write(w.path("garbage.json"), "{").unwrap();
    assert_eq!(code(&ldlab(&["validate", s(&w.path("garbage.json"))])), 2);
    assert_eq!(code(&ldlab(&["validate", s(&w.path("absent.json"))])), 2);
}

#[test]
fn missing_structure_exits_three() {
    let w = Work::new();
    let l3 = w.generate("l3.json", "lukasiewicz", "n=3");
    assert_eq!(code(&ldlab(&["coincide", s(&l3)])), 3);
    assert_eq!(code(&ldlab(&["lift", s(&l3), "--out", s(&w.path("em.json"))])), 3);
    let interior = w.generate("l3i.json", "lukasiewicz", "n=3,comonad=interior,g=0:0:2");
    let o = ldlab(&["compact", s(&interior)]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("not compact") && err.contains("1/2, 1/2: 1/2⋆1/2 = 0 ≠ 1 = 1/2⋄1/2"), "{err}");
}

#[test]
fn axiom_filter_and_scope() {
    let w = Work::new();
    let l3 = w.generate("l3.json", "lukasiewicz", "n=3");
    let o = ldlab(&["validate", s(&l3), "--axioms", "tri-1,tri-2"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    let ids: Vec<_> = r["axioms"].as_array().unwrap().iter().map(|a| a["id"].as_str().unwrap()).collect();
    assert!(!ids.is_empty() && ids.iter().all(|id| *id == "tri-1" || *id == "tri-2"), "{ids:?}");

    let o = ldlab(&["validate", s(&l3), "--scope", "0,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["scope"], "thin-quantale objects [0, 1]");
    assert_eq!(code(&ldlab(&["validate", s(&l3), "--scope", "7"])), 2);
}

#[test]
fn reports_are_byte_identical() {
    let w = Work::new();
    let hopf = w.generate("f22.json", "group-hopf", "p=2,m=2");
    let a = ldlab(&["validate", s(&hopf)]);
    let b = ldlab(&["validate", s(&hopf)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let out = w.path("report.json");
    assert_eq!(code(&ldlab(&["validate", s(&hopf), "--out", s(&out)])), 0);
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn summary_prints_a_table() {
    let w = Work::new();
    let l3 = w.generate("l3.json", "lukasiewicz", "n=3");
    let o = ldlab(&["validate", s(&l3), "--summary"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains("tri-1")), "{text}");
}

#[test]
fn lift_output_revalidates() {
    let w = Work::new();
    let hopf = w.generate("f22.json", "group-hopf", "p=2,m=2");
    let em = w.path("em.json");
    assert_eq!(code(&ldlab(&["lift", s(&hopf), "--out", s(&em)])), 0);
    let o = ldlab(&["validate", s(&em)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(report(&o)["overall"], true);

    let interior = w.generate("l3i.json", "lukasiewicz", "n=3,comonad=interior,g=0:0:2");
    assert_eq!(code(&ldlab(&["lift", s(&interior), "--out", s(&em)])), 0);
    assert_eq!(code(&ldlab(&["validate", s(&em)])), 0);
}

#[test]
fn translate_both_ways() {
    let w = Work::new();
    let l3 = w.generate("l3.json", "lukasiewicz", "n=3");
    let star = w.path("star.json");
    assert_eq!(code(&ldlab(&["translate", s(&l3), "--out", s(&star)])), 0);
    let o = ldlab(&["validate", s(&star)]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["overall"], true);

    let back = w.path("back.json");
    assert_eq!(code(&ldlab(&["translate", s(&star), "--to", "lindist", "--out", s(&back)])), 0);
    assert_eq!(code(&ldlab(&["validate", s(&back)])), 0);

    // a file with only the linearly distributive side has nothing to translate back from
    assert_eq!(code(&ldlab(&["translate", s(&l3), "--to", "lindist", "--out", s(&back)])), 3);
    assert_eq!(code(&ldlab(&["translate", s(&l3), "--to", "sideways", "--out", s(&back)])), 2);
}

#[test]
fn coincide_and_compact_on_hopf() {
    let w = Work::new();
    let hopf = w.generate("f33.json", "group-hopf", "p=3,m=3");
    let o = ldlab(&["coincide", s(&hopf)]);
    assert_eq!(code(&o), 0);
    let o = ldlab(&["compact", s(&hopf)]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    let table: Vec<_> =
        r["correspondence"].as_array().unwrap().iter().map(|c| c["hopf_axiom"].as_str().unwrap().to_string()).collect();
    assert_eq!(table, ["BV-23", "BV-22", "BV-21", "BV-20"]);

    let broken = w.path("broken.json");
    assert_eq!(code(&ldlab(&["mutate", s(&hopf), "identity-antipode", "--out", s(&broken)])), 0);
    let o = ldlab(&["compact", s(&broken)]);
    assert_eq!(code(&o), 1);
    // the two comonad axiomatizations still agree, so coincide passes
    assert_eq!(code(&ldlab(&["coincide", s(&broken)])), 0);
}

#[test]
fn search_classifies_interior_comonads() {
    let w = Work::new();
    let l3 = w.generate("l3.json", "lukasiewicz", "n=3");
    let o = ldlab(&["search", s(&l3)]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    let notes: Vec<_> = r["notes"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    assert!(
        notes.contains(&"tier counts: comonad only 4, monoidal 2, L1/L2 2, ν-liftable 2, star-autonomous comonad 2"),
        "{notes:?}"
    );

    let matrix = w.generate("m.json", "matrix-compact", "p=2,dmax=2");
    assert_eq!(code(&ldlab(&["search", s(&matrix)])), 2);
}

#[test]
fn enumeration_bound_comes_from_the_environment() {
    let w = Work::new();
    let l4 = w.generate("l4.json", "lukasiewicz", "n=4");
    let run = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_ldlab"))
            .args(["search", s(&l4)])
            .env("LDLAB_MAX_ENUM", bound)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("100")), 2);
    assert_eq!(code(&run("1000")), 0);
    assert_eq!(code(&run("lots")), 2);
}

#[test]
fn generate_rejects_bad_parameters() {
    assert_eq!(code(&ldlab(&["generate", "lukasiewicz", "--params", "n=1"])), 2);
    assert_eq!(code(&ldlab(&["generate", "group-hopf", "--params", "p=4,m=2"])), 2);
    assert_eq!(code(&ldlab(&["generate", "lukasiewicz", "--params", "q=3"])), 2);
    assert_eq!(code(&ldlab(&["generate", "chu"])), 2);
    let o = ldlab(&["generate", "matrix-compact", "--params", "p=3,dmax=2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["backend"]["kind"], "matrix-field");
}

#[test]
fn seed_corpus_writes_files_and_manifest() {
    let w = Work::new();
    let dir = w.path("corpus");
    let o = ldlab(&["generate", "--seed-corpus", s(&dir)]);
    assert_eq!(code(&o), 0);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let entries = manifest["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 13);
    for e in entries {
        let file = dir.join(e["file"].as_str().unwrap());
        let o = ldlab(&["validate", s(&file)]);
        let expected = e["validate"].as_bool().unwrap();
        assert_eq!(code(&o), if expected { 0 } else { 1 }, "{}", file.display());
    }
}

#[test]
fn mutate_records_the_descriptor() {
    let w = Work::new();
    let hopf = w.generate("f22.json", "group-hopf", "p=2,m=2");
    let o = ldlab(&["mutate", s(&hopf), "zero-nu"]);
    assert_eq!(code(&o), 0);
    let mutated = report(&o);
    assert_eq!(mutated["mutations"][0]["op"], "zero-nu");
    let out = w.path("zero-nu.json");
    std::fs::write(&out, &o.stdout).unwrap();
    let o = ldlab(&["validate", s(&out)]);
    assert_eq!(code(&o), 1);
    assert!(failing_ids(&report(&o)).contains(&"nu-1".to_string()));

    let l3 = w.generate("l3.json", "lukasiewicz", "n=3");
    assert_eq!(code(&ldlab(&["mutate", s(&l3), "identity-antipode"])), 2);
    assert_eq!(code(&ldlab(&["mutate", s(&l3), "scramble"])), 2);
}
