mod common;

use common::interior_oracle;
use ldlab::instances::corpus::{check_entry, corpus, load_manifest, manifest, seed_corpus};
use ldlab::instances::generate::{gen_group_hopf, gen_lukasiewicz, gen_matrix_compact, mutate, with_identity};
use ldlab::instances::instance::Instance;
use ldlab::instances::schema::{
    BackendSpec, InstanceFile, LindistSpec, MatrixTarget, Mutation, NegationSpec, TableTarget, ThinTable,
};
use ldlab::instances::search::{classify_interior_comonads, search, tier_counts, Tier};
use ldlab::suite;

fn thin_tables(f: &InstanceFile) -> (&Vec<Vec<usize>>, &Vec<Vec<usize>>) {
    match &f.lindist {
        Some(LindistSpec::Thin { star, par }) => (&star.table, &par.table),
        other => panic!("not a thin instance: {other:?}"),
    }
}

#[test]
fn luk3_tables() {
    let f = gen_lukasiewicz(3).unwrap();
    let BackendSpec::ThinQuantale { carrier, .. } = &f.backend else { panic!() };
    assert_eq!(carrier, &["0", "1/2", "1"]);
    let (star, par) = thin_tables(&f);
    assert_eq!((star[1][1], par[1][1]), (0, 2));
    let r = suite::validate(&Instance::from_file(&f).unwrap(), &[]).unwrap();
    assert!(r.passed(), "{}", r.summary());
    for tri in ["tri-1", "tri-2", "tri-3", "tri-4"] {
        assert_eq!(r.verdict_of(tri), Some(true), "{tri}");
    }
}

#[test]
fn two_chain_keeps_the_tensors_apart() {
    let f = gen_lukasiewicz(2).unwrap();
    let (star, par) = thin_tables(&f);
    assert_eq!((star[1][1], par[1][1]), (1, 1));
    assert_eq!((star[0][1], par[0][1]), (0, 1));
    assert!(suite::validate(&Instance::from_file(&f).unwrap(), &[]).unwrap().passed());
}

#[test]
fn chain_length_is_validated() {
    assert!(gen_lukasiewicz(0).is_err());
    assert!(gen_lukasiewicz(1).is_err());
    assert!(gen_lukasiewicz(65).is_err());
}

#[test]
fn matrix_instances_pass() {
    for (p, d) in [(2, 3), (3, 2)] {
        let inst = Instance::from_file(&gen_matrix_compact(p, d).unwrap()).unwrap();
        let r = suite::validate(&inst, &[]).unwrap();
        assert!(r.passed(), "F_{p} d{d}: {}", r.summary());
        assert_eq!(r.verdict_of("star-iso"), Some(true));
    }
    let inst = Instance::from_file(&gen_matrix_compact(2, 1).unwrap()).unwrap();
    let e = inst.negation.as_ref().unwrap().e.at1(1).unwrap();
    assert_eq!(e.matrix().unwrap().to_rows(), vec![vec![1]]);
    assert!(gen_matrix_compact(4, 2).is_err());
    assert!(gen_matrix_compact(2, 0).is_err());
}

fn identity_rows(n: usize) -> Vec<Vec<u32>> {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

#[test]
fn group_hopf_instances() {
    let f = gen_group_hopf(2, 2).unwrap();
    assert_eq!(f.hopf.as_ref().unwrap().antipode, identity_rows(2));
    let f = gen_group_hopf(3, 3).unwrap();
    let s = &f.hopf.as_ref().unwrap().antipode;
    assert_ne!(s, &identity_rows(3));
    // g ↦ g⁻¹ swaps g and g²
    assert_eq!(s, &vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
    let r = suite::validate(&Instance::from_file(&f).unwrap(), &[]).unwrap();
    assert!(r.passed(), "{}", r.summary());
    assert_eq!(r.verdict_of("hopf"), Some(true));

    let trivial = gen_group_hopf(2, 1).unwrap();
    assert_eq!(trivial.hopf.as_ref().unwrap().carrier, 1);
    assert!(suite::validate(&Instance::from_file(&trivial).unwrap(), &[]).unwrap().passed());

    assert!(gen_group_hopf(6, 2).is_err());
    assert!(gen_group_hopf(2, 0).is_err());
}

/// Tier counts from pointwise conditions: monoidal means `g(a)⋆g(b) ≤ g(a⋆b)`,
/// `I ≤ g(I)` and the same for `⋄`; ν-liftable means `S a ≤ g(S(g a))`.
fn luk_tier_oracle(n: usize) -> [usize; 4] {
    let top = n - 1;
    let star = |a: usize, b: usize| (a + b).saturating_sub(top);
    let par = |a: usize, b: usize| (a + b).min(top);
    let neg = |a: usize| top - a;
    let maps = interior_oracle(n);
    let monoidal = |g: &Vec<usize>| {
        let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
        pairs.clone().all(|(a, b)| star(g[a], g[b]) <= g[star(a, b)])
            && pairs.clone().all(|(a, b)| par(g[a], g[b]) <= g[par(a, b)])
            && top <= g[top]
    };
    let liftable = |g: &Vec<usize>| (0..n).all(|a| neg(a) <= g[neg(g[a])]);
    let m = maps.iter().filter(|g| monoidal(g)).count();
    let l = maps.iter().filter(|g| monoidal(g) && liftable(g)).count();
    [maps.len(), m, m, l]
}

#[test]
fn luk3_search_counts_match_the_oracle() {
    let inst = Instance::from_file(&gen_lukasiewicz(3).unwrap()).unwrap();
    let rows = classify_interior_comonads(&inst).unwrap();
    let counts = tier_counts(&rows);
    assert_eq!(counts[..4], luk_tier_oracle(3));
    assert_eq!(counts, [4, 2, 2, 2, 2]);
    let gs: Vec<_> = rows.iter().map(|r| r.comonad.g.clone()).collect();
    assert_eq!(gs, interior_oracle(3));
    assert!(gs.contains(&vec![0, 1, 2]) && gs.contains(&vec![0, 0, 2]));
    assert!(rows.iter().all(|r| !r.distributive_exception && !r.coincidence_exception));
    assert!(search(&inst).unwrap().passed());
}

#[test]
fn larger_chains_match_the_oracle() {
    for n in [4, 5] {
        let inst = Instance::from_file(&gen_lukasiewicz(n).unwrap()).unwrap();
        let counts = tier_counts(&classify_interior_comonads(&inst).unwrap());
        assert_eq!(counts[..4], luk_tier_oracle(n), "n = {n}");
    }
}

#[test]
fn two_chain_constant_zero_is_only_a_comonad() {
    let inst = Instance::from_file(&gen_lukasiewicz(2).unwrap()).unwrap();
    let rows = classify_interior_comonads(&inst).unwrap();
    assert_eq!(rows.len(), 2);
    let zero = rows.iter().find(|r| r.comonad.g == [0, 0]).unwrap();
    assert_eq!(zero.tier, Tier::Comonad);
    assert!(zero.comonad.missing.contains(&"φ0 missing".to_string()));
    let r = search(&inst).unwrap();
    assert!(r
        .results("search")
        .any(|a| a.diagram.starts_with("g = (0, 0): comonad only [") && a.diagram.contains("φ0 missing")));
}

fn one_chain() -> InstanceFile {
    let mut f = InstanceFile::new("chain-1", BackendSpec::ThinQuantale { carrier: vec!["0".into()], leq: vec![] });
    let t = ThinTable { unit: 0, table: vec![vec![0]] };
    f.lindist = Some(LindistSpec::Thin { star: t.clone(), par: t });
    f.negation = Some(NegationSpec::Thin { s: vec![0], sp: vec![0] });
    f
}

#[test]
fn one_chain_has_a_single_row_in_every_tier() {
    let inst = Instance::from_file(&one_chain()).unwrap();
    let rows = classify_interior_comonads(&inst).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].tier, Tier::StarComonad);
    assert_eq!(tier_counts(&rows), [1; 5]);
    let r = search(&inst).unwrap();
    assert_eq!(r.results("search").count(), 1);
    assert!(r
        .notes
        .iter()
        .any(|n| n == "tier counts: comonad only 1, monoidal 1, L1/L2 1, ν-liftable 1, star-autonomous comonad 1"));
}

#[test]
fn search_needs_a_thin_backend_and_respects_the_bound() {
    let inst = Instance::from_file(&gen_matrix_compact(2, 2).unwrap()).unwrap();
    assert!(search(&inst).is_err());
    let inst = Instance::from_file(&gen_lukasiewicz(4).unwrap()).unwrap().with_enum_bound(100);
    assert!(search(&inst).is_err());
}

#[test]
fn mutations_break_the_advertised_axiom() {
    let zero_nu = mutate(&gen_group_hopf(2, 2).unwrap(), Mutation::ZeroNu).unwrap();
    let r = suite::validate(&Instance::from_file(&zero_nu).unwrap(), &[]).unwrap();
    assert!(r.failing_ids().contains(&"nu-1".to_string()));

    let antipode = mutate(&gen_group_hopf(3, 3).unwrap(), Mutation::IdentityAntipode).unwrap();
    let r = suite::validate(&Instance::from_file(&antipode).unwrap(), &[]).unwrap();
    assert!(r.failing_ids().contains(&"hopf".to_string()));

    let flip = Mutation::TableEntry { target: TableTarget::Star, index: vec![0, 1], value: 2 };
    let flipped = mutate(&gen_lukasiewicz(3).unwrap(), flip.clone()).unwrap();
    assert_eq!(flipped.mutations, vec![flip]);
    let r = suite::validate(&Instance::from_file(&flipped).unwrap(), &[]).unwrap();
    assert!(r.failing_ids().contains(&"mon-⋆".to_string()), "{:?}", r.failing_ids());
}

#[test]
fn mutations_must_target_existing_structure() {
    let l3 = gen_lukasiewicz(3).unwrap();
    let antipode = Mutation::MatrixEntry { target: MatrixTarget::Antipode, row: 0, col: 0, value: 1 };
    assert!(mutate(&l3, antipode).is_err());
    assert!(mutate(&l3, Mutation::TableEntry { target: TableTarget::G, index: vec![0], value: 0 }).is_err());
    assert!(mutate(&l3, Mutation::TableEntry { target: TableTarget::Star, index: vec![3, 0], value: 0 }).is_err());
    assert!(mutate(&l3, Mutation::ZeroNu).is_err());
    assert!(mutate(&with_identity(gen_matrix_compact(2, 2).unwrap()), Mutation::IdentityAntipode).is_err());
}

#[test]
fn corpus_entries_behave_as_expected() {
    let entries = corpus().unwrap();
    assert_eq!(entries.len(), 13);
    assert!(entries.iter().filter(|e| e.mutated).count() >= 2);
    for e in &entries {
        let o = check_entry(&e.file, &e.expect).unwrap();
        assert!(o.as_expected(), "{}: {:?}", o.name, o.problems);
    }
}

#[test]
fn seeded_corpus_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let written = seed_corpus(dir.path()).unwrap();
    let read = load_manifest(dir.path()).unwrap();
    assert_eq!(written, read);
    assert_eq!(read, manifest(&corpus().unwrap()));
    for (entry, original) in read.entries.iter().zip(corpus().unwrap()) {
        let text = std::fs::read_to_string(dir.path().join(&entry.file)).unwrap();
        assert_eq!(InstanceFile::parse(&text).unwrap(), original.file);
    }
}
