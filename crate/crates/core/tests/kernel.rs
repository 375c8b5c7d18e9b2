use std::collections::BTreeSet;
use std::sync::Arc;

use ldlab::field::PrimeField;
use ldlab::instances::build::{kronecker, lukasiewicz_tables, matrix_backend, swap_matrix};
use ldlab::kernel::{
    check_category_laws, check_monoidal_laws, check_symmetry_laws, Backend, Family, Fault, MatrixCat, Morphism, Scope,
    Symmetry, TableCat, Tensor, TensorTag,
};
use ldlab::matrix::Matrix;
use ldlab::report::FailureKind;
use proptest::prelude::*;

fn mat(rows: &[Vec<u32>], p: u32) -> Morphism {
    MatrixCat::morphism(Matrix::from_rows(rows, &PrimeField::new(p).unwrap()))
}

#[test]
fn thin_composite_is_the_witness() {
    let l = lukasiewicz_tables(3);
    let b = &l.backend;
    let f = b.witness(0, 1, "f").unwrap();
    let g = b.witness(1, 2, "g").unwrap();
    assert_eq!(b.compose(&g, &f).unwrap(), b.witness(0, 2, "h").unwrap());
}

#[test]
fn matrix_composite_reduces_mod_p() {
    let b = matrix_backend(2, vec![1, 2]).unwrap();
    let g = mat(&[vec![1, 1]], 2);
    let f = mat(&[vec![1], vec![1]], 2);
    let gf = b.compose(&g, &f).unwrap();
    assert_eq!(gf.matrix().unwrap().to_rows(), vec![vec![0]]);
    assert_eq!((gf.dom, gf.cod), (1, 1));
}

#[test]
fn identity_is_neutral() {
    let b = matrix_backend(3, vec![2, 3]).unwrap();
    let f = mat(&[vec![1, 2], vec![0, 1], vec![2, 2]], 3);
    assert_eq!(b.compose(&b.identity(3).unwrap(), &f).unwrap(), f);
    assert_eq!(b.compose(&f, &b.identity(2).unwrap()).unwrap(), f);
}

#[test]
fn mismatched_composite_names_both_sides() {
    let b = matrix_backend(2, vec![1, 2]).unwrap();
    let f = mat(&[vec![1, 1]], 2);
    match b.compose(&f, &f) {
        Err(Fault::Composition { g, f }) => {
            assert!(g.contains("[[1, 1]]"));
            assert!(f.contains("[[1, 1]]"));
        }
        other => panic!("expected a composition error, got {other:?}"),
    }
}

#[test]
fn luk3_category_laws_count_composable_triples() {
    let l = lukasiewicz_tables(3);
    let r = check_category_laws(&l.backend, &Scope::full(&l.backend));
    assert!(r.passed(), "{}", r.summary());
    // a ≤ b ≤ c ≤ d in a 3-chain
    let oracle =
        (0..3).flat_map(|a| (a..3).flat_map(move |b| (b..3).flat_map(move |c| (c..3).map(move |_| ())))).count();
    let assoc = r.axioms.iter().find(|a| a.diagram.starts_with("associativity")).unwrap();
    assert_eq!(assoc.checked, oracle);
    assert_eq!(oracle, 15);
}

#[test]
fn matrix_category_laws_pass_exhaustively() {
    let b = matrix_backend(2, vec![1, 2]).unwrap();
    let r = check_category_laws(&b, &Scope::new(vec![1, 2]));
    assert!(r.passed(), "{}", r.summary());
    assert!(r.notes.is_empty(), "hom-sets up to dim 2 fit the default bound");
    // every triple of matrices between dims in {1, 2}
    let hom = |a: u32, b: u32| 2u64.pow(a * b);
    let dims = [1, 2];
    let mut oracle = 0;
    for a in dims {
        for b in dims {
            for c in dims {
                for d in dims {
                    oracle += hom(a, b) * hom(b, c) * hom(c, d);
                }
            }
        }
    }
    let assoc = r.axioms.iter().find(|a| a.diagram.starts_with("associativity")).unwrap();
    assert_eq!(assoc.checked as u64, oracle);
}

/// `Z/3` as a one-object category with `a∘a` overwritten.
fn corrupted_z3() -> (TableCat, Vec<Vec<usize>>) {
    let mut op: Vec<Vec<usize>> = (0..3).map(|g| (0..3).map(|f| (g + f) % 3).collect()).collect();
    op[1][1] = 1;
    let entries: Vec<(usize, usize, usize)> =
        (0..3).flat_map(|g| (0..3).map(move |f| (g, f))).map(|(g, f)| (g, f, op[g][f])).collect();
    let t = TableCat::new(vec!["*".into()], vec![(0, 0); 3], vec![0], &entries).unwrap();
    (t, op)
}

#[test]
fn corrupted_table_lists_failing_triples() {
    let (t, op) = corrupted_z3();
    let b = Backend::Table(t);
    let r = check_category_laws(&b, &Scope::full(&b));
    assert!(!r.passed());
    let mut oracle = BTreeSet::new();
    for f in 0..3 {
        for g in 0..3 {
            for h in 0..3 {
                if op[h][op[g][f]] != op[op[h][g]][f] {
                    oracle.insert(vec![format!("* -> * #{h}"), format!("* -> * #{g}"), format!("* -> * #{f}")]);
                }
            }
        }
    }
    assert!(!oracle.is_empty());
    let found: BTreeSet<_> = r.results("cat").flat_map(|a| a.counterexamples.iter().map(|c| c.tuple.clone())).collect();
    assert_eq!(found, oracle);
}

#[test]
fn kronecker_is_strict_monoidal() {
    let b = matrix_backend(2, vec![1, 2, 3]).unwrap();
    let t = kronecker(b.clone(), TensorTag::Star);
    let lhs = t.obj(t.obj(2, 3).unwrap(), 4).unwrap();
    let rhs = t.obj(2, t.obj(3, 4).unwrap()).unwrap();
    assert_eq!((lhs, rhs), (24, 24));
    let r = check_monoidal_laws(&b, &t, &Scope::new(vec![1, 2, 3]));
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn luk3_conjunction_is_strict_monoidal() {
    let l = lukasiewicz_tables(3);
    let t = Tensor::thin(l.backend.clone(), TensorTag::Star, 2, l.star.clone());
    let r = check_monoidal_laws(&l.backend, &t, &Scope::full(&l.backend));
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn luk3_with_half_as_unit_fails() {
    let l = lukasiewicz_tables(3);
    // ½⊗½ = max(0, ½+½−1)
    assert_eq!(l.star[1][1], 0);
    let t = Tensor::thin(l.backend.clone(), TensorTag::Star, 1, l.star.clone());
    let r = check_monoidal_laws(&l.backend, &t, &Scope::full(&l.backend));
    assert!(!r.passed());
    let unit = r.axioms.iter().find(|a| a.diagram == "unit on objects").unwrap();
    assert!(unit.counterexamples.iter().any(|c| c.tuple == ["1/2"]));
}

#[test]
fn thin_braiding_passes() {
    let l = lukasiewicz_tables(3);
    let t = Tensor::thin(l.backend.clone(), TensorTag::Par, 0, l.par.clone());
    let (t1, t2) = (t.clone(), t.clone());
    let braid = Family::thin(l.backend.clone(), "c", 2, move |x| t1.obj(x[0], x[1]), move |x| t2.obj(x[1], x[0]));
    let sym = Symmetry { tensor: TensorTag::Par, braid };
    let r = check_symmetry_laws(&l.backend, &t, &sym, &Scope::full(&l.backend));
    assert!(r.passed(), "{}", r.summary());
}

fn matrix_braid(b: &Arc<Backend>, swap: bool) -> (Tensor, Symmetry) {
    let t = kronecker(b.clone(), TensorTag::Par);
    let braid = Family::new("c", 2, move |x| {
        Ok(MatrixCat::morphism(if swap { swap_matrix(x[0], x[1]) } else { Matrix::identity(x[0] * x[1]) }))
    });
    (t, Symmetry { tensor: TensorTag::Par, braid })
}

#[test]
fn swap_braiding_passes() {
    let b = matrix_backend(2, vec![1, 2, 3]).unwrap();
    let (t, sym) = matrix_braid(&b, true);
    let r = check_symmetry_laws(&b, &t, &sym, &Scope::new(vec![1, 2, 3]));
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn identity_braiding_fails_naturality() {
    let b = matrix_backend(2, vec![2, 3]).unwrap();
    let (t, sym) = matrix_braid(&b, false);
    let r = check_symmetry_laws(&b, &t, &sym, &Scope::new(vec![2, 3]));
    let nat = r.axioms.iter().find(|a| a.diagram.starts_with("naturality")).unwrap();
    assert!(!nat.passed());
    // some failure sits on the (2,3) pair
    assert!(nat.counterexamples.iter().any(|c| c.tuple[..2] == ["2", "3"] && c.kind == FailureKind::WitnessesDiffer));
}

fn naive_kron(x: &[Vec<u32>], y: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let (xr, xc, yr, yc) = (x.len(), x[0].len(), y.len(), y[0].len());
    let mut out = vec![vec![0; xc * yc]; xr * yr];
    for i in 0..xr {
        for j in 0..xc {
            for k in 0..yr {
                for l in 0..yc {
                    out[i * yr + k][j * yc + l] = x[i][j] * y[k][l] % p;
                }
            }
        }
    }
    out
}

fn matrix_rows(p: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..4, 1usize..4).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(0..p, c), r))
}

proptest! {
    #[test]
    fn kronecker_matches_entrywise_products(x in matrix_rows(5), y in matrix_rows(5)) {
        let b = matrix_backend(5, vec![1]).unwrap();
        let t = kronecker(b, TensorTag::Star);
        let fx = mat(&x, 5);
        let fy = mat(&y, 5);
        let got = t.mor(&fx, &fy).unwrap();
        prop_assert_eq!(got.matrix().unwrap().to_rows(), naive_kron(&x, &y, 5));
    }

    #[test]
    fn thin_parallel_morphisms_agree(a in 0usize..5, b in 0usize..5) {
        let l = lukasiewicz_tables(5);
        let (lo, hi) = (a.min(b), a.max(b));
        let direct = l.backend.witness(lo, hi, "f").unwrap();
        let via = (lo..=hi).try_fold(l.backend.identity(lo).unwrap(), |acc, k| {
            l.backend.witness(acc.cod, k, "step").and_then(|s| l.backend.compose(&s, &acc))
        }).unwrap();
        prop_assert_eq!(direct, via);
    }
}
