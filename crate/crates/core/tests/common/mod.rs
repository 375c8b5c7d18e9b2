#![allow(dead_code)]

use ldlab::comonad::{ComonadBundle, NegationLift};
use ldlab::instances::build::{interior_comonad, interior_lift, lukasiewicz_tables, thin_lindist, thin_negation};
use ldlab::instances::generate::{gen_group_hopf, mutate};
use ldlab::instances::instance::Instance;
use ldlab::instances::schema::Mutation;
use ldlab::kernel::{Obj, Scope};
use ldlab::lindist::{LindistBundle, Negation};

pub struct Thin {
    pub bundle: LindistBundle,
    pub neg: Negation,
    pub scope: Scope,
}

/// The `n`-element Łukasiewicz chain.
pub fn luk(n: usize) -> Thin {
    let l = lukasiewicz_tables(n);
    let bundle = thin_lindist(l.backend.clone(), (n - 1, l.star), (0, l.par));
    let neg = thin_negation(&bundle, l.neg.clone(), l.neg);
    Thin { scope: Scope::full(&l.backend), bundle, neg }
}

impl Thin {
    pub fn interior(&self, g: Vec<Obj>) -> (ComonadBundle, NegationLift) {
        let cb = interior_comonad(self.bundle.backend.clone(), g, Some(&self.bundle.star), Some(&self.bundle.par));
        let lift = interior_lift(&cb, &self.neg.s, &self.neg.sp);
        (cb, lift)
    }

    pub fn identity(&self) -> (ComonadBundle, NegationLift) {
        let b = self.bundle.backend.clone();
        (
            ComonadBundle::identity_on(b.clone(), &self.bundle.star, &self.bundle.par),
            NegationLift::identity(b, &self.neg.s, &self.neg.sp),
        )
    }
}

pub fn hopf(p: u32, m: usize) -> Instance {
    Instance::from_file(&gen_group_hopf(p, m).unwrap()).unwrap()
}

pub fn hopf_mutated(p: u32, m: usize, mutation: Mutation) -> Instance {
    Instance::from_file(&mutate(&gen_group_hopf(p, m).unwrap(), mutation).unwrap()).unwrap()
}

/// Every self-map of `0..n` (as a chain) with `g ≤ id`, monotone and idempotent.
pub fn interior_oracle(n: usize) -> Vec<Vec<Obj>> {
    let total = n.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let g: Vec<Obj> = (0..n).map(|i| code / n.pow((n - 1 - i) as u32) % n).collect();
        let deflationary = (0..n).all(|a| g[a] <= a);
        let monotone = (0..n).all(|a| (a..n).all(|b| g[a] <= g[b]));
        let idempotent = (0..n).all(|a| g[g[a]] == g[a]);
        if deflationary && monotone && idempotent {
            out.push(g);
        }
    }
    out
}

/// Coefficient vectors `x` in `F_p^m` with `Σx = 1` and `x_i x_j = [i = j] x_i`:
/// the group-like elements of `F_p[Z/m]`.
pub fn group_likes(p: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for code in 0..(p as usize).pow(m as u32) {
        let x: Vec<u32> = (0..m).map(|i| (code / (p as usize).pow(i as u32) % p as usize) as u32).collect();
        let counit = x.iter().sum::<u32>() % p == 1;
        let diagonal = (0..m).all(|i| (0..m).all(|j| x[i] * x[j] % p == if i == j { x[i] } else { 0 }));
        if counit && diagonal {
            out.push(x);
        }
    }
    out
}
