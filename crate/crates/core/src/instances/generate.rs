//! Parameterized instance families, written as instance files.

use num_rational::Ratio;

use crate::algebra::{group_algebra, HopfAlgebra};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::kernel::Obj;

use super::instance::Instance;
use super::schema::{
    BackendSpec, ComonadSpec, HopfSpec, InstanceFile, LiftSpec, LindistSpec, Mutation, NegationSpec, StarSpec,
    ThinTable,
};

/// Largest chain length accepted by [`gen_lukasiewicz`].
pub const MAX_CHAIN: usize = 64;

/// The Łukasiewicz chain `{0, 1/(n-1), …, 1}` with `a⋆b = max(0, a+b-1)`,
/// `a⋄b = min(1, a+b)`, `I = 1`, `J = 0` and `S = S′ = 1-x`.
pub fn gen_lukasiewicz(n: usize) -> Result<InstanceFile> {
    if !(2..=MAX_CHAIN).contains(&n) {
        return Err(Error::InvalidParameter(format!("chain length must be in 2..={MAX_CHAIN}, got {n}")));
    }
    let top = n - 1;
    let carrier = (0..n).map(|k| Ratio::new(k, top).to_string()).collect();
    let leq = (0..n).flat_map(|a| (a + 1..n).map(move |b| [a, b])).collect();
    let star = (0..n).map(|a| (0..n).map(|b| (a + b).saturating_sub(top)).collect()).collect();
    let par = (0..n).map(|a| (0..n).map(|b| (a + b).min(top)).collect()).collect();
    let neg: Vec<Obj> = (0..n).map(|a| top - a).collect();
    let mut f = InstanceFile::new(format!("lukasiewicz-{n}"), BackendSpec::ThinQuantale { carrier, leq });
    f.lindist =
        Some(LindistSpec::Thin { star: ThinTable { unit: top, table: star }, par: ThinTable { unit: 0, table: par } });
    f.negation = Some(NegationSpec::Thin { s: neg.clone(), sp: neg });
    Ok(f)
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{p} is not prime")))
    }
}

/// Finite-dimensional spaces over `F_p` of dimension `1..=dmax`, with the
/// Kronecker tensor as both `⋆` and `⋄`, transpose as `S = S′` and the
/// standard pairings.
pub fn gen_matrix_compact(p: u32, dmax: usize) -> Result<InstanceFile> {
    check_prime(p)?;
    if dmax == 0 {
        return Err(Error::InvalidParameter("dimension bound must be at least 1".into()));
    }
    let objects: Vec<Obj> = (1..=dmax).collect();
    let mut f = InstanceFile::new(format!("matrix-f{p}-d{dmax}"), BackendSpec::MatrixField { p, objects });
    f.lindist = Some(LindistSpec::Kronecker);
    f.negation = Some(NegationSpec::Dual);
    f.star = Some(StarSpec::Dual);
    Ok(f)
}

/// Dimension bound used for Hopf instances.
pub const HOPF_DIMS: usize = 2;

/// `F_p[Z/m]⊗−` on [`gen_matrix_compact`]`(p, 2)` with its canonical lift.
pub fn gen_group_hopf(p: u32, m: usize) -> Result<InstanceFile> {
    if m == 0 {
        return Err(Error::InvalidParameter("group order must be at least 1".into()));
    }
    let mut f = gen_matrix_compact(p, HOPF_DIMS)?;
    f.name = format!("group-hopf-f{p}-z{m}");
    f.hopf = Some(hopf_spec(&group_algebra(m)));
    f.comonad = Some(ComonadSpec::Hopf);
    f.negation_lift = Some(LiftSpec::Canonical);
    Ok(f)
}

pub fn hopf_spec(h: &HopfAlgebra) -> HopfSpec {
    let rows =
        |a: &crate::algebra::Arrow| a.as_ref().ok().and_then(|m| m.matrix()).map(|m| m.to_rows()).unwrap_or_default();
    let b = &h.bialgebra;
    HopfSpec {
        carrier: b.carrier,
        mul: rows(&b.mul),
        unit: rows(&b.unit),
        comul: rows(&b.comul),
        counit: rows(&b.counit),
        antipode: rows(&h.antipode),
    }
}

/// `f` with an interior comonad `g` and its canonical lift.
pub fn with_interior(mut f: InstanceFile, g: Vec<Obj>) -> InstanceFile {
    let tag = g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("");
    f.name = format!("{}-interior-{tag}", f.name);
    f.comonad = Some(ComonadSpec::Interior { g });
    f.negation_lift = Some(LiftSpec::Canonical);
    f
}

/// `f` with the identity comonad and identity lift.
pub fn with_identity(mut f: InstanceFile) -> InstanceFile {
    f.name = format!("{}-identity", f.name);
    f.comonad = Some(ComonadSpec::Identity);
    f.negation_lift = Some(LiftSpec::Canonical);
    f
}

/// Records `m` on `f` after checking that it applies.
pub fn mutate(f: &InstanceFile, m: Mutation) -> Result<InstanceFile> {
    let mut out = f.clone();
    out.mutations.push(m);
    Instance::from_file(&out)?;
    out.name = format!("{}-mut{}", f.name, out.mutations.len());
    Ok(out)
}
