//! Bialgebras and Hopf algebras, and the comonads they induce.

use crate::comonad::{check_comonad, check_monoidal_comonad, check_nu, ComonadBundle, MonoidalStructure, NegationLift};
use crate::error::{Error, Result};
use crate::instances::build::swap_matrix;
use crate::kernel::{Backend, Family, Fault, Functor, MatrixCat, Morphism, Obj, Scope, Tensor, TensorTag, Variance};
use crate::lindist::LindistBundle;
use crate::matrix::Matrix;
use crate::report::{equation, exists, AxiomResult, CheckReport, Counterexample, Outcome};
use crate::star::StarAutonomous;

/// A structure map that may fail to exist (thin backends).
pub type Arrow = Result<Morphism, Fault>;

/// `μ: B⊗B → B`, `η: unit → B`, `d: B → B⊗B`, `cu: B → unit` for a chosen
/// tensor. `d` and `cu` are named apart from the comonad's `δ`, `ε`.
#[derive(Clone, Debug)]
pub struct Bialgebra {
    pub carrier: Obj,
    pub mul: Arrow,
    pub unit: Arrow,
    pub comul: Arrow,
    pub counit: Arrow,
}

#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub bialgebra: Bialgebra,
    pub antipode: Arrow,
}

impl Bialgebra {
    /// On a thin backend every structure map is the order witness, if any.
    pub fn thin(backend: &Backend, t: &Tensor, carrier: Obj) -> Result<Bialgebra> {
        let bb = t.obj(carrier, carrier)?;
        Ok(Bialgebra {
            carrier,
            mul: backend.witness(bb, carrier, "μ"),
            unit: backend.witness(t.unit, carrier, "η"),
            comul: backend.witness(carrier, bb, "d"),
            counit: backend.witness(carrier, t.unit, "cu"),
        })
    }

    /// The unit object as a bialgebra with identity structure maps.
    pub fn trivial(backend: &Backend, t: &Tensor) -> Result<Bialgebra> {
        let one = backend.identity(t.unit)?;
        Ok(Bialgebra {
            carrier: t.unit,
            mul: Ok(one.clone()),
            unit: Ok(one.clone()),
            comul: Ok(one.clone()),
            counit: Ok(one),
        })
    }
}

/// The group algebra `F_p[Z/m]` on the basis `g^0, …, g^(m-1)`:
/// `μ(g^i⊗g^j) = g^(i+j)`, `η = g^0`, `d(g) = g⊗g`, `cu(g) = 1`,
/// `s(g) = g^(-1)`.
pub fn group_algebra(m: usize) -> HopfAlgebra {
    let mut mul = Matrix::zeros(m, m * m);
    let mut comul = Matrix::zeros(m * m, m);
    let mut counit = Matrix::zeros(1, m);
    let mut antipode = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            mul.set((i + j) % m, i * m + j, 1);
        }
        comul.set(i * m + i, i, 1);
        counit.set(0, i, 1);
        antipode.set((m - i) % m, i, 1);
    }
    HopfAlgebra {
        bialgebra: Bialgebra {
            carrier: m,
            mul: Ok(MatrixCat::morphism(mul)),
            unit: Ok(MatrixCat::morphism(Matrix::unit(m, 1, 0, 0))),
            comul: Ok(MatrixCat::morphism(comul)),
            counit: Ok(MatrixCat::morphism(counit)),
        },
        antipode: Ok(MatrixCat::morphism(antipode)),
    }
}

fn single(id: &str, diagram: &str, outcome: Outcome, tuple: Vec<String>) -> AxiomResult {
    let failure = match outcome {
        Outcome::Fail(kind, detail) => Some(Counterexample { tuple, kind, detail }),
        _ => None,
    };
    AxiomResult::single(id, diagram, failure)
}

/// Associativity, units, coassociativity, counits and the four compatibility
/// squares, against tensor `t` with braiding `c`.
pub fn check_bialgebra(backend: &Backend, t: &Tensor, c: &Family, bi: &Bialgebra, scope: &Scope) -> CheckReport {
    let b = backend;
    let id = |x| b.identity(x);
    let mut report = CheckReport::new(scope.describe(b));
    let bo = bi.carrier;
    let tup = vec![b.label(bo)];
    let (mu, eta, d, cu) = (&bi.mul, &bi.unit, &bi.comul, &bi.counit);
    let push = |report: &mut CheckReport, diagram: &str, o: Outcome| {
        report.push(single("bialg", diagram, o, tup.clone()));
    };

    for (name, m) in [("μ", mu), ("η", eta), ("d", d), ("cu", cu)] {
        push(&mut report, &format!("{name} exists"), exists(m.clone()));
    }
    push(
        &mut report,
        "μ∘(μ⊗1) = μ∘(1⊗μ)",
        equation(
            b,
            (|| b.seq(&[t.mor(&mu.clone()?, &id(bo)?)?, mu.clone()?]))(),
            (|| b.seq(&[t.mor(&id(bo)?, &mu.clone()?)?, mu.clone()?]))(),
        ),
    );
    push(
        &mut report,
        "μ∘(η⊗1) = 1 = μ∘(1⊗η)",
        both_sides(
            b,
            (|| b.seq(&[t.mor(&eta.clone()?, &id(bo)?)?, mu.clone()?]))(),
            (|| b.seq(&[t.mor(&id(bo)?, &eta.clone()?)?, mu.clone()?]))(),
            id(bo),
        ),
    );
    push(
        &mut report,
        "(d⊗1)∘d = (1⊗d)∘d",
        equation(
            b,
            (|| b.seq(&[d.clone()?, t.mor(&d.clone()?, &id(bo)?)?]))(),
            (|| b.seq(&[d.clone()?, t.mor(&id(bo)?, &d.clone()?)?]))(),
        ),
    );
    push(
        &mut report,
        "(cu⊗1)∘d = 1 = (1⊗cu)∘d",
        both_sides(
            b,
            (|| b.seq(&[d.clone()?, t.mor(&cu.clone()?, &id(bo)?)?]))(),
            (|| b.seq(&[d.clone()?, t.mor(&id(bo)?, &cu.clone()?)?]))(),
            id(bo),
        ),
    );
    push(
        &mut report,
        "d∘μ = (μ⊗μ)∘(1⊗c⊗1)∘(d⊗d)",
        equation(
            b,
            (|| b.seq(&[mu.clone()?, d.clone()?]))(),
            (|| {
                b.seq(&[
                    t.mor(&d.clone()?, &d.clone()?)?,
                    t.mors(&[id(bo)?, c.at(&[bo, bo])?, id(bo)?])?,
                    t.mor(&mu.clone()?, &mu.clone()?)?,
                ])
            })(),
        ),
    );
    push(
        &mut report,
        "cu∘μ = cu⊗cu",
        equation(b, (|| b.seq(&[mu.clone()?, cu.clone()?]))(), (|| t.mor(&cu.clone()?, &cu.clone()?))()),
    );
    push(
        &mut report,
        "d∘η = η⊗η",
        equation(b, (|| b.seq(&[eta.clone()?, d.clone()?]))(), (|| t.mor(&eta.clone()?, &eta.clone()?))()),
    );
    push(&mut report, "cu∘η = 1", equation(b, (|| b.seq(&[eta.clone()?, cu.clone()?]))(), id(t.unit)));
    report
}

fn both_sides(b: &Backend, l: Arrow, r: Arrow, want: Arrow) -> Outcome {
    match equation(b, l, want.clone()) {
        Outcome::Pass => equation(b, r, want),
        other => other,
    }
}

/// Bialgebra laws plus `μ∘(s⊗1)∘d = η∘cu = μ∘(1⊗s)∘d`.
pub fn check_hopf(backend: &Backend, t: &Tensor, c: &Family, h: &HopfAlgebra, scope: &Scope) -> CheckReport {
    let b = backend;
    let bi = &h.bialgebra;
    let mut report = check_bialgebra(b, t, c, bi, scope);
    let bo = bi.carrier;
    let id = |x| b.identity(x);
    let s = &h.antipode;
    let unit_counit = (|| b.seq(&[bi.counit.clone()?, bi.unit.clone()?]))();
    let left = (|| b.seq(&[bi.comul.clone()?, t.mor(&s.clone()?, &id(bo)?)?, bi.mul.clone()?]))();
    let right = (|| b.seq(&[bi.comul.clone()?, t.mor(&id(bo)?, &s.clone()?)?, bi.mul.clone()?]))();
    report.push(single(
        "hopf",
        "μ∘(s⊗1)∘d = η∘cu = μ∘(1⊗s)∘d",
        both_sides(b, left, right, unit_counit),
        vec![b.label(bo)],
    ));
    report
}

/// `B⋄−` for a bialgebra with respect to `⋄`, with `δ = d⋄1`, `ε = cu⋄1`,
/// `φ` the six-step composite through `∂r`, the symmetry and `∂l`, `φ0 = η⋄1`,
/// `ψ = (μ⋄1)∘(1⋄c⋄1)` and `ψ0 = η`. No laws are checked.
pub fn bialgebra_comonad(bi: &Bialgebra, bundle: &LindistBundle) -> Result<ComonadBundle> {
    let sym = bundle
        .sym
        .as_ref()
        .filter(|s| s.tensor == TensorTag::Par)
        .ok_or_else(|| Error::MissingStructure("B⋄− needs a symmetry of ⋄".into()))?;
    let backend = bundle.backend.clone();
    let bo = bi.carrier;
    let pr = bundle.par.clone();
    let st = bundle.star.clone();
    let c = sym.braid.clone();

    let g = {
        let (p1, p2, b) = (pr.clone(), pr.clone(), backend.clone());
        Functor::new("B⋄−", Variance::Covariant, move |a| p1.obj(bo, a), move |f| p2.mor(&b.identity(bo)?, f))
    };
    let side = |m: &Arrow, name: &str| {
        let (p, b, m) = (pr.clone(), backend.clone(), m.clone());
        Family::new(name, 1, move |x| p.mor(&m.clone()?, &b.identity(x[0])?))
    };
    let delta = side(&bi.comul, "δ");
    let eps = side(&bi.counit, "ε");

    let phi_map = {
        let (b, st, pr, c, bundle, mu) =
            (backend.clone(), st.clone(), pr.clone(), c.clone(), bundle.clone(), bi.mul.clone());
        Family::new("φ", 2, move |x| {
            let (u, v) = (x[0], x[1]);
            let id = |o| b.identity(o);
            let bv = pr.obj(bo, v)?;
            let uv = st.obj(u, v)?;
            b.seq(&[
                bundle.dr(bv, bo, u)?,
                pr.mor(&id(bo)?, &st.mor(&id(u)?, &c.at(&[bo, v])?)?)?,
                pr.mor(&id(bo)?, &bundle.dl(u, v, bo)?)?,
                pr.mor(&id(bo)?, &c.at(&[uv, bo])?)?,
                pr.mor(&mu.clone()?, &id(uv)?)?,
            ])
        })
    };
    let phi_unit = {
        let (b, pr, eta, i) = (backend.clone(), pr.clone(), bi.unit.clone(), st.unit);
        Family::new("φ0", 0, move |_| pr.mor(&eta.clone()?, &b.identity(i)?))
    };
    let psi_map = {
        let (b, pr, c, mu) = (backend.clone(), pr.clone(), c.clone(), bi.mul.clone());
        Family::new("ψ", 2, move |x| {
            let (u, v) = (x[0], x[1]);
            let id = |o| b.identity(o);
            b.seq(&[pr.mors(&[id(bo)?, c.at(&[u, bo])?, id(v)?])?, pr.mor(&mu.clone()?, &id(pr.obj(u, v)?)?)?])
        })
    };
    let psi_unit = {
        let eta = bi.unit.clone();
        Family::new("ψ0", 0, move |_| eta.clone())
    };
    Ok(ComonadBundle {
        name: "B⋄−".into(),
        backend,
        g,
        delta,
        eps,
        phi: Some(MonoidalStructure { map: phi_map, unit: phi_unit }),
        psi: Some(MonoidalStructure { map: psi_map, unit: psi_unit }),
    })
}

/// [`bialgebra_comonad`] after the bialgebra laws have passed.
pub fn comonad_from_bialgebra(bi: &Bialgebra, bundle: &LindistBundle, scope: &Scope) -> Result<ComonadBundle> {
    let sym = bundle
        .sym
        .as_ref()
        .filter(|s| s.tensor == TensorTag::Par)
        .ok_or_else(|| Error::MissingStructure("B⋄− needs a symmetry of ⋄".into()))?;
    let report = check_bialgebra(&bundle.backend, &bundle.par, &sym.braid, bi, scope);
    if !report.passed() {
        return Err(Error::precondition("bialgebra laws", report));
    }
    bialgebra_comonad(bi, bundle)
}

fn payload(a: &Arrow, name: &str) -> Result<Matrix> {
    match a {
        Ok(m) => m.matrix().cloned().ok_or_else(|| Error::InvalidParameter(format!("{name} is not a matrix"))),
        Err(e) => Err(Error::InvalidParameter(format!("{name}: {e}"))),
    }
}

/// `ν_A(f) = Σ_h t(h)⊗(h*⊗f)` as a matrix `a → n·n·a`, where `t` is a linear
/// endomorphism of `H` (`n = dim H`).
pub fn twisted_dual_coaction(t: &Matrix, a: usize) -> Matrix {
    let n = t.rows();
    let mut m = Matrix::zeros(n * n * a, a);
    for k in 0..n {
        for j in 0..n {
            let v = t.get(k, j);
            if v != 0 {
                for i in 0..a {
                    m.set(k * (n * a) + j * a + i, i, v);
                }
            }
        }
    }
    m
}

/// `H⊗−` on a matrix backend with `δ = d⊗1`, `ε = cu⊗1`,
/// `φ = (μ⊗1⊗1)∘(1⊗swap⊗1)`, `φ0 = η`, and the lift `ν` from the inverse
/// antipode, `ν′` from the antipode. Nothing is validated.
pub fn hopf_structure(h: &HopfAlgebra, sa: &StarAutonomous) -> Result<(ComonadBundle, NegationLift)> {
    let field =
        sa.backend.field().ok_or_else(|| Error::InvalidParameter("Hopf comonads need the matrix backend".into()))?;
    let bi = &h.bialgebra;
    let n = bi.carrier;
    let mu = payload(&bi.mul, "μ")?;
    let eta = payload(&bi.unit, "η")?;
    let d = payload(&bi.comul, "d")?;
    let cu = payload(&bi.counit, "cu")?;
    let s = payload(&h.antipode, "s")?;
    let sinv = s.inverse(&field);
    let backend = sa.backend.clone();
    let f = field;

    let g = Functor::new(
        "H⊗−",
        Variance::Covariant,
        move |a| Ok(n * a),
        move |m| match m.matrix() {
            Some(x) => {
                crate::kernel::check_size(n * x.rows(), n * x.cols())?;
                Ok(MatrixCat::morphism(Matrix::identity(n).kron(x, &f)))
            }
            None => Err(Fault::IllTyped("non-matrix payload".into())),
        },
    );
    let side = |m: Matrix, name: &str| {
        Family::new(name, 1, move |x| {
            crate::kernel::check_size(m.rows() * x[0], m.cols() * x[0])?;
            Ok(MatrixCat::morphism(m.kron(&Matrix::identity(x[0]), &field)))
        })
    };
    let phi = {
        let mu = mu.clone();
        Family::new("φ", 2, move |x| {
            let (u, v) = (x[0], x[1]);
            crate::kernel::check_size(n * u * v, n * n * u * v)?;
            let twist = Matrix::identity(n).kron(&swap_matrix(u, n), &field).kron(&Matrix::identity(v), &field);
            let mul = mu.kron(&Matrix::identity(u * v), &field);
            Ok(MatrixCat::morphism(mul.mul(&twist, &field)))
        })
    };
    let phi0 = Family::new("φ0", 0, move |_| Ok(MatrixCat::morphism(eta.clone())));
    let lift = |t: Option<Matrix>, name: &'static str| {
        Family::new(name, 1, move |x| match &t {
            Some(t) => {
                crate::kernel::check_size(n * n * x[0], x[0])?;
                Ok(MatrixCat::morphism(twisted_dual_coaction(t, x[0])))
            }
            None => Err(Fault::Missing { label: name.into(), dom: "s".into(), cod: "s⁻¹".into() }),
        })
    };
    let cb = ComonadBundle {
        name: "H⊗−".into(),
        backend,
        g,
        delta: side(d, "δ"),
        eps: side(cu, "ε"),
        phi: Some(MonoidalStructure { map: phi, unit: phi0 }),
        psi: None,
    };
    Ok((cb, NegationLift { nu: lift(sinv, "ν"), nup: lift(Some(s), "ν′") }))
}

/// [`hopf_structure`] after the Hopf laws pass; the output is validated
/// against the comonad, monoidal, lifting and star-autonomous comonad checks.
pub fn hopf_comonad(h: &HopfAlgebra, sa: &StarAutonomous, scope: &Scope) -> Result<(ComonadBundle, NegationLift)> {
    let backend = sa.backend.clone();
    let braid = matrix_swap_family();
    let laws = check_hopf(&backend, &sa.tensor, &braid, h, scope);
    if !laws.passed() {
        return Err(Error::precondition("Hopf algebra laws", laws));
    }
    let (cb, lift) = hopf_structure(h, sa)?;
    let mut report = check_comonad(&cb, scope);
    report.absorb(check_monoidal_comonad(&cb, &sa.tensor, TensorTag::Star, scope)?);
    report.absorb(check_nu(&cb, &sa.s, &sa.sp, &lift, scope));
    report.absorb(crate::star_comonad::check_star_comonad(&cb, sa, &lift, scope)?);
    if !report.passed() {
        return Err(Error::precondition("Hopf comonad validation", report));
    }
    Ok((cb, lift))
}

pub fn matrix_swap_family() -> Family {
    Family::new("c", 2, |x| Ok(MatrixCat::morphism(swap_matrix(x[0], x[1]))))
}

/// `ψ := φ`, `ψ0 := φ0`, for a comonad on a backend where `⋆` and `⋄`
/// coincide.
pub fn compact_par(cb: &ComonadBundle) -> ComonadBundle {
    let mut out = cb.clone();
    out.psi = cb.phi.as_ref().map(|m| MonoidalStructure { map: m.map.renamed("ψ"), unit: m.unit.renamed("ψ0") });
    out
}
