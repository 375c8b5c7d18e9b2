//! Runtime structure for the concrete families of instances.

use std::sync::Arc;

use crate::comonad::{ComonadBundle, MonoidalStructure, NegationLift};
use crate::field::PrimeField;
use crate::kernel::{
    check_size, Backend, Family, Fault, Functor, MatrixCat, Obj, Symmetry, Tensor, TensorTag, ThinPoset, Variance,
};
use crate::lindist::{LindistBundle, Negation};
use crate::matrix::Matrix;
use crate::star::StarAutonomous;

/// Thin tensors, linear distributions given by order witnesses.
pub fn thin_lindist(backend: Arc<Backend>, star: (Obj, Vec<Vec<Obj>>), par: (Obj, Vec<Vec<Obj>>)) -> LindistBundle {
    let st = Tensor::thin(backend.clone(), TensorTag::Star, star.0, star.1);
    let pr = Tensor::thin(backend.clone(), TensorTag::Par, par.0, par.1);
    let dl = {
        let (s1, p1, s2, p2) = (st.clone(), pr.clone(), st.clone(), pr.clone());
        Family::thin(
            backend.clone(),
            "∂l",
            3,
            move |x| s1.obj(x[0], p1.obj(x[1], x[2])?),
            move |x| p2.obj(s2.obj(x[0], x[1])?, x[2]),
        )
    };
    let dr = {
        let (s1, p1, s2, p2) = (st.clone(), pr.clone(), st.clone(), pr.clone());
        Family::thin(
            backend.clone(),
            "∂r",
            3,
            move |x| s1.obj(p1.obj(x[1], x[2])?, x[0]),
            move |x| p2.obj(x[1], s2.obj(x[2], x[0])?),
        )
    };
    let sym = {
        let (p1, p2) = (pr.clone(), pr.clone());
        Symmetry {
            tensor: TensorTag::Par,
            braid: Family::thin(backend.clone(), "c", 2, move |x| p1.obj(x[0], x[1]), move |x| p2.obj(x[1], x[0])),
        }
    };
    LindistBundle { backend, star: st, par: pr, dl, dr, sym: Some(sym) }
}

/// Thin negations from the object tables of `S` and `S′`.
pub fn thin_negation(bundle: &LindistBundle, s: Vec<Obj>, sp: Vec<Obj>) -> Negation {
    let b = bundle.backend.clone();
    let sf = Functor::thin(b.clone(), "S", Variance::Contravariant, s);
    let spf = Functor::thin(b.clone(), "S′", Variance::Contravariant, sp);
    let (st, pr) = (bundle.star.clone(), bundle.par.clone());
    let (i, j) = (bundle.i(), bundle.j());
    let e = {
        let (s, st) = (sf.clone(), st.clone());
        Family::thin(b.clone(), "e", 1, move |x| st.obj(s.obj(x[0])?, x[0]), move |_| Ok(j))
    };
    let n = {
        let (s, pr) = (sf.clone(), pr.clone());
        Family::thin(b.clone(), "n", 1, move |_| Ok(i), move |x| pr.obj(x[0], s.obj(x[0])?))
    };
    let ep = {
        let (s, st) = (spf.clone(), st.clone());
        Family::thin(b.clone(), "e′", 1, move |x| st.obj(x[0], s.obj(x[0])?), move |_| Ok(j))
    };
    let np = {
        let (s, pr) = (spf.clone(), pr.clone());
        Family::thin(b.clone(), "n′", 1, move |_| Ok(i), move |x| pr.obj(s.obj(x[0])?, x[0]))
    };
    Negation { s: sf, sp: spf, e, n, ep, np }
}

type ObjExpr = Box<dyn Fn(&[Obj]) -> Result<Obj, Fault> + Send + Sync>;

/// Thin star-autonomous structure; every structure map is an order witness.
pub fn thin_star(backend: Arc<Backend>, tensor: (Obj, Vec<Vec<Obj>>), s: Vec<Obj>, sp: Vec<Obj>) -> StarAutonomous {
    let t = Tensor::thin(backend.clone(), TensorTag::Star, tensor.0, tensor.1);
    let sf = Functor::thin(backend.clone(), "S", Variance::Contravariant, s);
    let spf = Functor::thin(backend.clone(), "S′", Variance::Contravariant, sp);
    let w = |name: &str, arity: usize, dom: ObjExpr, cod: ObjExpr| Family::thin(backend.clone(), name, arity, dom, cod);
    let sps = {
        let (s, sp) = (sf.clone(), spf.clone());
        move |x: &[Obj]| sp.obj(s.obj(x[0])?)
    };
    let ssp = {
        let (s, sp) = (sf.clone(), spf.clone());
        move |x: &[Obj]| s.obj(sp.obj(x[0])?)
    };
    let me = |x: &[Obj]| Ok(x[0]);
    let eval = {
        let (t1, s1, s2) = (t.clone(), sf.clone(), sf.clone());
        w("e_{A,B}", 2, Box::new(move |x| t1.obj(s1.obj(t1.obj(x[0], x[1])?)?, x[0])), Box::new(move |x| s2.obj(x[1])))
    };
    let eval_p = {
        let (t1, s1, s2) = (t.clone(), spf.clone(), spf.clone());
        // indexed [B, A]
        w("e′_{B,A}", 2, Box::new(move |x| t1.obj(x[0], s1.obj(t1.obj(x[1], x[0])?)?)), Box::new(move |x| s2.obj(x[1])))
    };
    StarAutonomous {
        backend: backend.clone(),
        tensor: t,
        s: sf,
        sp: spf,
        to_sps: w("A→S′SA", 1, Box::new(me), Box::new(sps.clone())),
        from_sps: w("S′SA→A", 1, Box::new(sps), Box::new(me)),
        to_ssp: w("A→SS′A", 1, Box::new(me), Box::new(ssp.clone())),
        from_ssp: w("SS′A→A", 1, Box::new(ssp), Box::new(me)),
        eval,
        eval_p,
    }
}

pub fn matrix_backend(p: u32, objects: Vec<Obj>) -> Result<Arc<Backend>, crate::Error> {
    let field = PrimeField::new(p).map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
    Ok(Arc::new(Backend::Matrix(MatrixCat::new(field, objects))))
}

fn field_of(b: &Backend) -> PrimeField {
    b.field().expect("matrix backend")
}

fn mat(m: Matrix) -> Result<crate::kernel::Morphism, Fault> {
    Ok(MatrixCat::morphism(m))
}

/// Kronecker product with the backend's field.
pub fn kronecker(backend: Arc<Backend>, tag: TensorTag) -> Tensor {
    let f = field_of(&backend);
    Tensor::new(
        tag,
        1,
        |a, b| Ok(a * b),
        move |g, h| match (g.matrix(), h.matrix()) {
            (Some(x), Some(y)) => {
                check_size(x.rows() * y.rows(), x.cols() * y.cols())?;
                mat(x.kron(y, &f))
            }
            _ => Err(Fault::IllTyped("non-matrix payload".into())),
        },
    )
}

/// `c_{a,b}: a⊗b → b⊗a`, sending `x⊗y` to `y⊗x`.
pub fn swap_matrix(a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            m.set(j * a + i, i * b + j, 1);
        }
    }
    m
}

/// Transpose; the dual on finite-dimensional spaces with chosen bases.
pub fn transpose_functor(name: &str) -> Functor {
    Functor::new(name, Variance::Contravariant, Ok, |f| match f.matrix() {
        Some(m) => mat(m.transpose()),
        None => Err(Fault::IllTyped("non-matrix payload".into())),
    })
}

/// `⋆ = ⋄ = ⊗`, identity distributions, swap symmetry.
pub fn matrix_lindist(backend: Arc<Backend>) -> LindistBundle {
    let id3 = |name: &str| {
        Family::new(name, 3, |x| {
            let n = x[0] * x[1] * x[2];
            check_size(n, n)?;
            mat(Matrix::identity(n))
        })
    };
    LindistBundle {
        star: kronecker(backend.clone(), TensorTag::Star),
        par: kronecker(backend.clone(), TensorTag::Par),
        dl: id3("∂l"),
        dr: id3("∂r"),
        sym: Some(Symmetry { tensor: TensorTag::Par, braid: Family::new("c", 2, |x| mat(swap_matrix(x[0], x[1]))) }),
        backend,
    }
}

/// The pairing `SA⊗A → 1` as a row vector.
pub fn pairing_row(a: usize) -> Matrix {
    let mut m = Matrix::zeros(1, a * a);
    for i in 0..a {
        m.set(0, i * a + i, 1);
    }
    m
}

pub fn matrix_negation() -> Negation {
    let row = |name: &str| {
        Family::new(name, 1, |x| {
            check_size(1, x[0] * x[0])?;
            mat(pairing_row(x[0]))
        })
    };
    let col = |name: &str| {
        Family::new(name, 1, |x| {
            check_size(1, x[0] * x[0])?;
            mat(pairing_row(x[0]).transpose())
        })
    };
    Negation {
        s: transpose_functor("S"),
        sp: transpose_functor("S′"),
        e: row("e"),
        n: col("n"),
        ep: row("e′"),
        np: col("n′"),
    }
}

/// `e_{A,B}: S(A⊗B)⊗A → SB`, partial evaluation in the first factor.
pub fn partial_eval(a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(b, a * b * a);
    for i in 0..a {
        for j in 0..b {
            m.set(j, (i * b + j) * a + i, 1);
        }
    }
    m
}

/// `e′_{B,A}: B⊗S′(A⊗B) → S′A`, partial evaluation in the last factor.
pub fn partial_eval_p(b: usize, a: usize) -> Matrix {
    let mut m = Matrix::zeros(a, b * a * b);
    for i in 0..a {
        for j in 0..b {
            m.set(i, j * (a * b) + i * b + j, 1);
        }
    }
    m
}

pub fn matrix_star(backend: Arc<Backend>) -> StarAutonomous {
    let id1 = |name: &str| {
        Family::new(name, 1, |x| {
            check_size(x[0], x[0])?;
            mat(Matrix::identity(x[0]))
        })
    };
    StarAutonomous {
        tensor: kronecker(backend.clone(), TensorTag::Star),
        s: transpose_functor("S"),
        sp: transpose_functor("S′"),
        to_sps: id1("A→S′SA"),
        from_sps: id1("S′SA→A"),
        to_ssp: id1("A→SS′A"),
        from_ssp: id1("SS′A→A"),
        eval: Family::new("e_{A,B}", 2, |x| {
            check_size(x[1], x[0] * x[1] * x[0])?;
            mat(partial_eval(x[0], x[1]))
        }),
        eval_p: Family::new("e′_{B,A}", 2, |x| {
            check_size(x[1], x[0] * x[1] * x[0])?;
            mat(partial_eval_p(x[0], x[1]))
        }),
        backend,
    }
}

/// Łukasiewicz chain `{0, 1/(n-1), ..., 1}` as a thin backend with its
/// tensor tables: `a⋆b = max(0, a+b-1)`, `a⋄b = min(1, a+b)`, `Sa = 1-a`.
pub struct Lukasiewicz {
    pub backend: Arc<Backend>,
    pub star: Vec<Vec<Obj>>,
    pub par: Vec<Vec<Obj>>,
    pub neg: Vec<Obj>,
}

pub fn lukasiewicz_tables(n: usize) -> Lukasiewicz {
    let top = n - 1;
    let labels: Vec<String> = (0..n).map(|k| num_rational::Ratio::new(k, top.max(1)).to_string()).collect();
    let backend = Arc::new(Backend::Thin(ThinPoset::chain(&labels)));
    let star = (0..n).map(|a| (0..n).map(|b| (a + b).saturating_sub(top)).collect()).collect();
    let par = (0..n).map(|a| (0..n).map(|b| (a + b).min(top)).collect()).collect();
    let neg = (0..n).map(|a| top - a).collect();
    Lukasiewicz { backend, star, par, neg }
}

/// A monotone map `g` on a thin backend as a comonad: `δ`, `ε` and the
/// structure maps for each given tensor are order witnesses, so any of them
/// may be missing.
pub fn interior_comonad(
    backend: Arc<Backend>,
    g: Vec<Obj>,
    star: Option<&Tensor>,
    par: Option<&Tensor>,
) -> ComonadBundle {
    let gf = Functor::thin(backend.clone(), "G", Variance::Covariant, g);
    let delta = {
        let (g1, g2) = (gf.clone(), gf.clone());
        Family::thin(backend.clone(), "δ", 1, move |x| g1.obj(x[0]), move |x| g2.obj(g2.obj(x[0])?))
    };
    let eps = {
        let g1 = gf.clone();
        Family::thin(backend.clone(), "ε", 1, move |x| g1.obj(x[0]), |x| Ok(x[0]))
    };
    let structure = |t: &Tensor, name: &str| {
        let (t1, t2, g1, g2, g3) = (t.clone(), t.clone(), gf.clone(), gf.clone(), gf.clone());
        let unit = t.unit;
        MonoidalStructure {
            map: Family::thin(
                backend.clone(),
                name,
                2,
                move |x| t1.obj(g1.obj(x[0])?, g1.obj(x[1])?),
                move |x| g2.obj(t2.obj(x[0], x[1])?),
            ),
            unit: Family::thin(backend.clone(), &format!("{name}0"), 0, move |_| Ok(unit), move |_| g3.obj(unit)),
        }
    };
    ComonadBundle {
        name: "interior".into(),
        backend: backend.clone(),
        phi: star.map(|t| structure(t, "φ")),
        psi: par.map(|t| structure(t, "ψ")),
        g: gf,
        delta,
        eps,
    }
}

/// `ν_A: SA → GSGA` and `ν′_A: S′A → GS′GA` as order witnesses.
pub fn interior_lift(cb: &ComonadBundle, s: &Functor, sp: &Functor) -> NegationLift {
    let lift = |neg: &Functor, name: &str| {
        let (n1, n2, g) = (neg.clone(), neg.clone(), cb.g.clone());
        Family::thin(cb.backend.clone(), name, 1, move |x| n1.obj(x[0]), move |x| g.obj(n2.obj(g.obj(x[0])?)?))
    };
    NegationLift { nu: lift(s, "ν"), nup: lift(sp, "ν′") }
}
