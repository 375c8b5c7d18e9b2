use crate::field::PrimeField;
use crate::matrix::Matrix;

use super::{Fault, Morphism, Obj, Payload};

/// Largest matrix (in entries) any construction is allowed to materialise.
/// Larger composites are reported as undefined and their tuples skipped.
pub const MAX_ENTRIES: usize = 1 << 22;

/// Faults with [`Fault::Undefined`] when a `rows x cols` matrix would exceed
/// [`MAX_ENTRIES`].
pub fn check_size(rows: usize, cols: usize) -> Result<(), Fault> {
    match rows.checked_mul(cols) {
        Some(n) if n <= MAX_ENTRIES => Ok(()),
        _ => Err(Fault::Undefined(format!("{rows}x{cols} matrix exceeds the size cap"))),
    }
}

/// Finite-dimensional vector spaces over F_p with chosen bases: objects are
/// dimensions, morphisms are matrices. `declared` is the finite object set
/// checks quantify over by default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCat {
    field: PrimeField,
    declared: Vec<Obj>,
}

impl MatrixCat {
    pub fn new(field: PrimeField, mut declared: Vec<Obj>) -> Self {
        declared.sort_unstable();
        declared.dedup();
        Self { field, declared }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn declared(&self) -> &[Obj] {
        &self.declared
    }

    pub fn morphism(m: Matrix) -> Morphism {
        Morphism { dom: m.cols(), cod: m.rows(), payload: Payload::Matrix(m) }
    }
}
