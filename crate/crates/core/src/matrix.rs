//! Dense matrices over a prime field.
//!
//! A morphism `m -> n` in the matrix category is an `n x m` matrix: column `j`
//! is the image of basis vector `j`. Tensor indices are row-major, so the basis
//! vector `x ⊗ y` of `X ⊗ Y` has index `x * dim(Y) + y`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix with a single 1 at `(r, c)`.
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(r, c, 1);
        m
    }

    /// Builds from rows; entries are reduced modulo `field`.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<u32>], field: &PrimeField) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let data = rows.iter().flatten().map(|&x| field.reduce(x as u64)).collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn try_from_rows(rows: Vec<Vec<u32>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `self * rhs`; panics on a shape mismatch (callers check types first).
    pub fn mul(&self, rhs: &Matrix, field: &PrimeField) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        let p = field.p() as u64;
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = v as u32;
            }
        }
        out
    }

    /// Kronecker product with row-major tensor indexing.
    pub fn kron(&self, rhs: &Matrix, field: &PrimeField) -> Matrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if b != 0 {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, field.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix, field: &PrimeField) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| field.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// First `(row, col, self, other)` where the entries differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize, u32, u32)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|idx| (idx / self.cols, idx % self.cols, self.data[idx], other.data[idx]))
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular or not square.
    pub fn inverse(&self, field: &PrimeField) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) != 0)?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(pivot, j));
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let scale = field.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, field.mul(a.get(col, j), scale));
                inv.set(col, j, field.mul(inv.get(col, j), scale));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, field.sub(a.get(r, j), field.mul(factor, a.get(col, j))));
                    inv.set(r, j, field.sub(inv.get(r, j), field.mul(factor, inv.get(col, j))));
                }
            }
        }
        Some(inv)
    }

    /// Number of `rows x cols` matrices over F_p, saturating at `u128::MAX`.
    pub fn count(rows: usize, cols: usize, field: &PrimeField) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..rows * cols {
            acc = acc.saturating_mul(field.p() as u128);
        }
        acc
    }

    /// Every `rows x cols` matrix over F_p in lexicographic order of the
    /// row-major entry vector.
    pub fn enumerate(rows: usize, cols: usize, field: PrimeField) -> MatrixEnumerator {
        MatrixEnumerator { current: Some(Matrix::zeros(rows, cols)), p: field.p() }
    }
}

pub struct MatrixEnumerator {
    current: Option<Matrix>,
    p: u32,
}

impl Iterator for MatrixEnumerator {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut carry = true;
        for slot in next.data.iter_mut().rev() {
            *slot += 1;
            if *slot == self.p {
                *slot = 0;
            } else {
                carry = false;
                break;
            }
        }
        if !carry {
            self.current = Some(next);
        }
        Some(out)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        Matrix::try_from_rows(rows).ok_or_else(|| serde::de::Error::custom("ragged matrix rows"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn f2_row_times_column_is_zero() {
        let f2 = f(2);
        let row = Matrix::from_rows(&[vec![1, 1]], &f2);
        let col = Matrix::from_rows(&[vec![1], vec![1]], &f2);
        assert_eq!(row.mul(&col, &f2), Matrix::zeros(1, 1));
    }

    #[test]
    fn kron_matches_naive_double_loop() {
        let f5 = f(5);
        let a = Matrix::from_rows(&[vec![1, 2, 0], vec![3, 4, 1]], &f5);
        let b = Matrix::from_rows(&[vec![2, 1], vec![0, 3]], &f5);
        let k = a.kron(&b, &f5);
        assert_eq!((k.rows(), k.cols()), (4, 6));
        for i in 0..2 {
            for j in 0..3 {
                for r in 0..2 {
                    for c in 0..2 {
                        let expected = (a.get(i, j) * b.get(r, c)) % 5;
                        assert_eq!(k.get(i * 2 + r, j * 2 + c), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_exhaustive_and_ordered() {
        let all: Vec<_> = Matrix::enumerate(2, 2, f(2)).collect();
        assert_eq!(all.len(), 16);
        assert!(all.windows(2).all(|w| w[0].entries() < w[1].entries()));
        assert_eq!(Matrix::count(2, 2, &f(2)), 16);
        assert_eq!(Matrix::enumerate(1, 2, f(3)).count(), 9);
    }

    #[test]
    fn inverse_round_trip() {
        let f7 = f(7);
        let m = Matrix::from_rows(&[vec![2, 3], vec![1, 4]], &f7);
        let inv = m.inverse(&f7).unwrap();
        assert_eq!(m.mul(&inv, &f7), Matrix::identity(2));
        let singular = Matrix::from_rows(&[vec![1, 2], vec![2, 4]], &f7);
        assert!(singular.inverse(&f7).is_none());
    }

    #[test]
    fn serde_as_rows() {
        let m = Matrix::from_rows(&[vec![1, 0], vec![0, 1]], &f(2));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1,0],[0,1]]");
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Matrix>("[[1],[0,1]]").is_err());
    }
}
