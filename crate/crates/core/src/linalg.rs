//! Dense exact linear algebra over [`Scalar`].
//!
//! Elimination is fraction-free (Bareiss): every update has the form
//! `(p * a_ij - a_ic * a_rj) / prev` with `prev` the previous pivot, so
//! intermediate entries stay as minors of the input instead of growing as
//! nested fractions. The reduced echelon form, and therefore every kernel
//! basis, is canonical.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
}

pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn diag(values: &[Scalar]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix helper, mostly for fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Result<Scalar, LinalgError> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self[(i, i)].clone()).sum())
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch("shape mismatch in subtraction".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Stacks `blocks` vertically; all blocks need the same column count.
    pub fn vstack(blocks: &[Matrix]) -> Result<Matrix, LinalgError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(LinalgError::DimensionMismatch("vstack column counts differ".into()));
        }
        Ok(Matrix {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            entries: blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect(),
        })
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Fraction-free forward elimination. Returns the echelon form, the
    /// pivot columns and the parity of the row swaps performed.
    fn bareiss(&self) -> (Matrix, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut prev = Scalar::one();
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
                odd = !odd;
            }
            let pivot = m[(r, c)].clone();
            for i in r + 1..m.rows {
                let lead = m[(i, c)].clone();
                for j in c + 1..m.cols {
                    let num = &(&pivot * &m[(i, j)]) - &(&lead * &m[(r, j)]);
                    m[(i, j)] = num.checked_div(&prev).expect("Bareiss pivot is nonzero");
                }
                m[(i, c)] = Scalar::zero();
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        (m, pivots, odd)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (mut m, pivots, _) = self.bareiss();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..r {
                let factor = m[(i, c)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = &m[(i, j)] - &(&factor * &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
        }
        // rows below the rank are already zero
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Rank plus a canonical kernel basis: one vector per free column,
    /// with a 1 in that column and the negated pivot-row entries elsewhere.
    pub fn rank_kernel(&self) -> (usize, Vec<Vector>) {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                if pc < free {
                    v[pc] = -&r[(row, free)];
                }
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    pub fn kernel(&self) -> Vec<Vector> {
        self.rank_kernel().1
    }

    pub fn determinant(&self) -> Result<Scalar, LinalgError> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let (m, pivots, odd) = self.bareiss();
        if pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        let det = m[(self.rows - 1, self.cols - 1)].clone();
        Ok(if odd { -det } else { det })
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }
}

/// Canonical basis of the simultaneous eigenspace `{v : M_g v = w_g v for all g}`.
pub fn fixed_space(matrices: &[Matrix], weights: &[Scalar]) -> Result<Vec<Vector>, LinalgError> {
    if matrices.len() != weights.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} matrices but {} weights",
            matrices.len(),
            weights.len()
        )));
    }
    let Some(first) = matrices.first() else {
        return Err(LinalgError::DimensionMismatch("no matrices given".into()));
    };
    let n = first.rows;
    let mut blocks = Vec::with_capacity(matrices.len());
    for (m, w) in matrices.iter().zip(weights) {
        if !m.is_square() || m.rows != n {
            return Err(LinalgError::DimensionMismatch(format!(
                "expected {n}x{n} matrices, got {}x{}",
                m.rows, m.cols
            )));
        }
        blocks.push(m.checked_sub(&Matrix::identity(n).scale(w))?);
    }
    Ok(Matrix::vstack(&blocks)?.kernel())
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shapes agree")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank_kernel() {
        let (r, k) = Matrix::identity(3).rank_kernel();
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let (r, k) = Matrix::zeros(2, 3).rank_kernel();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn heisenberg_second_differential() {
        // columns x^y, x^z, y^z; rows x, y, z; d(x^y) = -z
        let m = Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[-1, 0, 0]]);
        let (r, k) = m.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn kernel_is_canonical() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k[0], vec![Scalar::from_int(-2), Scalar::one(), Scalar::zero()]);
        assert_eq!(k[1], vec![Scalar::from_int(-3), Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn determinants() {
        assert_eq!(
            Matrix::diag(&[Scalar::from_int(-1), Scalar::from_int(-1)])
                .determinant()
                .unwrap(),
            Scalar::one()
        );
        let w = Scalar::zeta(3);
        assert_eq!(
            Matrix::diag(&[w.clone(), Scalar::one(), Scalar::one()])
                .determinant()
                .unwrap(),
            w
        );
        assert_eq!(
            Matrix::from_i64(&[&[0, -1], &[1, 0]]).determinant().unwrap(),
            Scalar::one()
        );
        assert_eq!(
            Matrix::from_i64(&[&[0, 1], &[1, 0]]).determinant().unwrap(),
            Scalar::from_int(-1)
        );
        assert_eq!(
            Matrix::from_i64(&[&[1, 2], &[2, 4]]).determinant().unwrap(),
            Scalar::zero()
        );
        assert!(matches!(
            Matrix::zeros(2, 3).determinant(),
            Err(LinalgError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert_eq!(
            Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(),
            Err(LinalgError::Singular)
        );
    }

    #[test]
    fn fixed_space_examples() {
        let full = fixed_space(&[Matrix::identity(2)], &[Scalar::one()]).unwrap();
        assert_eq!(full.len(), 2);
        let m = Matrix::diag(&[Scalar::one(), Scalar::from_int(-1)]);
        let e1 = fixed_space(&[m], &[Scalar::one()]).unwrap();
        assert_eq!(e1, vec![vec![Scalar::one(), Scalar::zero()]]);
        assert!(matches!(
            fixed_space(&[Matrix::identity(2)], &[]),
            Err(LinalgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn regular_representation_of_c3() {
        // left translation by lambda on basis (1, lambda, lambda^2)
        let shift = Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let omega = Scalar::zeta(3).pow(2).unwrap();
        let weight = omega.inv().unwrap();
        let sol = fixed_space(&[shift], &[weight]).unwrap();
        assert_eq!(sol.len(), 1);
        let expected = [omega.clone(), omega.pow(2).unwrap(), Scalar::one()];
        // proportionality: expected = c * sol
        let c = expected[2].checked_div(&sol[0][2]).unwrap();
        for (e, s) in expected.iter().zip(&sol[0]) {
            assert_eq!(e, &(&c * s));
        }
    }
}
