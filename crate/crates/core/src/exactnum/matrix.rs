//! Dense matrices over exact rings and fields: elimination, kernels,
//! determinants, inverses and characteristic polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Conjugate, Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.data[r * self.cols + c].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Matrix<T> {
        assert_eq!(data.len(), rows * cols, "data length must equal rows*cols");
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Matrix<T>> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Result<Matrix<T>> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.rows, cols: idx.len(), data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.cols * idx.len());
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn vstack(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Matrix<T> {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix<T> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Matrix<T> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn scalar(n: usize, s: &T) -> Matrix<T> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn column_vector(v: Vec<T>) -> Matrix<T> {
        let n = v.len();
        Matrix { rows: n, cols: 1, data: v }
    }

    pub fn block_diag(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                m.set(r, c, a.get(r, c).clone());
            }
        }
        for r in 0..b.rows {
            for c in 0..b.cols {
                m.set(a.rows + r, a.cols + c, b.get(r, c).clone());
            }
        }
        m
    }

    pub fn try_mul(&self, o: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "product {}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let data = T::matrix_product(self.rows, self.cols, o.cols, &self.data, &o.data);
        Ok(Matrix { rows: self.rows, cols: o.cols, data })
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, o: &Matrix<T>) -> Matrix<T> {
        self.try_mul(o).expect("matrix shapes must agree")
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix<T>) -> Matrix<T> {
        assert!(self.rows == o.rows && self.cols == o.cols, "shapes must agree");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix<T>) -> Matrix<T> {
        assert!(self.rows == o.rows && self.cols == o.cols, "shapes must agree");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|a| a.mul(s))
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(Ring::neg)
    }

    pub fn pow(&self, e: u64) -> Matrix<T> {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..=r).all(|c| *self.get(r, c) == self.get(c, r).neg()))
    }

    /// Kronecker product self ⊗ o, index (i, k) ↦ i·o.rows + k.
    pub fn kron(&self, o: &Matrix<T>) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m.set(i * o.rows + k, j * o.cols + l, a.mul(o.get(k, l)));
                    }
                }
            }
        }
        m
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Bilinear value uᵀ·self·v.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> T {
        let mv = self.mul_vec(v);
        u.iter().zip(&mv).fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    /// Characteristic polynomial det(xI − A) by the division-free Berkowitz
    /// recursion; coefficients lowest degree first, monic.
    pub fn charpoly_berkowitz(&self) -> Vec<T> {
        assert!(self.is_square());
        let n = self.rows;
        // vect holds coefficients highest degree first
        let mut vect: Vec<T> = vec![T::one()];
        if n == 0 {
            return vect;
        }
        vect = vec![T::one(), self.get(0, 0).neg()];
        for r in 1..n {
            // A = [[a_rr-like]] partition: row r, columns 0..r
            let s: Vec<T> = (0..r).map(|c| self.get(r, c).clone()).collect();
            let cvec: Vec<T> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let a = self.get(r, r).clone();
            // Toeplitz column: 1, -a, -s c, -s A c, ...
            let mut col = vec![T::one(), a.neg()];
            let mut v = cvec.clone();
            for _ in 0..r {
                let sv = s.iter().zip(&v).fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
                col.push(sv.neg());
                // v ← A_r v
                v = (0..r)
                    .map(|i| (0..r).fold(T::zero(), |acc, k| acc.add(&self.get(i, k).mul(&v[k]))))
                    .collect();
            }
            // new = T · vect, T lower-triangular Toeplitz of size (r+2)x(r+1)
            let mut next = vec![T::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = T::zero();
                for (j, vj) in vect.iter().enumerate() {
                    if i >= j {
                        if let Some(t) = col.get(i - j) {
                            acc = acc.add(&t.mul(vj));
                        }
                    }
                }
                *slot = acc;
            }
            vect = next;
        }
        vect.reverse();
        vect
    }
}

impl<T: Ring + Conjugate> Matrix<T> {
    pub fn conj(&self) -> Matrix<T> {
        self.map(Conjugate::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix<T> {
        self.conj().transpose()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..=r).all(|c| *self.get(r, c) == self.get(c, r).conj()))
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Matrix<T> {
    pub fn rref(&self) -> Echelon<T> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..a.cols {
            if prow == a.rows {
                break;
            }
            let Some(p) = (prow..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if p != prow {
                for c in 0..a.cols {
                    a.data.swap(p * a.cols + c, prow * a.cols + c);
                }
            }
            let inv = a.get(prow, col).inv().expect("pivot is nonzero");
            for c in col..a.cols {
                let v = a.get(prow, c).mul(&inv);
                a.set(prow, c, v);
            }
            for r in 0..a.rows {
                if r == prow {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..a.cols {
                    let pv = a.get(prow, c);
                    if !pv.is_zero() {
                        let v = a.get(r, c).sub(&f.mul(pv));
                        a.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel {v : A v = 0}, one column per free variable.
    pub fn kernel(&self) -> Matrix<T> {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, T::one());
            for (r, &p) in pivots.iter().enumerate() {
                let v = reduced.get(r, f);
                if !v.is_zero() {
                    k.set(p, j, v.neg());
                }
            }
        }
        k
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return T::zero();
            };
            if p != col {
                for c in 0..n {
                    a.data.swap(p * n + c, col * n + c);
                }
                det = det.neg();
            }
            let pv = a.get(col, col).clone();
            det = det.mul(&pv);
            let inv = pv.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = a.get(r, col).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a.get(r, c).sub(&f.mul(a.get(col, c)));
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix<T>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n))?;
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Ok(e.reduced.select_columns(&idx))
    }

    /// Solve self·X = rhs; `None` if inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &Matrix<T>) -> Result<Option<Matrix<T>>> {
        let aug = self.hstack(rhs)?;
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, reduced.get(r, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    /// True iff every column of `other` lies in the column span of `self`.
    pub fn column_span_contains(&self, other: &Matrix<T>) -> bool {
        let r = self.rank();
        self.hstack(other).map(|m| m.rank() == r).unwrap_or(false)
    }

    pub fn same_column_span(&self, other: &Matrix<T>) -> bool {
        self.rows == other.rows && self.rank() == other.rank() && self.column_span_contains(other)
    }

    /// Characteristic polynomial via Hessenberg reduction, lowest degree first.
    pub fn charpoly(&self) -> Vec<T> {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            let Some(p) = (k + 1..n).find(|&i| !h.get(i, k).is_zero()) else {
                continue;
            };
            if p != k + 1 {
                for c in 0..n {
                    h.data.swap(p * n + c, (k + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + k + 1);
                }
            }
            let inv = h.get(k + 1, k).inv().expect("nonzero pivot");
            for j in k + 2..n {
                let m = h.get(j, k).mul(&inv);
                if m.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = h.get(j, c).sub(&m.mul(h.get(k + 1, c)));
                    h.set(j, c, v);
                }
                for r in 0..n {
                    let v = h.get(r, k + 1).add(&m.mul(h.get(r, j)));
                    h.set(r, k + 1, v);
                }
            }
        }
        // p_0 = 1; p_m = (x − h_mm) p_{m−1} − Σ_{i<m} h_{i,m} (∏_{j=i+1..m} h_{j,j−1}) p_{i−1}
        let mut polys: Vec<Vec<T>> = vec![vec![T::one()]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![T::zero(); m + 2];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&h.get(m, m).mul(c));
            }
            let mut prod = T::one();
            for i in (0..m).rev() {
                prod = prod.mul(h.get(i + 1, i));
                if prod.is_zero() {
                    break;
                }
                let coef = h.get(i, m).mul(&prod);
                if coef.is_zero() {
                    continue;
                }
                for (k, c) in polys[i].iter().enumerate() {
                    next[k] = next[k].sub(&coef.mul(c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyclotomic::CycNum;
    use crate::exactnum::field::rat;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn kernel_and_rank() {
        let a: Matrix<Q> = Matrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn det_inverse_solve() {
        let a: Matrix<Q> = Matrix::from_i64_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), rat(1));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b: Matrix<Q> = Matrix::from_i64_rows(&[&[1], &[2]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul(&x), b);
        let s: Matrix<Q> = Matrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert!(s.solve(&b).unwrap().is_none());
    }

    #[test]
    fn charpoly_agrees_with_berkowitz() {
        let a: Matrix<Q> = Matrix::from_i64_rows(&[
            &[0, 1, 0, 2],
            &[3, -1, 4, 0],
            &[0, 0, 2, 1],
            &[1, 5, 0, -2],
        ]);
        assert_eq!(a.charpoly(), a.charpoly_berkowitz());
        let z: Matrix<Q> = Matrix::zeros(3, 3);
        assert_eq!(z.charpoly(), vec![rat(0), rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn cyclotomic_kernel() {
        // companion of x^2 + x + 1 has eigenvalue ζ3
        let c: Matrix<CycNum> = Matrix::from_i64_rows(&[&[0, -1], &[1, -1]]);
        let m = c.sub(&Matrix::scalar(2, &CycNum::zeta(3)));
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn kron_shape() {
        let a: Matrix<Q> = Matrix::identity(2);
        let b: Matrix<Q> = Matrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert!(k.is_antisymmetric());
    }
}
