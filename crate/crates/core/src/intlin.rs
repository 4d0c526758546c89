//! Integer linear algebra: fraction-free determinants, integer kernels and
//! conversions between integer and rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exactnum::{CycMatrix, CycNum, Matrix, QMatrix};

pub type ZMatrix = Matrix<BigInt>;

pub fn zmatrix(rows: &[&[i64]]) -> ZMatrix {
    Matrix::from_i64_rows(rows)
}

pub fn to_q(m: &ZMatrix) -> QMatrix {
    m.map(|z| BigRational::from_integer(z.clone()))
}

pub fn z_to_cyc(m: &ZMatrix) -> CycMatrix {
    m.map(|z| CycNum::from_rational(BigRational::from_integer(z.clone())))
}

/// Integer matrix if every entry of `m` is an integer.
pub fn to_z(m: &QMatrix) -> Option<ZMatrix> {
    let d: Option<Vec<BigInt>> =
        m.entries().map(|q| q.is_integer().then(|| q.numer().clone())).collect();
    d.map(|d| Matrix::from_vec(m.rows(), m.cols(), d))
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det(m: &ZMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_rows();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// A basis of the saturated integer kernel {v ∈ Zⁿ : A v = 0}, as columns.
///
/// Column operations by a unimodular matrix bring A to echelon form; the
/// transformed unit columns over zero columns of A span the kernel lattice.
pub fn integer_kernel(a: &ZMatrix) -> ZMatrix {
    let (m, n) = (a.rows(), a.cols());
    // columns of the augmented matrix [A; I]
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|c| {
            let mut v = a.col(c);
            v.extend((0..n).map(|i| BigInt::from((i == c) as i64)));
            v
        })
        .collect();
    let mut piv = 0;
    for r in 0..m {
        if piv == n {
            break;
        }
        loop {
            let best = (piv..n)
                .filter(|&c| !cols[c][r].is_zero())
                .min_by(|&x, &y| cols[x][r].abs().cmp(&cols[y][r].abs()));
            let Some(b) = best else { break };
            cols.swap(piv, b);
            let mut done = true;
            for c in piv + 1..n {
                if cols[c][r].is_zero() {
                    continue;
                }
                let q = cols[c][r].div_floor(&cols[piv][r]);
                let (head, tail) = cols.split_at_mut(c);
                let p = &head[piv];
                for (x, y) in tail[0].iter_mut().zip(p) {
                    *x -= &q * y;
                }
                if !tail[0][r].is_zero() {
                    done = false;
                }
            }
            if done {
                piv += 1;
                break;
            }
        }
    }
    let kcols: Vec<Vec<BigInt>> = cols[piv..].iter().map(|c| c[m..].to_vec()).collect();
    let mut k = Matrix::zeros(n, kcols.len());
    for (j, c) in kcols.iter().enumerate() {
        for i in 0..n {
            k.set(i, j, c[i].clone());
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_rational() {
        let m = zmatrix(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 0, 1, 5], &[7, 1, 1, 1]]);
        let dq = to_q(&m).det();
        assert_eq!(BigRational::from_integer(det(&m)), dq);
        assert_eq!(det(&zmatrix(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&zmatrix(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn kernel_is_saturated() {
        // kernel of (2, 4) over Z is spanned by (2, -1)
        let a = zmatrix(&[&[2, 4]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let g = num_integer::Integer::gcd(k.get(0, 0), k.get(1, 0));
        assert_eq!(g, BigInt::from(1));
    }

    #[test]
    fn kernel_rank_matches_rational() {
        let a = zmatrix(&[&[1, 2, 3, 4, 5], &[2, 4, 6, 8, 10], &[0, 3, 0, 3, 0]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 5 - to_q(&a).rank());
        assert!(a.mul(&k).is_zero());
        assert_eq!(to_q(&k).rank(), k.cols());
    }
}
