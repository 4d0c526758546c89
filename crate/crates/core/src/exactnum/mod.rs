//! Exact arithmetic: cyclotomic fields, rational polynomials, matrices and
//! certified interval enclosures.

pub mod cyclotomic;
pub mod field;
pub mod interval;
pub mod matrix;
pub mod poly;

pub use cyclotomic::{parse_rational, CycNum, DEFAULT_MAX_CONDUCTOR};
pub use field::{Conjugate, Field, Ring};
pub use interval::{certified_sign, certified_sign_from, enclose, SignedInterval, DEFAULT_START_BITS};
pub use matrix::Matrix;
pub use poly::{cyclotomic_poly, divisors, euler_phi, Poly};

use num_rational::BigRational;

pub type QMatrix = Matrix<BigRational>;
pub type CycMatrix = Matrix<CycNum>;

/// Convert a rational matrix to cyclotomic entries.
pub fn to_cyc(m: &QMatrix) -> CycMatrix {
    m.map(|q| CycNum::from_rational(q.clone()))
}

/// Rational matrix if every entry is rational.
pub fn to_rational(m: &CycMatrix) -> Option<QMatrix> {
    let entries: Option<Vec<BigRational>> = m.entries().map(|x| x.as_rational().cloned()).collect();
    entries.map(|d| Matrix::from_vec(m.rows(), m.cols(), d))
}

/// Galois action ζ ↦ ζ^j applied entrywise.
pub fn galois_matrix(m: &CycMatrix, j: i64) -> crate::error::Result<CycMatrix> {
    let data = m.entries().map(|x| x.galois(j)).collect::<crate::error::Result<Vec<_>>>()?;
    Ok(Matrix::from_vec(m.rows(), m.cols(), data))
}
