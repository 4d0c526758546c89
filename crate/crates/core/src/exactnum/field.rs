//! Minimal algebraic traits shared by the exact matrix routines.
//!
//! Methods take `&self` so that big-number types are never moved by accident.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(v: i64) -> Self;

    /// Row-major product of an n×k and a k×m matrix. Types with a cheaper
    /// accumulation than repeated `add(mul)` override this.
    fn matrix_product(n: usize, k: usize, m: usize, a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); n * m];
        for r in 0..n {
            for t in 0..k {
                let x = &a[r * k + t];
                if x.is_zero() {
                    continue;
                }
                for c in 0..m {
                    let y = &b[t * m + c];
                    if !y.is_zero() {
                        out[r * m + c] = out[r * m + c].add(&x.mul(y));
                    }
                }
            }
        }
        out
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self.mul(&o))
    }
}

/// Complex conjugation under the standard embedding. Identity on real types.
pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Conjugate for BigInt {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    // Clear denominators once, multiply over the integers, reduce once.
    fn matrix_product(n: usize, k: usize, m: usize, a: &[Self], b: &[Self]) -> Vec<Self> {
        let common = |xs: &[BigRational]| xs.iter().fold(<BigInt as One>::one(), |l, x| l.lcm(x.denom()));
        let (da, db) = (common(a), common(b));
        let scaled = |xs: &[BigRational], d: &BigInt| -> Vec<BigInt> { xs.iter().map(|x| x.numer() * (d / x.denom())).collect() };
        let (ia, ib) = (scaled(a, &da), scaled(b, &db));
        let mut acc = vec![<BigInt as Zero>::zero(); n * m];
        for r in 0..n {
            for t in 0..k {
                let x = &ia[r * k + t];
                if Zero::is_zero(x) {
                    continue;
                }
                for c in 0..m {
                    let y = &ib[t * m + c];
                    if !Zero::is_zero(y) {
                        acc[r * m + c] += x * y;
                    }
                }
            }
        }
        let d = da * db;
        acc.into_iter().map(|v| BigRational::new(v, d.clone())).collect()
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Conjugate for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Sign of a rational as -1, 0 or +1.
pub fn rational_sign(q: &BigRational) -> i8 {
    if Zero::is_zero(q) {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
