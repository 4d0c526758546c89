//! Minimal polynomials of rational matrices and a one-sided irreducibility
//! certificate over Q (cyclotomic recognition and factorization patterns
//! modulo small primes).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::poly::{cyclotomic_poly, euler_phi, is_prime};
use crate::exactnum::{Matrix, Poly, QMatrix};

/// Minimal polynomial of a square rational matrix, monic.
pub fn minimal_polynomial(a: &QMatrix) -> Poly {
    assert!(a.is_square());
    let n = a.rows();
    let mut acc = Poly::one();
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        if poly_apply(&acc, a, &e).iter().all(Zero::is_zero) {
            continue;
        }
        let local = local_minimal_polynomial(a, &e);
        let g = acc.gcd(&local);
        acc = acc.mul(&local).exact_div(&g).expect("gcd divides").monic();
    }
    acc
}

fn poly_apply(p: &Poly, a: &QMatrix, v: &[BigRational]) -> Vec<BigRational> {
    // Horner: p(A)v
    let mut out = vec![BigRational::zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        out = a.mul_vec(&out);
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Monic generator of {p : p(A)v = 0}.
fn local_minimal_polynomial(a: &QMatrix, v: &[BigRational]) -> Poly {
    let mut krylov: Vec<Vec<BigRational>> = vec![v.to_vec()];
    loop {
        let next = a.mul_vec(krylov.last().expect("nonempty"));
        let basis = Matrix::from_columns(&krylov).expect("equal lengths");
        let rhs = Matrix::column_vector(next.clone());
        if let Some(x) = basis.solve(&rhs).expect("shapes agree") {
            // next = Σ x_j A^j v
            let k = krylov.len();
            let mut c: Vec<BigRational> = (0..k).map(|j| -x.get(j, 0).clone()).collect();
            c.push(BigRational::one());
            return Poly::new(c);
        }
        krylov.push(next);
    }
}

/// Scale to a primitive integer polynomial with positive leading coefficient.
pub fn primitive_integer(p: &Poly) -> Vec<BigInt> {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|c| c / &g * &sign).collect()
}

/// m with p = Φ_m, if any.
pub fn cyclotomic_index(p: &Poly) -> Option<u64> {
    let ints = primitive_integer(p);
    let deg = ints.len().checked_sub(1)? as u64;
    // φ(m) = deg forces m ≤ 2·deg² (crude but sufficient bound)
    (1..=(2 * deg * deg).max(2)).find(|&m| {
        euler_phi(m) == deg && cyclotomic_poly(m).iter().map(|&c| BigInt::from(c)).eq(ints.iter().cloned())
    })
}

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = fp_inv(b[db], p);
    while r.len() > db {
        let lead = r[r.len() - 1] * inv % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - lead * bk % p) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
    }
    fp_trim(r)
}

fn fp_quot(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let inv = fp_inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let lead = r[i + db] * inv % p;
        q[i] = lead;
        if lead != 0 {
            for (k, &bk) in b.iter().enumerate() {
                r[i + k] = (r[i + k] + p - lead * bk % p) % p;
            }
        }
    }
    fp_trim(q)
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let inv = fp_inv(l, p);
        x.iter_mut().for_each(|c| *c = *c * inv % p);
    }
    x
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = fp_rem(&fp_mul(&r, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Degrees of the irreducible factors of a squarefree f over F_p.
fn ddf_degrees(f: &Fp, p: u64) -> Vec<usize> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while f.len() > 2 * d {
        h = fp_powmod(&h, p, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            let k = (g.len() - 1) / d;
            out.extend(std::iter::repeat_n(d, k));
            f = fp_quot(&f, &g, p);
            h = fp_rem(&h, &f, p);
        }
        d += 1;
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out
}

fn subset_sums(parts: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0]);
    for &d in parts {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

/// How irreducibility over Q was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityProof {
    Linear,
    Cyclotomic(u64),
    /// Primes whose factorization patterns admit no proper factor degree.
    DegreePatterns(Vec<u64>),
}

/// Sufficient test: `Some(proof)` only if `p` is certainly irreducible over Q.
pub fn certify_irreducible(p: &Poly) -> Option<IrreducibilityProof> {
    let deg = p.degree()?;
    if deg == 0 {
        return None;
    }
    if deg == 1 {
        return Some(IrreducibilityProof::Linear);
    }
    if let Some(m) = cyclotomic_index(p) {
        return Some(IrreducibilityProof::Cyclotomic(m));
    }
    let ints = primitive_integer(p);
    let mut possible: BTreeSet<usize> = (0..=deg).collect();
    let mut used = Vec::new();
    for prime in (3u64..2000).filter(|&q| is_prime(q)).take(40) {
        let big = BigInt::from(prime);
        let f: Fp = ints.iter().map(|c| c.mod_floor(&big).to_u64().expect("reduced")).collect();
        if f.last() == Some(&0) {
            continue;
        }
        let df: Fp = fp_trim((1..f.len()).map(|i| f[i] * (i as u64 % prime) % prime).collect());
        if df.is_empty() || fp_gcd(&f, &df, prime).len() > 1 {
            continue;
        }
        let sums = subset_sums(&ddf_degrees(&f, prime));
        possible = possible.intersection(&sums).copied().collect();
        used.push(prime);
        if possible.len() == 2 {
            return Some(IrreducibilityProof::DegreePatterns(used));
        }
    }
    None
}
