//! Exact elements of cyclotomic fields Q(ζ_n).
//!
//! An element is stored in the power basis 1, ζ, …, ζ^{φ(n)−1} of its
//! smallest cyclotomic field. Conductors are never ≡ 2 (mod 4), since
//! Q(ζ_{2m}) = Q(ζ_m) for odd m; rationals have conductor 1. With that
//! normalization two elements are equal iff their data are equal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field;
use super::poly::{cyclotomic_poly, divisors, euler_phi, gcd, lcm, prime_factors, Poly};
use crate::error::{Error, Result};

/// Largest conductor accepted by [`CycNum::normalize`].
pub const DEFAULT_MAX_CONDUCTOR: u64 = 120;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    n: u64,
    coeffs: Vec<BigRational>,
}

/// Reduce a polynomial in ζ_n (low powers first) modulo Φ_n.
fn reduce_mod_phi(mut c: Vec<BigRational>, n: u64) -> Vec<BigRational> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    if c.len() > deg {
        for i in (deg..c.len()).rev() {
            let top = std::mem::take(&mut c[i]);
            if top.is_zero() {
                continue;
            }
            // ζ^i = −Σ_{k<deg} phi_k ζ^{i−deg+k}
            for (k, &pk) in phi.iter().enumerate().take(deg) {
                if pk != 0 {
                    c[i - deg + k] -= &top * BigInt::from(pk);
                }
            }
        }
        c.truncate(deg);
    }
    c.resize(deg, BigRational::zero());
    c
}

/// Coordinates of ζ_m^i (i < φ(m)) inside Q(ζ_n), for m | n.
fn embedding_rows(m: u64, n: u64) -> Vec<Vec<BigRational>> {
    let step = (n / m) as usize;
    (0..euler_phi(m) as usize)
        .map(|i| {
            let mut v = vec![BigRational::zero(); step * i + 1];
            v[step * i] = BigRational::one();
            reduce_mod_phi(v, n)
        })
        .collect()
}

/// Solve Σ_i c_i · rows[i] = target; rows are linearly independent.
fn solve_in_row_span(rows: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = rows.len();
    let len = target.len();
    // columns: one per row of `rows`, plus the target
    let mut a: Vec<Vec<BigRational>> = (0..len)
        .map(|r| {
            let mut row: Vec<BigRational> = rows.iter().map(|v| v[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut prow = 0;
    for col in 0..k {
        let Some(p) = (prow..len).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(prow, p);
        let inv = a[prow][col].recip();
        for x in a[prow].iter_mut() {
            *x *= &inv;
        }
        for r in 0..len {
            if r != prow && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=k {
                    let t = &f * &a[prow][c];
                    a[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    if (prow..len).any(|r| !a[r][k].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (r, &col) in pivots.iter().enumerate() {
        sol[col] = a[r][k].clone();
    }
    Some(sol)
}

fn to_working_conductor(coeffs: &[BigRational], n: u64) -> (Vec<BigRational>, u64) {
    if n % 4 != 2 {
        return (coeffs.to_vec(), n);
    }
    // ζ_{2m} = −ζ_m^{(m+1)/2} for odd m
    let m = n / 2;
    let half = m.div_ceil(2);
    let mut out = vec![BigRational::zero(); m as usize];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let idx = ((k as u64 * half) % m) as usize;
        if k % 2 == 0 {
            out[idx] += c;
        } else {
            out[idx] -= c;
        }
    }
    (out, m)
}

impl CycNum {
    /// Build from a reduced coordinate vector of length φ(n), n ≢ 2 mod 4,
    /// shrinking to the smallest field containing the element.
    fn from_reduced(n: u64, coeffs: Vec<BigRational>) -> CycNum {
        debug_assert_eq!(coeffs.len() as u64, euler_phi(n));
        debug_assert!(n % 4 != 2 || n == 2);
        if n == 1 || coeffs[1..].iter().all(Zero::is_zero) {
            return CycNum {
                n: 1,
                coeffs: vec![coeffs.into_iter().next().unwrap_or_else(BigRational::zero)],
            };
        }
        let rad: u64 = prime_factors(n).iter().product();
        for m in divisors(n) {
            if m == 1 || m == n || m % 4 == 2 {
                continue;
            }
            let step = (n / m) as usize;
            if m % rad == 0 {
                // ζ_m^i = ζ_n^{step·i} needs no reduction here
                if coeffs.iter().enumerate().all(|(i, c)| i % step == 0 || c.is_zero()) {
                    let sub = coeffs.iter().step_by(step).cloned().collect();
                    return CycNum { n: m, coeffs: sub };
                }
                continue;
            }
            if let Some(sub) = solve_in_row_span(&embedding_rows(m, n), &coeffs) {
                return CycNum { n: m, coeffs: sub };
            }
        }
        CycNum { n, coeffs }
    }

    /// Canonical element Σ coeffs[k]·ζ_n^k, with the default conductor bound.
    pub fn normalize(coeffs: &[BigRational], n: u64) -> Result<CycNum> {
        CycNum::normalize_with_bound(coeffs, n, DEFAULT_MAX_CONDUCTOR)
    }

    pub fn normalize_with_bound(coeffs: &[BigRational], n: u64, bound: u64) -> Result<CycNum> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        if n > bound {
            return Err(Error::ConductorTooLarge(n, bound));
        }
        if coeffs.len() as u64 > n {
            return Err(Error::TooManyCoefficients { len: coeffs.len(), n });
        }
        let (c, m) = to_working_conductor(coeffs, n);
        Ok(CycNum::from_reduced(m, reduce_mod_phi(c, m)))
    }

    pub fn from_rational(q: BigRational) -> CycNum {
        CycNum { n: 1, coeffs: vec![q] }
    }

    pub fn from_int(v: i64) -> CycNum {
        CycNum::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn frac(num: i64, den: i64) -> CycNum {
        CycNum::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_n^k = exp(2πik/n).
    pub fn zeta_pow(n: u64, k: i64) -> CycNum {
        assert!(n >= 1, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        let (c, m) = to_working_conductor(&c, n);
        CycNum::from_reduced(m, reduce_mod_phi(c, m))
    }

    pub fn zeta(n: u64) -> CycNum {
        CycNum::zeta_pow(n, 1)
    }

    /// i = ζ_4.
    pub fn i() -> CycNum {
        CycNum::zeta(4)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.n == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Coordinates in Q(ζ_big), requires conductor | big and big ≢ 2 mod 4.
    fn lift(&self, big: u64) -> Vec<BigRational> {
        debug_assert_eq!(big % self.n, 0);
        if big == self.n {
            return self.coeffs.clone();
        }
        let step = (big / self.n) as usize;
        let mut v = vec![BigRational::zero(); step * (self.coeffs.len() - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[step * i] = c.clone();
        }
        reduce_mod_phi(v, big)
    }

    fn common(a: &CycNum, b: &CycNum) -> u64 {
        lcm(a.n, b.n)
    }

    pub fn add(&self, o: &CycNum) -> CycNum {
        if self.n == o.n {
            let c = self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x + y).collect();
            return CycNum::from_reduced(self.n, c);
        }
        let n = CycNum::common(self, o);
        let c = self.lift(n).into_iter().zip(o.lift(n)).map(|(x, y)| x + y).collect();
        CycNum::from_reduced(n, c)
    }

    pub fn neg(&self) -> CycNum {
        CycNum { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &CycNum) -> CycNum {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &CycNum) -> CycNum {
        if self.n == 1 {
            return o.scale(&self.coeffs[0]);
        }
        if o.n == 1 {
            return self.scale(&o.coeffs[0]);
        }
        let n = CycNum::common(self, o);
        let a = self.lift(n);
        let b = o.lift(n);
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycNum::from_reduced(n, reduce_mod_phi(prod, n))
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        if q.is_zero() {
            return CycNum::from_int(0);
        }
        CycNum { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.n == 1 {
            return Ok(CycNum::from_rational(self.coeffs[0].recip()));
        }
        let phi = Poly::cyclotomic(self.n);
        let (g, s, _) = Poly::new(self.coeffs.clone()).ext_gcd(&phi);
        if g != Poly::one() {
            return Err(Error::InternalInconsistency(
                "nonzero element not invertible modulo the cyclotomic polynomial".into(),
            ));
        }
        let (_, r) = s.div_rem(&phi);
        Ok(CycNum::from_reduced(self.n, reduce_mod_phi(r.coeffs().to_vec(), self.n)))
    }

    pub fn pow(&self, e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::from_int(1);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_one()
    }

    /// Image under ζ ↦ ζ^j. Requires gcd(j, conductor) = 1.
    pub fn galois(&self, j: i64) -> Result<CycNum> {
        let n = self.n;
        let jm = j.rem_euclid(n as i64) as u64;
        if gcd(jm, n) != 1 {
            return Err(Error::NotCoprime { j, n });
        }
        Ok(self.galois_unchecked(jm))
    }

    fn galois_unchecked(&self, jm: u64) -> CycNum {
        let n = self.n;
        if n == 1 {
            return self.clone();
        }
        let mut v = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[((i as u64 * jm) % n) as usize] += c;
            }
        }
        CycNum::from_reduced(n, reduce_mod_phi(v, n))
    }

    /// Complex conjugate, the Galois element ζ ↦ ζ^{−1}.
    pub fn conjugate(&self) -> CycNum {
        if self.n == 1 {
            return self.clone();
        }
        self.galois_unchecked(self.n - 1)
    }

    pub fn is_real(&self) -> bool {
        self.n == 1 || self.conjugate() == *self
    }

    /// Trace from Q(ζ_field) down to Q. `field` must be a multiple of the conductor.
    pub fn trace_to_q(&self, field: u64) -> BigRational {
        assert!(field.is_multiple_of(self.n) || (field % 4 == 2 && (field / 2).is_multiple_of(self.n)));
        let deg = BigInt::from(euler_phi(field) / euler_phi(self.n));
        let own: BigRational = if self.n == 1 {
            self.coeffs[0].clone()
        } else {
            (1..self.n)
                .filter(|&j| gcd(j, self.n) == 1)
                .map(|j| self.galois_unchecked(j))
                .fold(CycNum::from_int(0), |acc, x| acc.add(&x))
                .as_rational()
                .cloned()
                .expect("galois trace is rational")
        };
        own * deg
    }

    /// Real and imaginary parts as elements of Q(ζ_lcm(n,4)).
    pub fn re_im(&self) -> (CycNum, CycNum) {
        let c = self.conjugate();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let re = self.add(&c).scale(&half);
        let im = self.sub(&c).mul(&CycNum::i().neg()).scale(&half);
        (re, im)
    }

    /// Floating point approximation of the complex embedding, for display only.
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            let v = c.to_f64().unwrap_or(f64::NAN);
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Multiplicative order if this is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        // roots of unity in Q(ζ_n) have order dividing lcm(2, n)
        let bound = lcm(2, self.n);
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    write!(f, "ζ{}", self.n)?;
                    if k > 1 {
                        write!(f, "^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self)
    }
}

impl field::Ring for CycNum {
    fn zero() -> Self {
        CycNum::from_int(0)
    }
    fn one() -> Self {
        CycNum::from_int(1)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        CycNum::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        CycNum::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        CycNum::mul(self, other)
    }
    fn neg(&self) -> Self {
        CycNum::neg(self)
    }
    fn is_one(&self) -> bool {
        CycNum::is_one(self)
    }
    fn from_i64(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl field::Field for CycNum {
    fn inv(&self) -> Option<Self> {
        CycNum::inv(self).ok()
    }
}

impl field::Conjugate for CycNum {
    fn conj(&self) -> Self {
        self.conjugate()
    }
}

impl From<BigRational> for CycNum {
    fn from(q: BigRational) -> Self {
        CycNum::from_rational(q)
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

/// Parse "p/q", "p" or a decimal-free integer string into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a fraction string: {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    n: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CycNum::normalize(&coeffs, repr.n).map_err(serde::de::Error::custom)
    }
}
