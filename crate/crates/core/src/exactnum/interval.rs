//! Rational interval enclosures of the complex embedding ζ_n ↦ exp(2πi/n),
//! and sign certification for real cyclotomic numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// Initial precision for sign certification; doubled until the sign is decided.
pub const DEFAULT_START_BITS: u32 = 64;

/// Environment variable read by front ends to override [`DEFAULT_START_BITS`].
pub const PRECISION_ENV: &str = "CYMAX_PRECISION_BITS";

/// Start precision from [`PRECISION_ENV`], falling back to the default.
pub fn start_bits_from_env() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&b| b >= 8)
        .unwrap_or(DEFAULT_START_BITS)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedInterval {
    pub real_lo: BigRational,
    pub real_hi: BigRational,
    pub imag_lo: BigRational,
    pub imag_hi: BigRational,
    pub precision_bits: u32,
}

impl SignedInterval {
    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        &self.real_lo <= re && re <= &self.real_hi && &self.imag_lo <= im && im <= &self.imag_hi
    }

    pub fn midpoint(&self) -> (BigRational, BigRational) {
        let two = BigRational::from_integer(BigInt::from(2));
        (
            (&self.real_lo + &self.real_hi) / &two,
            (&self.imag_lo + &self.imag_hi) / two,
        )
    }

    pub fn real_excludes_zero(&self) -> bool {
        self.real_lo.is_positive() || self.real_hi.is_negative()
    }
}

#[derive(Clone, Debug)]
struct Iv {
    lo: BigRational,
    hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    let num = x.numer() * &s;
    BigRational::new(num.div_floor(x.denom()), s)
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    let num = x.numer() * &s;
    BigRational::new(num.div_ceil(x.denom()), s)
}

impl Iv {
    fn point(x: BigRational) -> Iv {
        Iv { lo: x.clone(), hi: x }
    }

    fn add(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn sub(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    fn mul(&self, o: &Iv) -> Iv {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().cloned().expect("four products");
        let hi = p.iter().max().cloned().expect("four products");
        Iv { lo, hi }
    }

    fn scale(&self, q: &BigRational) -> Iv {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if q.is_negative() {
            Iv { lo: b, hi: a }
        } else {
            Iv { lo: a, hi: b }
        }
    }

    fn widen(&self, w: &BigRational) -> Iv {
        Iv { lo: &self.lo - w, hi: &self.hi + w }
    }

    fn round(&self, bits: u32) -> Iv {
        Iv { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }
}

/// Alternating series Σ (−1)^i t_i with |t_i| decreasing from index 1 on:
/// returns an enclosure once |t_N| < 2^{−bits}.
fn alternating_sum<F>(bits: u32, mut term: F) -> Iv
where
    F: FnMut(usize) -> BigRational,
{
    let eps = BigRational::new(BigInt::one(), pow2(bits));
    let mut s = BigRational::zero();
    let mut i = 0usize;
    loop {
        let t = term(i);
        if i >= 2 && t.abs() < eps {
            // remainder has the sign of the next term and magnitude ≤ |t|
            return if i.is_multiple_of(2) {
                Iv { lo: s.clone(), hi: s + t }
            } else {
                Iv { lo: s.clone() - t, hi: s }
            };
        }
        if i.is_multiple_of(2) {
            s += t;
        } else {
            s -= t;
        }
        i += 1;
    }
}

fn atan_inv(k: u64, bits: u32) -> Iv {
    let kk = BigInt::from(k);
    alternating_sum(bits, |i| {
        let e = 2 * i as u32 + 1;
        BigRational::new(BigInt::one(), BigInt::from(e) * num_traits::pow(kk.clone(), e as usize))
    })
}

/// Enclosure of π (Machin's formula).
fn pi_enclosure(bits: u32) -> Iv {
    let a = atan_inv(5, bits + 6).scale(&BigRational::from_integer(16.into()));
    let b = atan_inv(239, bits + 6).scale(&BigRational::from_integer(4.into()));
    a.sub(&b).round(bits)
}

fn factorial_ratio_series(x: &BigRational, bits: u32, start: u32) -> Iv {
    // Σ (−1)^i x^{2i+start}/(2i+start)!
    let x2 = x * x;
    let mut cur: Option<BigRational> = None;
    alternating_sum(bits, move |i| {
        let next = match &cur {
            None => {
                let mut t = BigRational::one();
                for _ in 0..start {
                    t *= x;
                }
                t
            }
            Some(prev) => {
                let a = 2 * i as u64 + start as u64;
                prev * &x2 / BigRational::from_integer(BigInt::from(a * (a - 1)))
            }
        };
        cur = Some(next.clone());
        next.abs()
    })
}

/// Enclosures of cos and sin over the interval θ = [lo, hi], 0 ≤ θ ≤ 2.2.
fn cos_sin(theta: &Iv, bits: u32) -> (Iv, Iv) {
    let w = &theta.hi - &theta.lo;
    let c = factorial_ratio_series(&theta.lo, bits, 0).widen(&w).round(bits);
    let s = factorial_ratio_series(&theta.lo, bits, 1).widen(&w).round(bits);
    (c, s)
}

/// Enclose exp(2πi/n) at the given working precision.
fn zeta_enclosure(n: u64, bits: u32) -> (Iv, Iv) {
    match n {
        1 => (Iv::point(BigRational::one()), Iv::point(BigRational::zero())),
        2 => (Iv::point(-BigRational::one()), Iv::point(BigRational::zero())),
        4 => (Iv::point(BigRational::zero()), Iv::point(BigRational::one())),
        _ => {
            let pi = pi_enclosure(bits + 4);
            let theta = pi.scale(&BigRational::new(BigInt::from(2), BigInt::from(n)));
            if n == 3 {
                // 2π/3 > π/2: use cos(π − t), sin(π − t) with t = π/3
                let t = pi.scale(&BigRational::new(BigInt::one(), BigInt::from(3)));
                let (c, s) = cos_sin(&t, bits);
                (c.scale(&-BigRational::one()), s)
            } else {
                cos_sin(&theta, bits)
            }
        }
    }
}

/// Enclosure of the complex value of `a` with rational endpoints on a 2^{−bits} grid.
pub fn enclose(a: &CycNum, bits: u32) -> SignedInterval {
    let n = a.conductor();
    let guard = 16 + 2 * (64 - n.leading_zeros());
    let wp = bits + guard;
    let (zr, zi) = zeta_enclosure(n, wp);
    let mut pr = Iv::point(BigRational::one());
    let mut pi = Iv::point(BigRational::zero());
    let mut re = Iv::point(BigRational::zero());
    let mut im = Iv::point(BigRational::zero());
    for (k, c) in a.coeffs().iter().enumerate() {
        if k > 0 {
            let nr = pr.mul(&zr).sub(&pi.mul(&zi)).round(wp);
            let ni = pr.mul(&zi).add(&pi.mul(&zr)).round(wp);
            pr = nr;
            pi = ni;
        }
        if !c.is_zero() {
            re = re.add(&pr.scale(c));
            im = im.add(&pi.scale(c));
        }
    }
    let re = re.round(bits);
    let im = im.round(bits);
    SignedInterval {
        real_lo: re.lo,
        real_hi: re.hi,
        imag_lo: im.lo,
        imag_hi: im.hi,
        precision_bits: bits,
    }
}

/// Sign of a real cyclotomic number: exact zero test, then interval refinement
/// with doubling precision until the enclosure excludes 0.
pub fn certified_sign(a: &CycNum) -> Result<i8> {
    certified_sign_from(a, DEFAULT_START_BITS)
}

pub fn certified_sign_from(a: &CycNum, start_bits: u32) -> Result<i8> {
    if !a.is_real() {
        return Err(Error::NotReal);
    }
    if let Some(q) = a.as_rational() {
        return Ok(super::field::rational_sign(q));
    }
    if a.is_zero() {
        return Ok(0);
    }
    let mut bits = start_bits.max(8);
    loop {
        let iv = enclose(a, bits);
        if iv.real_lo.is_positive() {
            return Ok(1);
        }
        if iv.real_hi.is_negative() {
            return Ok(-1);
        }
        bits = bits.saturating_mul(2);
    }
}
