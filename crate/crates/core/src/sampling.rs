//! Seeded random constructions used by the property suites: unimodular
//! changes of basis, finite-order rational matrices, Hermitian matrices over
//! Q(ζ₁₂) and unitary/unipotent elements over Q(ζ₃) in realified form.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::{to_cyc, CycMatrix, CycNum, Matrix, QMatrix};
use crate::intlin::{to_q, ZMatrix};
use crate::isometry::{companion_cyclotomic, eigenspace_of};

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn case_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Product of random elementary integer operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> ZMatrix {
    let mut s = ZMatrix::identity(n);
    if n < 2 {
        return s;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        for k in 0..n {
            let v = s.get(i, k) + &c * s.get(j, k);
            s.set(i, k, v);
        }
    }
    let perm: Vec<usize> = {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    };
    s.select_rows(&perm)
}

/// Orders whose cyclotomic companion blocks have size ≤ 6.
const SMALL_ORDERS: [u64; 14] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18, 15];

/// Direct sum of random cyclotomic companion blocks conjugated by a random
/// unimodular matrix; returns the matrix and the block orders.
pub fn random_finite_order<R: Rng>(rng: &mut R, max_dim: usize) -> (QMatrix, Vec<u64>) {
    let mut blocks = Vec::new();
    let mut m = ZMatrix::zeros(0, 0);
    loop {
        let d = *SMALL_ORDERS.choose(rng).expect("nonempty");
        let c = companion_cyclotomic(d);
        if m.rows() + c.rows() > max_dim {
            if m.rows() > 0 {
                break;
            }
            continue;
        }
        m = Matrix::block_diag(&m, &c);
        blocks.push(d);
        if rng.gen_bool(0.35) {
            break;
        }
    }
    let s = random_unimodular(rng, m.rows());
    let sq = to_q(&s);
    let a = sq.inverse().expect("unimodular").mul(&to_q(&m)).mul(&sq);
    (a, blocks)
}

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num = rng.gen_range(-4i64..=4);
    let den = *[1i64, 1, 1, 2, 3].choose(rng).expect("nonempty");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random element of Q(ζ_n) with small coefficients.
pub fn random_cyc<R: Rng>(rng: &mut R, n: u64) -> CycNum {
    let phi = crate::exactnum::euler_phi(n) as usize;
    let coeffs: Vec<BigRational> = (0..phi).map(|_| small_rational(rng)).collect();
    CycNum::normalize(&coeffs, n).expect("valid conductor")
}

/// Random Hermitian matrix over Q(ζ₁₂) of the given size. Some samples have
/// zero diagonals or forced degeneracy to exercise every pivoting branch.
pub fn random_hermitian_q12<R: Rng>(rng: &mut R, size: usize) -> CycMatrix {
    let style = rng.gen_range(0..4);
    let mut h = Matrix::zeros(size, size);
    for i in 0..size {
        let d = if style == 1 { CycNum::from_int(0) } else { CycNum::from_rational(small_rational(rng)) };
        h.set(i, i, d);
        for j in 0..i {
            let x = random_cyc(rng, 12);
            h.set(j, i, x.conjugate());
            h.set(i, j, x);
        }
    }
    if style == 2 && size >= 2 {
        // A* D A with a singular D
        let a: CycMatrix = Matrix::from_vec(size, size, (0..size * size).map(|_| random_cyc(rng, 12)).collect());
        let mut d = Matrix::zeros(size, size);
        for i in 1..size {
            d.set(i, i, CycNum::from_int(rng.gen_range(-2..=2)));
        }
        h = a.adjoint().mul(&d).mul(&a);
    }
    h
}

/// Real coordinates (x₀, x₁) of x₀ + x₁ζ₃.
pub fn q3_parts(x: &CycNum) -> Result<(BigRational, BigRational)> {
    match x.conductor() {
        1 => Ok((x.coeffs()[0].clone(), BigRational::from_integer(BigInt::from(0)))),
        3 => Ok((x.coeffs()[0].clone(), x.coeffs()[1].clone())),
        n => Err(Error::InvalidArgument(format!("entry of conductor {n} is not in Q(ζ3)"))),
    }
}

/// Realification of an n×n matrix over Q(ζ₃) on the basis e_k, ζe_k.
pub fn realify(a: &CycMatrix) -> Result<QMatrix> {
    let n = a.cols();
    let z = CycNum::zeta(3);
    let mut out = Matrix::zeros(2 * a.rows(), 2 * n);
    for j in 0..n {
        for (t, scalar) in [CycNum::from_int(1), z.clone()].iter().enumerate() {
            for i in 0..a.rows() {
                let (x0, x1) = q3_parts(&a.get(i, j).mul(scalar))?;
                out.set(2 * i, 2 * j + t, x0);
                out.set(2 * i + 1, 2 * j + t, x1);
            }
        }
    }
    Ok(out)
}

/// Realified complex conjugation x + yζ ↦ x + yζ̄ on n coordinates.
pub fn realified_conjugation(n: usize) -> QMatrix {
    let c: QMatrix = Matrix::from_i64_rows(&[&[1, -1], &[0, -1]]);
    (0..n).fold(Matrix::zeros(0, 0), |acc, _| Matrix::block_diag(&acc, &c))
}

/// Split Hermitian form J = [[0, I], [I, 0]] on Q(ζ₃)^{2m}.
pub fn split_hermitian(m: usize) -> CycMatrix {
    let mut j = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        j.set(i, m + i, CycNum::from_int(1));
        j.set(m + i, i, CycNum::from_int(1));
    }
    j
}

/// Q(x, y) = Tr(δ·h(x, y)), δ = ζ₃ − ζ̄₃, h(u, v) = u*·J·v, on the realified space.
pub fn trace_form(j: &CycMatrix) -> QMatrix {
    let n = j.rows();
    let z = CycNum::zeta(3);
    let delta = z.sub(&z.conjugate());
    let basis = |idx: usize| -> Vec<CycNum> {
        let mut v = vec![CycNum::from_int(0); n];
        v[idx / 2] = if idx.is_multiple_of(2) { CycNum::from_int(1) } else { z.clone() };
        v
    };
    let mut q = Matrix::zeros(2 * n, 2 * n);
    for a in 0..2 * n {
        let ua: Vec<CycNum> = basis(a).iter().map(CycNum::conjugate).collect();
        for b in 0..2 * n {
            let h = j.bilinear(&ua, &basis(b));
            q.set(a, b, delta.mul(&h).trace_to_q(3));
        }
    }
    q
}

fn random_q3_int<R: Rng>(rng: &mut R) -> CycNum {
    let a = CycNum::from_int(rng.gen_range(-2..=2));
    a.add(&CycNum::zeta(3).scale(&BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2)))))
}

/// Unipotent g over Q(ζ₃) with g*·J·g = J for the split form of size 2m:
/// g = diag(A, A^{-*})·[[I, B], [0, I]], A unitriangular, B skew-Hermitian.
pub fn random_unitary_unipotent<R: Rng>(rng: &mut R, m: usize) -> CycMatrix {
    let z = CycNum::zeta(3);
    let delta = z.sub(&z.conjugate());
    let mut a: CycMatrix = Matrix::identity(m);
    let mut b: CycMatrix = Matrix::zeros(m, m);
    for i in 0..m {
        for k in i + 1..m {
            a.set(i, k, random_q3_int(rng));
        }
        b.set(i, i, delta.scale(&BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2)))));
        for k in 0..i {
            let x = random_q3_int(rng);
            b.set(k, i, x.conjugate().neg());
            b.set(i, k, x);
        }
    }
    let a_inv_adj = a.adjoint().inverse().expect("unitriangular");
    let d = Matrix::block_diag(&a, &a_inv_adj);
    let mut shear: CycMatrix = Matrix::identity(2 * m);
    for i in 0..m {
        for k in 0..m {
            shear.set(i, m + k, b.get(i, k).clone());
        }
    }
    d.mul(&shear)
}

/// A realified Q(ζ₃)-container of rational dimension 4m, conjugated by a
/// random unimodular change of basis S (new coordinates y = S⁻¹x).
#[derive(Clone, Debug)]
pub struct BlockContainer {
    pub m: usize,
    pub s: ZMatrix,
    pub s_inv: QMatrix,
    /// Alternating form in the new coordinates.
    pub q: QMatrix,
    /// Multiplication by ζ₃, acting by ζ₃ on F².
    pub alpha: QMatrix,
    pub f2: CycMatrix,
    pub j: CycMatrix,
}

impl BlockContainer {
    pub fn new<R: Rng>(rng: &mut R, m: usize) -> BlockContainer {
        let j = split_hermitian(m);
        let n = 2 * m;
        let s = random_unimodular(rng, 2 * n);
        let sq = to_q(&s);
        let s_inv = sq.inverse().expect("unimodular");
        let q = sq.transpose().mul(&trace_form(&j)).mul(&sq);
        let alpha0 = realify(&Matrix::scalar(n, &CycNum::zeta(3))).expect("Q(ζ3) entries");
        let alpha = s_inv.mul(&alpha0).mul(&sq);
        let f2 = eigenspace_of(&to_cyc(&alpha), 3, 1);
        BlockContainer { m, s, s_inv, q, alpha, f2, j }
    }

    pub fn dim(&self) -> usize {
        4 * self.m
    }

    /// Realify a Q(ζ₃)-linear map and move it to the new coordinates.
    pub fn embed(&self, g: &CycMatrix) -> Result<QMatrix> {
        Ok(self.s_inv.mul(&realify(g)?).mul(&to_q(&self.s)))
    }

    pub fn embed_raw(&self, g: &QMatrix) -> QMatrix {
        self.s_inv.mul(g).mul(&to_q(&self.s))
    }

    pub fn random_unipotent<R: Rng>(&self, rng: &mut R) -> QMatrix {
        self.embed(&random_unitary_unipotent(rng, self.m)).expect("Q(ζ3) entries")
    }

    /// Conjugation composed with diag(I, −I): preserves Q, swaps F² and its conjugate.
    pub fn swap_element(&self) -> QMatrix {
        let n = 2 * self.m;
        let mut d: CycMatrix = Matrix::identity(n);
        for i in self.m..n {
            d.set(i, i, CycNum::from_int(-1));
        }
        let g = realified_conjugation(n).mul(&realify(&d).expect("rational"));
        self.embed_raw(&g)
    }

    /// Symplectic transvection x ↦ x + c·Q(x, v)·v for a random rational v.
    pub fn random_transvection<R: Rng>(&self, rng: &mut R) -> QMatrix {
        let n = self.dim();
        let v: Vec<BigRational> = (0..n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2)))).collect();
        let c = BigRational::from_integer(BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 }));
        let qv = self.q.mul_vec(&v);
        let mut t: QMatrix = Matrix::identity(n);
        // Q(x, v) = Σ x_col (Qv)_col, so T = I + c·v·(Qv)ᵀ
        for r in 0..n {
            for col in 0..n {
                let add = &c * &v[r] * &qv[col];
                let cur = t.get(r, col).clone();
                t.set(r, col, cur + add);
            }
        }
        t
    }
}
