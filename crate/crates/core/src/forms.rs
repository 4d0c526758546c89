//! Exact congruence diagonalization of symmetric and Hermitian forms over
//! cyclotomic fields, and the resulting Sylvester signatures.
//!
//! The form attached to a matrix H is f(u, v) = uᵀ H v̄.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{certified_sign, CycMatrix, CycNum, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Signature {
        Signature { positive, negative, zero }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn add(&self, o: &Signature) -> Signature {
        Signature::new(self.positive + o.positive, self.negative + o.negative, self.zero + o.zero)
    }

    pub fn flipped(&self) -> Signature {
        Signature::new(self.negative, self.positive, self.zero)
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Result of diagonalizing a form: vectors wᵢ (columns) with
/// f(wᵢ, wⱼ) = δᵢⱼ·pivotᵢ, followed by a basis of the radical.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub pivots: Vec<CycNum>,
    pub signs: Vec<i8>,
    pub vectors: CycMatrix,
    pub radical: CycMatrix,
}

impl Diagonalization {
    pub fn signature(&self) -> Signature {
        let pos = self.signs.iter().filter(|&&s| s > 0).count();
        let neg = self.signs.iter().filter(|&&s| s < 0).count();
        Signature::new(pos, neg, self.radical.cols())
    }

    /// First diagonalizing vector of the given sign.
    pub fn vector_with_sign(&self, sign: i8) -> Option<Vec<CycNum>> {
        self.signs.iter().position(|&s| s == sign).map(|i| self.vectors.col(i))
    }
}

/// f(u, v) = uᵀ H v̄.
pub fn form_value(h: &CycMatrix, u: &[CycNum], v: &[CycNum]) -> CycNum {
    let vbar: Vec<CycNum> = v.iter().map(CycNum::conjugate).collect();
    h.bilinear(u, &vbar)
}

fn axpy(y: &mut [CycNum], a: &CycNum, x: &[CycNum]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.add(&a.mul(xi));
        }
    }
}

fn diagonalize_unchecked(h: &CycMatrix) -> Result<Diagonalization> {
    let n = h.rows();
    // live vectors and their Gram matrix g[i][j] = f(w_i, w_j)
    let mut w: Vec<Vec<CycNum>> = (0..n)
        .map(|i| (0..n).map(|j| CycNum::from_int((i == j) as i64)).collect())
        .collect();
    let mut g: Vec<Vec<CycNum>> = h.to_rows();
    let mut live: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut signs = Vec::new();
    let mut out = Vec::new();

    while !live.is_empty() {
        let mut choice = live.iter().copied().find(|&i| !g[i][i].is_zero());
        if choice.is_none() {
            // all diagonal entries vanish: w_i += t·w_j with t = g_ij makes f(w_i, w_i) = 2|g_ij|²
            let pair = live.iter().copied().find_map(|i| {
                live.iter().copied().find(|&j| j != i && !g[i][j].is_zero()).map(|j| (i, j))
            });
            let Some((i, j)) = pair else { break };
            let t = g[i][j].clone();
            let tbar = t.conjugate();
            let wj = w[j].clone();
            axpy(&mut w[i], &t, &wj);
            // row i: f(w_i + t w_j, w_k) ; column i: conjugate symmetric
            let gi_old = g[i].clone();
            let gj = g[j].clone();
            for &k in &live {
                g[i][k] = gi_old[k].add(&t.mul(&gj[k]));
            }
            for &k in &live {
                if k != i {
                    g[k][i] = g[k][i].add(&tbar.mul(&g[k][j]));
                }
            }
            g[i][i] = gi_old[i].add(&t.mul(&gj[i])).add(&tbar.mul(&gi_old[j])).add(&t.mul(&tbar).mul(&gj[j]));
            choice = Some(i);
        }
        let i = choice.expect("pivot chosen");
        let p = g[i][i].clone();
        let pinv = p.inv()?;
        live.retain(|&k| k != i);
        for &j in &live {
            let c = g[j][i].mul(&pinv);
            if c.is_zero() {
                continue;
            }
            let wi = w[i].clone();
            axpy(&mut w[j], &c.neg(), &wi);
        }
        for &j in &live {
            if g[j][i].is_zero() {
                continue;
            }
            let gji_p = g[j][i].mul(&pinv);
            for &k in &live {
                if !g[i][k].is_zero() {
                    g[j][k] = g[j][k].sub(&gji_p.mul(&g[i][k]));
                }
            }
        }
        signs.push(certified_sign(&p)?);
        pivots.push(p);
        out.push(w[i].clone());
    }
    let vectors = if out.is_empty() { Matrix::zeros(n, 0) } else { Matrix::from_columns(&out)? };
    let rad: Vec<Vec<CycNum>> = live.iter().map(|&i| w[i].clone()).collect();
    let radical = if rad.is_empty() { Matrix::zeros(n, 0) } else { Matrix::from_columns(&rad)? };
    Ok(Diagonalization { pivots, signs, vectors, radical })
}

/// Diagonalize a Hermitian matrix (H = H*).
pub fn diagonalize_hermitian(h: &CycMatrix) -> Result<Diagonalization> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    diagonalize_unchecked(h)
}

/// Diagonalize a symmetric matrix with real entries.
pub fn diagonalize_symmetric(g: &CycMatrix) -> Result<Diagonalization> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if g.entries().any(|x| !x.is_real()) {
        return Err(Error::NotReal);
    }
    diagonalize_unchecked(g)
}

pub fn hermitian_signature(h: &CycMatrix) -> Result<Signature> {
    Ok(diagonalize_hermitian(h)?.signature())
}

pub fn symmetric_signature(g: &CycMatrix) -> Result<Signature> {
    Ok(diagonalize_symmetric(g)?.signature())
}

/// Signature from the signs of the eigenvalues of a Hermitian matrix, read
/// off its characteristic polynomial. All roots are real, so Descartes'
/// rule of signs counts positive and negative roots exactly; coefficient
/// signs are certified by interval refinement.
pub fn eigenvalue_sign_signature(h: &CycMatrix) -> Result<Signature> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let cp = h.charpoly();
    let signs = cp.iter().map(certified_sign).collect::<Result<Vec<i8>>>()?;
    let zero = signs.iter().position(|&s| s != 0).unwrap_or(signs.len());
    let changes = |seq: &mut dyn Iterator<Item = i8>| {
        let nz: Vec<i8> = seq.filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let positive = changes(&mut signs.iter().copied());
    let negative = changes(&mut signs.iter().enumerate().map(|(k, &s)| if k % 2 == 1 { -s } else { s }));
    Ok(Signature::new(positive, negative, zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: Vec<Vec<CycNum>>) -> CycMatrix {
        Matrix::from_rows(rows).unwrap()
    }

    fn check_diagonal(h: &CycMatrix, d: &Diagonalization) {
        let all: Vec<Vec<CycNum>> = d.vectors.columns().into_iter().chain(d.radical.columns()).collect();
        for (a, u) in all.iter().enumerate() {
            for (b, v) in all.iter().enumerate() {
                let val = form_value(h, u, v);
                if a == b && a < d.pivots.len() {
                    assert_eq!(val, d.pivots[a]);
                } else {
                    assert!(val.is_zero(), "off-diagonal ({a},{b}) = {val}");
                }
            }
        }
        assert_eq!(Matrix::from_columns(&all).unwrap().rank(), h.rows());
    }

    #[test]
    fn small_examples() {
        let d: CycMatrix = Matrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
        assert_eq!(hermitian_signature(&d).unwrap(), Signature::new(1, 1, 0));
        let z = CycNum::zeta(3);
        let h = cm(vec![vec![CycNum::from_int(0), z.clone()], vec![z.conjugate(), CycNum::from_int(0)]]);
        let dg = diagonalize_hermitian(&h).unwrap();
        assert_eq!(dg.signature(), Signature::new(1, 1, 0));
        check_diagonal(&h, &dg);
        let zero: CycMatrix = Matrix::zeros(3, 3);
        assert_eq!(hermitian_signature(&zero).unwrap(), Signature::new(0, 0, 3));
        assert_eq!(eigenvalue_sign_signature(&zero).unwrap(), Signature::new(0, 0, 3));
        assert_eq!(eigenvalue_sign_signature(&h).unwrap(), Signature::new(1, 1, 0));
        assert_eq!(eigenvalue_sign_signature(&d).unwrap(), Signature::new(1, 1, 0));
    }

    #[test]
    fn rejects_bad_input() {
        let z = CycNum::zeta(3);
        let h = cm(vec![vec![CycNum::from_int(0), z.clone()], vec![z.clone(), CycNum::from_int(0)]]);
        assert_eq!(hermitian_signature(&h).unwrap_err(), Error::NotHermitian);
        let s: CycMatrix = Matrix::from_i64_rows(&[&[0, 1], &[2, 0]]);
        assert_eq!(symmetric_signature(&s).unwrap_err(), Error::NotSymmetric);
        assert_eq!(symmetric_signature(&h).unwrap_err(), Error::NotReal);
    }

    #[test]
    fn degenerate_and_real_quadratic() {
        let g: CycMatrix = Matrix::from_i64_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let d = diagonalize_symmetric(&g).unwrap();
        assert_eq!(d.signature(), Signature::new(1, 2, 0));
        check_diagonal(&g, &d);
        let r: CycMatrix = Matrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        assert_eq!(symmetric_signature(&r).unwrap(), Signature::new(1, 0, 2));
        // diag(√3 - 2, √2)
        let s3 = CycNum::zeta(12).add(&CycNum::zeta(12).conjugate());
        let s2 = CycNum::zeta(8).add(&CycNum::zeta(8).conjugate());
        let m = cm(vec![
            vec![s3.sub(&CycNum::from_int(2)), CycNum::from_int(0)],
            vec![CycNum::from_int(0), s2],
        ]);
        assert_eq!(symmetric_signature(&m).unwrap(), Signature::new(1, 1, 0));
    }
}
