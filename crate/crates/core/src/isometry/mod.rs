//! Finite-order lattice isometries: validation, cyclotomic multiplicities,
//! exact eigenspaces and their Hermitian forms.

pub mod catalog;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::poly::{cyclotomic_poly, divisors, euler_phi, gcd};
use crate::exactnum::{CycMatrix, CycNum, Matrix, Poly};
use crate::forms::{hermitian_signature, Signature};
use crate::intlin::{integer_kernel, to_q, z_to_cyc, ZMatrix};
use crate::lattice::Lattice;

pub const DEFAULT_ORDER_BOUND: u64 = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsometry {
    lattice: Lattice,
    matrix: ZMatrix,
    order: u64,
}

/// Multiplicities a_d and any requested eigenspace bases.
#[derive(Clone, Debug)]
pub struct EigData {
    pub multiplicities: BTreeMap<u64, usize>,
    pub eigenbasis: BTreeMap<(u64, u64), CycMatrix>,
}

/// Smallest k ≤ bound with Mᵏ = I.
pub fn matrix_order<T: crate::exactnum::Ring>(m: &Matrix<T>, bound: u64) -> Result<u64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("order of a non-square matrix".into()));
    }
    let mut p = m.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Ok(k);
        }
        p = p.mul(m);
    }
    Err(Error::InfiniteOrder(bound))
}

/// Exponents a_d with charpoly = ∏_{d | order} Φ_d^{a_d}.
pub fn multiplicities_of(charpoly: &Poly, order: u64) -> Result<BTreeMap<u64, usize>> {
    let mut rest = charpoly.clone();
    let mut out = BTreeMap::new();
    for d in divisors(order) {
        let phi = Poly::from_ints(&cyclotomic_poly(d));
        let mut a = 0;
        while let Some(q) = rest.exact_div(&phi) {
            rest = q;
            a += 1;
        }
        if a > 0 {
            out.insert(d, a);
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::InternalInconsistency(format!(
            "characteristic polynomial leaves remainder {rest} after cyclotomic extraction"
        )));
    }
    Ok(out)
}

pub fn rational_charpoly(m: &ZMatrix) -> Poly {
    Poly::new(to_q(m).charpoly())
}

/// Columns spanning ker(A − ζ_d^j·I) over Q(ζ_d).
pub fn eigenspace_of(a: &CycMatrix, d: u64, j: u64) -> CycMatrix {
    let shift = Matrix::scalar(a.rows(), &CycNum::zeta_pow(d, j as i64));
    a.sub(&shift).kernel()
}

impl LatticeIsometry {
    pub fn validate(lattice: &Lattice, m: &ZMatrix, order_bound: u64) -> Result<LatticeIsometry> {
        if order_bound == 0 {
            return Err(Error::InvalidArgument("order bound must be at least 1".into()));
        }
        if m.rows() != lattice.rank() || m.cols() != lattice.rank() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, lattice rank {}",
                m.rows(),
                m.cols(),
                lattice.rank()
            )));
        }
        let g = lattice.gram();
        if m.transpose().mul(g).mul(m) != *g {
            return Err(Error::NotIsometry);
        }
        let order = matrix_order(m, order_bound)?;
        Ok(LatticeIsometry { lattice: lattice.clone(), matrix: m.clone(), order })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &ZMatrix {
        &self.matrix
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn cyc_matrix(&self) -> CycMatrix {
        z_to_cyc(&self.matrix)
    }

    pub fn multiplicities(&self) -> Result<BTreeMap<u64, usize>> {
        multiplicities_of(&rational_charpoly(&self.matrix), self.order)
    }

    fn check_eigen_request(&self, d: u64, j: u64) -> Result<()> {
        if d == 0 || !self.order.is_multiple_of(d) {
            return Err(Error::InvalidArgument(format!("{d} does not divide the order {}", self.order)));
        }
        if gcd(j % d, d) != 1 && d > 1 {
            return Err(Error::NotCoprime { j: j as i64, n: d });
        }
        Ok(())
    }

    pub fn eigenspace_basis(&self, d: u64, j: u64) -> Result<CycMatrix> {
        self.check_eigen_request(d, j)?;
        Ok(eigenspace_of(&self.cyc_matrix(), d, j))
    }

    pub fn eig_data(&self, requests: &[(u64, u64)]) -> Result<EigData> {
        let multiplicities = self.multiplicities()?;
        let mut eigenbasis = BTreeMap::new();
        for &(d, j) in requests {
            eigenbasis.insert((d, j), self.eigenspace_basis(d, j)?);
        }
        Ok(EigData { multiplicities, eigenbasis })
    }

    /// H_ab = Q(b_a, conj b_b) on the ζ_d^j eigenspace basis.
    pub fn eigenspace_hermitian_form(&self, d: u64, j: u64) -> Result<CycMatrix> {
        if self.lattice.is_alternating() {
            return Err(Error::AlternatingForm);
        }
        let b = self.eigenspace_basis(d, j)?;
        let g = z_to_cyc(self.lattice.gram());
        let h = b.transpose().mul(&g).mul(&b.conj());
        if !h.is_hermitian() {
            return Err(Error::InternalInconsistency("eigenspace form is not hermitian".into()));
        }
        Ok(h)
    }

    pub fn eigenspace_signature(&self, d: u64, j: u64) -> Result<Signature> {
        hermitian_signature(&self.eigenspace_hermitian_form(d, j)?)
    }

    /// Gram matrix of the form restricted to the invariant sublattice.
    pub fn fixed_sublattice(&self) -> Result<Lattice> {
        let n = self.lattice.rank();
        let k = integer_kernel(&self.matrix.sub(&ZMatrix::identity(n)));
        let gram = k.transpose().mul(self.lattice.gram()).mul(&k);
        if self.lattice.is_alternating() {
            Lattice::new_alternating(gram)
        } else {
            Lattice::new(gram)
        }
    }

    /// True iff every primitive ζ_d^j eigenspace has dimension a_d.
    pub fn galois_orbit_dims_equal(&self) -> Result<bool> {
        let mult = self.multiplicities()?;
        let a = self.cyc_matrix();
        for d in divisors(self.order) {
            let expected = mult.get(&d).copied().unwrap_or(0);
            for j in (1..=d).filter(|&j| gcd(j, d) == 1) {
                if eigenspace_of(&a, d, j).cols() != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Sylvester signature of the whole lattice reassembled from the invariant
/// part and every nontrivial eigenspace of a symmetric-form isometry.
pub fn signature_from_eigenspaces(iso: &LatticeIsometry) -> Result<Signature> {
    let mut total = iso.fixed_sublattice()?.signature()?;
    for d in divisors(iso.order()).into_iter().filter(|&d| d > 1) {
        for j in (1..=d).filter(|&j| gcd(j, d) == 1) {
            if iso.multiplicities()?.contains_key(&d) {
                total = total.add(&iso.eigenspace_signature(d, j)?);
            }
        }
    }
    Ok(total)
}

/// Companion matrix of a monic integer polynomial (coefficients low first).
pub fn companion(poly: &[i64]) -> ZMatrix {
    let n = poly.len() - 1;
    assert_eq!(poly[n], 1, "companion needs a monic polynomial");
    let mut c = ZMatrix::zeros(n, n);
    for i in 1..n {
        c.set(i, i - 1, BigInt::from(1));
    }
    for i in 0..n {
        c.set(i, n - 1, BigInt::from(-poly[i]));
    }
    c
}

pub fn companion_cyclotomic(d: u64) -> ZMatrix {
    companion(&cyclotomic_poly(d))
}

/// Total dimension check Σ a_d φ(d).
pub fn multiplicity_dimension(m: &BTreeMap<u64, usize>) -> usize {
    m.iter().map(|(&d, &a)| a * euler_phi(d) as usize).sum()
}

#[derive(Serialize, Deserialize)]
struct IsometryFile {
    lattice: serde_json::Value,
    matrix: Vec<Vec<i64>>,
}

/// Parse {"lattice": <lattice object or standard name>, "matrix": [[..]]}.
pub fn parse_isometry_json(s: &str) -> Result<(Lattice, ZMatrix)> {
    let f: IsometryFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let lattice = match f.lattice {
        serde_json::Value::String(name) => Lattice::standard(name.parse()?),
        v => serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?,
    };
    let rows = f.matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    Ok((lattice, Matrix::from_rows(rows)?))
}
