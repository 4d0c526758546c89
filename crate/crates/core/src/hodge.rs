//! Rational Hodge structures with cyclotomic coordinates: K3 structures from
//! ball points, the weight-3 tensor construction, the twisted Hermitian form
//! iQ(·, ·̄), intermediate Jacobians and a sufficient CM test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{certified_sign, to_cyc, CycMatrix, CycNum, Matrix, QMatrix};
use crate::forms::{diagonalize_hermitian, form_value};
use crate::intlin::{integer_kernel, to_q, to_z, z_to_cyc, zmatrix, ZMatrix};
use crate::isometry::LatticeIsometry;
use crate::lattice::{Lattice, StandardLattice};
use crate::polyalg::{certify_irreducible, minimal_polynomial, IrreducibilityProof};

pub type Piece = (i32, i32);

/// The order-3 symplectic matrix acting on H¹ of the Fermat cubic curve.
pub const FERMAT_R: [[i64; 2]; 2] = [[0, -1], [1, -1]];

/// The eigenvalue ξ⁻¹ = ζ₃² is requested as (d, j) = (3, 2).
pub const XI_INV: (u64, u64) = (3, 2);

#[derive(Clone, Debug)]
pub struct HodgeStructure {
    weight: i32,
    form: Lattice,
    pieces: BTreeMap<Piece, CycMatrix>,
    action: Option<QMatrix>,
}

/// Concatenate column blocks with `rows` rows.
pub fn hstack_all(rows: usize, blocks: &[&CycMatrix]) -> CycMatrix {
    blocks.iter().fold(Matrix::zeros(rows, 0), |acc, b| acc.hstack(b).expect("row counts agree"))
}

/// Independent columns of `m` spanning its column space.
pub fn column_basis(m: &CycMatrix) -> CycMatrix {
    let piv = m.rref().pivots;
    m.select_columns(&piv)
}

/// Basis of span(a) ∩ span(b).
pub fn span_intersection(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let joint = a.hstack(&b.neg()).expect("row counts agree");
    let k = joint.kernel();
    let top: Vec<usize> = (0..a.cols()).collect();
    column_basis(&a.mul(&k.select_rows(&top)))
}

fn kron_vec(u: &[CycNum], v: &[CycNum]) -> Vec<CycNum> {
    u.iter().flat_map(|a| v.iter().map(move |b| a.mul(b))).collect()
}

fn columns_matrix(rows: usize, cols: &[Vec<CycNum>]) -> CycMatrix {
    if cols.is_empty() {
        Matrix::zeros(rows, 0)
    } else {
        Matrix::from_columns(cols).expect("equal lengths")
    }
}

/// Eigenvalue λ with a·v = λ·v, if v ≠ 0 is an eigenvector.
pub fn eigenvalue_on(a: &CycMatrix, v: &[CycNum]) -> Option<CycNum> {
    let w = a.mul_vec(v);
    let i = v.iter().position(|x| !x.is_zero())?;
    let lambda = w[i].mul(&v[i].inv().ok()?);
    w.iter().zip(v).all(|(wi, vi)| *wi == lambda.mul(vi)).then_some(lambda)
}

impl HodgeStructure {
    pub fn new(
        weight: i32,
        form: Lattice,
        pieces: BTreeMap<Piece, CycMatrix>,
        action: Option<QMatrix>,
    ) -> Result<HodgeStructure> {
        let dim = form.rank();
        for (&(p, q), m) in &pieces {
            if p + q != weight || p < 0 || q < 0 {
                return Err(Error::InvalidArgument(format!("piece ({p},{q}) has the wrong weight")));
            }
            if m.rows() != dim {
                return Err(Error::DimensionMismatch(format!("piece ({p},{q}) lives in dimension {}", m.rows())));
            }
        }
        if let Some(a) = &action {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch("action does not match the container".into()));
            }
        }
        let hs = HodgeStructure { weight, form, pieces, action };
        let all = hs.stacked();
        if all.cols() != dim || all.rank() != dim {
            return Err(Error::InvalidArgument(format!(
                "pieces do not decompose the space: {} columns, rank {}, dimension {dim}",
                all.cols(),
                all.rank()
            )));
        }
        if !hs.conjugation_symmetric() {
            return Err(Error::InvalidArgument("pieces are not conjugation symmetric".into()));
        }
        Ok(hs)
    }

    fn stacked(&self) -> CycMatrix {
        let blocks: Vec<&CycMatrix> = self.pieces.values().collect();
        hstack_all(self.dim(), &blocks)
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.form.rank()
    }

    pub fn form(&self) -> &Lattice {
        &self.form
    }

    pub fn action(&self) -> Option<&QMatrix> {
        self.action.as_ref()
    }

    pub fn pieces(&self) -> &BTreeMap<Piece, CycMatrix> {
        &self.pieces
    }

    pub fn piece(&self, p: i32, q: i32) -> Option<&CycMatrix> {
        self.pieces.get(&(p, q))
    }

    pub fn piece_dim(&self, p: i32, q: i32) -> usize {
        self.piece(p, q).map_or(0, Matrix::cols)
    }

    /// Dimensions of H^{k,0}, H^{k−1,1}, …, H^{0,k}.
    pub fn piece_dims(&self) -> Vec<usize> {
        (0..=self.weight).rev().map(|p| self.piece_dim(p, self.weight - p)).collect()
    }

    /// F^p as stacked columns, highest p first.
    pub fn filtration(&self, p: i32) -> CycMatrix {
        let blocks: Vec<&CycMatrix> =
            (p..=self.weight).rev().filter_map(|pp| self.piece(pp, self.weight - pp)).collect();
        hstack_all(self.dim(), &blocks)
    }

    /// dim F^k, dim F^{k−1}, …, dim F^1.
    pub fn filtration_dims(&self) -> Vec<usize> {
        (1..=self.weight).rev().map(|p| self.filtration(p).cols()).collect()
    }

    pub fn conjugation_symmetric(&self) -> bool {
        self.pieces.iter().all(|(&(p, q), m)| match self.piece(q, p) {
            Some(other) => m.conj().same_column_span(other),
            None => m.cols() == 0,
        })
    }

    /// Re-express in coordinates y = S⁻¹x for a unimodular S.
    pub fn change_basis(&self, s: &ZMatrix) -> Result<HodgeStructure> {
        let sq = to_q(s);
        let sinv = sq.inverse()?;
        if to_z(&sinv).is_none() {
            return Err(Error::InvalidArgument("change of basis is not unimodular".into()));
        }
        let sinv_c = to_cyc(&sinv);
        let pieces = self.pieces.iter().map(|(&k, m)| (k, sinv_c.mul(m))).collect();
        let gram = s.transpose().mul(self.form.gram()).mul(s);
        let form = if self.form.is_alternating() { Lattice::new_alternating(gram)? } else { Lattice::new(gram)? };
        let action = self.action.as_ref().map(|a| sinv.mul(a).mul(&sq));
        HodgeStructure::new(self.weight, form, pieces, action)
    }

    pub fn with_action(&self, action: QMatrix) -> Result<HodgeStructure> {
        HodgeStructure::new(self.weight, self.form.clone(), self.pieces.clone(), Some(action))
    }
}

/// True iff H(ω, ω) > 0 for the Hermitian matrix h.
pub fn ball_membership(h: &CycMatrix, omega: &[CycNum]) -> Result<bool> {
    if omega.len() != h.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a {}-dimensional form",
            omega.len(),
            h.rows()
        )));
    }
    if omega.iter().all(CycNum::is_zero) {
        return Err(Error::InvalidArgument("the zero vector is not a period point".into()));
    }
    Ok(certified_sign(&form_value(h, omega, omega))? > 0)
}

/// A point of the ball in coordinates of the ξ⁻¹-eigenspace basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodPoint {
    omega: Vec<CycNum>,
}

impl PeriodPoint {
    pub fn new(iso: &LatticeIsometry, omega: Vec<CycNum>) -> Result<PeriodPoint> {
        let h = iso.eigenspace_hermitian_form(XI_INV.0, XI_INV.1)?;
        if !ball_membership(&h, &omega)? {
            return Err(Error::NotInBall("H(ω, ω) is not positive".into()));
        }
        let pp = PeriodPoint { omega };
        let v = pp.ambient(iso)?;
        let g = z_to_cyc(iso.lattice().gram());
        if !g.bilinear(&v, &v).is_zero() {
            return Err(Error::InternalInconsistency("eigenvector is not isotropic".into()));
        }
        Ok(pp)
    }

    pub fn omega(&self) -> &[CycNum] {
        &self.omega
    }

    /// ω as a vector of L_C.
    pub fn ambient(&self, iso: &LatticeIsometry) -> Result<Vec<CycNum>> {
        let b = iso.eigenspace_basis(XI_INV.0, XI_INV.1)?;
        if b.cols() != self.omega.len() {
            return Err(Error::DimensionMismatch("period point does not match the eigenspace".into()));
        }
        Ok(b.mul_vec(&self.omega))
    }
}

/// First positive vector of an exact diagonalization of the eigenspace form.
pub fn default_period_point(iso: &LatticeIsometry) -> Result<PeriodPoint> {
    let h = iso.eigenspace_hermitian_form(XI_INV.0, XI_INV.1)?;
    let d = diagonalize_hermitian(&h)?;
    let v = d.vector_with_sign(1).ok_or_else(|| Error::NotInBall("eigenspace form has no positive vector".into()))?;
    PeriodPoint::new(iso, v)
}

/// Weight-2 structure with H^{2,0} = span(ω).
pub fn k3_from_period(iso: &LatticeIsometry, pp: &PeriodPoint) -> Result<HodgeStructure> {
    if iso.lattice().is_alternating() {
        return Err(Error::AlternatingForm);
    }
    let pp = PeriodPoint::new(iso, pp.omega.clone())?;
    let v = pp.ambient(iso)?;
    let vbar: Vec<CycNum> = v.iter().map(CycNum::conjugate).collect();
    let g = z_to_cyc(iso.lattice().gram());
    let cond = Matrix::from_rows(vec![g.transpose().mul_vec(&v), g.transpose().mul_vec(&vbar)])?;
    let h11 = cond.kernel();
    let n = v.len();
    let pieces = BTreeMap::from([
        ((2, 0), columns_matrix(n, &[v])),
        ((1, 1), h11),
        ((0, 2), columns_matrix(n, &[vbar])),
    ]);
    let hs = HodgeStructure::new(2, iso.lattice().clone(), pieces, Some(to_q(iso.matrix())))?;
    let lambda = eigenvalue_on(&iso.cyc_matrix(), &hs.piece(2, 0).expect("present").col(0));
    if lambda != Some(CycNum::zeta_pow(3, 2)) {
        return Err(Error::InternalInconsistency("H^{2,0} is not in the ξ⁻¹ eigenspace".into()));
    }
    Ok(hs)
}

/// H^{1,1} ∩ (ζ_d^j eigenspace of the structure's action).
pub fn h11_eigenpart(hs: &HodgeStructure, d: u64, j: u64) -> Result<CycMatrix> {
    let a = hs.action().ok_or_else(|| Error::InvalidArgument("structure carries no action".into()))?;
    let e = crate::isometry::eigenspace_of(&to_cyc(a), d, j);
    let h11 = hs.piece(1, 1).ok_or_else(|| Error::InvalidArgument("no (1,1) piece".into()))?;
    Ok(span_intersection(&e, h11))
}

/// H¹ of the Fermat cubic with its order-3 symplectic action R; H^{1,0} is
/// the ξ-eigenline of R.
pub fn elliptic_fermat_hs() -> HodgeStructure {
    let r = zmatrix(&[&FERMAT_R[0], &FERMAT_R[1]]);
    let e = crate::isometry::eigenspace_of(&z_to_cyc(&r), 3, 1);
    let pieces = BTreeMap::from([((1, 0), e.clone()), ((0, 1), e.conj())]);
    HodgeStructure::new(1, Lattice::standard(StandardLattice::EllipticH1), pieces, Some(to_q(&r)))
        .expect("fermat structure is valid")
}

/// The weight-3 structure on the invariant part of H²(S) ⊗ H¹(E), with
/// its rational container and the induced action of α_E.
#[derive(Clone, Debug)]
pub struct TensorConstruction {
    pub hs: HodgeStructure,
    /// Saturated invariant sublattice of L ⊗ H¹(E), columns in 44 coordinates.
    pub invariant_basis: ZMatrix,
    /// Action of α_S on the container.
    pub alpha_s: QMatrix,
}

fn to_container(k: &ZMatrix, rows: &[usize], kinv: &CycMatrix, y: &[CycNum]) -> Result<Vec<CycNum>> {
    let ysub: Vec<CycNum> = rows.iter().map(|&i| y[i].clone()).collect();
    let c = kinv.mul_vec(&ysub);
    if z_to_cyc(k).mul_vec(&c) != y {
        return Err(Error::InternalInconsistency("vector is not in the invariant part".into()));
    }
    Ok(c)
}

pub fn cy3_tensor(s: &HodgeStructure, e: &HodgeStructure) -> Result<TensorConstruction> {
    if s.weight() != 2 || e.weight() != 1 || s.form().is_alternating() || !e.form().is_alternating() {
        return Err(Error::InvalidArgument("expected a weight-2 symmetric and a weight-1 alternating structure".into()));
    }
    let (Some(ms), Some(re)) = (s.action(), e.action()) else {
        return Err(Error::InvalidArgument("both structures must carry their group action".into()));
    };
    let (mz, rz) = (
        to_z(ms).ok_or_else(|| Error::InvalidArgument("K3 action is not integral".into()))?,
        to_z(re).ok_or_else(|| Error::InvalidArgument("elliptic action is not integral".into()))?,
    );
    let omega = s.piece(2, 0).ok_or_else(|| Error::InvalidArgument("no (2,0) piece".into()))?.col(0);
    let ev = e.piece(1, 0).ok_or_else(|| Error::InvalidArgument("no (1,0) piece".into()))?.col(0);
    let eta_s = eigenvalue_on(&z_to_cyc(&mz), &omega).ok_or_else(|| Error::InvalidArgument("H^{2,0} is not an eigenline".into()))?;
    let eta_e = eigenvalue_on(&z_to_cyc(&rz), &ev).ok_or_else(|| Error::InvalidArgument("H^{1,0} is not an eigenline".into()))?;
    if !eta_s.mul(&eta_e).is_one() {
        return Err(Error::InvalidArgument("H^{2,0} ⊗ H^{1,0} is not invariant".into()));
    }
    let order = eta_s.root_of_unity_order().ok_or_else(|| Error::InvalidArgument("eigenvalue is not a root of unity".into()))?;
    let j = (1..=order).find(|&j| CycNum::zeta_pow(order, j as i64) == eta_s).expect("root of unity");

    let (n, m) = (mz.rows(), rz.rows());
    let total = n * m;
    let big = mz.kron(&rz);
    let k = integer_kernel(&big.sub(&ZMatrix::identity(total)));
    let b3 = k.cols();
    let rows = to_q(&k.transpose()).rref().pivots;
    let kinv = to_cyc(&to_q(&k.select_rows(&rows)).inverse()?);

    let h11_part = h11_eigenpart(s, order, j)?;
    let evbar: Vec<CycNum> = ev.iter().map(CycNum::conjugate).collect();
    let omegabar: Vec<CycNum> = omega.iter().map(CycNum::conjugate).collect();
    let mut pieces = BTreeMap::new();
    let conv = |ys: Vec<Vec<CycNum>>| -> Result<CycMatrix> {
        let cs = ys.iter().map(|y| to_container(&k, &rows, &kinv, y)).collect::<Result<Vec<_>>>()?;
        Ok(columns_matrix(b3, &cs))
    };
    pieces.insert((3, 0), conv(vec![kron_vec(&omega, &ev)])?);
    pieces.insert((2, 1), conv(h11_part.columns().iter().map(|x| kron_vec(x, &ev)).collect())?);
    pieces.insert(
        (1, 2),
        conv(h11_part.conj().columns().iter().map(|x| kron_vec(x, &evbar)).collect())?,
    );
    pieces.insert((0, 3), conv(vec![kron_vec(&omegabar, &evbar)])?);

    let restrict = |op: &ZMatrix| -> Result<QMatrix> {
        let image = op.mul(&k);
        let a = to_q(&k.select_rows(&rows)).inverse()?.mul(&to_q(&image.select_rows(&rows)));
        if to_q(&k).mul(&a) != to_q(&image) {
            return Err(Error::InternalInconsistency("operator does not preserve the invariant part".into()));
        }
        Ok(a)
    };
    let alpha_e = restrict(&ZMatrix::identity(n).kron(&rz))?;
    let alpha_s = restrict(&mz.kron(&ZMatrix::identity(m)))?;
    let q3 = k.transpose().mul(&s.form().gram().kron(e.form().gram())).mul(&k);
    let hs = HodgeStructure::new(3, Lattice::new_alternating(q3)?, pieces, Some(alpha_e))?;
    Ok(TensorConstruction { hs, invariant_basis: k, alpha_s })
}

pub fn cy3_tensor_hs(s: &HodgeStructure, e: &HodgeStructure) -> Result<HodgeStructure> {
    Ok(cy3_tensor(s, e)?.hs)
}

/// H_ab = i·Q(f_a, f̄_b) on the F² basis (H^{3,0} columns first), sign
/// normalized so that H is positive on H^{3,0}.
#[derive(Clone, Debug)]
pub struct Weight3Hermitian {
    pub matrix: CycMatrix,
    pub f2_basis: CycMatrix,
    pub flipped: bool,
    pub h30_dim: usize,
}

pub fn weight3_hermitian(hs: &HodgeStructure) -> Result<Weight3Hermitian> {
    if hs.weight() != 3 {
        return Err(Error::InvalidArgument("weight-3 structure required".into()));
    }
    if !hs.form().is_alternating() {
        return Err(Error::SymmetricForm);
    }
    let f = hs.filtration(2);
    let q = z_to_cyc(hs.form().gram());
    let mut h = f.transpose().mul(&q).mul(&f.conj()).scale(&CycNum::i());
    if !h.is_hermitian() {
        return Err(Error::InternalInconsistency("iQ(·, ·̄) is not hermitian".into()));
    }
    let h30_dim = hs.piece_dim(3, 0);
    let mut flipped = false;
    if h30_dim > 0 && certified_sign(h.get(0, 0))? < 0 {
        h = h.neg();
        flipped = true;
    }
    Ok(Weight3Hermitian { matrix: h, f2_basis: f, flipped, h30_dim })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum F2Verdict {
    Holds,
    Fails,
    AlphaIsRealScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Check {
    pub verdict: F2Verdict,
    /// Eigenvalue of α on H^{3,0}, when H^{3,0} is an eigenline.
    pub eta: Option<CycNum>,
}

pub fn f2_eigenspace_check(hs: &HodgeStructure, alpha: &QMatrix) -> Result<F2Check> {
    if hs.weight() != 3 {
        return Err(Error::InvalidArgument("weight-3 structure required".into()));
    }
    let n = hs.dim();
    if alpha.rows() != n || alpha.cols() != n {
        return Err(Error::DimensionMismatch("alpha does not act on the container".into()));
    }
    let q = to_q(hs.form().gram());
    if alpha.transpose().mul(&q).mul(alpha) != q {
        return Err(Error::NotIsometry);
    }
    let a = to_cyc(alpha);
    let v = hs.piece(3, 0).ok_or_else(|| Error::InvalidArgument("no (3,0) piece".into()))?.col(0);
    let Some(eta) = eigenvalue_on(&a, &v) else {
        return Ok(F2Check { verdict: F2Verdict::Fails, eta: None });
    };
    if eta.root_of_unity_order().is_none() {
        return Ok(F2Check { verdict: F2Verdict::Fails, eta: Some(eta) });
    }
    if eta.is_rational() {
        let scalar = Matrix::scalar(n, &eta);
        let verdict = if a == scalar { F2Verdict::AlphaIsRealScalar } else { F2Verdict::Fails };
        return Ok(F2Check { verdict, eta: Some(eta) });
    }
    let f2 = hs.filtration(2);
    let e1 = a.sub(&Matrix::scalar(n, &eta)).kernel();
    let e2 = a.sub(&Matrix::scalar(n, &eta.conjugate())).kernel();
    let holds = e1.same_column_span(&f2) && e2.same_column_span(&f2.conj());
    let verdict = if holds { F2Verdict::Holds } else { F2Verdict::Fails };
    Ok(F2Check { verdict, eta: Some(eta) })
}

fn regroup(hs: &HodgeStructure, h10: &[Piece], h01: &[Piece]) -> Result<HodgeStructure> {
    if hs.weight() != 3 {
        return Err(Error::InvalidArgument("weight-3 structure required".into()));
    }
    let gather = |ps: &[Piece]| {
        let blocks: Vec<&CycMatrix> = ps.iter().filter_map(|&(p, q)| hs.piece(p, q)).collect();
        hstack_all(hs.dim(), &blocks)
    };
    let pieces = BTreeMap::from([((1, 0), gather(h10)), ((0, 1), gather(h01))]);
    HodgeStructure::new(1, hs.form().clone(), pieces, hs.action().cloned())
}

/// H^{1,0} = H^{3,0} ⊕ H^{2,1}.
pub fn griffiths_jacobian(hs: &HodgeStructure) -> Result<HodgeStructure> {
    regroup(hs, &[(3, 0), (2, 1)], &[(1, 2), (0, 3)])
}

/// H^{1,0} = H^{2,1} ⊕ H^{0,3}.
pub fn weil_jacobian(hs: &HodgeStructure) -> Result<HodgeStructure> {
    regroup(hs, &[(2, 1), (0, 3)], &[(3, 0), (1, 2)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CmVerdict {
    CmCertified { minimal_polynomial: String, proof: String },
    NotCertified { minimal_polynomial: String, reason: String },
}

impl CmVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, CmVerdict::CmCertified { .. })
    }
}

/// Certifies CM when a rational Hodge endomorphism has an irreducible
/// minimal polynomial of degree dim. Never asserts the absence of CM.
pub fn cm_sufficient_check(hs: &HodgeStructure, e: &QMatrix) -> Result<CmVerdict> {
    let n = hs.dim();
    if e.rows() != n || e.cols() != n {
        return Err(Error::DimensionMismatch("endomorphism does not act on the container".into()));
    }
    let ec = to_cyc(e);
    for (&piece, basis) in hs.pieces() {
        if basis.cols() > 0 && !basis.column_span_contains(&ec.mul(basis)) {
            return Err(Error::PieceNotPreserved(piece));
        }
    }
    let mp = minimal_polynomial(e);
    let shown = mp.to_string();
    let deg = mp.degree().unwrap_or(0);
    if deg != n {
        return Ok(CmVerdict::NotCertified {
            minimal_polynomial: shown,
            reason: format!("minimal polynomial has degree {deg} < {n}"),
        });
    }
    Ok(match certify_irreducible(&mp) {
        Some(proof) => CmVerdict::CmCertified {
            minimal_polynomial: shown,
            proof: match proof {
                IrreducibilityProof::Linear => "linear".into(),
                IrreducibilityProof::Cyclotomic(m) => format!("cyclotomic polynomial of index {m}"),
                IrreducibilityProof::DegreePatterns(ps) => format!("factorization patterns modulo {ps:?}"),
            },
        },
        None => CmVerdict::NotCertified {
            minimal_polynomial: shown,
            reason: "irreducibility could not be certified".into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{hermitian_signature, Signature};
    use crate::isometry::catalog::catalog_order3;

    fn pipeline(r: usize) -> (LatticeIsometry, HodgeStructure, TensorConstruction) {
        let iso = catalog_order3(r).unwrap();
        let pp = default_period_point(&iso).unwrap();
        let s = k3_from_period(&iso, &pp).unwrap();
        let t = cy3_tensor(&s, &elliptic_fermat_hs()).unwrap();
        (iso, s, t)
    }

    #[test]
    fn ball_examples() {
        let iso = catalog_order3(1).unwrap();
        let h = iso.eigenspace_hermitian_form(3, 2).unwrap();
        let d = diagonalize_hermitian(&h).unwrap();
        assert!(ball_membership(&h, &d.vector_with_sign(1).unwrap()).unwrap());
        assert!(!ball_membership(&h, &d.vector_with_sign(-1).unwrap()).unwrap());
        let zero = vec![CycNum::from_int(0); 2];
        assert!(ball_membership(&h, &zero).is_err());
        assert!(ball_membership(&h, &zero[..1]).is_err());
    }

    #[test]
    fn k3_structure() {
        for r in [1, 3] {
            let (iso, s, _) = pipeline(r);
            assert_eq!(s.piece_dims(), vec![1, 20, 1]);
            let v = s.piece(2, 0).unwrap().col(0);
            assert_eq!(eigenvalue_on(&iso.cyc_matrix(), &v), Some(CycNum::zeta_pow(3, 2)));
            assert_eq!(h11_eigenpart(&s, 3, 2).unwrap().cols(), r);
        }
    }

    #[test]
    fn fermat_curve() {
        let e = elliptic_fermat_hs();
        let r = e.action().unwrap();
        assert!(r.pow(3).is_identity());
        assert_eq!(e.piece_dim(1, 0), 1);
        let v = e.piece(1, 0).unwrap().col(0);
        assert_eq!(eigenvalue_on(&to_cyc(r), &v), Some(CycNum::zeta(3)));
        let cm = cm_sufficient_check(&e, r).unwrap();
        assert!(cm.is_certified());
        let id: QMatrix = Matrix::identity(2);
        assert!(!cm_sufficient_check(&e, &id).unwrap().is_certified());
    }

    #[test]
    fn tensor_r1() {
        let (_, _, t) = pipeline(1);
        let hs = &t.hs;
        assert_eq!(hs.piece_dims(), vec![1, 1, 1, 1]);
        assert_eq!(hs.dim(), 4);
        assert_eq!(hs.filtration_dims(), vec![1, 2, 3]);
        assert!(hs.form().gram().is_antisymmetric());
        let alpha = hs.action().unwrap();
        let check = f2_eigenspace_check(hs, alpha).unwrap();
        assert_eq!(check.verdict, F2Verdict::Holds);
        assert_eq!(check.eta, Some(CycNum::zeta(3)));
        let minus: QMatrix = Matrix::identity(4).neg();
        assert_eq!(f2_eigenspace_check(hs, &minus).unwrap().verdict, F2Verdict::AlphaIsRealScalar);
        let two: QMatrix = Matrix::scalar(4, &crate::exactnum::field::rat(2));
        assert_eq!(f2_eigenspace_check(hs, &two), Err(Error::NotIsometry));
        assert!(!cm_sufficient_check(hs, alpha).unwrap().is_certified());
    }

    #[test]
    fn hermitian_on_f2() {
        for r in [1, 3] {
            let (_, _, t) = pipeline(r);
            let w = weight3_hermitian(&t.hs).unwrap();
            assert_eq!(certified_sign(w.matrix.get(0, 0)).unwrap(), 1);
            for j in 1..=r {
                assert!(w.matrix.get(0, j).is_zero());
            }
            assert_eq!(hermitian_signature(&w.matrix).unwrap(), Signature::new(1, r, 0));
        }
    }

    #[test]
    fn jacobians() {
        let (_, _, t) = pipeline(1);
        let g = griffiths_jacobian(&t.hs).unwrap();
        let w = weil_jacobian(&t.hs).unwrap();
        assert_eq!(g.piece_dim(1, 0), 2);
        assert_eq!(w.piece_dim(1, 0), 2);
        assert!(g.piece(1, 0).unwrap().same_column_span(&t.hs.filtration(2)));
        assert!(!g.piece(1, 0).unwrap().same_column_span(w.piece(1, 0).unwrap()));
        let q = z_to_cyc(t.hs.form().gram());
        let f = w.piece(1, 0).unwrap();
        let h = f.transpose().mul(&q).mul(&f.conj()).scale(&CycNum::i());
        let sig = hermitian_signature(&h).unwrap();
        assert!(sig == Signature::new(2, 0, 0) || sig == Signature::new(0, 2, 0));
    }

    #[test]
    fn change_basis_is_consistent() {
        let e = elliptic_fermat_hs();
        let s = zmatrix(&[&[2, 1], &[1, 1]]);
        let e2 = e.change_basis(&s).unwrap();
        assert!(cm_sufficient_check(&e2, e2.action().unwrap()).unwrap().is_certified());
        assert!(e2.conjugation_symmetric());
    }
}
