//! Block-diagonal monodromy, nilpotent logarithms, the W₀ = Im(N³)
//! obstruction to maximally unipotent monodromy, and centralizers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{to_cyc, CycMatrix, CycNum, Matrix, QMatrix};
use crate::hodge::eigenvalue_on;

pub const DEFAULT_WORD_LENGTH: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyElement {
    matrix: QMatrix,
    preserves_form: bool,
}

impl MonodromyElement {
    /// Wrap an invertible rational matrix, recording whether gᵀQg = Q.
    pub fn new(matrix: QMatrix, form: &QMatrix) -> Result<MonodromyElement> {
        if !matrix.is_square() || matrix.rows() != form.rows() {
            return Err(Error::DimensionMismatch("element does not act on the form's space".into()));
        }
        if matrix.det() == BigRational::from_integer(BigInt::from(0)) {
            return Err(Error::Singular);
        }
        let preserves_form = matrix.transpose().mul(form).mul(&matrix) == *form;
        Ok(MonodromyElement { matrix, preserves_form })
    }

    /// Wrap an invertible matrix when no form is at hand; such an element
    /// is never treated as form-preserving.
    pub fn without_form(matrix: QMatrix) -> Result<MonodromyElement> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("element must be square".into()));
        }
        if matrix.det() == BigRational::from_integer(BigInt::from(0)) {
            return Err(Error::Singular);
        }
        Ok(MonodromyElement { matrix, preserves_form: false })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn preserves_form(&self) -> bool {
        self.preserves_form
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub f2_block: CycMatrix,
    pub conj_block: CycMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockOutcome {
    Block(BlockDecomposition),
    /// A basis vector of F² whose image leaves F².
    NotBlockDiagonal { witness: Vec<CycNum> },
}

impl BlockOutcome {
    pub fn is_block(&self) -> bool {
        matches!(self, BlockOutcome::Block(_))
    }
}

fn check_f2(f2: &CycMatrix, n: usize) -> Result<()> {
    if f2.rows() != n {
        return Err(Error::DimensionMismatch("F² basis does not match the space".into()));
    }
    let joint = f2.hstack(&f2.conj())?;
    if joint.cols() != n || joint.rank() != n {
        return Err(Error::InvalidArgument("F² and its conjugate do not span the space".into()));
    }
    Ok(())
}

/// Solve g·F = F·M; the conjugate block is checked against g·F̄.
pub fn block_structure_matrix(g: &QMatrix, f2: &CycMatrix) -> Result<BlockOutcome> {
    check_f2(f2, g.rows())?;
    let gc = to_cyc(g);
    let image = gc.mul(f2);
    let Some(m) = f2.solve(&image)? else {
        let j = (0..f2.cols())
            .find(|&j| !f2.column_span_contains(&Matrix::column_vector(image.col(j))))
            .expect("some column leaves the span");
        return Ok(BlockOutcome::NotBlockDiagonal { witness: f2.col(j) });
    };
    let conj_block = m.conj();
    if gc.mul(&f2.conj()) != f2.conj().mul(&conj_block) {
        return Err(Error::InternalInconsistency("conjugate block does not match".into()));
    }
    Ok(BlockOutcome::Block(BlockDecomposition { f2_block: m, conj_block }))
}

pub fn block_structure(g: &MonodromyElement, f2: &CycMatrix) -> Result<BlockOutcome> {
    block_structure_matrix(&g.matrix, f2)
}

fn is_nilpotent(n: &QMatrix) -> bool {
    n.pow(n.rows() as u64).is_zero()
}

/// Σ_{k<dim} N^k / k!
pub fn truncated_exp(n: &QMatrix) -> QMatrix {
    let dim = n.rows();
    let mut term: QMatrix = Matrix::identity(dim);
    let mut sum = term.clone();
    for k in 1..=dim {
        term = term.mul(n).scale(&BigRational::new(BigInt::from(1), BigInt::from(k)));
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    sum
}

/// log T = Σ_{j≥1} (−1)^{j+1} (T − I)^j / j for unipotent T.
pub fn nilpotent_log(t: &QMatrix) -> Result<QMatrix> {
    if !t.is_square() {
        return Err(Error::DimensionMismatch("log of a non-square matrix".into()));
    }
    let dim = t.rows();
    let u = t.sub(&Matrix::identity(dim));
    if !is_nilpotent(&u) {
        return Err(Error::NotUnipotent);
    }
    let mut power = u.clone();
    let mut n: QMatrix = Matrix::zeros(dim, dim);
    for j in 1..=dim.max(1) {
        if power.is_zero() {
            break;
        }
        let sign = if j % 2 == 1 { 1 } else { -1 };
        n = n.add(&power.scale(&BigRational::new(BigInt::from(sign), BigInt::from(j))));
        power = power.mul(&u);
    }
    if truncated_exp(&n) != *t {
        return Err(Error::InternalInconsistency("exp(log T) differs from T".into()));
    }
    Ok(n)
}

/// dim W₀ = rank(N³).
pub fn weight_w0_dim(n: &QMatrix) -> Result<usize> {
    if !n.is_square() || !is_nilpotent(n) {
        return Err(Error::NotNilpotent);
    }
    Ok(n.pow(3).rank())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum MumVerdict {
    #[serde(rename = "MUM_IMPOSSIBLE")]
    MumImpossible { w0_dims: Vec<(String, usize)>, proof: String },
    #[serde(rename = "NOT_APPLICABLE")]
    NotApplicable { generator: usize, witness: Vec<String> },
}

impl MumVerdict {
    pub fn is_impossible(&self) -> bool {
        matches!(self, MumVerdict::MumImpossible { .. })
    }
}

/// Analyze unipotent words up to `word_length` in the generators and sums of
/// logarithms over nonempty subsets of unipotent generators.
pub fn mum_obstruction(gens: &[MonodromyElement], f2: &CycMatrix, word_length: usize) -> Result<MumVerdict> {
    for (i, g) in gens.iter().enumerate() {
        if let BlockOutcome::NotBlockDiagonal { witness } = block_structure(g, f2)? {
            return Ok(MumVerdict::NotApplicable {
                generator: i,
                witness: witness.iter().map(|x| x.to_string()).collect(),
            });
        }
    }
    let mut dims = Vec::new();
    let mut words: Vec<(String, QMatrix)> = gens.iter().enumerate().map(|(i, g)| (format!("g{i}"), g.matrix.clone())).collect();
    let mut all = words.clone();
    for _ in 1..word_length {
        let mut next = Vec::new();
        for (label, w) in &words {
            for (i, g) in gens.iter().enumerate() {
                next.push((format!("{label}*g{i}"), w.mul(&g.matrix)));
            }
        }
        all.extend(next.iter().cloned());
        words = next;
    }
    let mut logs = Vec::new();
    for (label, w) in &all {
        match nilpotent_log(w) {
            Ok(n) => {
                dims.push((format!("log({label})"), weight_w0_dim(&n)?));
                if !label.contains('*') {
                    logs.push((label.clone(), n));
                }
            }
            Err(Error::NotUnipotent) => {}
            Err(e) => return Err(e),
        }
    }
    for mask in 1u32..(1u32 << logs.len().min(12)) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<&(String, QMatrix)> = logs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l).collect();
        let sum = chosen.iter().skip(1).fold(chosen[0].1.clone(), |acc, (_, n)| acc.add(n));
        if is_nilpotent(&sum) {
            let label = chosen.iter().map(|(l, _)| format!("log({l})")).collect::<Vec<_>>().join("+");
            dims.push((label, weight_w0_dim(&sum)?));
        }
    }
    if let Some((label, d)) = dims.iter().find(|(_, d)| d % 2 == 1) {
        return Err(Error::InternalInconsistency(format!(
            "block-diagonal element {label} has odd dim Im(N^3) = {d}"
        )));
    }
    Ok(MumVerdict::MumImpossible { w0_dims: dims, proof: "all dims even, 1 required".into() })
}

fn check_alpha(alpha: &QMatrix, f2: &CycMatrix) -> Result<CycNum> {
    check_f2(f2, alpha.rows())?;
    let a = to_cyc(alpha);
    let eta = eigenvalue_on(&a, &f2.col(0)).ok_or_else(|| Error::InvalidArgument("alpha is not scalar on F²".into()))?;
    if a.mul(f2) != f2.scale(&eta) || eta.is_real() {
        return Err(Error::InvalidArgument("alpha does not split as F² ⊕ conj F² with a non-real eigenvalue".into()));
    }
    Ok(eta)
}

/// g·α = α·g for a form-preserving g.
pub fn centralizer_membership(g: &MonodromyElement, alpha: &QMatrix, f2: &CycMatrix) -> Result<bool> {
    check_alpha(alpha, f2)?;
    if !g.preserves_form() {
        return Err(Error::NotIsometry);
    }
    Ok(g.matrix.mul(alpha) == alpha.mul(&g.matrix))
}

/// H_ab = i·Q(f_a, f̄_b) on the F² basis.
pub fn restricted_hermitian(q: &QMatrix, f2: &CycMatrix) -> CycMatrix {
    f2.transpose().mul(&to_cyc(q)).mul(&f2.conj()).scale(&CycNum::i())
}

/// g block-diagonalizes and its F² block M satisfies Mᵀ·H·M̄ = H.
pub fn block_unitary(g: &MonodromyElement, q: &QMatrix, f2: &CycMatrix) -> Result<bool> {
    Ok(match block_structure(g, f2)? {
        BlockOutcome::NotBlockDiagonal { .. } => false,
        BlockOutcome::Block(b) => {
            let h = restricted_hermitian(q, f2);
            b.f2_block.transpose().mul(&h).mul(&b.f2_block.conj()) == h
        }
    })
}
