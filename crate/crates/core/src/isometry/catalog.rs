//! Order-3 isometries of the K3 lattice U³ ⊕ (−E8)² with ζ₃-eigenspace
//! dimension r + 1 for r ∈ {1, 3, 5}.
//!
//! Two blocks are used. On U ⊕ U, an order-3 rotation without fixed vectors
//! contributes eigenspace signature (1,1). On one −E8 summand, products of
//! reflection rotations in mutually orthogonal A2(−1) sublattices contribute
//! (0,2) each; four of them act without fixed vectors. The stored matrices
//! below are reproduced by the searches in this module (see tests).

use num_bigint::BigInt;

use super::LatticeIsometry;
use crate::error::{Error, Result};
use crate::intlin::ZMatrix;
use crate::lattice::{e8_cartan, Lattice, StandardLattice};

/// Order-3 rotation of U ⊕ U in the basis e₁, f₁, e₂, f₂ (eᵢ·fᵢ = 1).
pub const UU_ROTATION: [[i64; 4]; 4] = include!("data/uu_rotation.in");

/// Products of two A2 rotations on −E8 (simple-root coordinates).
pub const E8_TWO_A2: [[i64; 8]; 8] = include!("data/e8_two_a2.in");

/// Products of four A2 rotations on −E8; no nonzero fixed vectors.
pub const E8_FOUR_A2: [[i64; 8]; 8] = include!("data/e8_four_a2.in");

pub const SUPPORTED_R: [usize; 3] = [1, 3, 5];

fn to_z<const N: usize>(a: &[[i64; N]; N]) -> ZMatrix {
    let rows: Vec<&[i64]> = a.iter().map(|r| r.as_slice()).collect();
    ZMatrix::from_i64_rows(&rows)
}

fn embed(target: &mut ZMatrix, block: &ZMatrix, offset: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            target.set(offset + i, offset + j, block.get(i, j).clone());
        }
    }
}

/// The stored order-3 isometry of the K3 lattice with a₃ = r + 1.
pub fn catalog_order3(r: usize) -> Result<LatticeIsometry> {
    let e8_block = match r {
        1 => None,
        3 => Some(to_z(&E8_TWO_A2)),
        5 => Some(to_z(&E8_FOUR_A2)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "catalog has order-3 fixtures only for r in {{1, 3, 5}}, got {r}"
            )))
        }
    };
    let mut m = ZMatrix::identity(22);
    embed(&mut m, &to_z(&UU_ROTATION), 0);
    if let Some(b) = e8_block {
        embed(&mut m, &b, 6);
    }
    LatticeIsometry::validate(&Lattice::standard(StandardLattice::K3), &m, 3)
}

fn pair(g: &[[i64; 8]; 8], a: &[i64], b: &[i64]) -> i64 {
    (0..8).map(|i| (0..8).map(|j| a[i] * g[i][j] * b[j]).sum::<i64>()).sum()
}

fn cartan_array() -> [[i64; 8]; 8] {
    let c = e8_cartan();
    let mut out = [[0i64; 8]; 8];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = i64::try_from(c.get(i, j)).expect("small entry");
        }
    }
    out
}

/// All 240 roots of E8 in simple-root coordinates, by closing the simple
/// roots under simple reflections.
pub fn e8_roots() -> Vec<[i64; 8]> {
    let g = cartan_array();
    let mut roots: Vec<[i64; 8]> = (0..8)
        .map(|i| {
            let mut v = [0i64; 8];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: std::collections::BTreeSet<[i64; 8]> = roots.iter().copied().collect();
    let mut k = 0;
    while k < roots.len() {
        let x = roots[k];
        for i in 0..8 {
            let mut s = [0i64; 8];
            s[i] = 1;
            let c = pair(&g, &x, &s);
            let mut y = x;
            y[i] -= c;
            if seen.insert(y) {
                roots.push(y);
            }
        }
        k += 1;
    }
    roots.sort();
    roots
}

/// Reflection x ↦ x − B(x, α)α for a root α of E8 (equivalently
/// x ↦ x + B'(x, α)α for the negated form B' of −E8).
pub fn reflection(alpha: &[i64; 8]) -> ZMatrix {
    let g = cartan_array();
    let mut m = ZMatrix::identity(8);
    for col in 0..8 {
        let mut e = [0i64; 8];
        e[col] = 1;
        let c = pair(&g, &e, alpha);
        for row in 0..8 {
            let v = m.get(row, col) - BigInt::from(c * alpha[row]);
            m.set(row, col, v);
        }
    }
    m
}

/// Search for `count` mutually orthogonal A2 root pairs (α, β), B(α,β) = −1.
pub fn orthogonal_a2_pairs(count: usize) -> Option<Vec<([i64; 8], [i64; 8])>> {
    let g = cartan_array();
    let roots = e8_roots();
    fn go(
        g: &[[i64; 8]; 8],
        roots: &[[i64; 8]],
        chosen: &mut Vec<([i64; 8], [i64; 8])>,
        start: usize,
        count: usize,
    ) -> bool {
        if chosen.len() == count {
            return true;
        }
        let orth = |v: &[i64; 8], chosen: &[([i64; 8], [i64; 8])]| {
            chosen.iter().all(|(a, b)| pair(g, v, a) == 0 && pair(g, v, b) == 0)
        };
        for i in start..roots.len() {
            let a = roots[i];
            if !orth(&a, chosen) {
                continue;
            }
            for b in roots.iter() {
                if pair(g, &a, b) == -1 && orth(b, chosen) {
                    chosen.push((a, *b));
                    if go(g, roots, chosen, i + 1, count) {
                        return true;
                    }
                    chosen.pop();
                    break;
                }
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(&g, &roots, &mut chosen, 0, count).then_some(chosen)
}

/// Product of the rotations s_α s_β over the given A2 pairs.
pub fn a2_rotation_product(pairs: &[([i64; 8], [i64; 8])]) -> ZMatrix {
    pairs.iter().fold(ZMatrix::identity(8), |acc, (a, b)| acc.mul(&reflection(a)).mul(&reflection(b)))
}

/// Search 4×4 matrices with entries in {−1, 0, 1}, column by column, for an
/// isometry M of U ⊕ U with M² + M + I = 0.
pub fn search_uu_rotation() -> Option<ZMatrix> {
    let g = [[0i64, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
    let b = |x: &[i64; 4], y: &[i64; 4]| -> i64 {
        (0..4).map(|i| (0..4).map(|j| x[i] * g[i][j] * y[j]).sum::<i64>()).sum()
    };
    let mut cands = Vec::new();
    for code in 0..81 {
        let mut v = [0i64; 4];
        let mut c = code;
        for x in v.iter_mut() {
            *x = c % 3 - 1;
            c /= 3;
        }
        cands.push(v);
    }
    fn go(
        cands: &[[i64; 4]],
        g: &[[i64; 4]; 4],
        b: &dyn Fn(&[i64; 4], &[i64; 4]) -> i64,
        cols: &mut Vec<[i64; 4]>,
    ) -> Option<ZMatrix> {
        let k = cols.len();
        if k == 4 {
            let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| cols[j][i]).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = ZMatrix::from_i64_rows(&refs);
            let rel = m.mul(&m).add(&m).add(&ZMatrix::identity(4));
            return rel.is_zero().then_some(m);
        }
        for v in cands {
            if b(v, v) != g[k][k] || (0..k).any(|j| b(v, &cols[j]) != g[k][j]) {
                continue;
            }
            cols.push(*v);
            if let Some(m) = go(cands, g, b, cols) {
                return Some(m);
            }
            cols.pop();
        }
        None
    }
    go(&cands, &g, &b, &mut Vec::new())
}

/// Render an integer matrix as a Rust array literal.
pub fn array_literal(m: &ZMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[\n    {},\n]\n", rows.join(",\n    "))
}


#[cfg(test)]
mod regenerate {
    use super::*;

    #[test]
    #[ignore]
    fn regenerate_stored_blocks() {
        let uu = search_uu_rotation().unwrap();
        let four = orthogonal_a2_pairs(4).unwrap();
        std::fs::write("src/isometry/data/uu_rotation.in", array_literal(&uu)).unwrap();
        std::fs::write("src/isometry/data/e8_two_a2.in", array_literal(&a2_rotation_product(&four[..2]))).unwrap();
        std::fs::write("src/isometry/data/e8_four_a2.in", array_literal(&a2_rotation_product(&four))).unwrap();
    }
}
