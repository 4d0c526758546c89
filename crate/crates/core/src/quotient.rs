//! Hodge-number bookkeeping for the degree-3 quotient of S × E and its
//! resolution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge::HodgeStructure;

/// Curve families blown up per fixed rational curve.
pub const CURVE_FAMILIES_UP: i64 = 9;
/// Curve families blown down per fixed rational curve.
pub const CURVE_FAMILIES_DOWN: i64 = 3;
/// Exceptional divisors per isolated fixed point.
pub const SECTIONS_PER_POINT: i64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocusData {
    /// Number of fixed smooth rational curves.
    pub k: u32,
    /// Number of isolated fixed points.
    pub n: u32,
    pub r: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeNumberReport {
    pub h11: i64,
    pub h21: i64,
    pub b3: i64,
    pub breakdown: Vec<(String, i64)>,
    /// Stored values rather than computed ones.
    pub fixture: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn check_k(k: i64) -> Result<u32> {
    if (0..=6).contains(&k) {
        Ok(k as u32)
    } else {
        Err(Error::InvalidArgument(format!("k must lie in 0..=6, got {k}")))
    }
}

pub fn fixed_locus_from_k(k: i64) -> Result<FixedLocusData> {
    let k = check_k(k)?;
    Ok(FixedLocusData { k, n: k + 3, r: 6 - k })
}

/// Invariant h¹¹ of S × E: 22 − 2(r + 1) + 1.
pub fn invariant_h11_product(r: i64) -> Result<i64> {
    if !(0..=6).contains(&r) {
        return Err(Error::InvalidArgument(format!("r must lie in 0..=6, got {r}")));
    }
    Ok(22 - 2 * (r + 1) + 1)
}

pub fn cy3_hodge_numbers(k: i64) -> Result<HodgeNumberReport> {
    let f = fixed_locus_from_k(k)?;
    let r = f.r as i64;
    let inv = invariant_h11_product(r)?;
    let curves = (CURVE_FAMILIES_UP - CURVE_FAMILIES_DOWN) * k;
    let points = SECTIONS_PER_POINT * f.n as i64;
    let h11 = inv + curves + points;
    if h11 != 18 + 11 * k {
        return Err(Error::InternalInconsistency(format!("h11 = {h11} but 18 + 11k = {}", 18 + 11 * k)));
    }
    let h21 = 6 - k;
    Ok(HodgeNumberReport {
        h11,
        h21,
        b3: 2 * (h21 + 1),
        breakdown: vec![
            ("invariant h11 of S x E".into(), inv),
            ("fixed curves (9 up, 3 down each)".into(), curves),
            ("isolated points (3 each)".into(), points),
        ],
        fixture: false,
        note: None,
    })
}

/// The Z/2 Borcea-Voisin threefold with h¹¹ = 61, h²¹ = 1 (stored values).
pub fn borcea_voisin_z2_example() -> HodgeNumberReport {
    HodgeNumberReport {
        h11: 61,
        h21: 1,
        b3: 4,
        breakdown: vec![("stored".into(), 61)],
        fixture: true,
        note: Some("F^2 = H^{2,0}(S) (x) H^1(E,C), so dim F^2 = 2".into()),
    }
}

pub fn f2_dim(report: &HodgeNumberReport) -> i64 {
    1 + report.h21
}

/// Compare dim H^{2,1} of a tensor structure with the table value at k.
pub fn consistency_with_tensor(k: i64, hs: &HodgeStructure) -> Result<(bool, i64, i64)> {
    let table = cy3_hodge_numbers(k)?.h21;
    let actual = hs.piece_dim(2, 1) as i64;
    Ok((table == actual, table, actual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        assert_eq!(fixed_locus_from_k(0).unwrap(), FixedLocusData { k: 0, n: 3, r: 6 });
        assert_eq!(fixed_locus_from_k(6).unwrap(), FixedLocusData { k: 6, n: 9, r: 0 });
        assert!(fixed_locus_from_k(7).is_err());
        assert!(fixed_locus_from_k(-1).is_err());
        assert_eq!(invariant_h11_product(6).unwrap(), 9);
        assert_eq!(invariant_h11_product(0).unwrap(), 21);
        assert_eq!(invariant_h11_product(3).unwrap(), 15);
        let r0 = cy3_hodge_numbers(0).unwrap();
        assert_eq!((r0.h21, r0.h11, r0.b3), (6, 18, 14));
        let r3 = cy3_hodge_numbers(3).unwrap();
        assert_eq!((r3.h21, r3.h11), (3, 51));
        let r6 = cy3_hodge_numbers(6).unwrap();
        assert_eq!((r6.h21, r6.h11), (0, 84));
        for k in 0..=6 {
            let rep = cy3_hodge_numbers(k).unwrap();
            assert_eq!(rep.breakdown.iter().map(|(_, v)| v).sum::<i64>(), rep.h11);
            assert_eq!(rep.b3, 2 * (rep.h21 + 1));
        }
    }

    #[test]
    fn z2_fixture() {
        let bv = borcea_voisin_z2_example();
        assert_eq!((bv.h11, bv.h21, bv.b3), (61, 1, 4));
        assert_eq!(f2_dim(&bv), 2);
        assert!(bv.fixture);
    }
}
