//! Orders of maximal automorphism actions on H³: cyclotomic factorization,
//! Galois-orbit dimensions, the prime-order test and the allowed orders.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::poly::{divisors, euler_phi, gcd, is_prime, prime_factors};
use crate::exactnum::{to_cyc, Matrix, Poly, QMatrix};
use crate::isometry::{eigenspace_of, matrix_order, multiplicities_of, DEFAULT_ORDER_BOUND};

pub const DEFAULT_M_MAX: u64 = 60;

/// x^m − 1 = ∏_{d | m} Φ_d, verified by multiplying back.
pub fn cyclotomic_factorization(m: u64) -> Result<Vec<(u64, Poly)>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let factors: Vec<(u64, Poly)> = divisors(m).into_iter().map(|d| (d, Poly::cyclotomic(d))).collect();
    let product = factors.iter().fold(Poly::one(), |acc, (_, p)| acc.mul(p));
    if product != Poly::x_pow_minus_one(m as usize) {
        return Err(Error::InternalInconsistency(format!("cyclotomic product differs from x^{m} - 1")));
    }
    Ok(factors)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeOrderVerdict {
    Allowed,
    Excluded,
    /// Order 2: a maximal action is ±id.
    ScalarOnly,
}

/// For prime p > 2 a maximal action of order p needs b₃/2 = b₃/(p − 1).
pub fn prime_order_test(p: u64, b3: u64) -> Result<PrimeOrderVerdict> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if b3 < 2 || !b3.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("b3 must be even and at least 2, got {b3}")));
    }
    if p == 2 {
        return Ok(PrimeOrderVerdict::ScalarOnly);
    }
    // d·(p − 1) = b3 with d = b3/2 forces p − 1 = 2
    let d = b3 / 2;
    Ok(if b3.is_multiple_of(p - 1) && b3 / (p - 1) == d { PrimeOrderVerdict::Allowed } else { PrimeOrderVerdict::Excluded })
}

/// All m ≤ m_max whose primitive roots form at most a conjugate pair, φ(m) ≤ 2.
pub fn allowed_maximal_orders(m_max: u64) -> Vec<u64> {
    (1..=m_max).filter(|&m| euler_phi(m) <= 2).collect()
}

/// m ≤ m_max with only the prime divisors 2 and 3.
pub fn two_three_orders(m_max: u64) -> Vec<u64> {
    (1..=m_max).filter(|&m| prime_factors(m).iter().all(|&p| p == 2 || p == 3)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reason {
    OkScalar,
    OkConjugatePair,
    TooManyOrbits,
    FixedSpaceNonzero,
    Unbalanced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderAnalysis {
    pub order: u64,
    pub eigenvalue_orbit_dims: BTreeMap<u64, usize>,
    /// Number of distinct eigenvalues Σ_{a_d > 0} φ(d).
    pub distinct_eigenvalues: usize,
    pub galois_dims_equal: bool,
    pub maximal_compatible: bool,
    pub reason: Reason,
    pub assume_maximal: bool,
    pub flags: Vec<String>,
}

pub fn analyze_action(a: &QMatrix, assume_maximal: bool, order_bound: u64) -> Result<OrderAnalysis> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("action must be square".into()));
    }
    let n = a.rows();
    let order = matrix_order(a, order_bound)?;
    let mult = multiplicities_of(&Poly::new(a.charpoly()), order)?;
    let ac = to_cyc(a);
    let mut galois_dims_equal = true;
    let mut per_root: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for (&d, &ad) in &mult {
        for j in (1..=d).filter(|&j| gcd(j, d) == 1) {
            let dim = eigenspace_of(&ac, d, j).cols();
            per_root.insert((d, j), dim);
            galois_dims_equal &= dim == ad;
        }
    }
    let distinct = mult.keys().map(|&d| euler_phi(d) as usize).sum();
    let scalar = |s: i64| *a == Matrix::scalar(n, &crate::exactnum::field::rat(s));
    let reason = if scalar(1) || scalar(-1) {
        Reason::OkScalar
    } else if distinct > 2 {
        Reason::TooManyOrbits
    } else if mult.contains_key(&1) {
        Reason::FixedSpaceNonzero
    } else if !galois_dims_equal || per_root.values().any(|&v| 2 * v != n) {
        Reason::Unbalanced
    } else {
        Reason::OkConjugatePair
    };
    let maximal_compatible = matches!(reason, Reason::OkScalar | Reason::OkConjugatePair);
    let mut flags = Vec::new();
    if maximal_compatible && (order == 4 || order == 6) {
        flags.push("NO_EXAMPLE_IN_PAPER".to_string());
    }
    if assume_maximal && !maximal_compatible {
        flags.push("CONTRADICTS_MAXIMALITY".to_string());
    }
    Ok(OrderAnalysis {
        order,
        eigenvalue_orbit_dims: mult,
        distinct_eigenvalues: distinct,
        galois_dims_equal,
        maximal_compatible,
        reason,
        assume_maximal,
        flags,
    })
}

pub fn analyze_action_default(a: &QMatrix) -> Result<OrderAnalysis> {
    analyze_action(a, true, DEFAULT_ORDER_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::to_q;
    use crate::isometry::companion_cyclotomic;

    #[test]
    fn factorizations() {
        let f9 = cyclotomic_factorization(9).unwrap();
        let shown: Vec<(u64, String)> = f9.iter().map(|(d, p)| (*d, p.to_string())).collect();
        assert_eq!(
            shown,
            vec![(1, "x - 1".to_string()), (3, "x^2 + x + 1".to_string()), (9, "x^6 + x^3 + 1".to_string())]
        );
        assert_eq!(cyclotomic_factorization(1).unwrap().len(), 1);
        assert_eq!(cyclotomic_factorization(3).unwrap().len(), 2);
        for m in 1..=60 {
            assert!(cyclotomic_factorization(m).is_ok());
        }
    }

    #[test]
    fn primes() {
        assert_eq!(prime_order_test(3, 4).unwrap(), PrimeOrderVerdict::Allowed);
        assert_eq!(prime_order_test(5, 8).unwrap(), PrimeOrderVerdict::Excluded);
        for b3 in (2..40).step_by(2) {
            assert_eq!(prime_order_test(7, b3).unwrap(), PrimeOrderVerdict::Excluded);
        }
        assert_eq!(prime_order_test(2, 4).unwrap(), PrimeOrderVerdict::ScalarOnly);
        assert!(prime_order_test(9, 4).is_err());
    }

    #[test]
    fn allowed_orders() {
        assert_eq!(allowed_maximal_orders(60), vec![1, 2, 3, 4, 6]);
        assert_eq!(allowed_maximal_orders(3), vec![1, 2, 3]);
        assert!(two_three_orders(12).contains(&9));
    }

    #[test]
    fn analyses() {
        let c3 = companion_cyclotomic(3);
        let a = to_q(&Matrix::block_diag(&c3, &c3));
        let r = analyze_action_default(&a).unwrap();
        assert_eq!((r.order, r.reason), (3, Reason::OkConjugatePair));
        assert_eq!(r.eigenvalue_orbit_dims, BTreeMap::from([(3, 2)]));

        let minus: QMatrix = Matrix::identity(6).neg();
        assert_eq!(analyze_action_default(&minus).unwrap().reason, Reason::OkScalar);

        let c9 = analyze_action_default(&to_q(&companion_cyclotomic(9))).unwrap();
        assert_eq!((c9.order, c9.reason, c9.distinct_eigenvalues), (9, Reason::TooManyOrbits, 6));

        let c4 = analyze_action_default(&to_q(&companion_cyclotomic(4))).unwrap();
        assert_eq!(c4.reason, Reason::OkConjugatePair);
        assert_eq!(c4.flags, vec!["NO_EXAMPLE_IN_PAPER".to_string()]);

        let mixed = to_q(&Matrix::block_diag(&companion_cyclotomic(3), &companion_cyclotomic(1)));
        assert_eq!(analyze_action_default(&mixed).unwrap().reason, Reason::TooManyOrbits);
        let fixed = to_q(&Matrix::block_diag(&companion_cyclotomic(2), &companion_cyclotomic(1)));
        assert_eq!(analyze_action_default(&fixed).unwrap().reason, Reason::FixedSpaceNonzero);
    }
}
