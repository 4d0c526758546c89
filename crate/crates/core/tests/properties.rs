use proptest::prelude::*;

use cymax::classify::{allowed_maximal_orders, cyclotomic_factorization};
use cymax::exactnum::{to_cyc, CycMatrix, CycNum, Matrix, Poly, QMatrix};
use cymax::forms::{hermitian_signature, symmetric_signature};
use cymax::intlin::{to_q, z_to_cyc};
use cymax::monodromy::{block_structure_matrix, nilpotent_log, truncated_exp, weight_w0_dim};
use cymax::quotient::cy3_hodge_numbers;
use cymax::report::Report;
use cymax::sampling::{case_rng, random_cyc, random_hermitian_q12, random_unimodular, BlockContainer};
use cymax::suite::hodge_table_report;
use rand::Rng;

const UNITS_12: [i64; 4] = [1, 5, 7, 11];

fn cyc12(seed: u64) -> CycNum {
    random_cyc(&mut case_rng(seed, 0), 12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (cyc12(a), cyc12(b), cyc12(c));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_action_composes(a in any::<u64>(), b in any::<u64>(), i in 0usize..4, j in 0usize..4) {
        let (x, y) = (cyc12(a), cyc12(b));
        let (s, t) = (UNITS_12[i], UNITS_12[j]);
        let st = (s * t).rem_euclid(12);
        prop_assert_eq!(x.galois(s).unwrap().galois(t).unwrap(), x.galois(st).unwrap());
        prop_assert_eq!(x.mul(&y).galois(s).unwrap(), x.galois(s).unwrap().mul(&y.galois(s).unwrap()));
        prop_assert_eq!(x.galois(11).unwrap(), x.conjugate());
        prop_assert!(x.mul(&x.conjugate()).is_real());
    }

    #[test]
    fn sylvester_invariance(seed in any::<u64>(), size in 1usize..5) {
        let mut rng = case_rng(seed, 1);
        let h = random_hermitian_q12(&mut rng, size);
        let p: CycMatrix = z_to_cyc(&random_unimodular(&mut rng, size));
        let congruent = p.transpose().mul(&h).mul(&p.conj());
        prop_assert_eq!(hermitian_signature(&h).unwrap(), hermitian_signature(&congruent).unwrap());
    }

    #[test]
    fn symmetric_signature_is_congruence_invariant(seed in any::<u64>(), size in 1usize..6) {
        let mut rng = case_rng(seed, 2);
        let mut g: QMatrix = Matrix::zeros(size, size);
        for i in 0..size {
            for j in 0..=i {
                let v = cymax::exactnum::field::rat(rng.gen_range(-3..=3));
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
        }
        let s = to_q(&random_unimodular(&mut rng, size));
        let h = s.transpose().mul(&g).mul(&s);
        prop_assert_eq!(symmetric_signature(&to_cyc(&g)).unwrap(), symmetric_signature(&to_cyc(&h)).unwrap());
    }

    #[test]
    fn log_exp_roundtrip(seed in any::<u64>(), size in 1usize..13) {
        let mut rng = case_rng(seed, 3);
        let mut n: QMatrix = Matrix::zeros(size, size);
        for i in 0..size {
            for j in i + 1..size {
                n.set(i, j, cymax::exactnum::field::rat_frac(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
            }
        }
        let s = to_q(&random_unimodular(&mut rng, size));
        let n = s.inverse().unwrap().mul(&n).mul(&s);
        let t = truncated_exp(&n);
        prop_assert_eq!(nilpotent_log(&t).unwrap(), n.clone());
        prop_assert!(weight_w0_dim(&n).unwrap() <= size.saturating_sub(3));
    }

    #[test]
    fn block_structure_agrees_for_inverse(seed in any::<u64>(), m in 1usize..3, kind in 0usize..3) {
        let mut rng = case_rng(seed, 4);
        let c = BlockContainer::new(&mut rng, m);
        let g = match kind {
            0 => c.random_unipotent(&mut rng),
            1 => c.swap_element(),
            _ => c.random_transvection(&mut rng),
        };
        let gi = g.inverse().unwrap();
        let a = block_structure_matrix(&g, &c.f2).unwrap().is_block();
        let b = block_structure_matrix(&gi, &c.f2).unwrap().is_block();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cyclotomic_product(m in 1u64..=60) {
        let f = cyclotomic_factorization(m).unwrap();
        let prod = f.iter().fold(Poly::one(), |acc, (_, p)| acc.mul(p));
        prop_assert_eq!(prod, Poly::x_pow_minus_one(m as usize));
    }

    #[test]
    fn allowed_orders_stable(m_max in 6u64..200) {
        prop_assert_eq!(allowed_maximal_orders(m_max), vec![1, 2, 3, 4, 6]);
    }
}

#[test]
fn hodge_breakdown_sums() {
    for k in 0..=6 {
        let h = cy3_hodge_numbers(k).unwrap();
        assert_eq!(h.breakdown.iter().map(|(_, v)| v).sum::<i64>(), h.h11);
        assert_eq!(h.b3, 2 * (h.h21 + 1));
    }
}

#[test]
fn report_json_roundtrip() {
    let r = hodge_table_report();
    let back: Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json(), r.to_json());
}
