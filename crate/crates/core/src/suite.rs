//! Report builders behind the command-line subcommands, and the seeded
//! property checks that the full suite aggregates.

use serde_json::json;

use crate::classify::{
    allowed_maximal_orders, analyze_action, cyclotomic_factorization, prime_order_test, two_three_orders,
    PrimeOrderVerdict, Reason,
};
use crate::error::{Error, Result};
use crate::exactnum::{euler_phi, CycMatrix, CycNum, Matrix, QMatrix};
use crate::forms::{eigenvalue_sign_signature, hermitian_signature, Signature};
use crate::hodge::{
    cm_sufficient_check, cy3_tensor, default_period_point, elliptic_fermat_hs, f2_eigenspace_check, k3_from_period,
    weight3_hermitian, F2Verdict, PeriodPoint,
};
use crate::intlin::{to_q, z_to_cyc};
use crate::isometry::catalog::{catalog_order3, SUPPORTED_R};
use crate::isometry::{
    companion_cyclotomic, eigenspace_of, multiplicity_dimension, signature_from_eigenspaces, LatticeIsometry,
};
use crate::lattice::{Lattice, StandardLattice};
use crate::monodromy::{
    block_structure, block_unitary, centralizer_membership, mum_obstruction, nilpotent_log, weight_w0_dim,
    MonodromyElement, MumVerdict, DEFAULT_WORD_LENGTH,
};
use crate::quotient::{borcea_voisin_z2_example, consistency_with_tensor, cy3_hodge_numbers, f2_dim, fixed_locus_from_k};
use crate::report::{Report, Table};
use crate::sampling::{
    case_rng, random_cyc, random_finite_order, random_hermitian_q12, random_unimodular, BlockContainer,
};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SAMPLES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Cases per seeded property check.
    pub samples: usize,
    pub m_max: u64,
    pub order_bound: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            m_max: crate::classify::DEFAULT_M_MAX,
            order_bound: crate::isometry::DEFAULT_ORDER_BOUND,
        }
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn reason_code(r: Reason) -> String {
    serde_json::to_value(r).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

/// Outcome of a seeded property check: every case either holds or is
/// recorded as a violation with a short description.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub cases: usize,
    pub violations: Vec<String>,
}

impl PropertyOutcome {
    fn record(&mut self, case: usize, r: Result<bool>) {
        self.cases += 1;
        match r {
            Ok(true) => {}
            Ok(false) => self.violations.push(format!("case {case}")),
            Err(e) => self.violations.push(format!("case {case}: {e}")),
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    fn report_into(&self, rep: &mut Report, name: &str) {
        let actual = match self.violations.first() {
            None => format!("0 violations in {} cases", self.cases),
            Some(first) => format!("{} violations in {} cases, first {first}", self.violations.len(), self.cases),
        };
        rep.check(name, format!("0 violations in {} cases", self.cases), actual, self.holds());
    }
}

// Disjoint stream ranges keep the property checks independent of each other.
const STREAM_ISOTROPY: u64 = 1 << 32;
const STREAM_BLOCK: u64 = 2 << 32;
const STREAM_CENTRALIZER: u64 = 3 << 32;
const STREAM_GALOIS: u64 = 4 << 32;
const STREAM_SIGNATURE: u64 = 5 << 32;
const STREAM_CM: u64 = 6 << 32;

/// Q(v, v) = 0 for random vectors in the primitive third-root eigenspaces
/// of the catalog isometries.
pub fn isotropy_property(seed: u64, cases: usize) -> Result<PropertyOutcome> {
    let mut spaces = Vec::new();
    for r in SUPPORTED_R {
        let iso = catalog_order3(r)?;
        let g = z_to_cyc(iso.lattice().gram());
        for j in [1, 2] {
            spaces.push((g.clone(), iso.eigenspace_basis(3, j)?));
        }
    }
    let mut out = PropertyOutcome::default();
    for case in 0..cases {
        let mut rng = case_rng(seed, STREAM_ISOTROPY + case as u64);
        let (g, b) = &spaces[case % spaces.len()];
        let v = loop {
            let c: Vec<CycNum> = (0..b.cols()).map(|_| random_cyc(&mut rng, 3)).collect();
            let v = b.mul_vec(&c);
            if !v.iter().all(CycNum::is_zero) {
                break v;
            }
        };
        out.record(case, Ok(g.bilinear(&v, &v).is_zero()));
    }
    Ok(out)
}

/// Random block-diagonal unipotent elements over Q(ζ₃) containers of
/// b₃ ∈ {4, 8, 12}: the log has even dim Im(N³) and the obstruction holds.
pub fn block_even_property(seed: u64, cases: usize) -> PropertyOutcome {
    let mut out = PropertyOutcome::default();
    for case in 0..cases {
        let mut rng = case_rng(seed, STREAM_BLOCK + case as u64);
        let m = 1 + case % 3;
        let c = BlockContainer::new(&mut rng, m);
        let mut run = || -> Result<bool> {
            let g = MonodromyElement::new(c.random_unipotent(&mut rng), &c.q)?;
            if !g.preserves_form() || !block_structure(&g, &c.f2)?.is_block() {
                return Ok(false);
            }
            let n = nilpotent_log(g.matrix())?;
            let even = weight_w0_dim(&n)? % 2 == 0;
            let mut gens = vec![g];
            if case % 2 == 1 {
                gens.push(MonodromyElement::new(c.random_unipotent(&mut rng), &c.q)?);
            }
            Ok(even && mum_obstruction(&gens, &c.f2, DEFAULT_WORD_LENGTH)?.is_impossible())
        };
        out.record(case, run());
    }
    out
}

/// Commuting with α agrees with (block-diagonal and H-unitary) on samples
/// drawn from commuting and non-commuting constructions. Returns the
/// outcome and the number of commuting samples.
pub fn centralizer_property(seed: u64, cases: usize) -> (PropertyOutcome, usize) {
    let mut out = PropertyOutcome::default();
    let mut commuting = 0;
    for case in 0..cases {
        let mut rng = case_rng(seed, STREAM_CENTRALIZER + case as u64);
        let c = BlockContainer::new(&mut rng, 1 + case % 3);
        let mut run = || -> Result<bool> {
            let g = match case % 4 {
                0 => c.random_unipotent(&mut rng),
                1 => c.alpha.mul(&c.random_unipotent(&mut rng)),
                2 => c.swap_element().mul(&c.random_unipotent(&mut rng)),
                _ => c.random_transvection(&mut rng),
            };
            let g = MonodromyElement::new(g, &c.q)?;
            let lhs = centralizer_membership(&g, &c.alpha, &c.f2)?;
            let rhs = block_unitary(&g, &c.q, &c.f2)?;
            commuting += usize::from(lhs);
            Ok(lhs == rhs)
        };
        let r = run();
        out.record(case, r);
    }
    (out, commuting)
}

/// Primitive d-th root eigenspaces of random finite-order matrices all have
/// dimension equal to the number of Φ_d companion blocks used to build them.
pub fn galois_property(seed: u64, cases: usize) -> PropertyOutcome {
    let mut out = PropertyOutcome::default();
    for case in 0..cases {
        let mut rng = case_rng(seed, STREAM_GALOIS + case as u64);
        let (a, blocks) = random_finite_order(&mut rng, 8);
        let ac = crate::exactnum::to_cyc(&a);
        let mut ok = true;
        let mut total = 0;
        let mut ds = blocks.clone();
        ds.sort_unstable();
        ds.dedup();
        for &d in &ds {
            let expected = blocks.iter().filter(|&&b| b == d).count();
            for j in (1..=d).filter(|&j| num_integer::gcd(j, d) == 1) {
                let dim = eigenspace_of(&ac, d, j).cols();
                ok &= dim == expected;
                total += dim;
            }
        }
        out.record(case, Ok(ok && total == a.rows()));
    }
    out
}

/// Exact LDL* signature against certified eigenvalue signs on random
/// Hermitian matrices over Q(ζ₁₂) of size 1..=6.
pub fn signature_property(seed: u64, cases: usize) -> PropertyOutcome {
    let mut out = PropertyOutcome::default();
    for case in 0..cases {
        let mut rng = case_rng(seed, STREAM_SIGNATURE + case as u64);
        let h = random_hermitian_q12(&mut rng, 1 + case % 6);
        let r = hermitian_signature(&h).and_then(|a| Ok(a == eigenvalue_sign_signature(&h)?));
        out.record(case, r);
    }
    out
}

/// The elliptic CM certificate survives random unimodular base changes.
pub fn cm_stability_property(seed: u64, cases: usize) -> PropertyOutcome {
    let e = elliptic_fermat_hs();
    let mut out = PropertyOutcome::default();
    for case in 0..cases {
        let mut rng = case_rng(seed, STREAM_CM + case as u64);
        let s = random_unimodular(&mut rng, 2);
        let r = e.change_basis(&s).and_then(|e2| {
            let action = e2.action().ok_or_else(|| Error::InternalInconsistency("action lost".into()))?.clone();
            Ok(cm_sufficient_check(&e2, &action)?.is_certified())
        });
        out.record(case, r);
    }
    out
}

pub fn hodge_table_checks(rep: &mut Report) -> Table {
    let mut rows = Vec::new();
    for k in 0..=6i64 {
        let name = format!("hodge numbers k={k} (h21, h11)");
        let expected = format!("({}, {})", 6 - k, 18 + 11 * k);
        match (cy3_hodge_numbers(k), fixed_locus_from_k(k)) {
            (Ok(h), Ok(f)) => {
                let sum: i64 = h.breakdown.iter().map(|(_, v)| v).sum();
                let r = 6 - k;
                let closed = (21 - 2 * r) + 6 * k + 3 * (k + 3);
                rep.eq_check(name, expected, format!("({}, {})", h.h21, h.h11));
                rep.check(
                    format!("breakdown k={k} sums to 18+11k"),
                    18 + 11 * k,
                    format!("{sum} (closed form {closed})"),
                    sum == 18 + 11 * k && closed == sum,
                );
                rep.eq_check(format!("fixed locus k={k} (n, r)"), format!("({}, {})", k + 3, 6 - k), format!("({}, {})", f.n, f.r));
                rows.push([k, f.r as i64, h.h21, h.h11, f.n as i64, h.b3].iter().map(i64::to_string).collect());
            }
            (Err(e), _) | (_, Err(e)) => rep.error(name, expected, e),
        }
    }
    Table { columns: ["k", "r", "h21", "h11", "n", "b3"].iter().map(|s| s.to_string()).collect(), rows }
}

pub fn hodge_table_report() -> Report {
    let mut rep = Report::new("hodge-table");
    rep.table = Some(hodge_table_checks(&mut rep));
    rep
}

pub fn classification_checks(rep: &mut Report, m_max: u64, order_bound: u64) {
    let factor_ok = (1..=m_max.max(9)).all(|m| cyclotomic_factorization(m).is_ok());
    rep.check(
        format!("x^m - 1 = product of Phi_d for m <= {}", m_max.max(9)),
        "exact",
        if factor_ok { "exact" } else { "mismatch" },
        factor_ok,
    );
    match cyclotomic_factorization(9) {
        Ok(f) => {
            let shown: Vec<String> = f.iter().map(|(_, p)| format!("({p})")).collect();
            let idx: Vec<u64> = f.iter().map(|(d, _)| *d).collect();
            rep.check("x^9 - 1 factors", "Phi_1 Phi_3 Phi_9", shown.join(""), idx == [1, 3, 9]);
        }
        Err(e) => rep.error("x^9 - 1 factors", "Phi_1 Phi_3 Phi_9", e),
    }
    let mut allowed_primes = Vec::new();
    let mut prime_ok = true;
    for p in (3..=37u64).filter(|&p| crate::exactnum::poly::is_prime(p)) {
        let verdicts: Vec<PrimeOrderVerdict> =
            (1..=20).filter_map(|h| prime_order_test(p, 2 * h).ok()).collect();
        prime_ok &= verdicts.len() == 20;
        if verdicts.contains(&PrimeOrderVerdict::Allowed) {
            allowed_primes.push(p);
        }
    }
    rep.check(
        "odd primes p <= 37 allowed by b3/2 = b3/(p-1)",
        "3",
        list(&allowed_primes),
        prime_ok && allowed_primes == [3],
    );
    rep.eq_check(
        "order 2 verdict",
        "scalar_only".to_string(),
        match prime_order_test(2, 4) {
            Ok(PrimeOrderVerdict::ScalarOnly) => "scalar_only".to_string(),
            other => format!("{other:?}"),
        },
    );
    for (m, phi) in [(8u64, 4u64), (9, 6), (12, 4)] {
        rep.check(format!("m={m} excluded"), format!("phi = {phi} > 2"), format!("phi = {} > 2", euler_phi(m)), euler_phi(m) == phi);
    }
    let expected: Vec<u64> = [1, 2, 3, 4, 6].into_iter().filter(|&m| m <= m_max).collect();
    let allowed = allowed_maximal_orders(m_max);
    rep.eq_check(format!("allowed maximal orders m <= {m_max}"), list(&expected), list(&allowed));

    let mut shape = |name: &str, a: QMatrix, expected: (u64, Reason, usize)| {
        let exp = format!("order {}, {}, {} eigenvalues", expected.0, reason_code(expected.1), expected.2);
        match analyze_action(&a, true, order_bound) {
            Ok(o) => rep.eq_check(
                name,
                exp,
                format!("order {}, {}, {} eigenvalues", o.order, reason_code(o.reason), o.distinct_eigenvalues),
            ),
            Err(e) => rep.error(name, exp, e),
        }
    };
    let phi3 = to_q(&companion_cyclotomic(3));
    shape("companion(Phi_9)", to_q(&companion_cyclotomic(9)), (9, Reason::TooManyOrbits, 6));
    shape("companion(Phi_3) + companion(Phi_3)", Matrix::block_diag(&phi3, &phi3), (3, Reason::OkConjugatePair, 2));
    shape("-id on Q^6", Matrix::identity(6).neg(), (2, Reason::OkScalar, 1));

    rep.summary.push(format!("orders with prime divisors 2 and 3 only: {}", list(&two_three_orders(m_max))));
    rep.summary.push(format!("allowed maximal orders: {}", list(&allowed)));
}

pub fn classify_report(m_max: u64, order_bound: u64) -> Report {
    let mut rep = Report::new("classify");
    classification_checks(&mut rep, m_max, order_bound);
    rep
}

/// Analysis of a user-supplied action. A shape that is not maximal-compatible
/// is an answer, not a failure, so it is reported as N/A.
pub fn classify_matrix_report(a: &QMatrix, order_bound: u64) -> Report {
    let mut rep = Report::new("classify --matrix");
    match analyze_action(a, true, order_bound) {
        Ok(o) => {
            rep.check("finite order", format!("<= {order_bound}"), o.order, true);
            let total = multiplicity_dimension(&o.eigenvalue_orbit_dims);
            rep.check("sum a_d phi(d) = dim", a.rows(), total, total == a.rows());
            rep.check("primitive eigenspaces of equal d have equal dimension", true, o.galois_dims_equal, o.galois_dims_equal);
            if o.maximal_compatible {
                rep.check("maximal shape", "compatible", reason_code(o.reason), true);
            } else {
                rep.not_applicable("maximal shape", reason_code(o.reason));
            }
            rep.data = serde_json::to_value(&o).ok();
        }
        Err(e) => rep.error("finite order", format!("<= {order_bound}"), e),
    }
    rep
}

pub fn verify_isometry_report(lattice: &Lattice, m: &crate::intlin::ZMatrix, order_bound: u64) -> Report {
    let mut rep = Report::new("verify-isometry");
    let iso = match LatticeIsometry::validate(lattice, m, order_bound) {
        Ok(iso) => iso,
        Err(e) => {
            rep.error("isometry of finite order", format!("MᵀGM = G, order <= {order_bound}"), e);
            return rep;
        }
    };
    rep.check("isometry of finite order", format!("MᵀGM = G, order <= {order_bound}"), format!("order {}", iso.order()), true);
    let mut data = serde_json::Map::new();
    data.insert("order".into(), json!(iso.order()));
    let run = |rep: &mut Report, data: &mut serde_json::Map<String, serde_json::Value>| -> Result<()> {
        let mult = iso.multiplicities()?;
        data.insert("multiplicities".into(), json!(mult));
        let eq = iso.galois_orbit_dims_equal()?;
        rep.check("primitive eigenspaces of equal d have equal dimension", true, eq, eq);
        if lattice.is_alternating() {
            rep.not_applicable("signature additivity", "alternating form");
            return Ok(());
        }
        let mut sigs = serde_json::Map::new();
        for (&d, _) in mult.iter().filter(|(&d, _)| d > 2) {
            for j in (1..=d).filter(|&j| num_integer::gcd(j, d) == 1) {
                sigs.insert(format!("{d},{j}"), json!(iso.eigenspace_signature(d, j)?.to_string()));
            }
        }
        data.insert("eigenspace_signatures".into(), serde_json::Value::Object(sigs));
        let total = lattice.signature()?;
        let sum = signature_from_eigenspaces(&iso)?;
        data.insert("lattice_signature".into(), json!(total.to_string()));
        rep.eq_check("signature additivity over eigenspaces", total, sum);
        Ok(())
    };
    if let Err(e) = run(&mut rep, &mut data) {
        rep.error("eigenspace analysis", "completes", e);
    }
    rep.data = Some(serde_json::Value::Object(data));
    rep
}

pub fn check_monodromy_report(f2: &CycMatrix, gens: &[QMatrix], form: Option<&QMatrix>, word_length: usize) -> Report {
    let mut rep = Report::new("check-monodromy");
    let mut elements = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let el = match form {
            Some(q) => MonodromyElement::new(g.clone(), q),
            None => MonodromyElement::without_form(g.clone()),
        };
        match el {
            Ok(el) => {
                if form.is_some() {
                    rep.check(format!("g{i} preserves Q"), true, el.preserves_form(), el.preserves_form());
                }
                elements.push(el);
            }
            Err(e) => {
                rep.error(format!("g{i} is invertible on the container"), true, e);
                return rep;
            }
        }
    }
    let mut blocks = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        match block_structure(g, f2) {
            Ok(b) => blocks.push(b.is_block()),
            Err(e) => {
                rep.error(format!("g{i} block structure"), "computed", e);
                return rep;
            }
        }
    }
    let (even_dims, mum_impossible, verdict) = match mum_obstruction(&elements, f2, word_length) {
        Ok(v @ MumVerdict::MumImpossible { .. }) => {
            rep.check("dim Im(N^3) even for every analyzed log", true, true, true);
            rep.check("MUM obstruction", "MUM_IMPOSSIBLE", "MUM_IMPOSSIBLE", true);
            (true, true, serde_json::to_value(&v).ok())
        }
        Ok(v @ MumVerdict::NotApplicable { .. }) => {
            rep.not_applicable("MUM obstruction", "a generator does not preserve F2");
            (false, false, serde_json::to_value(&v).ok())
        }
        Err(e) => {
            rep.error("dim Im(N^3) even for every analyzed log", true, e);
            (false, false, None)
        }
    };
    rep.data = Some(json!({
        "blocks": blocks,
        "even_dims": even_dims,
        "mum_impossible": mum_impossible,
        "verdict": verdict,
    }));
    rep
}

/// End-to-end checks for the catalog isometry with a₃ = r + 1: K3 period,
/// weight-3 tensor structure, F² eigenspace, Hermitian form, table
/// consistency, induced action shape and the CM check.
pub fn pipeline_checks(rep: &mut Report, r: usize, omega: Option<Vec<CycNum>>, order_bound: u64) -> Result<serde_json::Value> {
    let p = format!("r={r}: ");
    let iso = catalog_order3(r)?;
    let pp = match omega {
        Some(w) => PeriodPoint::new(&iso, w)?,
        None => default_period_point(&iso)?,
    };
    let s = k3_from_period(&iso, &pp)?;
    rep.eq_check(format!("{p}K3 piece dims (h20, h11, h02)"), "1, 20, 1".to_string(), list(&s.piece_dims()));
    let t = cy3_tensor(&s, &elliptic_fermat_hs())?;
    let hs = &t.hs;
    let dims = hs.piece_dims();
    rep.eq_check(format!("{p}piece dims (h30, h21, h12, h03)"), list(&[1, r, r, 1]), list(&dims));
    rep.eq_check(format!("{p}b3"), 2 * r + 2, hs.dim());
    rep.eq_check(format!("{p}filtration dims (F3, F2, F1)"), list(&[1, r + 1, 2 * r + 1]), list(&hs.filtration_dims()));
    let alpha = hs.action().ok_or_else(|| Error::InternalInconsistency("tensor structure has no action".into()))?;
    let f2 = f2_eigenspace_check(hs, alpha)?;
    let xi = CycNum::zeta(3);
    let shown = |v: F2Verdict, eta: &Option<CycNum>| {
        format!("{}, eta = {}", serde_json::to_value(v).ok().and_then(|x| x.as_str().map(str::to_string)).unwrap_or_default(), eta.as_ref().map_or("none".to_string(), |e| e.to_string()))
    };
    rep.check(
        format!("{p}F2 = Eig(alpha, eta)"),
        shown(F2Verdict::Holds, &Some(xi.clone())),
        shown(f2.verdict, &f2.eta),
        f2.verdict == F2Verdict::Holds && f2.eta.as_ref() == Some(&xi),
    );
    let w = weight3_hermitian(hs)?;
    rep.eq_check(format!("{p}Hermitian signature on F2"), Signature::new(1, r, 0), hermitian_signature(&w.matrix)?);
    let k = 6 - r as i64;
    let (ok, table, actual) = consistency_with_tensor(k, hs)?;
    rep.check(format!("{p}h21 agrees with the table at k={k}"), table, actual, ok);
    let o = analyze_action(alpha, true, order_bound)?;
    rep.eq_check(
        format!("{p}induced action shape"),
        format!("order 3, {}", reason_code(Reason::OkConjugatePair)),
        format!("order {}, {}", o.order, reason_code(o.reason)),
    );
    let cm = cm_sufficient_check(hs, alpha)?;
    rep.check(
        format!("{p}CM check with the order-3 action only"),
        "not_certified",
        if cm.is_certified() { "cm_certified" } else { "not_certified" },
        !cm.is_certified(),
    );
    Ok(json!({
        "r": r,
        "k": k,
        "omega": pp.omega().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "piece_dims": dims,
        "filtration_dims": hs.filtration_dims(),
        "eta": f2.eta.map(|e| e.to_string()),
        "hermitian_flipped": w.flipped,
        "cm": cm,
    }))
}

pub fn pipeline_report(r: usize, omega: Option<Vec<CycNum>>, order_bound: u64) -> Report {
    let mut rep = Report::new("pipeline");
    match pipeline_checks(&mut rep, r, omega, order_bound) {
        Ok(d) => rep.data = Some(d),
        Err(e) => rep.error(format!("r={r}: pipeline"), "completes", e),
    }
    rep
}

fn catalog_checks(rep: &mut Report, r: usize) -> Result<()> {
    let p = format!("catalog r={r}: ");
    let iso = catalog_order3(r)?;
    rep.eq_check(format!("{p}order"), 3, iso.order());
    let mult = iso.multiplicities()?;
    rep.eq_check(format!("{p}a3"), r + 1, mult.get(&3).copied().unwrap_or(0));
    rep.eq_check(format!("{p}eigenspace signature on xi^-1"), Signature::new(1, r, 0), iso.eigenspace_signature(3, 2)?);
    rep.eq_check(format!("{p}signature additivity"), Signature::new(3, 19, 0), signature_from_eigenspaces(&iso)?);
    Ok(())
}

pub fn paper_suite(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("paper-suite");
    rep.seed = Some(cfg.seed);
    let n = cfg.samples;

    let k3 = Lattice::standard(StandardLattice::K3);
    match k3.signature() {
        Ok(sig) => rep.eq_check("K3 signature", Signature::new(3, 19, 0), sig),
        Err(e) => rep.error("K3 signature", "(3,19,0)", e),
    }
    let (even, unimodular) = k3.is_even_unimodular();
    rep.check("K3 even and unimodular", "even, |det| = 1", format!("even = {even}, det = {}", k3.det()), even && unimodular);

    for r in SUPPORTED_R {
        if let Err(e) = catalog_checks(&mut rep, r) {
            rep.error(format!("catalog r={r}"), "valid", e);
        }
    }
    match isotropy_property(cfg.seed, n) {
        Ok(o) => o.report_into(&mut rep, "Q(w, w) = 0 on primitive third-root eigenvectors"),
        Err(e) => rep.error("Q(w, w) = 0 on primitive third-root eigenvectors", "0 violations", e),
    }

    let table = hodge_table_checks(&mut rep);
    rep.table = Some(table);

    for r in SUPPORTED_R {
        if let Err(e) = pipeline_checks(&mut rep, r, None, cfg.order_bound) {
            rep.error(format!("r={r}: pipeline"), "completes", e);
        }
    }

    block_even_property(cfg.seed, n).report_into(&mut rep, "block-diagonal unipotent: even dim Im(N^3), MUM impossible");
    let mut rng = case_rng(cfg.seed, 0);
    let c = BlockContainer::new(&mut rng, 1);
    let swap = MonodromyElement::new(c.swap_element(), &c.q).and_then(|g| mum_obstruction(&[g], &c.f2, DEFAULT_WORD_LENGTH));
    match swap {
        Ok(v) => rep.check("swap of F2 and its conjugate", "NOT_APPLICABLE", if v.is_impossible() { "MUM_IMPOSSIBLE" } else { "NOT_APPLICABLE" }, !v.is_impossible()),
        Err(e) => rep.error("swap of F2 and its conjugate", "NOT_APPLICABLE", e),
    }
    let (cent, commuting) = centralizer_property(cfg.seed, n);
    cent.report_into(&mut rep, "centralizer of alpha = block-diagonal H-unitary");
    rep.check("centralizer samples cover both outcomes", "commuting and non-commuting", format!("{commuting} of {n} commuting"), commuting > 0 && commuting < n);

    galois_property(cfg.seed, n).report_into(&mut rep, "Galois-conjugate eigenspaces have equal dimension");
    signature_property(cfg.seed, n).report_into(&mut rep, "LDL* signature = certified eigenvalue signs");
    let e = elliptic_fermat_hs();
    match e.action().map(|a| cm_sufficient_check(&e, a)) {
        Some(Ok(v)) => rep.check("elliptic curve with zeta_3 action", "cm_certified", if v.is_certified() { "cm_certified" } else { "not_certified" }, v.is_certified()),
        Some(Err(err)) => rep.error("elliptic curve with zeta_3 action", "cm_certified", err),
        None => rep.error("elliptic curve with zeta_3 action", "cm_certified", "no action"),
    }
    cm_stability_property(cfg.seed, n.min(20)).report_into(&mut rep, "CM certificate under unimodular base change");

    classification_checks(&mut rep, cfg.m_max, cfg.order_bound);

    let z2 = borcea_voisin_z2_example();
    rep.eq_check("Z/2 example (h11, h21)", "(61, 1)".to_string(), format!("({}, {})", z2.h11, z2.h21));
    rep.check("Z/2 example b3 and dim F2", "b3 = 4, dim F2 = 2", format!("b3 = {}, dim F2 = {}", z2.b3, f2_dim(&z2)), z2.b3 == 4 && f2_dim(&z2) == 2 && z2.fixture);
    rep
}
