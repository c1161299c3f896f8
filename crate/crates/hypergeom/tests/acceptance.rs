//! Acceptance suite: every release gate runs here at its pinned tolerance,
//! one pass/fail line per criterion (visible with `cargo test --test
//! acceptance -- --nocapture`).

use hypergeom::charsum::checks as ffchecks;
use hypergeom::charsum::{integer_reconstruct, sums, PrimeFieldContext};
use hypergeom::datum::{g2_pair, make_hd4, rat_int};
use hypergeom::numeric::checks as cchecks;
use hypergeom::numeric::Ctx;
use hypergeom::padic::checks as pchecks;
use hypergeom::padic::series::truncated_f;
use hypergeom::qseries::EigenTables;
use hypergeom::report::VerificationRecord;
use hypergeom::suites::{primes_one_mod, run_suite, smallest_primes_one_mod, SuiteConfig, SuiteId};
use num::Zero;
use std::time::Instant;

fn report(criterion: u32, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn all_pass(records: &[VerificationRecord]) -> bool {
    records.iter().all(|r| r.passed())
}

#[test]
fn criterion_1_ff_q_defined_case() {
    // exact integer equality of the normalized character sum with the
    // product of the two eta-extracted coefficients, every odd prime in
    // [5, 199]; single-threaded runtime bound of two minutes
    let start = Instant::now();
    let tables = EigenTables::default();
    let hd = make_hd4(6).unwrap();
    let mut count = 0;
    for p in (5u64..=199).filter(|p| hypergeom::charsum::is_prime(*p)) {
        let ctx = PrimeFieldContext::new(p).unwrap();
        let h = sums::h_value(&hd, &rat_int(-1), &ctx).unwrap();
        let lhs = integer_reconstruct(&h).unwrap();
        let ap2 = tables.ap_f2_d4_any(p).unwrap();
        let (re3, im3) = tables.ap_f3_d4_any(p).unwrap();
        assert!((&ap2 * &im3).is_zero(), "product must be real at p={p}");
        assert_eq!(lhs, &ap2 * &re3, "p={p}");
        count += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        count == 44 && elapsed <= 120.0,
        &format!("H = a_p * a_p at {count} primes <= 199 in {elapsed:.1}s (bound 120s)"),
    );
}

#[test]
fn criterion_2_deg4_trace_identity() {
    // five smallest admissible primes per column index, two embedding
    // choices each, exact integer equality
    let tables = EigenTables::default();
    let mut checked = 0;
    for j in 1..=11i64 {
        let g2 = g2_pair(j).unwrap();
        let primes = smallest_primes_one_mod(g2.m, 5);
        assert!(primes.iter().all(|p| *p <= 1000), "smallest primes exceed 1000");
        for p in primes {
            for root in [1u64, (2..p).find(|c| num::integer::gcd(*c, p - 1) == 1).unwrap()] {
                let ctx = PrimeFieldContext::with_root_choice(p, root).unwrap();
                let rec = ffchecks::galois_point_check(j, p, &ctx, &tables).unwrap();
                assert!(rec.passed(), "j={j} p={p} root={root}: {rec:?}");
                checked += 1;
            }
        }
    }
    report(2, checked == 11 * 5 * 2, &format!("{checked} instances, root-choice independent"));
}

#[test]
fn criterion_3_jacobi_expression_and_unit_root() {
    let tables = EigenTables::default();
    // part 1: the two-character Jacobi expression equals the eta
    // coefficient on the criterion-2 grid
    let mut part1 = 0;
    for j in 1..=11i64 {
        let g2 = g2_pair(j).unwrap();
        for p in smallest_primes_one_mod(g2.m, 5) {
            let ctx = PrimeFieldContext::new(p).unwrap();
            let lhs = ffchecks::ap_f2_from_jacobi(j, &ctx).unwrap();
            let rhs = tables.ap_f2(g2.d, p).unwrap();
            assert_eq!(lhs, rhs, "j={j} p={p}");
            part1 += 1;
        }
    }
    // part 2: unit-root decomposition sums to a_p mod p^3 with the stated
    // valuations, p <= 300
    let mut part2 = 0;
    for j in 1..=6i64 {
        let g2 = g2_pair(j).unwrap();
        for p in primes_one_mod(g2.m, 300) {
            let k = hypergeom::padic::gamma::max_precision_exponent(p).min(3);
            let (a0, a1) = pchecks::unit_root_f2(j, p, k).unwrap();
            assert_eq!(a0.valuation(), 0, "j={j} p={p}");
            assert_eq!(a1.valuation(), 1, "j={j} p={p}");
            let ap = hypergeom::padic::PadicResidue::from_integer(
                &tables.ap_f2(g2.d, p).unwrap(),
                p,
                k,
            );
            assert!(a0.add(&a1).agrees_mod(&ap, k).unwrap(), "j={j} p={p}");
            part2 += 1;
        }
    }
    report(3, part1 == 55 && part2 > 60, &format!("{part1} Jacobi + {part2} unit-root instances"));
}

#[test]
fn criterion_4_truncation_congruences() {
    let tables = EigenTables::default();
    let mut len4 = 0;
    let mut len5 = 0;
    let mut cubed = 0;
    for j in 1..=6i64 {
        let g2 = g2_pair(j).unwrap();
        for p in primes_one_mod(g2.m, 300) {
            let r4 = pchecks::supercongruence_check_4(j, p, &tables).unwrap();
            assert!(r4.passed(), "len4 j={j} p={p}: {r4:?}");
            len4 += 1;
            for r5 in pchecks::supercongruence_check_5(j, p, &tables).unwrap() {
                assert!(r5.passed(), "len5 j={j} p={p}: {r5:?}");
                if r5.modulus_or_tolerance.ends_with("^3") {
                    cubed += 1;
                } else {
                    len5 += 1;
                }
            }
        }
    }
    // the upper family members must fail p-integrality
    let mut guards = 0;
    for j in 7..=11i64 {
        let g2 = g2_pair(j).unwrap();
        let p = smallest_primes_one_mod(g2.m, 1)[0];
        let hd = make_hd4(j).unwrap();
        match truncated_f(&hd, &rat_int(-1), p, 2) {
            Err(hypergeom::Error::Integrality(_)) => guards += 1,
            other => panic!("j={j} p={p}: expected integrality failure, got {other:?}"),
        }
    }
    report(
        4,
        len4 > 60 && len5 > 60 && cubed >= 18 && guards == 5,
        &format!("{len4} length-4, {len5} length-5 mod p^2, {cubed} mod p^3 at j=6, {guards} integrality guards"),
    );
}

#[test]
fn criterion_5_kummer_congruence_and_averaging() {
    let mut key1 = 0;
    for j in 1..=6i64 {
        let g2 = g2_pair(j).unwrap();
        for p in primes_one_mod(g2.m, 200) {
            let rec = pchecks::key1_check(j, p).unwrap();
            assert!(rec.passed(), "j={j} p={p}: {rec:?}");
            key1 += 1;
        }
    }
    // 200 seeded perturbation instances, n in {2,3,4}, p in {7,13,37}
    use hypergeom::datum::{rat, Rat};
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(0x7065_7274);
    let mut done = 0;
    while done < 200 {
        let p = *[7u64, 13, 37].iter().nth(rng.gen_range(0..3)).unwrap();
        let n = rng.gen_range(2..=4usize);
        let len = rng.gen_range(2..=4usize);
        let ell = rng.gen_range(0..=len);
        let dens: Vec<i64> = [1i64, 2, 3, 4, 6, 12].iter().copied().filter(|d| (*d as u64) % p != 0).collect();
        let xi: Vec<Rat> = (0..len).map(|_| rat(rng.gen_range(1..48), dens[rng.gen_range(0..dens.len())])).collect();
        let v: Vec<Rat> = (0..len).map(|_| rat(rng.gen_range(-6..=6), 1)).collect();
        let mut w: Vec<Rat> = (0..n - 1).map(|_| rat(rng.gen_range(-5..=5), 1)).collect();
        let last = -w.iter().fold(Rat::zero(), |a, b| a + b);
        w.push(last);
        let rec = pchecks::perturbation_average_check(&xi, ell, &v, &w, p).unwrap();
        assert!(rec.passed(), "instance {done}: {rec:?}");
        done += 1;
    }
    report(5, key1 > 40 && done == 200, &format!("{key1} congruence instances, {done} averaging instances"));
}

#[test]
fn criterion_6_classical_identities() {
    // both displayed identities and the Legendre relation at relative
    // error 1e-20, 60-digit working precision, five-minute budget
    let start = Instant::now();
    let ctx = Ctx::new(60);
    for j in 1..=11i64 {
        let recs = cchecks::classical_deg4_checks(j, 20, &ctx).unwrap();
        assert_eq!(recs.len(), 3);
        assert!(all_pass(&recs), "j={j}: {recs:?}");
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        6,
        elapsed <= 300.0,
        &format!("33 identity instances at 1e-20 in {elapsed:.1}s (bound 300s)"),
    );
}

#[test]
fn criterion_7_d4_closed_forms() {
    let ctx = Ctx::new(60);
    let recs = cchecks::d4_complex_checks(15, &ctx).unwrap();
    assert_eq!(recs.len(), 4);
    assert!(all_pass(&recs), "{recs:?}");
    report(7, true, "special values and both L-value closed forms at 1e-15");
}

#[test]
fn criterion_8_appendix_battery() {
    let ctx = Ctx::new(60);
    let recs = cchecks::appendix_checks(&ctx).unwrap();
    let informational = recs
        .iter()
        .filter(|r| r.status == hypergeom::report::Status::Skipped)
        .count();
    let failing: Vec<_> = recs
        .iter()
        .filter(|r| !r.passed() && r.status != hypergeom::report::Status::Skipped)
        .collect();
    assert!(failing.is_empty(), "{failing:?}");
    report(
        8,
        informational <= 1,
        &format!("{} relations at 1e-10 ({} informational)", recs.len() - informational, informational),
    );
}

#[test]
fn criterion_9_structural_identities() {
    let ctx = Ctx::new(60);
    // 20 seeded tuples for each of the two transformations, 1e-18
    for tuple in cchecks::seeded_whipple_tuples(1, 20) {
        let rec = cchecks::whipple_numeric_check(&tuple, 18, &ctx).unwrap();
        assert!(rec.passed(), "{rec:?}");
    }
    for tuple in cchecks::seeded_kummer_tuples(1, 20) {
        let rec = cchecks::kummer_numeric_check(&tuple, 18, &ctx).unwrap();
        assert!(rec.passed(), "{rec:?}");
    }
    // finite-field reductions: the suite items carry the seeded tuples,
    // matching primes <= 200 to each tuple's character denominators
    let mut cfg = SuiteConfig::new(SuiteId::CharsumIdentities);
    cfg.pmax = 200;
    let (records, summary) = run_suite(&cfg).unwrap();
    let wp: Vec<_> = records.iter().filter(|r| r.check_id == "charsum:wp-reduction").collect();
    let gk: Vec<_> = records.iter().filter(|r| r.check_id == "charsum:kummer-ff").collect();
    assert!(wp.len() >= 10 && gk.len() >= 10, "tuple coverage: {} wp, {} gk", wp.len(), gk.len());
    assert!(summary.fail == 0 && summary.error == 0, "{summary:?}");

    // vanishing at p = 7 mod 12 up to 500
    for p in (5u64..=500).filter(|p| p % 12 == 7 && hypergeom::charsum::is_prime(*p)) {
        let c = PrimeFieldContext::new(p).unwrap();
        let h = ffchecks::hd1_value(&c).unwrap();
        assert!(integer_reconstruct(&h).unwrap().is_zero(), "p={p}");
    }
    // the p = 1 mod 12 identity with the p^2 factor, five smallest primes
    let tables = EigenTables::default();
    for p in smallest_primes_one_mod(12, 5) {
        let c = PrimeFieldContext::new(p).unwrap();
        let h = ffchecks::hd1_value(&c).unwrap();
        let lhs = integer_reconstruct(&h.scale((p * p) as f64)).unwrap();
        let rhs = tables.ap_f3(12, p).unwrap() * tables.ap_f2(12, p).unwrap();
        assert_eq!(lhs, rhs, "p={p}");
    }
    report(9, true, "transformations, reductions, vanishing, and the p^2 identity");
}

#[test]
fn criterion_10_property_suites() {
    let mut green = true;
    let mut detail = String::new();
    for suite in [
        SuiteId::CharsumIdentities,
        SuiteId::PadicProperties,
        SuiteId::QmodularProperties,
    ] {
        let mut cfg = SuiteConfig::new(suite);
        cfg.pmax = 200;
        let (_, summary) = run_suite(&cfg).unwrap();
        green &= summary.all_green();
        detail.push_str(&format!(
            "{}: {}/{} pass; ",
            summary.suite,
            summary.pass,
            summary.total
        ));
    }
    // determinism: byte-identical canonical records across thread counts
    let mut cfg = SuiteConfig::new(SuiteId::PadicProperties);
    cfg.pmax = 100;
    cfg.threads = 1;
    let (a, _) = run_suite(&cfg).unwrap();
    cfg.threads = 3;
    let (b, _) = run_suite(&cfg).unwrap();
    let det = a.iter().map(|r| r.canonical()).collect::<Vec<_>>()
        == b.iter().map(|r| r.canonical()).collect::<Vec<_>>();
    report(10, green && det, &format!("{detail}deterministic across thread counts: {det}"));
}
