//! The acceptance gate. One test per required behavior; each prints a
//! single `[PASS]` line (visible with `--nocapture`) on success, and the
//! libtest summary gives the per-criterion pass/fail verdict either way.
//! Everything else in the suite exists to localize a failure here.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;

use nagell::form::{pell_path_solutions, vieta_path_solutions};
use nagell::harness::{check_sharpness, check_thm31, check_thm32, check_thm33, TheoremId, Verdict};
use nagell::report::checks_to_json;
use nagell::{pell_fundamental, solvable_k_set, solve_all, solve_gpell, FormInstance, FormSign};

fn pass(line: &str, started: Instant) {
    println!("[PASS] {line} ({:.2?})", started.elapsed());
}

/// Fundamental Pell solutions for every nonsquare d up to 1000 match two
/// independent oracles, and the d = (k/2)^2 - 1 family is (k/2, 1) exactly.
#[test]
fn pell_fundamentals_match_independent_oracles() {
    let started = Instant::now();
    // the direct scan proves minimality wherever it reaches; chakravala
    // covers the d whose fundamental solutions are astronomically large
    // (661 tops out near 10^36), and the scan validates chakravala on
    // every d it does reach
    let scan_cap = 100_000;
    let mut scan_hits = 0;
    for d in 2..=1000u64 {
        if common::as_square_u128(u128::from(d)).is_some() {
            continue;
        }
        let (cx, cy) = common::pell_by_chakravala(d);
        if let Some((sx, sy)) = common::pell_by_scan(d, scan_cap) {
            assert_eq!(
                (BigUint::from(sx), BigUint::from(sy)),
                (cx.clone(), cy.clone()),
                "chakravala disagrees with the direct scan for d = {d}"
            );
            scan_hits += 1;
        }
        let fund = pell_fundamental(&BigUint::from(d)).unwrap();
        assert_eq!(
            (fund.x, fund.y),
            (cx, cy),
            "continued fractions disagree with chakravala for d = {d}"
        );
    }
    // 639 of the 969 nonsquare d have their fundamental y within the cap;
    // guard against the scan silently degenerating, not against the exact
    // count
    assert!(scan_hits > 600, "the scan should reach most fundamentals, got {scan_hits}");

    for k in (4..=1000u64).step_by(2) {
        let m = k / 2;
        let fund = pell_fundamental(&BigUint::from(m * m - 1)).unwrap();
        assert_eq!(
            (fund.x, fund.y),
            (BigUint::from(m), BigUint::one()),
            "d = m^2 - 1 must have the unit (m, 1), k = {k}"
        );
    }

    assert!(started.elapsed() < Duration::from_secs(10), "criterion budget exceeded");
    pass("pell fundamentals match independent oracles, d <= 1000", started);
}

/// For every v, the u with |u^2 - d v^2| <= 256 are exactly the squares in
/// a +-256 window around d v^2, so enumerating that window per v is the
/// plain v-scan with the square test inverted — no theory involved.
fn gpell_scan_by_rhs(d: u64, rhs_abs_max: u64, v_limit: u64) -> HashMap<i64, Vec<(u64, u64)>> {
    let mut by_rhs: HashMap<i64, Vec<(u64, u64)>> = HashMap::new();
    let d = u128::from(d);
    let window = u128::from(rhs_abs_max);
    for v in 0..=u128::from(v_limit) {
        let base = d * v * v;
        let mut u = common::isqrt_u128(base.saturating_sub(window));
        while u * u < base.saturating_sub(window) {
            u += 1;
        }
        while u * u <= base + window {
            let rhs = (u * u) as i128 - base as i128;
            if rhs != 0 {
                by_rhs
                    .entry(i64::try_from(rhs).unwrap())
                    .or_default()
                    .push((u64::try_from(u).unwrap(), v as u64));
            }
            u += 1;
        }
    }
    by_rhs
}

/// solve_gpell equals the brute-force v-scan for all nonsquare d <= 50 and
/// 0 < |rhs| <= 256 at v_limit 10^4.
#[test]
fn gpell_solutions_match_exhaustive_scan() {
    let started = Instant::now();
    let v_limit = 10_000u64;

    // the windowed scan below inverts the square test; pin it to the
    // plainest possible v-scan on a subsample first
    for d in [2u64, 8, 13, 47] {
        let mut windowed = gpell_scan_by_rhs(d, 256, 2_000);
        for rhs in [1i64, -1, 8, -8, 113, -113, 256, -256] {
            let plain: Vec<(u64, u64)> = common::naive_gpell_solutions(d, rhs, 2_000)
                .iter()
                .map(|&(u, v)| (u64::try_from(u).unwrap(), u64::try_from(v).unwrap()))
                .collect();
            assert_eq!(windowed.remove(&rhs).unwrap_or_default(), plain, "d = {d}, rhs = {rhs}");
        }
    }

    let ds: Vec<u64> =
        (2..=50).filter(|&d| common::as_square_u128(u128::from(d)).is_none()).collect();
    let total = std::sync::atomic::AtomicUsize::new(0);
    ds.par_iter().for_each(|&d| {
        let mut want_by_rhs = gpell_scan_by_rhs(d, 256, v_limit);
        for rhs_abs in 1..=256i64 {
            for rhs in [rhs_abs, -rhs_abs] {
                let got =
                    solve_gpell(&BigUint::from(d), &BigInt::from(rhs), &BigUint::from(v_limit))
                        .unwrap();
                let got: Vec<(u64, u64)> =
                    got.iter().map(|(u, v)| common::pair_u64(u, v)).collect();
                let want = want_by_rhs.remove(&rhs).unwrap_or_default();
                assert_eq!(got, want, "solution lists differ for u^2 - {d} v^2 = {rhs}");
                total.fetch_add(got.len(), std::sync::atomic::Ordering::Relaxed);
            }
        }
    });
    let total = total.into_inner();
    assert!(total > 2000, "the comparison must not be vacuous, saw {total} solutions");
    assert!(started.elapsed() < Duration::from_secs(60), "criterion budget exceeded");
    pass(
        "generalized Pell enumeration matches the exhaustive scan, d <= 50, |rhs| <= 256",
        started,
    );
}

/// Zero counterexamples to the T31 checks for n <= 12 with margin 8.
#[test]
fn t31_zero_counterexamples_through_n_12() {
    let started = Instant::now();
    let ns: Vec<u32> = (0..=12).collect();
    let checks = check_thm31(&ns, 8);
    assert_eq!(checks.len(), 2, "odd and even exponents each get a check");
    for check in &checks {
        assert_eq!(check.verdict, Verdict::Pass, "{} failed", check.theorem);
        assert!(check.counterexamples.is_empty());
        assert!(!check.witnesses.is_empty());
    }
    assert!(started.elapsed() < Duration::from_secs(60), "criterion budget exceeded");
    pass("T31i/T31ii: zero counterexamples, n <= 12, margin 8", started);
}

/// Zero counterexamples to the T32 checks for n <= 12 with margin 8,
/// including the k ≡ 2 (mod 4) refinement on even exponents.
#[test]
fn t32_zero_counterexamples_through_n_12() {
    let started = Instant::now();
    let ns: Vec<u32> = (0..=12).collect();
    let checks = check_thm32(&ns, 8);
    assert_eq!(checks.len(), 2);
    for check in &checks {
        assert_eq!(check.verdict, Verdict::Pass, "{} failed", check.theorem);
        assert!(check.counterexamples.is_empty());
    }
    // the mod-4 refinement is part of the even-exponent check; make the
    // witnesses show it explicitly
    let even_flavor = &checks[1];
    assert_eq!(even_flavor.theorem, TheoremId::T32ii);
    assert!(!even_flavor.witnesses.is_empty());
    for w in &even_flavor.witnesses {
        assert_eq!(w.k % 4, 2, "odd-solution k = {} is not 2 mod 4", w.k);
    }
    assert!(started.elapsed() < Duration::from_secs(60), "criterion budget exceeded");
    pass("T32i/T32ii: zero counterexamples, n <= 12, margin 8, mod-4 refinement", started);
}

/// T33i: for n in {3,5,7,9,11} and primes p <= 100 with (2/p) = -1, every
/// solvable k has 3 | k and k/2 not ≡ ±1 (mod p). T33ii: the report is
/// generated and does not fail the suite.
#[test]
fn t33_residue_exclusions_hold() {
    let started = Instant::now();
    let ns = [3, 5, 7, 9, 11];
    let checks = check_thm33(&ns, 100);
    assert_eq!(checks.len(), 2);

    let (t33i, t33ii) = (&checks[0], &checks[1]);
    assert_eq!(t33i.verdict, Verdict::Pass);
    assert!(t33i.counterexamples.is_empty());
    // primes below 100 where 2 is a quadratic non-residue, i.e. p ≡ 3, 5
    // (mod 8) — listed by hand so the check's own Legendre code is not in
    // the loop
    let nonresidue_primes = [3u64, 5, 11, 13, 19, 29, 37, 53, 59, 61, 67, 83];
    for row in &t33i.grid {
        if !row.solvable {
            continue;
        }
        assert_eq!(row.k % 3, 0, "solvable k = {} at n = {} escapes 3 | k", row.k, row.n);
        assert_eq!(row.k % 2, 0, "solvable k must be even inside the grids");
        for p in nonresidue_primes {
            let r = (row.k / 2) % p;
            assert!(
                r != 1 && r != p - 1,
                "solvable k = {} at n = {} has k/2 ≡ ±1 (mod {p})",
                row.k,
                row.n
            );
        }
    }

    assert_eq!(t33ii.verdict, Verdict::ReportOnly, "the companion check must not gate");
    let json = checks_to_json(&checks);
    assert!(json.contains("\"T33ii\""), "the report must cover the companion check");
    pass("T33i holds for p <= 100; T33ii report generated without gating", started);
}

/// For n <= 20: (2^n - 1, 1) solves the k = 2^n - 2 instance with positive
/// sign, (1, 1) solves k = 2^n + 2 with negative sign, and ascending jumps
/// extend each to at least three distinct solutions.
#[test]
fn sharpness_chains_to_n_20() {
    let started = Instant::now();
    let ns: Vec<u32> = (1..=20).collect();
    let check = check_sharpness(&ns);
    assert_eq!(check.verdict, Verdict::Pass);

    for n in 1..=20u32 {
        let pow = BigInt::one() << n;

        // seed identities, recomputed here rather than trusted from the
        // solver: x^2 - k x y + y^2 at (2^n - 1, 1) and (1, 1)
        let k_plus = &pow - 2;
        let x = &pow - 1;
        assert_eq!(&x * &x - &k_plus * &x + 1, pow.clone(), "positive-side seed at n = {n}");
        let k_minus = &pow + 2;
        assert_eq!(BigInt::from(2) - &k_minus, -&pow, "negative-side seed at n = {n}");

        let minus_count =
            check.witnesses.iter().filter(|w| w.n == n && BigInt::from(w.k) == k_minus).count();
        assert!(minus_count >= 3, "expected >= 3 chain solutions at n = {n}, minus side");
        if n >= 2 {
            let plus_count =
                check.witnesses.iter().filter(|w| w.n == n && BigInt::from(w.k) == k_plus).count();
            assert!(plus_count >= 3, "expected >= 3 chain solutions at n = {n}, plus side");
        }
    }
    pass("sharpness: boundary instances solvable with >= 3 chain solutions, n <= 20", started);
}

/// The frozen solvable sets: n = 3 (+) gives {6}, n = 5 (+) gives {6, 30},
/// n = 3 (-) gives {4, 6, 10}, scanning k through the threshold plus 8.
#[test]
fn known_solvable_sets_exact() {
    let started = Instant::now();
    assert_eq!(solvable_k_set(3, FormSign::Plus, 14).solvable_ks(), vec![6]);
    assert_eq!(solvable_k_set(5, FormSign::Plus, 38).solvable_ks(), vec![6, 30]);
    assert_eq!(solvable_k_set(3, FormSign::Minus, 18).solvable_ks(), vec![4, 6, 10]);
    pass("known solvable sets match exactly", started);
}

/// The class-ladder path, the Vieta-walk path, and the naive double loop
/// produce identical solution lists for every k <= 2^n + 2, n <= 10, both
/// signs, at coordinate bound 2^12.
#[test]
fn three_enumerations_agree() {
    let started = Instant::now();
    let bound_u64 = 1u64 << 12;
    let bound = BigUint::from(bound_u64);
    for n in 0..=10u32 {
        for sign in [FormSign::Plus, FormSign::Minus] {
            let k_max = (1u64 << n) + 2;
            (1..=k_max).into_par_iter().for_each(|k| {
                let inst = FormInstance::new(BigUint::from(k), n, sign);
                let got: Vec<(u64, u64)> = solve_all(&inst, &bound)
                    .solutions
                    .iter()
                    .map(|s| common::pair_u64(&s.x, &s.y))
                    .collect();
                let want = common::naive_form_solutions(k, n, sign == FormSign::Plus, bound_u64);
                assert_eq!(got, want, "solver disagrees with the naive scan for {inst}");

                // for even k >= 4 both internal paths exist; compare them
                // against the oracle separately rather than trusting the
                // solver's own cross-check
                if k >= 4 && k % 2 == 0 {
                    let mut vieta: Vec<(u64, u64)> = vieta_path_solutions(&inst, &bound)
                        .iter()
                        .map(|s| common::pair_u64(&s.x, &s.y))
                        .collect();
                    vieta.sort_by_key(|&(x, y)| (y, x));
                    let (pell, _) = pell_path_solutions(&inst, &bound).unwrap();
                    let mut pell: Vec<(u64, u64)> =
                        pell.iter().map(|s| common::pair_u64(&s.x, &s.y)).collect();
                    pell.sort_by_key(|&(x, y)| (y, x));
                    assert_eq!(vieta, want, "Vieta walk disagrees for {inst}");
                    assert_eq!(pell, want, "class ladder disagrees for {inst}");
                }
            });
        }
    }
    pass("class ladder, Vieta walk, and naive scan agree, k <= 2^n + 2, n <= 10", started);
}
