//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing its runtime budget. Every comparison is exact; there are no
//! tolerances anywhere.

use std::time::{Duration, Instant};

use num_traits::One;

use bcm_core::bridge::{
    check_stable_bridge, check_unstable_bridge_01, check_unstable_bridge_02, roundtrip_holds,
    BridgeConfig,
};
use bcm_core::combinatorics::{catalan, motzkin_bc_direct, CatalanTable, MotzkinTable};
use bcm_core::eo::{compare_eo, w_from_free_energy, EoForms};
use bcm_core::laplace::{
    euler_char_check, intersection_numbers, string_equation_holds, FreeEnergies,
};
use bcm_core::maps::enumerate_cell_graphs;
use bcm_core::poly::LaurentPoly;
use bcm_core::rational::{rat, rat_int, Rat};
use bcm_core::verify::{
    all_pass, bridge_samples, stable_keys_up_to_level, suite_identities, suite_motzkin,
};

fn report(criterion: &str, pass: bool, elapsed: Duration) {
    println!(
        "[acceptance] {criterion}: {} ({:.2?})",
        if pass { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(pass, "{criterion} failed");
}

fn within(elapsed: Duration, budget: Duration, criterion: &str) {
    assert!(
        elapsed <= budget,
        "{criterion} exceeded its budget: {elapsed:.2?} > {budget:.2?}"
    );
}

#[test]
fn criterion_01_sequence_reproduction() {
    let start = Instant::now();
    let catalan_expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
    let mut pass = catalan_expected
        .iter()
        .enumerate()
        .all(|(k, &c)| catalan(k as u32) == c.into());
    let motzkin_expected = [1i64, 1, 2, 4, 9, 21, 51, 127, 323];
    let mut table = CatalanTable::new();
    for (n, &m) in motzkin_expected.iter().enumerate() {
        let value = motzkin_bc_direct(0, &[n as u32], &mut table)
            .specialize(&Rat::one(), &Rat::one());
        pass &= value == rat_int(m);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "criterion 1");
    report("criterion 1 (sequence reproduction)", pass, elapsed);
}

#[test]
fn criterion_02_route_equivalence() {
    let start = Instant::now();
    let checks = suite_motzkin().unwrap();
    let pass = checks
        .iter()
        .filter(|c| c.name.starts_with("motzkin-route-equivalence"))
        .all(|c| c.pass);
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "criterion 2");
    report("criterion 2 (bc-Motzkin route equivalence, g<=2 v<=3 sum<=12)", pass, elapsed);
}

#[test]
fn criterion_03_catalan_reduction() {
    let start = Instant::now();
    let checks = suite_motzkin().unwrap();
    let pass = checks
        .iter()
        .filter(|c| c.name.starts_with("motzkin-catalan-reduction"))
        .all(|c| c.pass);
    report("criterion 3 (reduction at (b,c) = (0,1))", pass, start.elapsed());
}

#[test]
fn criterion_04_oracle_agreement() {
    let start = Instant::now();
    let mut table = CatalanTable::new();
    let mut pass = true;
    // v <= 2, total <= 8, g <= 2; and v = 3, total <= 6.
    for g in 0..=2i64 {
        for a in 0..=8i64 {
            pass &= enumerate_cell_graphs(g as u32, &[a as u32], 10).unwrap()
                == table.value(g, &[a]);
            for b in 0..=(8 - a) {
                pass &= enumerate_cell_graphs(g as u32, &[a as u32, b as u32], 10).unwrap()
                    == table.value(g, &[a, b]);
            }
        }
        for a in 0..=6i64 {
            for b in 0..=(6 - a) {
                for c in 0..=(6 - a - b) {
                    pass &= enumerate_cell_graphs(g as u32, &[a as u32, b as u32, c as u32], 10)
                        .unwrap()
                        == table.value(g, &[a, b, c]);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "criterion 4");
    report("criterion 4 (brute-force oracle agreement)", pass, elapsed);
}

#[test]
fn criterion_05_closed_forms() {
    let start = Instant::now();
    let mut fe = FreeEnergies::new();
    let mut eo = EoForms::new();

    // F_{1,1} = -(1/384)(1+t)^4/t^2 (t - 4 + 1/t).
    let f11_expected = {
        let t = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        let mut bracket = LaurentPoly::zero(1);
        bracket.add_term(vec![1], Rat::one());
        bracket.add_term(vec![0], rat_int(-4));
        bracket.add_term(vec![-1], Rat::one());
        let inv_sq = LaurentPoly::monomial(1, vec![-2], Rat::one());
        (&(&(&t + &one).pow(4) * &inv_sq) * &bracket).scale(&rat(-1, 384))
    };
    let f11_ok = fe.get_or_compute(1, 1).unwrap() == f11_expected;

    // F_{0,3} = -(1/16)(t1+1)(t2+1)(t3+1)(1 + 1/(t1 t2 t3)).
    let f03_expected = {
        let one = LaurentPoly::one(3);
        let mut product = one.clone();
        for i in 0..3 {
            product = &product * &(&LaurentPoly::var(3, i) + &one);
        }
        let mut bracket = one.clone();
        bracket.add_term(vec![-1, -1, -1], Rat::one());
        (&product * &bracket).scale(&rat(-1, 16))
    };
    let f03_ok = fe.get_or_compute(0, 3).unwrap() == f03_expected;

    // w_{1,1} = -(1/128)(t^2-1)^3/t^4, along both routes.
    let w11_expected = {
        let t = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        &(&(&t * &t) - &one).pow(3) * &LaurentPoly::monomial(1, vec![-4], rat(-1, 128))
    };
    let w11_ok = eo.tr(1, 1).unwrap() == w11_expected
        && w_from_free_energy(&fe.get_or_compute(1, 1).unwrap()) == w11_expected;

    // w_{0,3} = -(1/16)(1 - 1/(t1 t2 t3)^2): the mixed third derivative of
    // F_{0,3}, confirmed by the residue route.
    let w03_expected = {
        let mut p = LaurentPoly::constant(3, rat(-1, 16));
        p.add_term(vec![-2, -2, -2], rat(1, 16));
        p
    };
    let w03_ok = eo.tr(0, 3).unwrap() == w03_expected
        && w_from_free_energy(&fe.get_or_compute(0, 3).unwrap()) == w03_expected;

    report(
        "criterion 5 (closed forms F11, F03, W11, W03)",
        f11_ok && f03_ok && w11_ok && w03_ok,
        start.elapsed(),
    );
}

#[test]
fn criterion_06_corollary_suite() {
    let start = Instant::now();
    let mut fe = FreeEnergies::new();
    let mut pass = true;

    for (g, v) in stable_keys_up_to_level(4) {
        let f = fe.get_or_compute(g, v).unwrap();
        let level = 2 * g as i32 - 2 + v as i32;
        pass &= f.total_degree_max() == 3 * level;
        pass &= f.total_degree_min() == -3 * level;
        pass &= f.invert_vars() == f;
        pass &= f.is_symmetric();
        for var in 0..v as usize {
            pass &= f.substitute_rational(var, &rat_int(-1)).unwrap().is_zero();
        }
        pass &= euler_char_check(g, v, &f).unwrap();
    }

    // Intersection numbers: pinned bases plus the string equation.
    let tau11 = intersection_numbers(1, 1, &fe.get_or_compute(1, 1).unwrap()).unwrap();
    pass &= tau11.get(&vec![1u32]) == Some(&rat(1, 24));
    let tau03 = intersection_numbers(0, 3, &fe.get_or_compute(0, 3).unwrap()).unwrap();
    pass &= tau03.get(&vec![0u32, 0, 0]) == Some(&Rat::one());
    for (g, v) in stable_keys_up_to_level(4) {
        if v < 2 || !bcm_core::laplace::is_stable(g, v - 1) {
            continue;
        }
        let upper = intersection_numbers(g, v, &fe.get_or_compute(g, v).unwrap()).unwrap();
        let lower = intersection_numbers(g, v - 1, &fe.get_or_compute(g, v - 1).unwrap()).unwrap();
        pass &= string_equation_holds(&upper, &lower);
    }

    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "criterion 6");
    report("criterion 6 (Laplace corollary suite, level <= 4)", pass, elapsed);
}

#[test]
fn criterion_07_topological_recursion() {
    let start = Instant::now();
    let mut fe = FreeEnergies::new();
    let mut eo = EoForms::new();
    let mut pass = true;
    for (g, v) in stable_keys_up_to_level(3) {
        pass &= compare_eo(&mut fe, &mut eo, g, v).unwrap();
        let w = eo.get(g, v).unwrap();
        pass &= w.all_exponents_even();
        pass &= w.is_symmetric();
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(600), "criterion 7");
    report("criterion 7 (topological recursion route equivalence, level <= 3)", pass, elapsed);
}

#[test]
fn criterion_08_laplace_bridge() {
    let start = Instant::now();
    let mut pass = true;
    for (b, c) in bridge_samples() {
        let sample_start = Instant::now();
        let cfg = BridgeConfig::new(b.clone(), c.clone(), 12).unwrap();
        pass &= roundtrip_holds(&cfg);
        let mut fe = FreeEnergies::new();
        let mut motzkin = MotzkinTable::new();
        for (g, v) in [(1u32, 1u32), (0, 3), (1, 2), (0, 4)] {
            let f = fe.get_or_compute(g, v).unwrap();
            pass &= check_stable_bridge(&f, g, &cfg, &mut motzkin, 10).unwrap();
        }
        pass &= check_unstable_bridge_01(&cfg, &mut motzkin).unwrap();
        pass &= check_unstable_bridge_02(&cfg, &mut motzkin).unwrap();
        let elapsed = sample_start.elapsed();
        within(elapsed, Duration::from_secs(300), "criterion 8 (per sample)");
        println!(
            "[acceptance] criterion 8 sample b={}, c={}: {} ({:.2?})",
            b,
            c,
            if pass { "PASS" } else { "FAIL" },
            elapsed
        );
    }
    report("criterion 8 (Laplace bridge, four (b,c) samples)", pass, start.elapsed());
}

#[test]
fn criterion_09_identity_suite() {
    let start = Instant::now();
    let checks = suite_identities().unwrap();
    report("criterion 9 (Vandermonde-like identities, n <= 30)", all_pass(&checks), start.elapsed());
}

#[test]
fn criterion_10_robustness_tripwires() {
    // The tripwires (exact-division failure, log term, non-Laurent residue
    // sum) are hard errors by construction; recompute the full range fresh
    // and count zero firings.
    let start = Instant::now();
    let mut failures = 0usize;
    let mut fe = FreeEnergies::new();
    for (g, v) in stable_keys_up_to_level(4) {
        if fe.get_or_compute(g, v).is_err() {
            failures += 1;
        }
    }
    let mut eo = EoForms::new();
    for (g, v) in stable_keys_up_to_level(3) {
        if eo.tr(g, v).is_err() {
            failures += 1;
        }
    }
    let cfg = BridgeConfig::new(rat(1, 1), rat(1, 1), 12).unwrap();
    for (g, v) in [(1u32, 1u32), (0, 3), (1, 2), (0, 4)] {
        let f = fe.get_or_compute(g, v).unwrap();
        if bcm_core::bridge::expand_free_energy(&f, &cfg).is_err() {
            failures += 1;
        }
    }
    report(
        "criterion 10 (zero tripwire firings across all computed keys)",
        failures == 0,
        start.elapsed(),
    );
}
