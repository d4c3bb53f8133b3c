//! Cross-check suites: every identity computed along two independent routes.
//!
//! Each suite builds its own stores and returns one record per check, so the
//! CLI can fan suites out across workers and assemble reports in a fixed
//! order. Ranges and tolerances (everything here is exact) are pinned to the
//! values the acceptance tests use.

use num_traits::{One, Signed, Zero};

use crate::bridge::{
    check_stable_bridge, check_unstable_bridge_01, check_unstable_bridge_02, roundtrip_holds,
    BridgeConfig,
};
use crate::combinatorics::{
    motzkin01_recursion_holds_poly, motzkin_bc_direct, vandermonde_like, vandermonde_like_variant,
    CatalanTable, MotzkinTable,
};
use crate::eo::{compare_eo, EoForms};
use crate::error::Result;
use crate::laplace::{
    euler_char_check, intersection_numbers, is_stable, string_equation_holds, FreeEnergies,
};
use crate::maps::enumerate_cell_graphs;
use crate::rational::{format_rat, rat, Rat};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into() }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Degree vectors with the given length, entries >= 1, sorted non-increasing,
/// sum at most `max_total`.
fn canonical_profiles(len: usize, max_total: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![0i64; len];
    fn rec(out: &mut Vec<Vec<i64>>, current: &mut Vec<i64>, idx: usize, remaining: i64, cap: i64) {
        if idx == current.len() {
            out.push(current.clone());
            return;
        }
        let upper = cap.min(remaining - (current.len() - idx - 1) as i64);
        for d in 1..=upper {
            current[idx] = d;
            rec(out, current, idx + 1, remaining - d, d);
        }
    }
    rec(&mut out, &mut current, 0, max_total as i64, max_total as i64);
    out
}

/// Brute-force enumeration against the recursion (acceptance criterion 4),
/// plus the matchings closed self-check.
pub fn suite_catalan_oracle() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut table = CatalanTable::new();

    for (vertices, max_total) in [(1usize, 8u32), (2, 8), (3, 6)] {
        let mut mismatches = Vec::new();
        let mut count = 0usize;
        for g in 0..=2i64 {
            for profile in canonical_profiles(vertices, max_total) {
                count += 1;
                let unsigned: Vec<u32> = profile.iter().map(|&d| d as u32).collect();
                let brute = enumerate_cell_graphs(g as u32, &unsigned, 10)?;
                if brute != table.value(g, &profile) {
                    mismatches.push(format!("g={g} {profile:?}"));
                }
            }
            // Zero-degree edge profiles.
            for profile in [vec![0i64; vertices]] {
                count += 1;
                let unsigned: Vec<u32> = profile.iter().map(|&d| d as u32).collect();
                let brute = enumerate_cell_graphs(g as u32, &unsigned, 10)?;
                if brute != table.value(g, &profile) {
                    mismatches.push(format!("g={g} {profile:?}"));
                }
            }
        }
        checks.push(Check::new(
            format!("oracle-agreement-v{vertices}"),
            mismatches.is_empty(),
            if mismatches.is_empty() {
                format!("{count} profiles, total degree <= {max_total}")
            } else {
                format!("mismatches: {}", mismatches.join(", "))
            },
        ));
    }

    let mut pass = true;
    for k in 1..=5u32 {
        let mut sum = num_bigint::BigInt::zero();
        for g in 0..=3 {
            sum += enumerate_cell_graphs(g, &[2 * k], 10)?;
        }
        if sum != crate::maps::total_matchings(k) {
            pass = false;
        }
    }
    checks.push(Check::new(
        "oracle-matchings-closed-check",
        pass,
        "sum over genus equals (2k-1)!! for one-vertex profiles, k <= 5",
    ));
    Ok(checks)
}

/// Route equivalence, Catalan reduction, weight structure, symmetry and the
/// one-vertex recursion in polynomial mode (criteria 2 and 3).
pub fn suite_motzkin() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut catalan = CatalanTable::new();
    let mut table = MotzkinTable::new();

    for vertices in 1..=3usize {
        let mut route_bad = Vec::new();
        let mut reduction_bad = Vec::new();
        let mut weight_bad = Vec::new();
        let mut count = 0usize;
        for g in 0..=2i64 {
            for profile in canonical_profiles(vertices, 12) {
                count += 1;
                let unsigned: Vec<u32> = profile.iter().map(|&d| d as u32).collect();
                let direct = motzkin_bc_direct(g as u32, &unsigned, &mut catalan);
                let recursive = table.value(g, &profile);
                if direct != recursive {
                    route_bad.push(format!("g={g} {profile:?}"));
                }
                let total: i64 = profile.iter().sum();
                if !direct.has_weight_structure(total as u32) && !direct.is_zero() {
                    weight_bad.push(format!("g={g} {profile:?}"));
                }
                let reduced = direct.specialize(&Rat::zero(), &Rat::one());
                if reduced != Rat::from_integer(catalan.value(g, &profile)) {
                    reduction_bad.push(format!("g={g} {profile:?}"));
                }
            }
        }
        checks.push(Check::new(
            format!("motzkin-route-equivalence-v{vertices}"),
            route_bad.is_empty(),
            if route_bad.is_empty() {
                format!("{count} canonical keys, total <= 12, g <= 2")
            } else {
                format!("mismatches: {}", route_bad.join(", "))
            },
        ));
        checks.push(Check::new(
            format!("motzkin-catalan-reduction-v{vertices}"),
            reduction_bad.is_empty(),
            "specialization at (b,c) = (0,1) equals the Catalan count",
        ));
        checks.push(Check::new(
            format!("motzkin-weight-structure-v{vertices}"),
            weight_bad.is_empty(),
            "every monomial has e_b + e_c = sum(n) with e_c even",
        ));
    }

    // Symmetry: expanding either recursion on any slot of any permutation
    // agrees with the canonical value (soundness of sorted memo keys).
    let mut symmetry_ok = true;
    let perms = [[0usize, 1, 2], [1, 0, 2], [2, 1, 0], [1, 2, 0], [0, 2, 1], [2, 0, 1]];
    for g in 0..=2i64 {
        for profile in canonical_profiles(3, 12) {
            let canonical_m = table.value(g, &profile);
            let canonical_c = catalan.value(g, &profile);
            for perm in perms {
                let arranged: Vec<i64> = perm.iter().map(|&i| profile[i]).collect();
                for slot in 0..3 {
                    if table.value_expanding_slot(g, &arranged, slot) != canonical_m {
                        symmetry_ok = false;
                    }
                    if catalan.value_expanding_slot(g, &arranged, slot) != canonical_c {
                        symmetry_ok = false;
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "table-slot-symmetry",
        symmetry_ok,
        "both recursions expanded on every slot of every permutation, total <= 12",
    ));

    let mut positivity_ok = true;
    for (b, c) in [(rat(1, 1), rat(1, 1)), (rat(2, 1), rat(3, 1)), (rat(1, 2), rat(1, 1))] {
        for g in 0..=1i64 {
            for profile in canonical_profiles(2, 8) {
                if table.value(g, &profile).specialize(&b, &c).is_negative() {
                    positivity_ok = false;
                }
            }
        }
    }
    checks.push(Check::new(
        "motzkin-specialization-nonnegative",
        positivity_ok,
        "values at b >= 0, c > 0 rational samples are nonnegative",
    ));

    let mut rec01_ok = true;
    for n in 1..=20u32 {
        if !motzkin01_recursion_holds_poly(n) {
            rec01_ok = false;
        }
    }
    checks.push(Check::new(
        "motzkin-01-recursion-polynomial",
        rec01_ok,
        "one-vertex recursion holds as a (b,c)-polynomial identity, n <= 20",
    ));
    Ok(checks)
}

/// Both binomial identities over their full admissible ranges for n <= 30
/// (criterion 9).
pub fn suite_identities() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut plain_ok = true;
    let mut plain_count = 0usize;
    for n in 0..=30i64 {
        for i in 0..=n {
            for j in 0..=(n - i) {
                plain_count += 1;
                if !vandermonde_like(n, i, j)? {
                    plain_ok = false;
                }
            }
        }
    }
    checks.push(Check::new(
        "vandermonde-like",
        plain_ok,
        format!("{plain_count} admissible (n,i,j) with n <= 30"),
    ));

    let mut variant_ok = true;
    let mut variant_count = 0usize;
    for k in 1..=30i64 {
        for alpha in 1..=k {
            for beta in 0..=(k - alpha) {
                variant_count += 1;
                if !vandermonde_like_variant(k, alpha, beta)? {
                    variant_ok = false;
                }
            }
        }
    }
    checks.push(Check::new(
        "vandermonde-like-shifted",
        variant_ok,
        format!("{variant_count} admissible (k,alpha,beta) with k <= 30"),
    ));
    Ok(checks)
}

/// All stable keys with 2g - 2 + v at most the given level.
pub fn stable_keys_up_to_level(max_level: u32) -> Vec<(u32, u32)> {
    let mut keys = Vec::new();
    for level in 1..=max_level as i64 {
        for g in 0..=((level + 1) / 2) {
            let v = level + 2 - 2 * g;
            if v >= 1 && is_stable(g as u32, v as u32) {
                keys.push((g as u32, v as u32));
            }
        }
    }
    keys.sort_by_key(|&(g, v)| (2 * g as i64 - 2 + v as i64, -(g as i64)));
    keys
}

/// Closed forms, the corollary suite, self-consistency of the recursion, and
/// the intersection-number extraction (criteria 5 and 6).
pub fn suite_laplace() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut fe = FreeEnergies::new();

    // Pinned closed forms.
    let f11 = fe.get_or_compute(1, 1)?;
    let f11_expected = {
        use crate::poly::LaurentPoly;
        let t = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        let mut bracket = LaurentPoly::zero(1);
        bracket.add_term(vec![1], Rat::one());
        bracket.add_term(vec![0], rat(-4, 1));
        bracket.add_term(vec![-1], Rat::one());
        let inv_sq = LaurentPoly::monomial(1, vec![-2], Rat::one());
        (&(&(&t + &one).pow(4) * &inv_sq) * &bracket).scale(&rat(-1, 384))
    };
    checks.push(Check::new(
        "closed-form-F-1-1",
        f11 == f11_expected,
        "-(1/384)(1+t)^4/t^2 (t - 4 + 1/t)",
    ));

    let f03 = fe.get_or_compute(0, 3)?;
    let f03_expected = {
        use crate::poly::LaurentPoly;
        let one = LaurentPoly::one(3);
        let mut product = one.clone();
        for i in 0..3 {
            product = &product * &(&LaurentPoly::var(3, i) + &one);
        }
        let mut bracket = one.clone();
        bracket.add_term(vec![-1, -1, -1], Rat::one());
        (&product * &bracket).scale(&rat(-1, 16))
    };
    checks.push(Check::new(
        "closed-form-F-0-3",
        f03 == f03_expected,
        "-(1/16)(t1+1)(t2+1)(t3+1)(1 + 1/(t1 t2 t3))",
    ));

    // Corollary suite over every stable key with level <= 4.
    for (g, v) in stable_keys_up_to_level(4) {
        let f = fe.get_or_compute(g, v)?;
        let level = 2 * g as i32 - 2 + v as i32;
        let degree_ok = f.total_degree_max() == 3 * level && f.total_degree_min() == -3 * level;
        let inversion_ok = f.invert_vars() == f;
        let symmetry_ok = f.is_symmetric();
        let mut vanishing_ok = true;
        for var in 0..v as usize {
            if !f.substitute_rational(var, &rat(-1, 1))?.is_zero() {
                vanishing_ok = false;
            }
        }
        let euler_ok = euler_char_check(g, v, &f)?;
        checks.push(Check::new(
            format!("laplace-corollaries-{g}-{v}"),
            degree_ok && inversion_ok && symmetry_ok && vanishing_ok && euler_ok,
            format!(
                "degree {}, 1/t inversion {}, symmetry {}, t=-1 vanishing {}, Euler characteristic {}",
                degree_ok, inversion_ok, symmetry_ok, vanishing_ok, euler_ok
            ),
        ));
    }

    // The assembled right-hand side equals dF/dt1 after integration.
    for (g, v) in stable_keys_up_to_level(3) {
        checks.push(Check::new(
            format!("laplace-self-consistency-{g}-{v}"),
            fe.rhs_matches_derivative(g, v)?,
            "recursion right-hand side equals dF/dt1",
        ));
    }

    // Intersection numbers: pinned base values and the string equation.
    let tau11 = intersection_numbers(1, 1, &fe.get_or_compute(1, 1)?)?;
    let tau03 = intersection_numbers(0, 3, &fe.get_or_compute(0, 3)?)?;
    checks.push(Check::new(
        "intersection-base-values",
        tau11.get(&vec![1u32]) == Some(&rat(1, 24))
            && tau03.get(&vec![0u32, 0, 0]) == Some(&Rat::one()),
        "<tau_1> = 1/24 and <tau_0^3> = 1",
    ));
    let mut string_ok = true;
    for (g, v) in stable_keys_up_to_level(4) {
        if v < 2 || !is_stable(g, v - 1) {
            continue;
        }
        let upper = intersection_numbers(g, v, &fe.get_or_compute(g, v)?)?;
        let lower = intersection_numbers(g, v - 1, &fe.get_or_compute(g, v - 1)?)?;
        if !string_equation_holds(&upper, &lower) {
            string_ok = false;
        }
    }
    checks.push(Check::new(
        "intersection-string-equation",
        string_ok,
        "string equation linking (g,v) to (g,v-1) across level <= 4",
    ));
    Ok(checks)
}

/// Residue route against the derivative route for every stable key with
/// level <= 3, plus evenness, symmetry and the term-by-term identities
/// (criterion 7).
pub fn suite_eo() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut fe = FreeEnergies::new();
    let mut eo = EoForms::new();

    for (g, v) in stable_keys_up_to_level(3) {
        let agree = compare_eo(&mut fe, &mut eo, g, v)?;
        let w = eo.get(g, v).expect("just computed").clone();
        let even = w.all_exponents_even();
        let symmetric = w.is_symmetric();
        checks.push(Check::new(
            format!("eo-route-equivalence-{g}-{v}"),
            agree && even && symmetric,
            format!("routes agree {agree}, even {even}, symmetric {symmetric}"),
        ));
    }

    // Pinned closed forms for the level-one densities.
    {
        use crate::poly::LaurentPoly;
        let t = LaurentPoly::var(1, 0);
        let one = LaurentPoly::one(1);
        let w11_expected =
            &(&(&t * &t) - &one).pow(3) * &LaurentPoly::monomial(1, vec![-4], rat(-1, 128));
        checks.push(Check::new(
            "closed-form-W-1-1",
            eo.get(1, 1) == Some(&w11_expected),
            "-(1/128)(t^2-1)^3/t^4",
        ));
        let mut w03_expected = LaurentPoly::constant(3, rat(-1, 16));
        w03_expected.add_term(vec![-2, -2, -2], rat(1, 16));
        checks.push(Check::new(
            "closed-form-W-0-3",
            eo.get(0, 3) == Some(&w03_expected),
            "-(1/16)(1 - 1/(t1 t2 t3)^2), the mixed third derivative of F_{0,3}",
        ));
    }

    // Term-by-term residue identities against the differential recursion.
    for (g, v) in [(1u32, 2u32), (0, 4), (2, 1)] {
        let tr_parts = eo.tr_parts(g, v)?;
        let f_parts = fe.diff_recursion_rhs_parts(g, v)?;
        let lift = |f: &crate::poly::RationalFn| -> Result<crate::poly::RationalFn> {
            let mut d = f.clone();
            for var in 1..v as usize {
                d = d.partial_derivative(var)?;
            }
            let mapping: Vec<(usize, bool)> = (0..v as usize).map(|k| (k + 1, false)).collect();
            d.map_slots(v as usize + 1, &mapping)
        };
        let i_ok = tr_parts.j_sum.sub(&lift(&f_parts.j_sum)?)?.is_zero();
        let iii_ok = tr_parts.merge.sub(&lift(&f_parts.merge)?)?.is_zero();
        let iv_ok = tr_parts.split.sub(&lift(&f_parts.split)?)?.is_zero();
        checks.push(Check::new(
            format!("eo-termwise-{g}-{v}"),
            i_ok && iii_ok && iv_ok,
            format!("pairing {i_ok}, merge {iii_ok}, splitting {iv_ok}"),
        ));
    }

    // The (t1+t2)^2 identity for the unstable (0,2) data.
    {
        use crate::laplace::d_f02;
        let d12 = d_f02(2, 0, 1).partial_derivative(1)?;
        let t1 = crate::poly::LaurentPoly::var(2, 0);
        let t2 = crate::poly::LaurentPoly::var(2, 1);
        let sum = &t1 + &t2;
        let expected =
            crate::poly::RationalFn::new(crate::poly::LaurentPoly::one(2), &sum * &sum)?;
        checks.push(Check::new(
            "eo-f02-mixed-derivative",
            d12 == expected,
            "d2 F_{0,2}/dt1 dt2 = 1/(t1+t2)^2",
        ));
    }
    Ok(checks)
}

/// Bridge checks for one (b, c) sample (criterion 8).
pub fn suite_bridge(b: &Rat, c: &Rat, max_total: u32) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let cfg = BridgeConfig::new(b.clone(), c.clone(), max_total as usize + 2)?;
    let label = format!("b={},c={}", format_rat(b), format_rat(c));

    checks.push(Check::new(
        format!("bridge-roundtrip[{label}]"),
        roundtrip_holds(&cfg),
        "x(t(u)) = 1/u to the truncation order",
    ));

    let mut fe = FreeEnergies::new();
    let mut motzkin = MotzkinTable::new();
    for (g, v) in [(1u32, 1u32), (0, 3), (1, 2), (0, 4)] {
        let f = fe.get_or_compute(g, v)?;
        checks.push(Check::new(
            format!("bridge-stable-{g}-{v}[{label}]"),
            check_stable_bridge(&f, g, &cfg, &mut motzkin, max_total)?,
            format!("coefficients equal M/(n1..nv) for all n with sum <= {max_total}"),
        ));
    }
    checks.push(Check::new(
        format!("bridge-unstable-0-1[{label}]"),
        check_unstable_bridge_01(&cfg, &mut motzkin)?,
        "dF_{0,1}/dx series equals -sum M(n) u^(n+1)",
    ));
    checks.push(Check::new(
        format!("bridge-unstable-0-2[{label}]"),
        check_unstable_bridge_02(&cfg, &mut motzkin)?,
        "dF_{0,2}/dx1 double series equals -sum M(n1,n2)/n2 u1^(n1+1) u2^n2",
    ));
    Ok(checks)
}

/// Per-coefficient comparison tables for the bridge report: one block per
/// stable key, each entry carrying (n, expected, actual, pass).
pub fn bridge_coefficient_details(
    b: &Rat,
    c: &Rat,
    max_total: u32,
) -> Result<Vec<(String, Vec<crate::io::CoefficientComparison>)>> {
    let cfg = BridgeConfig::new(b.clone(), c.clone(), max_total as usize + 2)?;
    let mut fe = FreeEnergies::new();
    let mut motzkin = MotzkinTable::new();
    let mut out = Vec::new();
    for (g, v) in [(1u32, 1u32), (0, 3), (1, 2), (0, 4)] {
        let f = fe.get_or_compute(g, v)?;
        let actual = crate::bridge::expand_free_energy(&f, &cfg)?;
        let mut expected = std::collections::BTreeMap::new();
        let mut n = vec![1u32; v as usize];
        'outer: loop {
            let total: u32 = n.iter().sum();
            if total <= max_total {
                let signed: Vec<i64> = n.iter().map(|&x| x as i64).collect();
                let mut value = motzkin.value(g as i64, &signed).specialize(b, c);
                for &ni in &n {
                    value /= Rat::from_integer(ni.into());
                }
                if !value.is_zero() {
                    expected.insert(n.clone(), value);
                }
            }
            let mut i = 0;
            loop {
                if i == v as usize {
                    break 'outer;
                }
                if n[i] < max_total {
                    n[i] += 1;
                    break;
                }
                n[i] = 1;
                i += 1;
            }
        }
        // Restrict the expanded side to the checked range so the report
        // compares like with like.
        let actual: std::collections::BTreeMap<Vec<u32>, Rat> = actual
            .into_iter()
            .filter(|(key, _)| key.iter().sum::<u32>() <= max_total)
            .collect();
        out.push((
            format!("F_{g}_{v}"),
            crate::io::bridge_coefficient_report(&actual, &expected),
        ));
    }
    Ok(out)
}

/// The four (b, c) samples the acceptance criteria pin.
pub fn bridge_samples() -> Vec<(Rat, Rat)> {
    vec![
        (rat(0, 1), rat(1, 1)),
        (rat(1, 1), rat(1, 1)),
        (rat(2, 1), rat(3, 1)),
        (rat(1, 2), rat(1, 1)),
    ]
}

pub fn suite_all() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    checks.extend(suite_catalan_oracle()?);
    checks.extend(suite_motzkin()?);
    checks.extend(suite_identities()?);
    checks.extend(suite_laplace()?);
    checks.extend(suite_eo()?);
    for (b, c) in bridge_samples() {
        checks.extend(suite_bridge(&b, &c, 10)?);
    }
    Ok(checks)
}
