//! Exact division and multivariate polynomial gcd.
//!
//! The gcd is computed by content-and-primitive-part recursion on one
//! variable at a time, with a primitive pseudo-remainder sequence in the main
//! variable. Two fast paths keep the common cases cheap: trial division (the
//! denominator of a rational function usually divides the numerator outright
//! or is coprime to it), and a univariate evaluation filter that soundly
//! certifies coprimality-up-to-content whenever a specialization with
//! non-vanishing leading coefficient has a degree-0 gcd.
//!
//! Canonical gcds are integer-primitive with a positive lexicographically
//! leading coefficient, so normalized rational functions are unique.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use crate::error::{CoreError, Result};
use crate::rational::{rat_int, Rat};

/// Multivariate division with remainder by a single divisor (lex order).
/// Inputs must have nonnegative exponents.
pub fn poly_divrem(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let nvars = a.nvars();
    let (lead_e, lead_c) = {
        let (e, c) = b.leading_term().unwrap();
        (e.clone(), c.clone())
    };
    let mut rem = LaurentPoly::zero(nvars);
    let mut quo = LaurentPoly::zero(nvars);
    let mut rest = a.clone();
    while let Some((e, c)) = rest.leading_term() {
        let e = e.clone();
        let c = c.clone();
        if e.iter().zip(&lead_e).all(|(x, y)| x >= y) {
            let step_e: Vec<i32> = e.iter().zip(&lead_e).map(|(x, y)| x - y).collect();
            let step_c = &c / &lead_c;
            let step = LaurentPoly::monomial(nvars, step_e, step_c);
            rest = &rest - &(&step * b);
            quo = &quo + &step;
        } else {
            rem.add_term(e.clone(), c.clone());
            rest.add_term(e, -c);
        }
    }
    (quo, rem)
}

/// Polynomial exact division, or None when the division leaves a remainder.
pub fn try_exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    if a.is_zero() {
        return Some(LaurentPoly::zero(a.nvars()));
    }
    let nvars = a.nvars();
    let (lead_e, lead_c) = {
        let (e, c) = b.leading_term().unwrap();
        (e.clone(), c.clone())
    };
    let mut quo = LaurentPoly::zero(nvars);
    let mut rest = a.clone();
    while let Some((e, c)) = rest.leading_term() {
        if !e.iter().zip(&lead_e).all(|(x, y)| x >= y) {
            return None;
        }
        let step_e: Vec<i32> = e.iter().zip(&lead_e).map(|(x, y)| x - y).collect();
        let step_c = c / &lead_c;
        let step = LaurentPoly::monomial(nvars, step_e, step_c);
        rest = &rest - &(&step * b);
        quo = &quo + &step;
    }
    Some(quo)
}

/// Exact division of Laurent polynomials; non-exactness is a hard error
/// (a correctness tripwire, not a recoverable case).
pub fn exact_divide(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    if den.is_zero() {
        return Err(CoreError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(LaurentPoly::zero(num.nvars()));
    }
    if num.nvars() != den.nvars() {
        return Err(CoreError::VariableMismatch { left: num.nvars(), right: den.nvars() });
    }
    // Shift so every variable has minimum exponent exactly 0 in each
    // operand; only then is Laurent divisibility equivalent to polynomial
    // divisibility of the shifted pair.
    let shift_n: Vec<i32> = (0..num.nvars()).map(|v| -num.min_exp(v)).collect();
    let shift_d: Vec<i32> = (0..den.nvars()).map(|v| -den.min_exp(v)).collect();
    let poly_n = num.shift_exponents(&shift_n);
    let poly_d = den.shift_exponents(&shift_d);
    match try_exact_div(&poly_n, &poly_d) {
        Some(q) => {
            let back: Vec<i32> = shift_d.iter().zip(&shift_n).map(|(d, n)| d - n).collect();
            Ok(q.shift_exponents(&back))
        }
        None => Err(CoreError::NonExactDivision(format!("({num}) / ({den})"))),
    }
}

/// Scales to integer coefficients with gcd 1 and positive leading
/// coefficient; returns (primitive, scalar) with `p = scalar * primitive`.
pub fn primitive_normalize(p: &LaurentPoly) -> (LaurentPoly, Rat) {
    if p.is_zero() {
        return (p.clone(), Rat::one());
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut scalar = Rat::new(num_gcd, den_lcm);
    if p.leading_term().unwrap().1.is_negative() {
        scalar = -scalar;
    }
    (p.scale(&scalar.recip()), scalar)
}

/// A polynomial written as scalar * monomial * product of binomial factors.
///
/// The factor alphabet is fixed: (x_i - x_j), (x_i + x_j) for variable pairs
/// and (x_i - 1), (x_i + 1) per variable. This is exactly the denominator
/// shape the recursion engines produce (expansion centers are +-t_k and
/// rational constants), so reductions against such denominators never need
/// the generic gcd machinery.
pub(crate) struct StructuredFactors {
    pub factors: Vec<(LaurentPoly, u32)>,
}

pub(crate) fn factor_structured(p: &LaurentPoly) -> Option<StructuredFactors> {
    if p.is_zero() {
        return None;
    }
    let nvars = p.nvars();
    // Strip the monomial part; the caller has already handled shared
    // monomial factors.
    let back: Vec<i32> = (0..nvars).map(|v| -p.min_exp(v)).collect();
    debug_assert!(back.iter().all(|&m| m <= 0));
    let mut work = p.shift_exponents(&back);

    let mut factors: Vec<(LaurentPoly, u32)> = Vec::new();
    for cand in structured_candidates(nvars) {
        let mut multiplicity = 0u32;
        while work.num_terms() > 1 {
            match try_exact_div(&work, &cand) {
                Some(q) => {
                    multiplicity += 1;
                    work = q;
                }
                None => break,
            }
        }
        if multiplicity > 0 {
            factors.push((cand, multiplicity));
        }
        if work.num_terms() == 1 {
            break;
        }
    }
    if work.as_constant().is_some() {
        Some(StructuredFactors { factors })
    } else {
        None
    }
}

fn structured_candidates(nvars: usize) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    let one = LaurentPoly::one(nvars);
    for i in 0..nvars {
        let xi = LaurentPoly::var(nvars, i);
        out.push(&xi - &one);
        out.push(&xi + &one);
        for j in (i + 1)..nvars {
            let xj = LaurentPoly::var(nvars, j);
            out.push(&xi - &xj);
            out.push(&xi + &xj);
        }
    }
    out
}

/// Strips factors common to `a` and `b`, returning the cofactors
/// (a / g, b / g). Prefers a structured factorization of either operand and
/// falls back to the generic gcd.
pub(crate) fn reduce_common(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if a.is_zero() || b.is_zero() {
        return (a.clone(), b.clone());
    }
    let nvars = a.nvars();
    // Shared monomial factor first.
    let shared: Vec<i32> = (0..nvars).map(|v| -a.min_exp(v).min(b.min_exp(v))).collect();
    let mut a = a.shift_exponents(&shared);
    let mut b = b.shift_exponents(&shared);
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return (a, b);
    }
    let structured = factor_structured(&b)
        .map(|f| (f, true))
        .or_else(|| factor_structured(&a).map(|f| (f, false)));
    if let Some((parts, of_b)) = structured {
        for (factor, multiplicity) in &parts.factors {
            for _ in 0..*multiplicity {
                let other = if of_b { &a } else { &b };
                match try_exact_div(other, factor) {
                    Some(q) => {
                        if of_b {
                            a = q;
                            b = try_exact_div(&b, factor).expect("known factor divides");
                        } else {
                            b = q;
                            a = try_exact_div(&a, factor).expect("known factor divides");
                        }
                    }
                    None => break,
                }
            }
        }
        return (a, b);
    }
    let g = poly_gcd(&a, &b);
    if g.as_constant().is_some() {
        (a, b)
    } else {
        (
            try_exact_div(&a, &g).expect("gcd divides"),
            try_exact_div(&b, &g).expect("gcd divides"),
        )
    }
}

/// Canonical gcd of two polynomials with nonnegative exponents.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return primitive_normalize(b).0;
    }
    if b.is_zero() {
        return primitive_normalize(a).0;
    }
    let nvars = a.nvars();
    assert_eq!(nvars, b.nvars());

    let main = match (0..nvars).rev().find(|&v| a.max_exp(v) > 0 || b.max_exp(v) > 0) {
        // Both nonzero constants.
        None => return LaurentPoly::one(nvars),
        Some(v) => v,
    };

    if a.max_exp(main) == 0 {
        return poly_gcd(a, &content_wrt(b, main));
    }
    if b.max_exp(main) == 0 {
        return poly_gcd(&content_wrt(a, main), b);
    }

    if is_univariate_in(a, main) && is_univariate_in(b, main) {
        return univariate_gcd(a, b, main);
    }

    let cont_a = content_wrt(a, main);
    let cont_b = content_wrt(b, main);
    let pp_a = try_exact_div(a, &cont_a).expect("content divides its polynomial");
    let pp_b = try_exact_div(b, &cont_b).expect("content divides its polynomial");
    let g_cont = poly_gcd(&cont_a, &cont_b);
    let g_pp = primitive_part_gcd(&pp_a, &pp_b, main);
    primitive_normalize(&(&g_cont * &g_pp)).0
}

fn is_univariate_in(p: &LaurentPoly, var: usize) -> bool {
    p.terms().all(|(e, _)| e.iter().enumerate().all(|(i, &k)| i == var || k == 0))
}

/// Gcd of the coefficient polynomials with respect to `var`.
fn content_wrt(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(p.nvars());
    for (_, coeff) in p.split_by_var(var) {
        acc = poly_gcd(&acc, &coeff);
        if acc.as_constant().is_some() && !acc.is_zero() {
            return LaurentPoly::one(p.nvars());
        }
    }
    acc
}

/// Gcd of two primitive polynomials with positive degree in `main`.
fn primitive_part_gcd(a: &LaurentPoly, b: &LaurentPoly, main: usize) -> LaurentPoly {
    let (hi, lo) = if a.max_exp(main) >= b.max_exp(main) { (a, b) } else { (b, a) };
    if try_exact_div(hi, lo).is_some() {
        return primitive_normalize(lo).0;
    }
    if evaluation_certifies_coprime(hi, lo, main) {
        return LaurentPoly::one(a.nvars());
    }

    // Primitive pseudo-remainder sequence.
    let mut r0 = hi.clone();
    let mut r1 = lo.clone();
    loop {
        let rem = pseudo_remainder(&r0, &r1, main);
        if rem.is_zero() {
            return primitive_normalize(&r1).0;
        }
        if rem.max_exp(main) == 0 {
            // Coprime in the main variable; contents were already split off.
            return LaurentPoly::one(a.nvars());
        }
        let cont = content_wrt(&rem, main);
        let rem_pp = try_exact_div(&rem, &cont).expect("content divides its polynomial");
        r0 = r1;
        r1 = rem_pp;
    }
}

/// A sound coprimality filter: if the leading coefficient of one operand
/// survives a specialization of the other variables and the specialized
/// univariate gcd is constant, the true gcd has degree 0 in `main`.
fn evaluation_certifies_coprime(a: &LaurentPoly, b: &LaurentPoly, main: usize) -> bool {
    const POINTS: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    let nvars = a.nvars();
    let lead_a = a.split_by_var(main).into_iter().next_back().unwrap().1;
    'attempt: for attempt in 0..4usize {
        let mut spec_a = a.clone();
        let mut spec_b = b.clone();
        let mut spec_lead = lead_a.clone();
        let mut idx = attempt;
        for v in 0..nvars {
            if v == main || (spec_a.max_exp(v) == 0 && spec_b.max_exp(v) == 0) {
                continue;
            }
            let value = rat_int(POINTS[idx % POINTS.len()]);
            idx += 1;
            spec_a = spec_a.substitute_rational(v, &value).expect("nonnegative exponents");
            spec_b = spec_b.substitute_rational(v, &value).expect("nonnegative exponents");
            spec_lead = spec_lead.substitute_rational(v, &value).expect("nonnegative exponents");
        }
        if spec_lead.is_zero() {
            continue 'attempt;
        }
        if spec_b.is_zero() {
            continue 'attempt;
        }
        let g = univariate_gcd(&spec_a, &spec_b, main);
        if g.max_exp(main) == 0 {
            return true;
        }
    }
    false
}

fn univariate_gcd(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let nvars = a.nvars();
    let mut x = to_dense(a, var);
    let mut y = to_dense(b, var);
    while !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    primitive_normalize(&from_dense(nvars, var, &x)).0
}

fn to_dense(p: &LaurentPoly, var: usize) -> Vec<Rat> {
    if p.is_zero() {
        return Vec::new();
    }
    let deg = p.max_exp(var);
    debug_assert!(p.min_exp(var) >= 0);
    let mut out = vec![Rat::zero(); deg as usize + 1];
    for (e, c) in p.terms() {
        out[e[var] as usize] += c;
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn from_dense(nvars: usize, var: usize, coeffs: &[Rat]) -> LaurentPoly {
    let mut out = LaurentPoly::zero(nvars);
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let mut e = vec![0i32; nvars];
            e[var] = k as i32;
            out.add_term(e, c.clone());
        }
    }
    out
}

fn dense_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let factor = &r[dr] / lead;
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &factor * &b[i];
            r[idx] -= delta;
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
    }
    r
}

/// Pseudo-remainder in `main`: repeatedly cancels the leading term after
/// scaling by the divisor's leading coefficient.
fn pseudo_remainder(a: &LaurentPoly, b: &LaurentPoly, main: usize) -> LaurentPoly {
    let nvars = a.nvars();
    let deg_b = b.max_exp(main);
    let lead_b = coeff_of_power(b, main, deg_b);
    let mut r = a.clone();
    while !r.is_zero() {
        let deg_r = r.max_exp(main);
        if deg_r < deg_b {
            break;
        }
        let lead_r = coeff_of_power(&r, main, deg_r);
        let mut shift = LaurentPoly::one(nvars);
        let mut e = vec![0i32; nvars];
        e[main] = deg_r - deg_b;
        shift = &shift * &LaurentPoly::monomial(nvars, e, Rat::one());
        r = &(&r * &lead_b) - &(&(&lead_r * &shift) * b);
    }
    r
}

fn coeff_of_power(p: &LaurentPoly, var: usize, power: i32) -> LaurentPoly {
    let mut out = LaurentPoly::zero(p.nvars());
    for (e, c) in p.terms() {
        if e[var] == power {
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn var(nvars: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(nvars, i)
    }

    #[test]
    fn exact_divide_examples() {
        // (t1^2 - t2^2) / (t1 - t2) = t1 + t2
        let t1 = var(2, 0);
        let t2 = var(2, 1);
        let num = &(&t1 * &t1) - &(&t2 * &t2);
        let den = &t1 - &t2;
        assert_eq!(exact_divide(&num, &den).unwrap(), &t1 + &t2);

        // (t^4 - 2t^2 + 1) / (t^2 - 1) = t^2 - 1
        let t = var(1, 0);
        let t2p = &t * &t;
        let one = LaurentPoly::one(1);
        let num = &(&(&t2p * &t2p) - &t2p.scale(&rat_int(2))) + &one;
        let den = &t2p - &one;
        assert_eq!(exact_divide(&num, &den).unwrap(), den);

        // (t^2 + 1) / (t - 1) leaves remainder 2: hard error.
        let num = &t2p + &one;
        let den = &t - &one;
        assert!(matches!(exact_divide(&num, &den), Err(CoreError::NonExactDivision(_))));
    }

    #[test]
    fn laurent_exact_divide() {
        // (t + 1/t) / (1/t) = t^2 + 1
        let mut num = LaurentPoly::zero(1);
        num.add_term(vec![1], rat_int(1));
        num.add_term(vec![-1], rat_int(1));
        let den = LaurentPoly::monomial(1, vec![-1], rat_int(1));
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![2], rat_int(1));
        expect.add_term(vec![0], rat_int(1));
        assert_eq!(exact_divide(&num, &den).unwrap(), expect);
    }

    #[test]
    fn gcd_univariate() {
        let t = var(1, 0);
        let one = LaurentPoly::one(1);
        let a = &(&t * &t) - &one; // t^2 - 1
        let b = &t - &one; // t - 1
        assert_eq!(poly_gcd(&a, &b), b);
        // Scaling does not change the canonical gcd.
        assert_eq!(poly_gcd(&a.scale(&rat_int(6)), &b.scale(&rat_int(-4))), b);
    }

    #[test]
    fn gcd_multivariate() {
        let t1 = var(3, 0);
        let t2 = var(3, 1);
        let t3 = var(3, 2);
        let common = &(&t1 - &t2) * &(&t1 + &t3);
        let a = &common * &(&t1 + &t2);
        let b = &common * &(&t2 + &t3);
        assert_eq!(poly_gcd(&a, &b), primitive_normalize(&common).0);
    }

    #[test]
    fn gcd_coprime() {
        let t1 = var(2, 0);
        let t2 = var(2, 1);
        let a = &t1 + &t2;
        let b = &t1 - &t2;
        assert_eq!(poly_gcd(&a, &b), LaurentPoly::one(2));
    }

    #[test]
    fn divrem_consistency() {
        let t1 = var(2, 0);
        let t2 = var(2, 1);
        let a = &(&(&t1 * &t1) * &t2) + &t1; // t1^2 t2 + t1
        let b = &t1 * &t2; // t1 t2
        let (q, r) = poly_divrem(&a, &b);
        assert_eq!(&(&q * &b) + &r, a);
    }
}
