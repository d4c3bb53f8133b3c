//! Binomial identity checks used by the recursion proofs.
//!
//! Both identities are verified by direct summation; the right-hand sides are
//! single binomials. They are only meaningful inside their hypotheses, so
//! calls outside them are rejected rather than silently evaluated.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{binomial, motzkin_bc_direct, BcPolynomial, CatalanTable, MotzkinTable};
use crate::error::{CoreError, Result};
use crate::rational::Rat;

/// sum_{a+b=n} binom(a, i) binom(b, j) == binom(n+1, i+j+1), for 0 <= i+j <= n.
pub fn vandermonde_like(n: i64, i: i64, j: i64) -> Result<bool> {
    if i < 0 || j < 0 || i + j > n {
        return Err(CoreError::IdentityHypothesis(format!(
            "need 0 <= i+j <= n, got n={n}, i={i}, j={j}"
        )));
    }
    let mut lhs = BigInt::zero();
    for a in 0..=n {
        lhs += binomial(a, i) * binomial(n - a, j);
    }
    Ok(lhs == binomial(n + 1, i + j + 1))
}

/// Shifted variant: sum_{z+x=k} binom(z-1, alpha-1) binom(x, beta) == binom(k, alpha+beta).
///
/// Under the binomial(n<0, .) = 0 convention this holds exactly for
/// alpha >= 1 and alpha + beta <= k (it is the plain identity at
/// (n, i, j) = (k-1, alpha-1, beta)); alpha = 0 would need a different
/// convention for binom(-1, -1) and is rejected.
pub fn vandermonde_like_variant(k: i64, alpha: i64, beta: i64) -> Result<bool> {
    if alpha < 1 || beta < 0 || alpha + beta > k {
        return Err(CoreError::IdentityHypothesis(format!(
            "need alpha >= 1, beta >= 0, alpha+beta <= k, got k={k}, alpha={alpha}, beta={beta}"
        )));
    }
    let mut lhs = BigInt::zero();
    for z in 0..=k {
        lhs += binomial(z - 1, alpha - 1) * binomial(k - z, beta);
    }
    Ok(lhs == binomial(k, alpha + beta))
}

/// The one-vertex genus-zero recursion as an exact polynomial identity:
/// M(n) - b M(n-1) == c^2 sum_{a+b=n-2} M(a) M(b).
pub fn motzkin01_recursion_holds_poly(n: u32) -> bool {
    assert!(n >= 1, "the recursion starts at n = 1");
    let mut cat = CatalanTable::new();
    let value = |m: i64, cat: &mut CatalanTable| -> BcPolynomial {
        if m < 0 {
            BcPolynomial::zero()
        } else {
            motzkin_bc_direct(0, &[m as u32], cat)
        }
    };
    let lhs = value(n as i64, &mut cat).sub(
        &value(n as i64 - 1, &mut cat).mul_monomial(1, 0, &BigInt::from(1)),
    );
    let mut rhs = BcPolynomial::zero();
    for a in 0..=(n as i64 - 2) {
        let b = n as i64 - 2 - a;
        rhs = rhs.add(&value(a, &mut cat).mul(&value(b, &mut cat)));
    }
    lhs == rhs.mul_monomial(0, 2, &BigInt::from(1))
}

/// The same identity specialized at rational (b, c), evaluated through the
/// recursive table rather than the direct sum.
pub fn motzkin01_recursion_holds_at(n: u32, b: &Rat, c: &Rat) -> bool {
    assert!(n >= 1, "the recursion starts at n = 1");
    let mut table = MotzkinTable::new();
    let value = |m: i64, t: &mut MotzkinTable| t.value(0, &[m]).specialize(b, c);
    let lhs = value(n as i64, &mut table) - b * value(n as i64 - 1, &mut table);
    let mut rhs = Rat::zero();
    for a in 0..=(n as i64 - 2) {
        rhs += value(a, &mut table) * value(n as i64 - 2 - a, &mut table);
    }
    lhs == c * c * rhs
}
