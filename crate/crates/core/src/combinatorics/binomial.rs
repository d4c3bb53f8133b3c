//! Integer combinatorial primitives: binomials, Catalan numbers, factorials,
//! Bernoulli numbers.
//!
//! The binomial convention matters for everything downstream: `binomial(n, k)`
//! is 0 whenever `k < 0`, `n < 0`, or `k > n`. The shifted binomials appearing
//! in the recursion identities are evaluated under this convention and only
//! checked inside their stated hypotheses.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rat;

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 1..=k {
        out = out * BigInt::from(n - k + i) / BigInt::from(i);
    }
    out
}

/// The k-th Catalan number binom(2k, k) / (k + 1).
pub fn catalan(k: u32) -> BigInt {
    binomial(2 * k as i64, k as i64) / BigInt::from(k as i64 + 1)
}

pub fn factorial(n: u32) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n as u64 {
        out *= BigInt::from(i);
    }
    out
}

/// (2m - 1)!! with the empty-product convention (-1)!! = 1.
pub fn double_factorial_odd(m: u32) -> BigInt {
    let mut out = BigInt::one();
    let mut i = 1u64;
    while i + 1 <= 2 * m as u64 {
        out *= BigInt::from(i);
        i += 2;
    }
    out
}

/// Bernoulli number B_n (B_1 = -1/2 convention), via the defining recurrence
/// sum_{j=0}^{m} binom(m+1, j) B_j = 0.
pub fn bernoulli(n: u32) -> Rat {
    let mut b: Vec<Rat> = Vec::with_capacity(n as usize + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        let mut acc = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rat::from_integer(binomial(m as i64 + 1, j as i64)) * bj;
        }
        b.push(-acc / Rat::from_integer(BigInt::from(m + 1)));
    }
    b.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(7, -1), BigInt::zero());
        assert_eq!(binomial(50, 25), "126410606437752".parse().unwrap());
    }

    #[test]
    fn catalan_sequence() {
        let expect = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (k, &c) in expect.iter().enumerate() {
            assert_eq!(catalan(k as u32), BigInt::from(c));
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(double_factorial_odd(0), BigInt::one());
        assert_eq!(double_factorial_odd(1), BigInt::one());
        assert_eq!(double_factorial_odd(3), BigInt::from(15));
        assert_eq!(double_factorial_odd(5), BigInt::from(945));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
    }
}
