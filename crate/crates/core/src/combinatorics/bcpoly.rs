//! Polynomials in the formal weights b and c with big-integer coefficients.
//!
//! Every Motzkin-type count is computed once as such a polynomial; rational
//! specializations are a post-step. Monomials are keyed by the exponent pair
//! (e_b, e_c).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{rat_pow, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BcPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::from(1))
    }

    pub fn monomial(eb: u32, ec: u32, coef: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(eb, ec, coef);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, eb: u32, ec: u32, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry((eb, ec)).or_insert_with(BigInt::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&(eb, ec));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(eb, ec), c) in &rhs.terms {
            out.add_term(eb, ec, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(eb, ec), c) in &rhs.terms {
            out.add_term(eb, ec, -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ab, ac), x) in &self.terms {
            for (&(bb, bc), y) in &rhs.terms {
                out.add_term(ab + bb, ac + bc, x * y);
            }
        }
        out
    }

    /// Multiplies by coef * b^eb * c^ec.
    pub fn mul_monomial(&self, eb: u32, ec: u32, coef: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(ab, ac), x) in &self.terms {
            out.add_term(ab + eb, ac + ec, x * coef);
        }
        out
    }

    pub fn specialize(&self, b: &Rat, c: &Rat) -> Rat {
        let mut out = Rat::zero();
        for (&(eb, ec), coef) in &self.terms {
            out += Rat::from_integer(coef.clone()) * rat_pow(b, eb as i32) * rat_pow(c, ec as i32);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Every monomial satisfies e_b + e_c == total and e_c is even.
    pub fn has_weight_structure(&self, total: u32) -> bool {
        self.terms
            .keys()
            .all(|&(eb, ec)| eb + ec == total && ec % 2 == 0)
    }
}

impl fmt::Display for BcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(eb, ec), coef) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{coef}")?;
            if eb > 0 {
                write!(f, "*b^{eb}")?;
            }
            if ec > 0 {
                write!(f, "*c^{ec}")?;
            }
        }
        Ok(())
    }
}
