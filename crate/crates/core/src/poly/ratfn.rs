//! Normalized quotients of multivariate polynomials, and local Laurent
//! expansion around symbolic centers.
//!
//! The stored pair always has nonnegative exponents, no common factor, and a
//! denominator that is integer-primitive with positive leading coefficient
//! under the lex order, so equal functions have identical representations.

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::{primitive_normalize, reduce_common};
use super::laurent::LaurentPoly;
use crate::combinatorics::binomial;
use crate::error::{CoreError, Result};
use crate::rational::{rat_pow, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Where a local expansion is centered: at +t_k, at -t_k, or at a rational
/// constant. This is exactly the set of centers the residue computations
/// need, which keeps the expansion engine simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionCenter {
    PlusVar(usize),
    MinusVar(usize),
    Constant(Rat),
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(CoreError::VariableMismatch { left: num.nvars(), right: den.nvars() });
        }
        let nvars = num.nvars();
        if num.is_zero() {
            return Ok(Self { num, den: LaurentPoly::one(nvars) });
        }

        // Clear negative exponents with one common monomial shift.
        let shift: Vec<i32> = (0..nvars)
            .map(|v| (-num.min_exp(v).min(den.min_exp(v))).max(0))
            .collect();
        let num = num.shift_exponents(&shift);
        let den = den.shift_exponents(&shift);

        let (num, den) = reduce_common(&num, &den);
        let (den_prim, scalar) = primitive_normalize(&den);
        Ok(Self { num: num.scale(&scalar.recip()), den: den_prim })
    }

    pub fn zero(nvars: usize) -> Self {
        Self { num: LaurentPoly::zero(nvars), den: LaurentPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self { num: LaurentPoly::one(nvars), den: LaurentPoly::one(nvars) }
    }

    pub fn constant(nvars: usize, value: Rat) -> Self {
        Self { num: LaurentPoly::constant(nvars, value), den: LaurentPoly::one(nvars) }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let nvars = p.nvars();
        let shift = p.clearing_shift();
        if shift.iter().all(|&s| s == 0) {
            return Self { num: p.clone(), den: LaurentPoly::one(nvars) };
        }
        let num = p.shift_exponents(&shift);
        let den = LaurentPoly::monomial(nvars, shift, Rat::one());
        Self { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        // a/b + c/d = (a (d/g) + c (b/g)) / (b (d/g)) with g = gcd(b, d).
        let (self_co, rhs_co) = reduce_common(&self.den, &rhs.den);
        let num = &(&self.num * &rhs_co) + &(&rhs.num * &self_co);
        let den = &self.den * &rhs_co;
        Self::new(num, den)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.scale(&-Rat::one()), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        // Cross-cancel before multiplying to keep intermediates small.
        let (a, d) = reduce_common(&self.num, &rhs.den);
        let (c, b) = reduce_common(&rhs.num, &self.den);
        Self::new(&a * &c, &b * &d)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.mul(&rhs.recip()?)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        if factor.is_zero() {
            return Self::zero(self.nvars());
        }
        Self { num: self.num.scale(factor), den: self.den.clone() }
    }

    /// Quotient rule, then normalization.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        let dn = self.num.partial_derivative(var);
        let dd = self.den.partial_derivative(var);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Self::new(num, den)
    }

    pub fn substitute_rational(&self, var: usize, value: &Rat) -> Result<Self> {
        let den = self.den.substitute_rational(var, value)?;
        if den.is_zero() {
            return Err(CoreError::PoleAtEvaluation);
        }
        let num = self.num.substitute_rational(var, value)?;
        Self::new(num, den)
    }

    pub fn eval_point(&self, point: &[Rat]) -> Result<Rat> {
        let den = self.den.eval_point(point)?;
        if den.is_zero() {
            return Err(CoreError::PoleAtEvaluation);
        }
        Ok(self.num.eval_point(point)? / den)
    }

    /// Signed slot relabeling; a mapping that collapses the denominator to
    /// zero (a diagonal hitting a pole) is an error.
    pub fn map_slots(&self, new_nvars: usize, mapping: &[(usize, bool)]) -> Result<Self> {
        Self::new(self.num.map_slots(new_nvars, mapping), self.den.map_slots(new_nvars, mapping))
    }

    /// Succeeds iff the denominator is a monomial.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars()));
        }
        if self.den.num_terms() != 1 {
            return Err(CoreError::NotLaurent(format!("denominator {}", self.den)));
        }
        let (e, c) = self.den.leading_term().unwrap();
        let back: Vec<i32> = e.iter().map(|&k| -k).collect();
        let c = c.clone();
        Ok(self.num.shift_exponents(&back).scale(&c.recip()))
    }

    /// Laurent coefficients of `self` in s = var - center, from s^-depth up
    /// to s^0, computed by polynomial rewriting in s followed by exact series
    /// division over the remaining-variable rational-function field.
    ///
    /// Fails when the denominator's s-order exceeds `depth`.
    pub fn local_laurent_expansion(
        &self,
        var: usize,
        center: &ExpansionCenter,
        depth: usize,
    ) -> Result<Vec<RationalFn>> {
        let nvars = self.nvars();
        if self.is_zero() {
            return Ok(vec![Self::zero(nvars); depth + 1]);
        }
        let num_s = rewrite_at_center(&self.num, var, center);
        let den_s = rewrite_at_center(&self.den, var, center);
        let num_parts = num_s.split_by_var(var);
        let den_parts = den_s.split_by_var(var);
        let order = *den_parts.keys().next().expect("denominator is nonzero") as usize;
        if order > depth {
            return Err(CoreError::PoleOrderExceeded { order, depth });
        }
        let den_at = |k: usize| -> LaurentPoly {
            den_parts.get(&(k as i32)).cloned().unwrap_or_else(|| LaurentPoly::zero(nvars))
        };
        let num_at = |k: usize| -> LaurentPoly {
            num_parts.get(&(k as i32)).cloned().unwrap_or_else(|| LaurentPoly::zero(nvars))
        };
        let lead = Self::from_laurent(&den_at(order));
        let mut series: Vec<RationalFn> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut acc = Self::from_laurent(&num_at(m));
            for (i, c_i) in series.iter().enumerate() {
                let d = den_at(order + m - i);
                if d.is_zero() {
                    continue;
                }
                acc = acc.sub(&c_i.mul(&Self::from_laurent(&d))?)?;
            }
            series.push(acc.div(&lead)?);
        }
        let mut out = vec![Self::zero(nvars); depth + 1];
        for (m, value) in series.into_iter().enumerate() {
            // c_m is the coefficient of s^(m - order).
            let idx = depth + m - order;
            if idx <= depth {
                out[idx] = value;
            }
        }
        Ok(out)
    }

    /// The s^-1 coefficient at the center, allowing poles up to order `depth`.
    pub fn residue_at(&self, var: usize, center: &ExpansionCenter, depth: usize) -> Result<RationalFn> {
        assert!(depth >= 1);
        let expansion = self.local_laurent_expansion(var, center, depth)?;
        Ok(expansion[depth - 1].clone())
    }
}

/// Substitutes x_var := center + s, with s reoccupying the same slot.
fn rewrite_at_center(p: &LaurentPoly, var: usize, center: &ExpansionCenter) -> LaurentPoly {
    let nvars = p.nvars();
    if let ExpansionCenter::PlusVar(w) | ExpansionCenter::MinusVar(w) = center {
        assert_ne!(*w, var, "center variable must differ from the expansion variable");
    }
    let mut out = LaurentPoly::zero(nvars);
    for (e, c) in p.terms() {
        let k = e[var];
        debug_assert!(k >= 0, "rewrite requires polynomial exponents");
        for i in 0..=k {
            let binom = Rat::from_integer(binomial(k as i64, i as i64));
            let mut exps = e.clone();
            exps[var] = i;
            let coef = match center {
                ExpansionCenter::Constant(q) => c * binom * rat_pow(q, k - i),
                ExpansionCenter::PlusVar(w) => {
                    exps[*w] += k - i;
                    c * binom
                }
                ExpansionCenter::MinusVar(w) => {
                    exps[*w] += k - i;
                    let sign = if (k - i).rem_euclid(2) == 1 { -Rat::one() } else { Rat::one() };
                    c * binom * sign
                }
            };
            out.add_term(exps, coef);
        }
    }
    out
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map_or(false, |c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn v(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(n, i)
    }

    fn one(n: usize) -> LaurentPoly {
        LaurentPoly::one(n)
    }

    #[test]
    fn add_normalizes() {
        // 1/(t-1) + 1/(t+1) = 2t/(t^2-1)
        let t = v(1, 0);
        let a = RationalFn::new(one(1), &t - &one(1)).unwrap();
        let b = RationalFn::new(one(1), &t + &one(1)).unwrap();
        let sum = a.add(&b).unwrap();
        let expect =
            RationalFn::new(t.scale(&rat_int(2)), &(&t * &t) - &one(1)).unwrap();
        assert_eq!(sum, expect);
    }

    #[test]
    fn canonical_representation() {
        // a/b == (c*a)/(c*b) for nonzero polynomial c.
        let t1 = v(2, 0);
        let t2 = v(2, 1);
        let num = &t1 + &t2;
        let den = &t1 - &t2;
        let c = &(&t1 * &t2) + &one(2);
        let plain = RationalFn::new(num.clone(), den.clone()).unwrap();
        let scaled = RationalFn::new(&num * &c, &den * &c).unwrap();
        assert_eq!(plain, scaled);
        // Rational rescaling too.
        let rescale = RationalFn::new(num.scale(&rat(-3, 7)), den.scale(&rat(-3, 7))).unwrap();
        assert_eq!(plain, rescale);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dt1 of (t2+1)/((t1-1)(t1+t2))
        //   = -(t2+1)(2t1+t2-1) / ((t1-1)^2 (t1+t2)^2)
        let t1 = v(2, 0);
        let t2 = v(2, 1);
        let num = &t2 + &one(2);
        let den = &(&t1 - &one(2)) * &(&t1 + &t2);
        let f = RationalFn::new(num.clone(), den).unwrap();
        let got = f.partial_derivative(0).unwrap();
        let expect_num =
            (&num * &(&(&t1.scale(&rat_int(2)) + &t2) - &one(2))).scale(&-Rat::one());
        let expect_den = {
            let a = &t1 - &one(2);
            let b = &t1 + &t2;
            &(&a * &a) * &(&b * &b)
        };
        assert_eq!(got, RationalFn::new(expect_num, expect_den).unwrap());
    }

    #[test]
    fn substitution_pole() {
        let t = v(1, 0);
        let f = RationalFn::new(one(1), &t - &one(1)).unwrap();
        assert!(matches!(
            f.substitute_rational(0, &rat_int(1)),
            Err(CoreError::PoleAtEvaluation)
        ));
        let g = f.substitute_rational(0, &rat_int(3)).unwrap();
        assert_eq!(g, RationalFn::constant(1, rat(1, 2)));
    }

    #[test]
    fn to_laurent_accepts_only_monomial_denominators() {
        let t = v(1, 0);
        let f = RationalFn::new(&(&t * &t) + &t, t.clone()).unwrap();
        let l = f.to_laurent().unwrap();
        assert_eq!(l, &t + &one(1));
        let g = RationalFn::new(one(1), &t + &one(1)).unwrap();
        assert!(matches!(g.to_laurent(), Err(CoreError::NotLaurent(_))));
    }

    #[test]
    fn expansion_at_double_pole() {
        // f = 1/(t - t1)^2 at t = t1: s^-2 coefficient 1, s^-1 coefficient 0.
        let t = v(2, 0);
        let t1 = v(2, 1);
        let d = &t - &t1;
        let f = RationalFn::new(one(2), &d * &d).unwrap();
        let exp = f.local_laurent_expansion(0, &ExpansionCenter::PlusVar(1), 2).unwrap();
        assert_eq!(exp[0], RationalFn::one(2)); // s^-2
        assert!(exp[1].is_zero()); // s^-1
        assert!(exp[2].is_zero()); // s^0
    }

    #[test]
    fn expansion_matches_worked_residue() {
        // f = (t^2-1)^3 / (t^3 (t+t1)(t-t1)); residue at t = t1 is
        // (t1^2-1)^3 / (2 t1^4).
        let t = v(2, 0);
        let t1 = v(2, 1);
        let num = (&(&t * &t) - &one(2)).pow(3);
        let den = &(&t.pow(3) * &(&t + &t1)) * &(&t - &t1);
        let f = RationalFn::new(num, den).unwrap();
        let res = f.residue_at(0, &ExpansionCenter::PlusVar(1), 2).unwrap();
        let expect_num = (&(&t1 * &t1) - &one(2)).pow(3);
        let expect = RationalFn::new(expect_num, t1.pow(4).scale(&rat_int(2))).unwrap();
        assert_eq!(res, expect);
        // And the residue at t = -t1 matches by oddness of f.
        let res_neg = f.residue_at(0, &ExpansionCenter::MinusVar(1), 2).unwrap();
        assert_eq!(res_neg, expect);
    }

    #[test]
    fn expansion_of_regular_function() {
        let t = v(2, 0);
        let t1 = v(2, 1);
        let f = RationalFn::new(&t + &t1, &t1 + &one(2)).unwrap();
        let exp = f.local_laurent_expansion(0, &ExpansionCenter::PlusVar(1), 2).unwrap();
        assert!(exp[0].is_zero());
        assert!(exp[1].is_zero());
        let expect = RationalFn::new(t1.scale(&rat_int(2)), &t1 + &one(2)).unwrap();
        assert_eq!(exp[2], expect);
    }

    #[test]
    fn pole_order_guard() {
        let t = v(2, 0);
        let t1 = v(2, 1);
        let f = RationalFn::new(one(2), (&t - &t1).pow(3)).unwrap();
        assert!(matches!(
            f.local_laurent_expansion(0, &ExpansionCenter::PlusVar(1), 2),
            Err(CoreError::PoleOrderExceeded { order: 3, depth: 2 })
        ));
    }
}
