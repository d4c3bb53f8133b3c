//! Sparse multivariate Laurent polynomials over exact rationals.
//!
//! Terms are keyed by integer exponent vectors (entries may be negative) under
//! lexicographic order, which fixes canonical forms and deterministic
//! serialization. Zero coefficients are never stored; the zero polynomial is
//! the empty term map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{CoreError, Result};
use crate::rational::{rat_pow, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, value: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], value);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(nvars, {
            let mut e = vec![0; nvars];
            e[index] = 1;
            e
        }, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, coef: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, coef);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, coef: Rat) {
        debug_assert_eq!(exps.len(), self.nvars);
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Constant-term extraction; the polynomial must be constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.nvars != rhs.nvars {
            return Err(CoreError::VariableMismatch { left: self.nvars, right: rhs.nvars });
        }
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.nvars != rhs.nvars {
            return Err(CoreError::VariableMismatch { left: self.nvars, right: rhs.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        if factor.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Exact termwise partial derivative.
    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[var] = k - 1;
            out.add_term(exps, c * Rat::from_integer(k.into()));
        }
        out
    }

    /// Termwise antiderivative in `var`, normalized to vanish at `var = lower`.
    ///
    /// A nonzero coefficient on exponent -1 would introduce a log term, which
    /// contradicts Laurent-ness downstream; it is a hard error.
    pub fn antiderivative(&self, var: usize, lower: &Rat) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == -1 {
                return Err(CoreError::LogTerm { var });
            }
            let mut exps = e.clone();
            exps[var] = k + 1;
            out.add_term(exps, c / Rat::from_integer((k + 1).into()));
        }
        let at_lower = out.substitute_rational(var, lower)?;
        Ok(&out - &at_lower)
    }

    /// Substitutes a rational value for one variable; the result keeps the
    /// same arity with exponent 0 in that slot. Negative exponents at value 0
    /// are a pole.
    pub fn substitute_rational(&self, var: usize, value: &Rat) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k < 0 && value.is_zero() {
                return Err(CoreError::PoleAtEvaluation);
            }
            let mut exps = e.clone();
            exps[var] = 0;
            out.add_term(exps, c * rat_pow(value, k));
        }
        Ok(out)
    }

    pub fn eval_point(&self, point: &[Rat]) -> Result<Rat> {
        assert_eq!(point.len(), self.nvars);
        let mut out = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k < 0 && point[i].is_zero() {
                    return Err(CoreError::PoleAtEvaluation);
                }
                term *= rat_pow(&point[i], k);
            }
            out += term;
        }
        Ok(out)
    }

    /// Relabels each variable slot into a target variable with an optional
    /// sign flip: slot i becomes `(-1)^(negated) * x_target`. The mapping need
    /// not be injective; colliding slots add exponents, which implements
    /// diagonal restrictions like (u1, u2) -> (t, t).
    pub fn map_slots(&self, new_nvars: usize, mapping: &[(usize, bool)]) -> Self {
        assert_eq!(mapping.len(), self.nvars);
        assert!(mapping.iter().all(|&(t, _)| t < new_nvars));
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut exps = vec![0i32; new_nvars];
            let mut flip = false;
            for (i, &k) in e.iter().enumerate() {
                let (target, negated) = mapping[i];
                exps[target] += k;
                if negated && k.rem_euclid(2) == 1 {
                    flip = !flip;
                }
            }
            out.add_term(exps, if flip { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Negates every exponent vector: f(x) -> f(1/x).
    pub fn invert_vars(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.iter().map(|&k| -k).collect(), c.clone());
        }
        out
    }

    pub fn min_exp(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e[var]).min().unwrap_or(0)
    }

    pub fn max_exp(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree_max(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn total_degree_min(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum()).min().unwrap_or(0)
    }

    /// Groups terms by the exponent of `var`; the parts carry exponent 0 there.
    pub fn split_by_var(&self, var: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[var];
            let mut exps = e.clone();
            exps[var] = 0;
            out.entry(k)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(exps, c.clone());
        }
        out
    }

    /// Removes a variable that no term uses, reindexing the remaining slots.
    pub fn drop_unused_var(&self, var: usize) -> Result<Self> {
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            if e[var] != 0 {
                return Err(CoreError::InvalidInput(format!(
                    "variable {var} still occurs with exponent {}",
                    e[var]
                )));
            }
            let mut exps = Vec::with_capacity(self.nvars - 1);
            exps.extend(e.iter().enumerate().filter(|&(i, _)| i != var).map(|(_, &k)| k));
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    /// Invariance under every permutation of the variables (checked on the
    /// generating adjacent transpositions).
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.nvars.saturating_sub(1) {
            let swapped: BTreeMap<Vec<i32>, Rat> = self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.swap(i, i + 1);
                    (e2, c.clone())
                })
                .collect();
            if swapped != self.terms {
                return false;
            }
        }
        true
    }

    /// Every exponent even in every variable (f(-x) = f(x) slotwise).
    pub fn all_exponents_even(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k.rem_euclid(2) == 0))
    }

    /// The monomial shift making all exponents nonnegative, per variable.
    pub(crate) fn clearing_shift(&self) -> Vec<i32> {
        (0..self.nvars).map(|v| (-self.min_exp(v)).max(0)).collect()
    }

    pub(crate) fn shift_exponents(&self, shift: &[i32]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.iter().zip(shift).map(|(a, s)| a + s).collect(), c.clone());
        }
        out
    }

    /// Leading (lexicographically greatest) term.
    pub(crate) fn leading_term(&self) -> Option<(&Vec<i32>, &Rat)> {
        self.terms.iter().next_back()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("variable sets must match")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(&-rhs).expect("variable sets must match")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("variable sets must match")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let negative_one = -Rat::one();
            if c == &negative_one && e.iter().any(|&k| k != 0) {
                write!(f, "-")?;
            } else if !(c.is_one() && e.iter().any(|&k| k != 0)) {
                write!(f, "{c}")?;
                if e.iter().any(|&k| k != 0) {
                    write!(f, "*")?;
                }
            }
            let mut printed = false;
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    if printed {
                        write!(f, "*")?;
                    }
                    printed = true;
                    if k == 1 {
                        write!(f, "t{}", i + 1)?;
                    } else {
                        write!(f, "t{}^{}", i + 1, k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn t() -> LaurentPoly {
        LaurentPoly::var(1, 0)
    }

    #[test]
    fn arithmetic_examples() {
        // (t - 1)(t + 1) = t^2 - 1
        let tm1 = &t() - &LaurentPoly::one(1);
        let tp1 = &t() + &LaurentPoly::one(1);
        let prod = &tm1 * &tp1;
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![2], rat_int(1));
        expect.add_term(vec![0], rat_int(-1));
        assert_eq!(prod, expect);

        // (t + 1/t)^2 = t^2 + 2 + t^-2
        let mut s = t();
        s.add_term(vec![-1], rat_int(1));
        let sq = s.pow(2);
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![2], rat_int(1));
        expect.add_term(vec![0], rat_int(2));
        expect.add_term(vec![-2], rat_int(1));
        assert_eq!(sq, expect);
    }

    #[test]
    fn mismatched_arity_is_an_error() {
        assert!(t().try_add(&LaurentPoly::one(2)).is_err());
    }

    #[test]
    fn derivative_and_antiderivative() {
        // d/dt (t^3 + 1/t) = 3t^2 - t^-2
        let mut p = LaurentPoly::zero(1);
        p.add_term(vec![3], rat_int(1));
        p.add_term(vec![-1], rat_int(1));
        let d = p.partial_derivative(0);
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![2], rat_int(3));
        expect.add_term(vec![-2], rat_int(-1));
        assert_eq!(d, expect);

        // int_{-1}^{t} tau^2 = t^3/3 + 1/3
        let sq = LaurentPoly::monomial(1, vec![2], rat_int(1));
        let int = sq.antiderivative(0, &rat_int(-1)).unwrap();
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![3], rat(1, 3));
        expect.add_term(vec![0], rat(1, 3));
        assert_eq!(int, expect);

        // int_{-1}^{t} tau^-2 = -1/t - 1
        let inv_sq = LaurentPoly::monomial(1, vec![-2], rat_int(1));
        let int = inv_sq.antiderivative(0, &rat_int(-1)).unwrap();
        let mut expect = LaurentPoly::zero(1);
        expect.add_term(vec![-1], rat_int(-1));
        expect.add_term(vec![0], rat_int(-1));
        assert_eq!(int, expect);

        // tau^-1 integrates to a log: hard error.
        let inv = LaurentPoly::monomial(1, vec![-1], rat_int(1));
        assert!(matches!(inv.antiderivative(0, &rat_int(-1)), Err(CoreError::LogTerm { .. })));
    }

    #[test]
    fn substitution_and_poles() {
        let mut p = LaurentPoly::zero(1);
        p.add_term(vec![-1], rat_int(1));
        assert!(matches!(
            p.substitute_rational(0, &Rat::zero()),
            Err(CoreError::PoleAtEvaluation)
        ));
        assert_eq!(p.substitute_rational(0, &rat_int(2)).unwrap().as_constant(), Some(rat(1, 2)));
    }

    #[test]
    fn invert_vars_roundtrip() {
        let mut p = LaurentPoly::zero(1);
        p.add_term(vec![2], rat_int(1));
        p.add_term(vec![-2], rat_int(1));
        assert_eq!(p.invert_vars(), p);
        assert_eq!(t().invert_vars(), LaurentPoly::monomial(1, vec![-1], rat_int(1)));
    }

    #[test]
    fn slot_mapping_signs() {
        // f(t1, t2) = t1^3 t2 with t1 -> -u, t2 -> u: gives -u^4.
        let p = LaurentPoly::monomial(2, vec![3, 1], rat_int(1));
        let mapped = p.map_slots(1, &[(0, true), (0, false)]);
        assert_eq!(mapped, LaurentPoly::monomial(1, vec![4], rat_int(-1)));
    }

    #[test]
    fn symmetry_and_evenness() {
        let mut sym = LaurentPoly::zero(2);
        sym.add_term(vec![2, 0], rat_int(1));
        sym.add_term(vec![0, 2], rat_int(1));
        assert!(sym.is_symmetric());
        assert!(sym.all_exponents_even());
        sym.add_term(vec![1, 0], rat_int(1));
        assert!(!sym.is_symmetric());
        assert!(!sym.all_exponents_even());
    }
}
