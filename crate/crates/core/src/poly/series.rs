//! Truncated formal power series with exact rational coefficients.
//!
//! A value represents sum c_k u^k + O(u^(N+1)); arithmetic never claims
//! coefficients beyond the stored order, and binary operations truncate to
//! the smaller order of the two operands.

use num_traits::{One, Zero};

use crate::error::{CoreError, Result};
use crate::rational::{rat_sqrt, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    var: String,
    coeffs: Vec<Rat>, // index k holds c_k; length = order + 1
}

impl TruncSeries {
    pub fn zero(var: &str, order: usize) -> Self {
        Self { var: var.to_string(), coeffs: vec![Rat::zero(); order + 1] }
    }

    pub fn constant(var: &str, order: usize, value: Rat) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(var: &str, order: usize) -> Self {
        Self::constant(var, order, Rat::one())
    }

    pub fn from_coeffs(var: &str, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        Self { var: var.to_string(), coeffs }
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set_coeff(&mut self, k: usize, value: Rat) {
        self.coeffs[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, Rat::zero());
        Self { var: self.var.clone(), coeffs }
    }

    fn check_var(&self, rhs: &Self) -> Result<()> {
        if self.var != rhs.var {
            return Err(CoreError::SeriesPrecondition(format!(
                "mismatched series variables {:?} and {:?}",
                self.var, rhs.var
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_var(rhs)?;
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Ok(Self { var: self.var.clone(), coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        Self {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_var(rhs)?;
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for i in 0..=order {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                let b = rhs.coeff(j);
                if !b.is_zero() {
                    coeffs[i + j] += &a * b;
                }
            }
        }
        Ok(Self { var: self.var.clone(), coeffs })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        if self.coeff(0).is_zero() {
            return Err(CoreError::SeriesPrecondition(
                "inversion needs a nonzero constant term".into(),
            ));
        }
        let order = self.order();
        let lead = self.coeff(0).recip();
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = lead.clone();
        for k in 1..=order {
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += self.coeff(i) * &coeffs[k - i];
            }
            coeffs[k] = -acc * &lead;
        }
        Ok(Self { var: self.var.clone(), coeffs })
    }

    /// The branch of sqrt with positive constant term; the constant term must
    /// be a nonzero perfect square of a rational.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(CoreError::SeriesPrecondition(
                "square root needs a nonzero constant term".into(),
            ));
        }
        let root0 = rat_sqrt(&c0).ok_or_else(|| {
            CoreError::SeriesPrecondition(format!("constant term {c0} is not a perfect square"))
        })?;
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = root0.clone();
        let twice = Rat::from_integer(2.into()) * &root0;
        for k in 1..=order {
            let mut acc = Rat::zero();
            for i in 1..k {
                acc += &coeffs[i] * &coeffs[k - i];
            }
            coeffs[k] = (self.coeff(k) - acc) / &twice;
        }
        Ok(Self { var: self.var.clone(), coeffs })
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 {
            return self.invert()?.pow(-exp);
        }
        let mut out = Self::one(&self.var, self.order());
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Composition self(inner); the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(CoreError::SeriesPrecondition(
                "composition needs an inner series with zero constant term".into(),
            ));
        }
        let order = self.order().min(inner.order());
        let mut acc = TruncSeries::constant(&inner.var, order, self.coeff(order));
        for k in (0..order).rev() {
            acc = acc.mul(&inner.truncate(order))?;
            acc.coeffs[0] += self.coeff(k);
        }
        Ok(acc)
    }
}
