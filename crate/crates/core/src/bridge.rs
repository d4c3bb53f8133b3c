//! The bridge between the combinatorial counts and the Laurent polynomials:
//! expanding F_{g,v}(t(x)) in inverse powers of x at concrete rational (b, c)
//! must reproduce M(n1..nv; b, c) / (n1 .. nv) coefficient by coefficient.
//!
//! The (b, c)-dependence lives entirely in the change of variables
//! (x - b)/c = 2 + 4/(t^2 - 1); the same Laurent polynomial F serves every
//! (b, c), and agreement across samples is itself one of the checks.
//!
//! Branch choice: t -> -1 as x -> infinity. On this branch dF_{0,1}/dx =
//! -(t+1)/(c(t-1)) decays like -1/x, matching its defining series; the
//! other branch diverges.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::combinatorics::MotzkinTable;
use crate::error::{CoreError, Result};
use crate::poly::{LaurentPoly, TruncSeries};
use crate::rational::{rat_int, Rat};

#[derive(Clone, Debug)]
pub struct BridgeConfig {
    b: Rat,
    c: Rat,
    order: usize,
}

impl BridgeConfig {
    pub fn new(b: Rat, c: Rat, order: usize) -> Result<Self> {
        if b.is_negative() || c <= Rat::zero() {
            return Err(CoreError::InvalidInput(format!(
                "bridge weights need b >= 0 and c > 0, got b = {b}, c = {c}"
            )));
        }
        Ok(Self { b, c, order })
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// The branch of t(x) with t -> -1 as x -> infinity, as a series in u = 1/x:
/// t = -sqrt((1 + (2c - b) u) / (1 - (2c + b) u)).
pub fn t_series_of_x(cfg: &BridgeConfig) -> TruncSeries {
    let order = cfg.order;
    let mut num = TruncSeries::one("u", order);
    num.set_coeff(1, rat_int(2) * &cfg.c - &cfg.b);
    let mut den = TruncSeries::one("u", order);
    den.set_coeff(1, -(rat_int(2) * &cfg.c + &cfg.b));
    let ratio = num.mul(&den.invert().expect("unit constant term")).expect("same variable");
    ratio.sqrt().expect("constant term 1 is a perfect square").neg()
}

/// x(t(u)) recovers 1/u, checked in the multiplied-out form
/// (1 - b u)(t^2 - 1) = 2 c u (t^2 + 1).
pub fn roundtrip_holds(cfg: &BridgeConfig) -> bool {
    let order = cfg.order;
    let t = t_series_of_x(cfg);
    let t_sq = t.mul(&t).expect("same variable");
    let one = TruncSeries::one("u", order);
    let mut u = TruncSeries::zero("u", order);
    u.set_coeff(1, Rat::one());
    let lhs = one
        .sub(&u.scale(&cfg.b))
        .and_then(|f| f.mul(&t_sq.sub(&one).unwrap()))
        .expect("same variable");
    let rhs = u
        .scale(&(rat_int(2) * &cfg.c))
        .mul(&t_sq.add(&one).unwrap())
        .expect("same variable");
    lhs == rhs
}

/// Substitutes t_i = t(u_i) into F variable by variable (F is a Laurent
/// polynomial in each t_i separately, so no multivariate series machinery is
/// needed) and collects the coefficient of u1^n1 .. uv^nv for every vector
/// with sum at most the truncation order.
pub fn expand_free_energy(
    f: &LaurentPoly,
    cfg: &BridgeConfig,
) -> Result<BTreeMap<Vec<u32>, Rat>> {
    let nvars = f.nvars();
    let order = cfg.order;
    let t = t_series_of_x(cfg);
    let mut powers: BTreeMap<i32, TruncSeries> = BTreeMap::new();
    let mut min_exp = 0;
    let mut max_exp = 0;
    for var in 0..nvars {
        min_exp = min_exp.min(f.min_exp(var));
        max_exp = max_exp.max(f.max_exp(var));
    }
    let inv = t.invert().expect("t(0) = -1 is invertible");
    powers.insert(0, TruncSeries::one("u", order));
    for e in 1..=max_exp.max(-min_exp) {
        let prev_pos = powers[&(e - 1)].clone();
        powers.insert(e, prev_pos.mul(&t)?);
        let prev_neg = powers[&(1 - e)].clone();
        powers.insert(-e, prev_neg.mul(&inv)?);
    }

    let mut state: BTreeMap<Vec<u32>, LaurentPoly> = BTreeMap::new();
    state.insert(Vec::new(), f.clone());
    for var in 0..nvars {
        let mut next: BTreeMap<Vec<u32>, LaurentPoly> = BTreeMap::new();
        for (prefix, poly) in state {
            let used: u32 = prefix.iter().sum();
            for (exp, part) in poly.split_by_var(var) {
                let series = &powers[&exp];
                for m in 0..=(order - used as usize) {
                    let coef = series.coeff(m);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut key = prefix.clone();
                    key.push(m as u32);
                    let slot = next
                        .entry(key)
                        .or_insert_with(|| LaurentPoly::zero(nvars));
                    *slot = slot.try_add(&part.scale(&coef))?;
                }
            }
        }
        next.retain(|_, poly| !poly.is_zero());
        state = next;
    }

    let mut out = BTreeMap::new();
    for (key, poly) in state {
        let value = poly
            .as_constant()
            .expect("all variables were substituted");
        if !value.is_zero() {
            out.insert(key, value);
        }
    }
    Ok(out)
}

/// Verifies the expanded coefficients of a stable F_{g,v} against
/// M(n; b, c) / (n1 .. nv) for every vector with all n_i >= 1 and total at
/// most `max_total`, and that every coefficient with some n_i = 0 vanishes.
pub fn check_stable_bridge(
    f: &LaurentPoly,
    genus: u32,
    cfg: &BridgeConfig,
    table: &mut MotzkinTable,
    max_total: u32,
) -> Result<bool> {
    assert!(
        cfg.order >= max_total as usize + 2,
        "truncation guard: order must exceed the checked total by 2"
    );
    let coefficients = expand_free_energy(f, cfg)?;
    let v = f.nvars();
    // Any coefficient with a zero slot must be absent (zero).
    for key in coefficients.keys() {
        if key.iter().any(|&n| n == 0) {
            return Ok(false);
        }
    }
    let mut n = vec![1u32; v];
    loop {
        let total: u32 = n.iter().sum();
        if total <= max_total {
            let signed: Vec<i64> = n.iter().map(|&x| x as i64).collect();
            let mut expected = table.value(genus as i64, &signed).specialize(&cfg.b, &cfg.c);
            for &ni in &n {
                expected /= Rat::from_integer(ni.into());
            }
            let got = coefficients.get(&n).cloned().unwrap_or_else(Rat::zero);
            if got != expected {
                return Ok(false);
            }
        }
        // Odometer over n_i in [1, max_total].
        let mut i = 0;
        loop {
            if i == v {
                return Ok(true);
            }
            if n[i] < max_total {
                n[i] += 1;
                break;
            }
            n[i] = 1;
            i += 1;
        }
    }
}

/// dt/dx at one slot of an ambient context: (t^2 - 1)^2 / (-8 c t).
fn dt_dx(ambient: usize, slot: usize, c: &Rat) -> crate::poly::RationalFn {
    let t = LaurentPoly::var(ambient, slot);
    let one = LaurentPoly::one(ambient);
    let num = (&(&t * &t) - &one).pow(2);
    let den = t.scale(&(rat_int(-8) * c));
    crate::poly::RationalFn::new(num, den).expect("denominator is nonzero")
}

/// Evaluates a one-variable Laurent polynomial on a series argument.
fn series_of_univar(p: &LaurentPoly, t: &TruncSeries) -> Result<TruncSeries> {
    let order = t.order();
    let mut out = TruncSeries::zero(t.var_name(), order);
    for (e, coef) in p.terms() {
        out = out.add(&t.pow(e[0])?.scale(coef))?;
    }
    Ok(out)
}

/// dF_{0,1}/dx as a series: dF_{0,1}/dt pushed through the chain rule
/// (which collapses to -(t+1)/(c(t-1))), composed with t(u), must equal
/// -sum_{n>=0} M(n; b, c) u^(n+1).
pub fn check_unstable_bridge_01(cfg: &BridgeConfig, table: &mut MotzkinTable) -> Result<bool> {
    let order = cfg.order;
    let t = t_series_of_x(cfg);
    let closed = crate::laplace::d_f01(1, 0).mul(&dt_dx(1, 0, &cfg.c))?;
    let num = series_of_univar(closed.num(), &t)?;
    let den = series_of_univar(closed.den(), &t)?;
    let lhs = num.mul(&den.invert()?)?;

    let mut rhs = TruncSeries::zero("u", order);
    for n in 0..order {
        let value = table.value(0, &[n as i64]).specialize(&cfg.b, &cfg.c);
        rhs.set_coeff(n + 1, -value);
    }
    Ok(lhs == rhs)
}

/// dF_{0,2}/dx_1 as a double series: the chain-rule image of dF_{0,2}/dt_1
/// must equal -sum_{n1,n2>=1} M(n1,n2; b, c)/n2 * u1^(n1+1) u2^n2.
pub fn check_unstable_bridge_02(cfg: &BridgeConfig, table: &mut MotzkinTable) -> Result<bool> {
    let order = cfg.order;
    let t = t_series_of_x(cfg);
    let closed = crate::laplace::d_f02(2, 0, 1).mul(&dt_dx(2, 0, &cfg.c))?;
    let num = Series2::of_bivar(closed.num(), &t)?;
    let den = Series2::of_bivar(closed.den(), &t)?;
    let lhs = num.mul(&den.invert()?);

    let mut rhs = Series2::zero(order);
    for n1 in 1..order {
        for n2 in 1..=order {
            let value = table
                .value(0, &[n1 as i64, n2 as i64])
                .specialize(&cfg.b, &cfg.c);
            rhs.set(n1 + 1, n2, -value / Rat::from_integer((n2 as i64).into()));
        }
    }
    Ok(lhs == rhs)
}

/// Truncated bivariate power series, just enough for the (0,2) bridge check.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Series2 {
    order: usize,
    grid: Vec<Vec<Rat>>, // grid[i][j] is the u1^i u2^j coefficient
}

impl Series2 {
    fn zero(order: usize) -> Self {
        Self { order, grid: vec![vec![Rat::zero(); order + 1]; order + 1] }
    }

    fn from_axis(series: &TruncSeries, axis: usize) -> Self {
        let order = series.order();
        let mut s = Self::zero(order);
        for k in 0..=order {
            if axis == 0 {
                s.grid[k][0] = series.coeff(k);
            } else {
                s.grid[0][k] = series.coeff(k);
            }
        }
        s
    }

    /// Evaluates a two-variable Laurent polynomial at (t(u1), t(u2)).
    fn of_bivar(p: &LaurentPoly, t: &TruncSeries) -> Result<Self> {
        assert_eq!(p.nvars(), 2);
        let order = t.order();
        let mut out = Self::zero(order);
        for (e, coef) in p.terms() {
            let s1 = Self::from_axis(&t.pow(e[0])?, 0);
            let s2 = Self::from_axis(&t.pow(e[1])?, 1);
            out = out.add(&s1.mul(&s2).scale(coef));
        }
        Ok(out)
    }

    fn set(&mut self, i: usize, j: usize, value: Rat) {
        self.grid[i][j] = value;
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..=self.order {
            for j in 0..=self.order {
                out.grid[i][j] += &rhs.grid[i][j];
            }
        }
        out
    }

    fn scale(&self, factor: &Rat) -> Self {
        let mut out = self.clone();
        for row in &mut out.grid {
            for c in row {
                *c *= factor;
            }
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let n = self.order;
        let mut out = Self::zero(n);
        for i1 in 0..=n {
            for j1 in 0..=n {
                let a = &self.grid[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=(n - i1) {
                    for j2 in 0..=(n - j1) {
                        let b = &rhs.grid[i2][j2];
                        if !b.is_zero() {
                            out.grid[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    fn invert(&self) -> Result<Self> {
        if self.grid[0][0].is_zero() {
            return Err(CoreError::SeriesPrecondition(
                "bivariate inversion needs a nonzero constant term".into(),
            ));
        }
        let n = self.order;
        let lead = self.grid[0][0].recip();
        let mut out = Self::zero(n);
        // Graded order: the (i, j) coefficient only needs strictly smaller
        // indices.
        for total in 0..=(2 * n) {
            for i in 0..=total.min(n) {
                let j = total - i;
                if j > n {
                    continue;
                }
                if total == 0 {
                    out.grid[0][0] = lead.clone();
                    continue;
                }
                let mut acc = Rat::zero();
                for k in 0..=i {
                    for l in 0..=j {
                        if k == 0 && l == 0 {
                            continue;
                        }
                        let a = &self.grid[k][l];
                        if !a.is_zero() {
                            acc += a * &out.grid[i - k][j - l];
                        }
                    }
                }
                out.grid[i][j] = -acc * &lead;
            }
        }
        Ok(out)
    }
}
