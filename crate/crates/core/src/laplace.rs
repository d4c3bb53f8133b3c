//! The discrete Laplace transforms F_{g,v} via the differential recursion.
//!
//! Stable transforms are Laurent polynomials in the t-coordinates. The
//! unstable data F_{0,1} and F_{0,2} are never materialized as functions:
//! only their derivative closed forms and the diagonal second derivative
//! enter, which is exactly how the recursion consumes them.
//!
//! The recursion's individual terms are not Laurent term by term, only the
//! assembled right-hand side is, and that reduction is asserted rather than
//! assumed (a non-Laurent remainder or an exponent -1 coefficient under
//! integration signals a transcription bug, never a recoverable state).

use std::collections::BTreeMap;

use num_traits::One;

use crate::combinatorics::{bernoulli, double_factorial_odd, factorial};
use crate::error::{CoreError, Result};
use crate::poly::{LaurentPoly, RationalFn};
use crate::rational::{rat_int, Rat};
use crate::splits::stable_splits;

pub fn is_stable(g: u32, v: u32) -> bool {
    2 * g as i64 - 2 + v as i64 > 0
}

/// dF_{0,1}/dt placed on `slot` of an `ambient`-variable context:
/// 8t / ((t+1)(t-1)^3).
pub fn d_f01(ambient: usize, slot: usize) -> RationalFn {
    let t = LaurentPoly::var(ambient, slot);
    let one = LaurentPoly::one(ambient);
    let num = t.scale(&rat_int(8));
    let den = &(&t + &one) * &(&t - &one).pow(3);
    RationalFn::new(num, den).expect("denominator is nonzero")
}

/// dF_{0,2}/d(first argument) at arguments (slot_a, slot_b):
/// (t_b + 1) / ((t_a - 1)(t_a + t_b)).
pub fn d_f02(ambient: usize, slot_a: usize, slot_b: usize) -> RationalFn {
    let ta = LaurentPoly::var(ambient, slot_a);
    let tb = LaurentPoly::var(ambient, slot_b);
    let one = LaurentPoly::one(ambient);
    let num = &tb + &one;
    let den = &(&ta - &one) * &(&ta + &tb);
    RationalFn::new(num, den).expect("denominator is nonzero")
}

/// The diagonal second derivative of F_{0,2}: d^2 F_{0,2}/du1 du2 at
/// u1 = u2 = t equals 1/(4 t^2).
pub fn d2_f02_diagonal(ambient: usize, slot: usize) -> RationalFn {
    let t = LaurentPoly::var(ambient, slot);
    RationalFn::new(LaurentPoly::one(ambient), (&t * &t).scale(&rat_int(4)))
        .expect("denominator is nonzero")
}

/// The three groups of right-hand-side terms, kept separate so the residue
/// route can be compared against each one individually.
#[derive(Clone, Debug)]
pub struct RhsParts {
    /// Both j-sums (the second dies under d/dt_j, so grouping them is
    /// harmless for the term-by-term comparison).
    pub j_sum: RationalFn,
    /// The genus-reduction term with the diagonal second derivative.
    pub merge: RationalFn,
    /// The stable splitting sum.
    pub split: RationalFn,
}

#[derive(Debug, Default)]
pub struct FreeEnergies {
    table: BTreeMap<(u32, u32), LaurentPoly>,
    cache: Option<crate::io::DiskCache>,
}

impl FreeEnergies {
    pub fn new() -> Self {
        Self::default()
    }

    /// A store backed by an on-disk cache keyed by (g, v); entries written
    /// under a different format version are ignored.
    pub fn with_cache(dir: impl AsRef<std::path::Path>) -> Result<Self> {
        Ok(Self { table: BTreeMap::new(), cache: Some(crate::io::DiskCache::open(dir)?) })
    }

    pub fn computed_keys(&self) -> Vec<(u32, u32)> {
        self.table.keys().copied().collect()
    }

    pub fn insert(&mut self, g: u32, v: u32, value: LaurentPoly) {
        self.table.insert((g, v), value);
    }

    pub fn get(&self, g: u32, v: u32) -> Option<&LaurentPoly> {
        self.table.get(&(g, v))
    }

    /// F_{g,v} as a Laurent polynomial in v variables, computing every
    /// dependency first. Memoized.
    pub fn get_or_compute(&mut self, g: u32, v: u32) -> Result<LaurentPoly> {
        if !is_stable(g, v) {
            return Err(CoreError::Unstable { g, v });
        }
        if let Some(f) = self.table.get(&(g, v)) {
            return Ok(f.clone());
        }
        if let Some(f) = self.cache.as_ref().and_then(|c| c.load_laurent("F", g, v)) {
            self.table.insert((g, v), f.clone());
            return Ok(f);
        }
        let rhs_laurent = self.diff_recursion_rhs_laurent(g, v)?;
        let f = rhs_laurent.antiderivative(0, &rat_int(-1))?;
        if let Some(cache) = self.cache.as_mut() {
            cache.store_laurent("F", g, v, &f)?;
        }
        self.table.insert((g, v), f.clone());
        Ok(f)
    }

    /// d/dt1 F_{g,v} assembled from the recursion (all four terms).
    pub fn diff_recursion_rhs(&mut self, g: u32, v: u32) -> Result<RationalFn> {
        if (g, v) == (0, 3) {
            let parts = self.rhs_parts_0_3()?;
            return parts.j_sum.add(&parts.merge)?.add(&parts.split);
        }
        Ok(RationalFn::from_laurent(&self.diff_recursion_rhs_laurent(g, v)?))
    }

    /// The right-hand side reduced to a Laurent polynomial. The individual
    /// terms carry (t1^2 - t_j^2) denominators; their cancellation in the
    /// assembled sum is asserted by exact division, never assumed.
    fn diff_recursion_rhs_laurent(&mut self, g: u32, v: u32) -> Result<LaurentPoly> {
        if (g, v) == (0, 3) {
            let rhs = self.diff_recursion_rhs(0, 3)?;
            return rhs
                .to_laurent()
                .map_err(|_| CoreError::NotLaurent("dF_(0,3)/dt1 right-hand side".into()));
        }
        let (j_num, merge_num, split_num, denom) = self.rhs_numerators(g, v)?;
        let total = &(&j_num + &merge_num) + &split_num;
        crate::poly::exact_divide(&total, &denom)
            .map_err(|_| CoreError::NotLaurent(format!("dF_({g},{v})/dt1 right-hand side")))
    }

    pub fn diff_recursion_rhs_parts(&mut self, g: u32, v: u32) -> Result<RhsParts> {
        if (g, v) == (0, 3) {
            return self.rhs_parts_0_3();
        }
        let (j_num, merge_num, split_num, denom) = self.rhs_numerators(g, v)?;
        Ok(RhsParts {
            j_sum: RationalFn::new(j_num, denom.clone())?,
            merge: RationalFn::new(merge_num, denom.clone())?,
            split: RationalFn::new(split_num, denom)?,
        })
    }

    /// Generic-path right-hand side over the explicit common denominator
    /// D = t1^2 prod_j [t_j (t1^2 - t_j^2)]; every building block is a
    /// Laurent polynomial here ((0,3) is the only profile that needs the
    /// unstable rational closed forms in the j-sum, and it has its own
    /// assembly). Returns (j numerator, merge numerator, split numerator, D).
    fn rhs_numerators(
        &mut self,
        g: u32,
        v: u32,
    ) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly)> {
        if !is_stable(g, v) {
            return Err(CoreError::Unstable { g, v });
        }
        debug_assert_ne!((g, v), (0, 3));
        let ambient = v as usize;
        let one = LaurentPoly::one(ambient);
        let t1 = LaurentPoly::var(ambient, 0);
        let t1_sq = &t1 * &t1;
        let t1_sq_m1 = &t1_sq - &one;
        let t1_cubic = t1_sq_m1.pow(3);

        let tj_vars: Vec<LaurentPoly> = (1..ambient).map(|j| LaurentPoly::var(ambient, j)).collect();
        let diffs: Vec<LaurentPoly> = tj_vars.iter().map(|tj| &t1_sq - &(tj * tj)).collect();

        // Product of t_k (t1^2 - t_k^2) over all k except an optional one.
        let pair_product = |skip: Option<usize>| -> LaurentPoly {
            let mut acc = one.clone();
            for (k, tk) in tj_vars.iter().enumerate() {
                if Some(k) == skip {
                    continue;
                }
                acc = &acc * &(tk * &diffs[k]);
            }
            acc
        };

        let mut j_num = LaurentPoly::zero(ambient);
        for (idx, tj) in tj_vars.iter().enumerate() {
            let tj_sq = tj * tj;
            let tj_sq_m1 = &tj_sq - &one;
            let others = pair_product(Some(idx));

            let mut args_keep_t1: Vec<usize> = vec![0];
            args_keep_t1.extend((1..ambient).filter(|&k| k != idx + 1));
            let d_keep_t1 = self.d_argument_laurent(g, v - 1, &args_keep_t1, 0, ambient)?;

            let args_drop_t1: Vec<usize> = (1..ambient).collect();
            let d_at_tj = self.d_argument_laurent(g, v - 1, &args_drop_t1, idx, ambient)?;

            // + (t_j^2-1)^3 / (16 t_j (t1^2-t_j^2)) * dF(t2, ..)
            let a_cof = &(&tj_sq_m1.pow(3) * &t1_sq) * &others;
            j_num = &j_num + &(&a_cof * &d_at_tj).scale(&Rat::new(1.into(), 16.into()));

            // - [ (t1^2-1)^3 t_j + (t1^2-1)^2 (t1^2-t_j^2) ]
            //   / (16 t1^2 (t1^2-t_j^2)) * dF(t1, .., ^t_j, ..)
            let bracket = &(&t1_cubic * tj) + &(&t1_sq_m1.pow(2) * &diffs[idx]);
            let b_cof = &(&bracket * tj) * &others;
            j_num = &j_num - &(&b_cof * &d_keep_t1).scale(&Rat::new(1.into(), 16.into()));
        }

        let full_pairs = pair_product(None);
        let merge_num = if g == 0 {
            LaurentPoly::zero(ambient)
        } else {
            let diag = self.second_derivative_diagonal_laurent(g - 1, v + 1, ambient)?;
            (&(&t1_cubic * &diag) * &full_pairs).scale(&-Rat::new(1.into(), 32.into()))
        };

        let rest: Vec<usize> = (1..ambient).collect();
        let mut split_sum = LaurentPoly::zero(ambient);
        for (g1, inside, g2, outside) in stable_splits(g, &rest) {
            let mut args_a = vec![0];
            args_a.extend(inside);
            let mut args_b = vec![0];
            args_b.extend(outside);
            let da = self.d_argument_laurent(g1, args_a.len() as u32, &args_a, 0, ambient)?;
            let db = self.d_argument_laurent(g2, args_b.len() as u32, &args_b, 0, ambient)?;
            split_sum = &split_sum + &(&da * &db);
        }
        let split_num =
            (&(&t1_cubic * &split_sum) * &full_pairs).scale(&-Rat::new(1.into(), 32.into()));

        let denom = &t1_sq * &full_pairs;
        Ok((j_num, merge_num, split_num, denom))
    }

    /// The (0,3) right-hand side, assembled with the unstable closed forms.
    /// The ordered-splitting count makes the dF02-carrying coefficient here
    /// half of the generic shape's (see the module tests and the pinned
    /// F_{0,3} closed form).
    fn rhs_parts_0_3(&mut self) -> Result<RhsParts> {
        let (g, v) = (0u32, 3u32);
        let ambient = v as usize;
        let one = LaurentPoly::one(ambient);
        let t1 = LaurentPoly::var(ambient, 0);
        let t1_sq = &t1 * &t1;
        let t1_sq_m1 = &t1_sq - &one;
        // (t1^2-1)^3 / t1^2.
        let cubic_over_sq = RationalFn::new(t1_sq_m1.pow(3), t1_sq.clone())?;

        // The pairing of the first marked point with t_j contributes, per j,
        // the ordered splittings ({j}, rest) and (rest, {j}); at (0,3) the
        // complementary factor is itself F_{0,2}, the two splittings
        // coincide, and the count halves the dF02-carrying coefficient
        // relative to the generic shape.
        let mut j_sum = RationalFn::zero(ambient);
        for j in 1..ambient {
            let tj = LaurentPoly::var(ambient, j);
            let tj_sq = &tj * &tj;
            let tj_sq_m1 = &tj_sq - &one;

            let mut args_keep_t1: Vec<usize> = vec![0];
            args_keep_t1.extend((1..ambient).filter(|&k| k != j));
            let d_keep_t1 = self.d_first_argument(g, v - 1, &args_keep_t1, ambient)?;

            let args_drop_t1: Vec<usize> = (1..ambient).collect();
            let pos_j = j - 1;
            let d_at_tj = self.d_argument(g, v - 1, &args_drop_t1, pos_j, ambient)?;

            // (t_j^2-1)^3 / (16 t_j (t1^2 - t_j^2)) * dF02(t_j, t_k)
            let a_term = RationalFn::new(
                tj_sq_m1.pow(3),
                (&tj * &(&t1_sq - &tj_sq)).scale(&rat_int(16)),
            )?
            .mul(&d_at_tj)?;
            j_sum = j_sum.add(&a_term)?;

            // -[ (t1^2-1)^2 (t1+1)(t_j+1) / (32 t1^2 (t1+t_j))
            //    + (t1^2-1)^2 (t_j^2-1) / (16 t1 (t1^2-t_j^2)) ] * dF02(t1, t_k)
            let first = RationalFn::new(
                &t1_sq_m1.pow(2) * &(&(&t1 + &one) * &(&tj + &one)),
                (&t1_sq * &(&t1 + &tj)).scale(&rat_int(32)),
            )?;
            let second = RationalFn::new(
                &t1_sq_m1.pow(2) * &tj_sq_m1,
                (&t1 * &(&t1_sq - &tj_sq)).scale(&rat_int(16)),
            )?;
            let b_term = first.add(&second)?.mul(&d_keep_t1)?.neg();
            j_sum = j_sum.add(&b_term)?;
        }

        // Genus reduction: -(1/32) (t1^2-1)^3/t1^2 * d2F_{g-1,v+1}|diagonal.
        let merge = if g == 0 {
            RationalFn::zero(ambient)
        } else {
            let diag = self.second_derivative_on_diagonal(g - 1, v + 1, ambient)?;
            cubic_over_sq.mul(&diag)?.scale(&-Rat::new(1.into(), 32.into()))
        };

        // Stable splittings.
        let rest: Vec<usize> = (1..ambient).collect();
        let mut split = RationalFn::zero(ambient);
        for (g1, inside, g2, outside) in stable_splits(g, &rest) {
            let mut args_a = vec![0];
            args_a.extend(inside);
            let mut args_b = vec![0];
            args_b.extend(outside);
            let da = self.d_first_argument(g1, args_a.len() as u32, &args_a, ambient)?;
            let db = self.d_first_argument(g2, args_b.len() as u32, &args_b, ambient)?;
            split = split.add(&da.mul(&db)?)?;
        }
        split = cubic_over_sq.mul(&split)?.scale(&-Rat::new(1.into(), 32.into()));

        Ok(RhsParts { j_sum, merge, split })
    }

    /// d/d(argument `pos`) F_{g,vv} at ambient arguments `args`, for stable
    /// (g,vv) or the monomial-denominator (0,2) diagonal use; the result is
    /// a Laurent polynomial.
    fn d_argument_laurent(
        &mut self,
        g: u32,
        vv: u32,
        args: &[usize],
        pos: usize,
        ambient: usize,
    ) -> Result<LaurentPoly> {
        debug_assert_eq!(args.len(), vv as usize);
        debug_assert!(is_stable(g, vv), "unstable data never enters the Laurent path");
        let f = self.get_or_compute(g, vv)?;
        let d = f.partial_derivative(pos);
        let mapping: Vec<(usize, bool)> = args.iter().map(|&a| (a, false)).collect();
        Ok(d.map_slots(ambient, &mapping))
    }

    /// d^2/du1 du2 F_{g,vv}(u1, u2, t2, ..) on the diagonal u1 = u2 = t1, as
    /// a Laurent polynomial (the unstable (0,2) case is the monomial
    /// 1/(4 t1^2)).
    fn second_derivative_diagonal_laurent(
        &mut self,
        g: u32,
        vv: u32,
        ambient: usize,
    ) -> Result<LaurentPoly> {
        if (g, vv) == (0, 2) {
            let mut exps = vec![0i32; ambient];
            exps[0] = -2;
            return Ok(LaurentPoly::monomial(ambient, exps, Rat::new(1.into(), 4.into())));
        }
        let f = self.get_or_compute(g, vv)?;
        let d2 = f.partial_derivative(0).partial_derivative(1);
        let mut mapping: Vec<(usize, bool)> = vec![(0, false), (0, false)];
        mapping.extend((2..vv as usize).map(|k| (k - 1, false)));
        Ok(d2.map_slots(ambient, &mapping))
    }

    /// d/d(first argument) F_{g,vv} evaluated at the ambient variables
    /// `args` (one per argument slot).
    fn d_first_argument(
        &mut self,
        g: u32,
        vv: u32,
        args: &[usize],
        ambient: usize,
    ) -> Result<RationalFn> {
        self.d_argument(g, vv, args, 0, ambient)
    }

    /// d/d(argument `pos`) F_{g,vv} at ambient arguments `args`. Uses the
    /// symmetry of F in its slots for the unstable (0,2) case.
    fn d_argument(
        &mut self,
        g: u32,
        vv: u32,
        args: &[usize],
        pos: usize,
        ambient: usize,
    ) -> Result<RationalFn> {
        debug_assert_eq!(args.len(), vv as usize);
        if (g, vv) == (0, 1) {
            return Ok(d_f01(ambient, args[0]));
        }
        if (g, vv) == (0, 2) {
            return Ok(d_f02(ambient, args[pos], args[1 - pos]));
        }
        let f = self.get_or_compute(g, vv)?;
        let d = f.partial_derivative(pos);
        let mapping: Vec<(usize, bool)> = args.iter().map(|&a| (a, false)).collect();
        Ok(RationalFn::from_laurent(&d.map_slots(ambient, &mapping)))
    }

    /// d^2/du1 du2 F_{g,vv}(u1, u2, t2, .., t_v) restricted to u1 = u2 = t1.
    fn second_derivative_on_diagonal(&mut self, g: u32, vv: u32, ambient: usize) -> Result<RationalFn> {
        if (g, vv) == (0, 2) {
            return Ok(d2_f02_diagonal(ambient, 0));
        }
        let f = self.get_or_compute(g, vv)?;
        let d2 = f.partial_derivative(0).partial_derivative(1);
        let mut mapping: Vec<(usize, bool)> = vec![(0, false), (0, false)];
        mapping.extend((2..vv as usize).map(|k| (k - 1, false)));
        Ok(RationalFn::from_laurent(&d2.map_slots(ambient, &mapping)))
    }

    /// Self-consistency: the assembled right-hand side equals dF/dt1 exactly.
    pub fn rhs_matches_derivative(&mut self, g: u32, v: u32) -> Result<bool> {
        let f = self.get_or_compute(g, v)?;
        let rhs = self.diff_recursion_rhs(g, v)?;
        let lhs = RationalFn::from_laurent(&f.partial_derivative(0));
        Ok(lhs.sub(&rhs)?.is_zero())
    }
}

/// Orbifold Euler characteristic of the moduli space of genus-g curves with
/// n marked points (Harer-Zagier).
pub fn euler_characteristic(g: u32, n: u32) -> Rat {
    if g == 0 {
        assert!(n >= 3, "moduli space (0, {n}) is not hyperbolic");
        let sign = if (n - 3) % 2 == 0 { Rat::one() } else { -Rat::one() };
        return sign * Rat::from_integer(factorial(n - 3));
    }
    // (-1)^n (2g-3+n)! (2g-1) B_{2g} / (2g)!
    assert!(n >= 1);
    let sign = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
    sign * Rat::from_integer(factorial((2 * g as i64 - 3 + n as i64) as u32))
        * Rat::from_integer((2 * g as i64 - 1).into())
        * bernoulli(2 * g)
        / Rat::from_integer(factorial(2 * g))
}

/// F_{g,v}(1, .., 1) == (-1)^v chi(M_{g,v}).
pub fn euler_char_check(g: u32, v: u32, f: &LaurentPoly) -> Result<bool> {
    let ones = vec![Rat::one(); v as usize];
    let value = f.eval_point(&ones)?;
    let sign = if v % 2 == 0 { Rat::one() } else { -Rat::one() };
    Ok(value == sign * euler_characteristic(g, v))
}

/// Reads the Witten-Kontsevich intersection numbers off the top-degree part:
/// F^highest = (-1)^v / 2^(2g-2+v) * sum <tau_d1..tau_dv> prod |2d_i-1|!! (t_i/2)^(2d_i+1).
///
/// Keys are the d-vectors sorted in non-increasing order. Any top-degree term
/// that is not of the displayed shape (all exponents odd and positive), or an
/// inconsistency between symmetric slots, is a hard error.
pub fn intersection_numbers(g: u32, v: u32, f: &LaurentPoly) -> Result<BTreeMap<Vec<u32>, Rat>> {
    let level = 2 * g as i32 - 2 + v as i32;
    let top_degree = 3 * level;
    let expected_sum = (3 * g as i64 - 3 + v as i64) as u32;
    let mut out: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    for (e, coef) in f.terms() {
        if e.iter().sum::<i32>() != top_degree {
            continue;
        }
        let mut d = Vec::with_capacity(e.len());
        for &exp in e {
            if exp < 1 || exp % 2 == 0 {
                return Err(CoreError::TopDegreeShape(format!(
                    "top term with exponent {exp} in F_({g},{v})"
                )));
            }
            d.push(((exp - 1) / 2) as u32);
        }
        if d.iter().sum::<u32>() != expected_sum {
            return Err(CoreError::TopDegreeShape(format!(
                "top term of F_({g},{v}) with d-sum {} instead of {expected_sum}",
                d.iter().sum::<u32>()
            )));
        }
        // tau = coef * (-1)^v * 2^(2g-2+v) * 2^(sum e) / prod |2d-1|!!
        let sign = if v % 2 == 0 { Rat::one() } else { -Rat::one() };
        let mut tau = coef * sign;
        for _ in 0..(level + top_degree) {
            tau *= rat_int(2);
        }
        for &di in &d {
            tau /= Rat::from_integer(double_factorial_odd(di));
        }
        d.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(previous) = out.get(&d) {
            if previous != &tau {
                return Err(CoreError::TopDegreeShape(format!(
                    "inconsistent symmetric slots for d = {d:?} in F_({g},{v})"
                )));
            }
        } else {
            out.insert(d, tau);
        }
    }
    Ok(out)
}

/// String equation: <tau_0 tau_{d2} .. tau_{dv}>_{g,v} =
/// sum_i <tau_{d2} .. tau_{d_i - 1} .. tau_{dv}>_{g,v-1}.
///
/// Checks every key of `upper` containing a zero against `lower`.
pub fn string_equation_holds(
    upper: &BTreeMap<Vec<u32>, Rat>,
    lower: &BTreeMap<Vec<u32>, Rat>,
) -> bool {
    for (key, value) in upper {
        let Some(zero_pos) = key.iter().position(|&d| d == 0) else {
            continue;
        };
        let mut rest: Vec<u32> = key.clone();
        rest.remove(zero_pos);
        let mut rhs = Rat::from_integer(0.into());
        for i in 0..rest.len() {
            if rest[i] == 0 {
                continue;
            }
            let mut lowered = rest.clone();
            lowered[i] -= 1;
            lowered.sort_unstable_by(|a, b| b.cmp(a));
            match lower.get(&lowered) {
                Some(tau) => rhs += tau,
                None => return false,
            }
        }
        if value != &rhs {
            return false;
        }
    }
    true
}
