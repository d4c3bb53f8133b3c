//! Eynard-Orantin differential forms two ways: by differentiating the
//! Laplace transforms and by the residue recursion.
//!
//! Densities are stored against the convention W = w(t_1..t_v) dt_1..dt_v.
//! The recursion works in an ambient variable set (t, t_1, .., t_v) with the
//! integration variable in slot 0. Every bracket summand is a product of two
//! forms whose first arguments are t and -t; writing the d(+-t) factors out
//! makes the bracket equal to minus the plain product of densities at signed
//! arguments, which cancels against the kernel prefactor's sign. The contour
//! integral is the negative of the sum of residues at t = +-t_1 (all terms)
//! and t = +-t_j (terms carrying a w02 pairing); the poles of the stable
//! densities at t = 0 and the kernel zeros at t = +-1 contribute nothing to
//! this prescription, which reproduces every worked example exactly.
//!
//! The bracket is assembled as the ordered sum over genus/set splittings
//! with no (0,1) parts, where a (0,2) part contributes the w02 pairing. For
//! every profile except (0,3) this equals a flat sum over j of the two w02
//! pairings plus the stable splitting sum; at (0,3) that flat j-sum would
//! enumerate each (0,2)x(0,2) product twice, and the ordered count keeps it
//! once.

use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::laplace::is_stable;
use crate::poly::{ExpansionCenter, LaurentPoly, RationalFn};
use crate::rational::{rat_int, Rat};
use crate::splits::ordered_splits;

/// Mixed partial in every slot: the density of d_{t_1} .. d_{t_v} F.
pub fn w_from_free_energy(f: &LaurentPoly) -> LaurentPoly {
    let mut out = f.clone();
    for var in 0..f.nvars() {
        out = out.partial_derivative(var);
    }
    out
}

/// Density of W_{0,2} at signed arguments: 1 / (s_a - s_b)^2 where
/// s = +-(ambient variable). A diagonal request hits the double pole and is
/// an error.
pub fn w02_density(
    ambient: usize,
    a: (usize, bool),
    b: (usize, bool),
) -> Result<RationalFn> {
    let term = |slot: usize, negated: bool| {
        let v = LaurentPoly::var(ambient, slot);
        if negated {
            -&v
        } else {
            v
        }
    };
    let diff = &term(a.0, a.1) - &term(b.0, b.1);
    RationalFn::new(LaurentPoly::one(ambient), &diff * &diff)
}

/// The three residue-evaluated pieces of one recursion step, kept apart so
/// each can be compared with the matching differential-recursion term.
#[derive(Clone, Debug)]
pub struct TrParts {
    pub j_sum: RationalFn,
    pub merge: RationalFn,
    pub split: RationalFn,
}

#[derive(Debug, Default)]
pub struct EoForms {
    table: BTreeMap<(u32, u32), LaurentPoly>,
}

impl EoForms {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn computed_keys(&self) -> Vec<(u32, u32)> {
        self.table.keys().copied().collect()
    }

    pub fn get(&self, g: u32, v: u32) -> Option<&LaurentPoly> {
        self.table.get(&(g, v))
    }

    pub fn insert(&mut self, g: u32, v: u32, value: LaurentPoly) {
        self.table.insert((g, v), value);
    }

    /// w_{g,v} by the residue recursion, memoized; lower entries are
    /// produced by the recursion itself, never from the Laplace side.
    pub fn tr(&mut self, g: u32, v: u32) -> Result<LaurentPoly> {
        if !is_stable(g, v) {
            return Err(CoreError::Unstable { g, v });
        }
        if let Some(w) = self.table.get(&(g, v)) {
            return Ok(w.clone());
        }
        let parts = self.tr_parts(g, v)?;
        let total = parts.j_sum.add(&parts.merge)?.add(&parts.split)?;
        let laurent = total
            .to_laurent()
            .map_err(|_| CoreError::NotLaurent(format!("w_({g},{v}) residue sum")))?;
        let w = laurent.drop_unused_var(0)?;
        self.table.insert((g, v), w.clone());
        Ok(w)
    }

    /// One recursion step with the bracket groups kept separate. Results are
    /// rational functions in the ambient variable set with slot 0 unused.
    pub fn tr_parts(&mut self, g: u32, v: u32) -> Result<TrParts> {
        if !is_stable(g, v) {
            return Err(CoreError::Unstable { g, v });
        }
        let ambient = v as usize + 1;
        let kernel = kernel_density(ambient);

        // Merge term: W_{g-1, v+1}(t, -t, t_2, .., t_v).
        let mut merge_terms: Vec<RationalFn> = Vec::new();
        if g >= 1 {
            let mut slots: Vec<(usize, bool)> = vec![(0, false), (0, true)];
            slots.extend((1..v as usize + 1).skip(1).map(|k| (k, false)));
            merge_terms.push(self.part_density(g - 1, &slots, ambient)?);
        }

        // Ordered splittings with no (0,1) parts; (0,2) parts are the w02
        // pairings. Equivalent to a flat j-indexed pairing sum everywhere
        // except for the (0,2)x(0,2) ordered count at (0,3).
        let rest: Vec<usize> = (2..=v as usize).collect();
        let mut j_terms: Vec<RationalFn> = Vec::new();
        let mut split_terms: Vec<RationalFn> = Vec::new();
        for (g1, inside, g2, outside) in ordered_splits(g, &rest) {
            if (g1 == 0 && inside.is_empty()) || (g2 == 0 && outside.is_empty()) {
                continue;
            }
            let mut slots_a: Vec<(usize, bool)> = vec![(0, false)];
            slots_a.extend(inside.iter().map(|&k| (k, false)));
            let mut slots_b: Vec<(usize, bool)> = vec![(0, true)];
            slots_b.extend(outside.iter().map(|&k| (k, false)));
            let fa = self.part_density(g1, &slots_a, ambient)?;
            let fb = self.part_density(g2, &slots_b, ambient)?;
            let product = fa.mul(&fb)?;
            let has_w02 = (g1 == 0 && inside.len() == 1) || (g2 == 0 && outside.len() == 1);
            if has_w02 {
                j_terms.push(product);
            } else {
                split_terms.push(product);
            }
        }

        let centers: Vec<ExpansionCenter> = (1..=v as usize)
            .flat_map(|i| [ExpansionCenter::PlusVar(i), ExpansionCenter::MinusVar(i)])
            .collect();
        let minus_residues = |terms: &[RationalFn]| -> Result<RationalFn> {
            let mut acc = RationalFn::zero(ambient);
            for term in terms {
                let integrand = kernel.mul(term)?;
                for center in &centers {
                    acc = acc.add(&integrand.residue_at(0, center, 2)?)?;
                }
            }
            Ok(acc.scale(&-Rat::new(1.into(), 64.into())))
        };

        Ok(TrParts {
            j_sum: minus_residues(&j_terms)?,
            merge: minus_residues(&merge_terms)?,
            split: minus_residues(&split_terms)?,
        })
    }

    /// Density of a bracket factor W_{g', k}(args): the stored stable form
    /// with its slots mapped onto the signed ambient arguments, or the w02
    /// closed form when (g', k) = (0, 2).
    fn part_density(
        &mut self,
        g: u32,
        slots: &[(usize, bool)],
        ambient: usize,
    ) -> Result<RationalFn> {
        let vv = slots.len() as u32;
        if (g, vv) == (0, 2) {
            return w02_density(ambient, slots[0], slots[1]);
        }
        let w = self.tr(g, vv)?;
        Ok(RationalFn::from_laurent(&w.map_slots(ambient, slots)))
    }
}

/// (1/(t+t_1) + 1/(t-t_1)) (t^2-1)^3 / t^2 with t in slot 0 and t_1 in
/// slot 1.
fn kernel_density(ambient: usize) -> RationalFn {
    let t = LaurentPoly::var(ambient, 0);
    let t1 = LaurentPoly::var(ambient, 1);
    let one = LaurentPoly::one(ambient);
    let t_sq = &t * &t;
    let num = (&(&t_sq - &one).pow(3) * &t).scale(&rat_int(2));
    let den = &t_sq * &(&t_sq - &(&t1 * &t1));
    RationalFn::new(num, den).expect("denominator is nonzero")
}

/// Both routes agree exactly.
pub fn compare_eo(
    free_energies: &mut crate::laplace::FreeEnergies,
    eo: &mut EoForms,
    g: u32,
    v: u32,
) -> Result<bool> {
    let from_f = w_from_free_energy(&free_energies.get_or_compute(g, v)?);
    let from_tr = eo.tr(g, v)?;
    Ok(from_f == from_tr)
}
