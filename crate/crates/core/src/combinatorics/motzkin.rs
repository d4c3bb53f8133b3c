//! Generalized bc-Motzkin numbers, computed along two independent routes.
//!
//! `motzkin_bc_direct` evaluates the defining binomial transform of the
//! generalized Catalan numbers. `MotzkinTable` instead rearranges the
//! recursion theorem to expand on the first (largest) slot, recursing on the
//! total color count, and never touches a Catalan number. The two must agree
//! as polynomial identities in (b, c).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{binomial, subsets, BcPolynomial, CatalanTable, ProfileKey};

/// Binomial-transform route: sum over all degree vectors mu <= n slotwise.
pub fn motzkin_bc_direct(
    genus: u32,
    colors: &[u32],
    catalan: &mut CatalanTable,
) -> BcPolynomial {
    let v = colors.len();
    let total_n: u32 = colors.iter().sum();
    let mut out = BcPolynomial::zero();
    let mut mu = vec![0i64; v];
    loop {
        let total_mu: i64 = mu.iter().sum();
        let count = catalan.value(genus as i64, &mu);
        if !count.is_zero() {
            let mut coef = count;
            for (i, &m) in mu.iter().enumerate() {
                coef *= binomial(colors[i] as i64, m);
            }
            out.add_term(total_n - total_mu as u32, total_mu as u32, coef);
        }
        // Odometer over the box prod [0, n_i].
        let mut i = 0;
        loop {
            if i == v {
                return out;
            }
            if mu[i] < colors[i] as i64 {
                mu[i] += 1;
                break;
            }
            mu[i] = 0;
            i += 1;
        }
    }
}

/// Recursion route, memoized on canonical keys.
#[derive(Debug, Default)]
pub struct MotzkinTable {
    memo: BTreeMap<ProfileKey, BcPolynomial>,
}

impl MotzkinTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ProfileKey, &BcPolynomial)> {
        self.memo.iter()
    }

    /// Seeds the memo with an externally stored entry (cache warm-up).
    pub fn insert_entry(&mut self, key: ProfileKey, value: BcPolynomial) {
        self.memo.insert(key, value);
    }

    pub fn recursive(&mut self, key: &ProfileKey) -> BcPolynomial {
        let colors: Vec<i64> = key.degrees().iter().map(|&d| d as i64).collect();
        self.value(key.genus() as i64, &colors)
    }

    pub fn value(&mut self, genus: i64, colors: &[i64]) -> BcPolynomial {
        if let Some(v) = convention(genus, colors) {
            return v;
        }
        let mut sorted: Vec<i64> = colors.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let key = ProfileKey::new(genus as u32, sorted.iter().map(|&d| d as u32).collect());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.expand_first_slot(genus, &sorted);
        self.memo.insert(key, v.clone());
        v
    }

    /// As for the Catalan table: expand a chosen slot without
    /// canonicalization, for the symmetry property test.
    pub fn value_expanding_slot(&mut self, genus: i64, colors: &[i64], slot: usize) -> BcPolynomial {
        if let Some(v) = convention(genus, colors) {
            return v;
        }
        let mut rotated = colors.to_vec();
        rotated.swap(0, slot);
        self.expand_first_slot(genus, &rotated)
    }

    fn expand_first_slot(&mut self, genus: i64, colors: &[i64]) -> BcPolynomial {
        let first = colors[0];
        let rest = &colors[1..];

        // b * M(n1 - 1, rest): dropping the lowest-indexed color.
        let mut shrunk = colors.to_vec();
        shrunk[0] = first - 1;
        let mut acc = self.value(genus, &shrunk).mul_monomial(1, 0, &BigInt::from(1));

        let mut braced = BcPolynomial::zero();
        for (j, &nj) in rest.iter().enumerate() {
            let mut child = Vec::with_capacity(rest.len());
            child.push(first + nj - 2);
            child.extend(rest.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &d)| d));
            braced = braced.add(&self.value(genus, &child).mul_monomial(0, 0, &BigInt::from(nj)));
        }
        if first >= 2 {
            let rest_subsets = subsets(rest);
            for part_a in 0..=(first - 2) {
                let part_b = first - 2 - part_a;

                let mut merged = Vec::with_capacity(rest.len() + 2);
                merged.push(part_a);
                merged.push(part_b);
                merged.extend_from_slice(rest);
                braced = braced.add(&self.value(genus - 1, &merged));

                for g1 in 0..=genus {
                    let g2 = genus - g1;
                    for (inside, outside) in &rest_subsets {
                        let mut left = Vec::with_capacity(inside.len() + 1);
                        left.push(part_a);
                        left.extend_from_slice(inside);
                        let lhs = self.value(g1, &left);
                        if lhs.is_zero() {
                            continue;
                        }
                        let mut right = Vec::with_capacity(outside.len() + 1);
                        right.push(part_b);
                        right.extend_from_slice(outside);
                        braced = braced.add(&lhs.mul(&self.value(g2, &right)));
                    }
                }
            }
        }
        acc = acc.add(&braced.mul_monomial(0, 2, &BigInt::from(1)));
        acc
    }
}

fn convention(genus: i64, colors: &[i64]) -> Option<BcPolynomial> {
    if genus < 0 || colors.iter().any(|&d| d < 0) {
        return Some(BcPolynomial::zero());
    }
    if colors.iter().any(|&d| d == 0) {
        if genus == 0 && colors == [0] {
            return Some(BcPolynomial::one());
        }
        return Some(BcPolynomial::zero());
    }
    None
}
