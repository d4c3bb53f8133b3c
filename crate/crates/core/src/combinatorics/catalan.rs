//! Generalized Catalan numbers via the edge-contraction recursion.
//!
//! The recursion terminates because every term on the right-hand side has
//! total degree two less than the left-hand side; the "(g, v) term also
//! appears on the right" only with strictly smaller total degree.
//!
//! Convention values (the recursion needs them and they are forced by the
//! graph-count interpretation): the count is 0 for negative genus, for any
//! negative degree, and whenever some degree is 0 unless the profile is a
//! single degree-0 vertex on the sphere, which counts 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{subsets, ProfileKey};

#[derive(Debug, Default)]
pub struct CatalanTable {
    memo: BTreeMap<ProfileKey, BigInt>,
}

impl CatalanTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ProfileKey, &BigInt)> {
        self.memo.iter()
    }

    /// Seeds the memo with an externally stored entry (cache warm-up).
    pub fn insert_entry(&mut self, key: ProfileKey, value: BigInt) {
        self.memo.insert(key, value);
    }

    pub fn generalized(&mut self, key: &ProfileKey) -> BigInt {
        let degrees: Vec<i64> = key.degrees().iter().map(|&d| d as i64).collect();
        self.value(key.genus() as i64, &degrees)
    }

    /// Signed-argument entry point; conventions absorb out-of-range inputs.
    pub fn value(&mut self, genus: i64, degrees: &[i64]) -> BigInt {
        if let Some(v) = convention(genus, degrees) {
            return v;
        }
        let mut sorted: Vec<i64> = degrees.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let key = ProfileKey::new(genus as u32, sorted.iter().map(|&d| d as u32).collect());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.expand_first_slot(genus, &sorted);
        self.memo.insert(key, v.clone());
        v
    }

    /// Applies the recursion with the chosen slot rotated to the front, with
    /// no canonicalization of the input itself. The symmetry property test
    /// uses this to confirm that sorted memo keys are sound.
    pub fn value_expanding_slot(&mut self, genus: i64, degrees: &[i64], slot: usize) -> BigInt {
        if let Some(v) = convention(genus, degrees) {
            return v;
        }
        let mut rotated = degrees.to_vec();
        rotated.swap(0, slot);
        self.expand_first_slot(genus, &rotated)
    }

    fn expand_first_slot(&mut self, genus: i64, degrees: &[i64]) -> BigInt {
        let first = degrees[0];
        let rest = &degrees[1..];
        let mut acc = BigInt::zero();

        // Edge joining the marked vertex to vertex j.
        for (j, &dj) in rest.iter().enumerate() {
            let mut child = Vec::with_capacity(rest.len());
            child.push(first + dj - 2);
            child.extend(rest.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &d)| d));
            acc += self.value(genus, &child) * BigInt::from(dj);
        }

        // Loop on the marked vertex: handle or separating split.
        if first >= 2 {
            let rest_subsets = subsets(rest);
            for part_a in 0..=(first - 2) {
                let part_b = first - 2 - part_a;

                let mut merged = Vec::with_capacity(rest.len() + 2);
                merged.push(part_a);
                merged.push(part_b);
                merged.extend_from_slice(rest);
                acc += self.value(genus - 1, &merged);

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
                        acc += lhs * self.value(g2, &right);
                    }
                }
            }
        }
        acc
    }
}

fn convention(genus: i64, degrees: &[i64]) -> Option<BigInt> {
    if genus < 0 || degrees.iter().any(|&d| d < 0) {
        return Some(BigInt::zero());
    }
    if degrees.iter().any(|&d| d == 0) {
        if genus == 0 && degrees == [0] {
            return Some(BigInt::from(1));
        }
        return Some(BigInt::zero());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::catalan;

    #[test]
    fn aerated_catalan_numbers() {
        let mut t = CatalanTable::new();
        for m in 0..=8i64 {
            let got = t.value(0, &[2 * m]);
            assert_eq!(got, catalan(m as u32), "C_(0,1)({})", 2 * m);
            assert_eq!(t.value(0, &[2 * m + 1]), BigInt::zero());
        }
        // Pinned examples.
        assert_eq!(t.value(0, &[4]), BigInt::from(2));
        assert_eq!(t.value(0, &[3]), BigInt::zero());
    }

    #[test]
    fn small_profiles() {
        let mut t = CatalanTable::new();
        assert_eq!(t.value(0, &[1, 1]), BigInt::from(1));
        assert_eq!(t.value(1, &[4]), BigInt::from(1));
        assert_eq!(t.value(0, &[0]), BigInt::from(1));
        assert_eq!(t.value(1, &[0]), BigInt::zero());
        assert_eq!(t.value(0, &[0, 2]), BigInt::zero());
    }

    #[test]
    fn parity_vanishing() {
        let mut t = CatalanTable::new();
        for g in 0..=2i64 {
            for a in 0..=9i64 {
                for b in 0..=3i64 {
                    if (a + b) % 2 == 1 {
                        assert_eq!(t.value(g, &[a, b]), BigInt::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn slot_choice_is_irrelevant() {
        let mut t = CatalanTable::new();
        for degrees in [
            vec![4i64, 2],
            vec![2, 4],
            vec![6, 2, 2],
            vec![1, 3, 2],
            vec![2, 2, 4, 2],
        ] {
            for g in 0..=2i64 {
                let canonical = t.value(g, &degrees);
                for slot in 0..degrees.len() {
                    assert_eq!(
                        t.value_expanding_slot(g, &degrees, slot),
                        canonical,
                        "g={g} degrees={degrees:?} slot={slot}"
                    );
                }
            }
        }
    }
}
