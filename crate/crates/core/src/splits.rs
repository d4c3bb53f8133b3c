//! Ordered splittings of (genus, marked-point set) used by both recursions.

/// One ordered way to split genus g and the index set: (g1, I, g2, J) with
/// I and J disjoint covering the input.
pub type Split = (u32, Vec<usize>, u32, Vec<usize>);

/// All ordered splittings of `genus` and `rest`.
pub fn ordered_splits(genus: u32, rest: &[usize]) -> Vec<Split> {
    let n = rest.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for (i, &x) in rest.iter().enumerate() {
            if mask & (1 << i) != 0 {
                inside.push(x);
            } else {
                outside.push(x);
            }
        }
        for g1 in 0..=genus {
            out.push((g1, inside.clone(), genus - g1, outside.clone()));
        }
    }
    out
}

/// A part (g', K) is stable when the form W_{g', |K|+1} it feeds is:
/// 2g' + |K| - 1 > 0.
pub fn part_is_stable(genus: u32, marked: usize) -> bool {
    2 * genus as i64 + marked as i64 - 1 > 0
}

/// Splittings whose two parts are both stable.
pub fn stable_splits(genus: u32, rest: &[usize]) -> Vec<Split> {
    ordered_splits(genus, rest)
        .into_iter()
        .filter(|(g1, i, g2, j)| part_is_stable(*g1, i.len()) && part_is_stable(*g2, j.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_filter() {
        // Splitting {2,3,4} at genus 0: both parts need >= 2 indices.
        assert!(stable_splits(0, &[1, 2, 3]).is_empty());
        // Genus 2, empty rest: only (1, {}, 1, {}) survives.
        let s = stable_splits(2, &[]);
        assert_eq!(s, vec![(1, vec![], 1, vec![])]);
        // Genus 0 over four indices: 2+2 splits, ordered.
        let s = stable_splits(0, &[1, 2, 3, 4]);
        assert_eq!(s.len(), 6);
    }
}
