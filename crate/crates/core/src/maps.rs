//! Brute-force enumeration of arrowed cell graphs in the permutation model.
//!
//! A graph embedded in an oriented surface is encoded by a rotation system:
//! a permutation sigma whose cycles list the half-edges around each vertex in
//! counterclockwise order (starting at the arrowed half-edge, which pins the
//! labeling and removes any automorphism quotient), and a fixed-point-free
//! involution alpha pairing half-edges into edges. Faces are the cycles of
//! sigma composed with alpha, and the genus comes out of Euler's formula.
//!
//! This is an oracle for small profiles only; it exists to check the
//! recursion, not to replace it.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::double_factorial_odd;
use crate::error::{CoreError, Result};

pub const DEFAULT_ORACLE_CAP: u32 = 10;

/// One embedded graph: sigma as a successor array plus the edge involution.
#[derive(Clone, Debug)]
pub struct RotationSystem {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
}

impl RotationSystem {
    pub fn new(sigma: Vec<usize>, alpha: Vec<usize>) -> Self {
        debug_assert_eq!(sigma.len(), alpha.len());
        debug_assert!(alpha.iter().enumerate().all(|(h, &a)| a != h && alpha[a] == h));
        Self { sigma, alpha }
    }

    pub fn half_edge_count(&self) -> usize {
        self.sigma.len()
    }

    /// Number of cycles of sigma composed with alpha (faces of the
    /// embedding).
    pub fn face_count(&self) -> usize {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut faces = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = self.sigma[self.alpha[h]];
            }
        }
        faces
    }

    /// Whether the group generated by sigma and alpha acts transitively.
    pub fn is_connected(&self) -> bool {
        let n = self.sigma.len();
        if n == 0 {
            return true;
        }
        let mut uf = UnionFind::new(n);
        for h in 0..n {
            uf.union(h, self.sigma[h]);
            uf.union(h, self.alpha[h]);
        }
        uf.component_count() == 1
    }
}

/// Counts arrowed cell graphs of the given degree profile on the genus-g
/// surface by exhausting all matchings of the half-edges.
pub fn enumerate_cell_graphs(genus: u32, degrees: &[u32], cap: u32) -> Result<BigInt> {
    let vertices = degrees.len();
    assert!(vertices >= 1, "a profile needs at least one vertex");
    let total: u32 = degrees.iter().sum();
    if total > cap {
        return Err(CoreError::OracleCapExceeded { total, cap });
    }
    if total % 2 == 1 {
        return Ok(BigInt::zero());
    }
    if total == 0 {
        // A degree-0 vertex admits no cell decomposition unless alone on the sphere.
        return Ok(if vertices == 1 && genus == 0 {
            BigInt::from(1)
        } else {
            BigInt::zero()
        });
    }
    if degrees.iter().any(|&d| d == 0) {
        return Ok(BigInt::zero());
    }

    let m = total as usize;
    // sigma: each vertex owns a consecutive block of half-edges, cyclically.
    let mut sigma = vec![0usize; m];
    let mut offset = 0usize;
    for &d in degrees {
        let d = d as usize;
        for i in 0..d {
            sigma[offset + i] = offset + (i + 1) % d;
        }
        offset += d;
    }

    let edges = m / 2;
    let faces_target = 2i64 - 2 * genus as i64 - vertices as i64 + edges as i64;
    if faces_target < 1 {
        return Ok(BigInt::zero());
    }

    let mut alpha = vec![usize::MAX; m];
    let mut count = 0u64;
    match_remaining(&sigma, &mut alpha, &mut count, faces_target as usize);
    Ok(BigInt::from(count))
}

fn match_remaining(sigma: &[usize], alpha: &mut Vec<usize>, count: &mut u64, faces_target: usize) {
    let m = sigma.len();
    let first = match alpha.iter().position(|&a| a == usize::MAX) {
        None => {
            let rs = RotationSystem::new(sigma.to_vec(), alpha.clone());
            if rs.is_connected() && rs.face_count() == faces_target {
                *count += 1;
            }
            return;
        }
        Some(h) => h,
    };
    for partner in (first + 1)..m {
        if alpha[partner] != usize::MAX {
            continue;
        }
        alpha[first] = partner;
        alpha[partner] = first;
        match_remaining(sigma, alpha, count, faces_target);
        alpha[first] = usize::MAX;
        alpha[partner] = usize::MAX;
    }
}

/// Total number of fixed-point-free involutions on 2k half-edges; summing the
/// per-genus counts of one-vertex profiles must reproduce this.
pub fn total_matchings(k: u32) -> BigInt {
    double_factorial_odd(k)
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), components: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.components -= 1;
        }
    }

    fn component_count(&self) -> usize {
        self.components
    }
}
