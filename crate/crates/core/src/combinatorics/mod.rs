//! Generalized Catalan and bc-Motzkin numbers.
//!
//! The two table types compute the same family of counts along genuinely
//! different routes: `CatalanTable` runs the edge-contraction recursion for
//! cell-graph counts, `MotzkinTable` runs the weighted recursion directly on
//! polynomials in (b, c), and `motzkin_bc_direct` evaluates the defining
//! binomial transform with no recursion at all. Route agreement is asserted by
//! the test suites, never assumed.

mod bcpoly;
mod binomial;
mod catalan;
mod identities;
mod motzkin;

pub use bcpoly::BcPolynomial;
pub use binomial::{bernoulli, binomial, catalan, double_factorial_odd, factorial};
pub use catalan::CatalanTable;
pub use identities::{
    motzkin01_recursion_holds_at, motzkin01_recursion_holds_poly, vandermonde_like,
    vandermonde_like_variant,
};
pub use motzkin::{motzkin_bc_direct, MotzkinTable};

/// Index of one table entry: genus plus the degree (or color-count) vector.
///
/// The vertex count is the length of `degrees`. Keys are stored canonically
/// with degrees sorted in non-increasing order; both counts are symmetric in
/// their arguments, which the property tests verify against uncanonicalized
/// recursion paths.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileKey {
    genus: u32,
    degrees: Vec<u32>,
}

impl ProfileKey {
    pub fn new(genus: u32, mut degrees: Vec<u32>) -> Self {
        assert!(!degrees.is_empty(), "a profile needs at least one vertex");
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Self { genus, degrees }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn vertices(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }
}

impl std::fmt::Display for ProfileKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "(g={}, [{}])", self.genus, degs.join(","))
    }
}

/// Iterates over all subsets of `items`, returning (inside, outside) pairs.
pub(crate) fn subsets<T: Copy>(items: &[T]) -> Vec<(Vec<T>, Vec<T>)> {
    let n = items.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            if mask & (1 << i) != 0 {
                inside.push(x);
            } else {
                outside.push(x);
            }
        }
        out.push((inside, outside));
    }
    out
}
