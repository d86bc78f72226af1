//! Small shared combinatorial utilities: exact binomial coefficients and
//! lexicographic enumeration of fixed-size subsets.

use num::bigint::BigUint;

/// Exact binomial coefficient `C(n, k)` as a big integer; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    num::integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// `C(n, k)` as a `u64`, or `None` on overflow. Convenient for work-limit
/// arithmetic where anything beyond `u64` has certainly blown the limit.
pub fn binomial_u64(n: usize, k: usize) -> Option<u64> {
    use num::ToPrimitive;
    binomial(n, k).to_u64()
}

/// Iterates over all `k`-element subsets of `{0, …, n−1}` in lexicographic
/// order, yielding each as a sorted `Vec<usize>`.
pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets {
        n,
        k,
        next: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct Subsets {
    n: usize,
    k: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        // Advance: find the rightmost position that can still move up.
        let mut succ = current.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                break; // exhausted
            }
            i -= 1;
            if succ[i] < self.n - (self.k - i) {
                succ[i] += 1;
                for j in i + 1..self.k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(current)
    }
}
