//! Cyclic Steiner triple systems 2-(v,3,1) for v ≡ 1 (mod 6), built from a
//! difference family by backtracking.
//!
//! A set of (v−1)/6 base triples on Z_v whose pairwise differences cover
//! {1, …, (v−1)/2} exactly once develops under the shift x ↦ x+1 into a
//! Steiner triple system. The search works on the differences themselves:
//! partition {1, …, (v−1)/2} into unordered triples {x, y, z} with either
//! x + y = z or x + y + z = v; each such triple yields the base block
//! {0, x, x+y}.

use super::{Design, DesignError};

/// Builds the cyclic Steiner triple system of order `v` (v ≡ 1 mod 6,
/// v ≥ 7). Deterministic: the difference partition is found by backtracking
/// with the smallest unused difference fixed first and candidates tried in
/// ascending order, so equal inputs always produce the same design.
pub fn sts_cyclic(v: usize) -> Result<Design, DesignError> {
    if v < 7 || v % 6 != 1 {
        return Err(DesignError::TripleSystemOrder(v));
    }
    let half = (v - 1) / 2;
    let mut used = vec![false; half + 1];
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity((v - 1) / 6);
    if !partition_differences(v, half, &mut used, &mut pairs) {
        return Err(DesignError::SearchExhausted(
            "a difference partition for the cyclic triple system",
        ));
    }

    let mut blocks = Vec::with_capacity(v * pairs.len());
    for &(x, y) in &pairs {
        for s in 0..v {
            blocks.push(vec![s, (x + s) % v, (x + y + s) % v]);
        }
    }
    Design::new(2, v, 3, 1, blocks)
}

/// Extends a partial partition of the differences {1..=half} into valid
/// triples; records each chosen triple {x, y, z} as the pair (x, y), which
/// determines the base block {0, x, x+y}.
fn partition_differences(
    v: usize,
    half: usize,
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
) -> bool {
    // The smallest unused difference must appear in some triple, so fixing it
    // as x loses no solutions and keeps the search deterministic.
    let Some(x) = (1..=half).find(|&d| !used[d]) else {
        return true;
    };
    used[x] = true;
    for y in x + 1..=half {
        if used[y] {
            continue;
        }
        used[y] = true;
        // The third difference closing the triple: z = x + y, or z with
        // x + y + z = v. (Both cannot be <= half at once since v is odd.)
        for z in [x + y, v - x - y] {
            if z > half || z == x || z == y || used[z] {
                continue;
            }
            used[z] = true;
            pairs.push((x, y));
            if partition_differences(v, half, used, pairs) {
                return true;
            }
            pairs.pop();
            used[z] = false;
        }
        used[y] = false;
    }
    used[x] = false;
    false
}
