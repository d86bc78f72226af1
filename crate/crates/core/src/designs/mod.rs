//! t-(v,k,λ) designs: representation, exhaustive verification, counting
//! identities, construction families, and file ingest/emit.
//!
//! A design lives on points `{0..v−1}` with `b` blocks of size `k`, every
//! t-subset of points lying in exactly λ blocks (λ = 1 is the Steiner case).
//! [`Design::new`] is the only way to obtain a [`Design`], and it performs
//! the full exhaustive check — all `C(v,t)` subsets are counted against the
//! block list — so every `Design` value in the program is verified. Geometric
//! constructions relabel their natural points (field elements, subspaces)
//! to integers; [`Design::from_labeled_blocks`] records such a relabeling for
//! arbitrary inputs.
//!
//! Submodules: [`geometry`] (projective-space lines, orbit closures,
//! spherical geometries), [`triples`] (cyclic Steiner triple systems),
//! [`witt`] (the 5-(12,6,1) design by orbit search), and [`io`] (JSON files).

pub mod geometry;
pub mod io;
pub mod triples;
pub mod witt;

use num::bigint::BigUint;
use num::ToPrimitive;
use thiserror::Error;

use crate::combinatorics::{binomial, subsets};
use crate::field::FieldError;

/// Default ceiling on the number of t-subsets [`Design::new`] will count.
/// Exceeding it is an error ([`DesignError::WorkLimit`]), never silent
/// sampling; use [`Design::with_work_limit`] to raise it deliberately.
pub const DEFAULT_VERIFY_WORK_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("parameters must satisfy 1 <= t <= k <= v and lambda >= 1 (got t={t}, k={k}, v={v}, lambda={lambda})")]
    ParameterOrder {
        t: usize,
        k: usize,
        v: usize,
        lambda: usize,
    },
    #[error("block {index} has {len} distinct points, expected {k}")]
    BlockWrongSize { index: usize, len: usize, k: usize },
    #[error("block {index} contains point {point}, outside 0..{v}")]
    PointOutOfRange {
        index: usize,
        point: usize,
        v: usize,
    },
    #[error("block {index} repeats an earlier block (repeated blocks are not allowed)")]
    DuplicateBlock { index: usize },
    #[error("the {count} block(s) through point set {subset:?} violate the required count {lambda}")]
    Coverage {
        subset: Vec<usize>,
        count: u64,
        lambda: usize,
    },
    #[error("verification needs {required} subset checks, above the work limit {limit}; raise the limit explicitly to proceed")]
    WorkLimit { required: u128, limit: u64 },
    #[error("lambda_{s} = {lambda}*C({v}-{s}, {t}-{s})/C({k}-{s}, {t}-{s}) is not an integer: parameters are inadmissible")]
    Inadmissible {
        t: usize,
        v: usize,
        k: usize,
        lambda: usize,
        s: usize,
    },
    #[error("s = {s} exceeds the design strength t = {t}")]
    SOutOfRange { s: usize, t: usize },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("projective dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),
    #[error("a cyclic triple system needs v ≡ 1 (mod 6) and v >= 7 (got v={0})")]
    TripleSystemOrder(usize),
    #[error("search exhausted without finding {0}; this indicates an implementation bug, since the object exists")]
    SearchExhausted(&'static str),
    #[error("images are not a bijection on 0..{n}")]
    NotAPermutation { n: usize },
    #[error("generator acts on {degree} points but the design is declared on {v}")]
    GeneratorDegree { degree: usize, v: usize },
    #[error("cannot build a design from an empty block list")]
    EmptyBlocks,
    #[error("design file does not match the expected schema: {0}")]
    Schema(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// A permutation of `{0..n−1}`, validated as a bijection at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation, DesignError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(DesignError::NotAPermutation { n });
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// Image of a block, re-sorted to canonical ascending order.
    pub fn apply_to_block(&self, block: &[usize]) -> Vec<usize> {
        let mut image: Vec<usize> = block.iter().map(|&x| self.images[x]).collect();
        image.sort_unstable();
        image
    }
}

// ---------------------------------------------------------------------------
// Design
// ---------------------------------------------------------------------------

/// A verified t-(v,k,λ) design.
///
/// Invariants (enforced by construction):
/// - blocks are sorted ascending internally and listed in lexicographic
///   order, with no repeats;
/// - every block has exactly `k` distinct points in `[0, v)`;
/// - every t-subset of points lies in exactly λ blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    t: usize,
    v: usize,
    k: usize,
    lambda: usize,
    blocks: Vec<Vec<usize>>,
}

impl Design {
    /// Builds and fully verifies a design, with the default work limit
    /// ([`DEFAULT_VERIFY_WORK_LIMIT`]) on the exhaustive t-subset count.
    pub fn new(
        t: usize,
        v: usize,
        k: usize,
        lambda: usize,
        blocks: Vec<Vec<usize>>,
    ) -> Result<Design, DesignError> {
        Design::with_work_limit(t, v, k, lambda, blocks, DEFAULT_VERIFY_WORK_LIMIT)
    }

    /// As [`Design::new`] with an explicit ceiling on the number of t-subsets
    /// the exhaustive verification may enumerate.
    pub fn with_work_limit(
        t: usize,
        v: usize,
        k: usize,
        lambda: usize,
        blocks: Vec<Vec<usize>>,
        work_limit: u64,
    ) -> Result<Design, DesignError> {
        if !(1 <= t && t <= k && k <= v) || lambda == 0 {
            return Err(DesignError::ParameterOrder { t, k, v, lambda });
        }

        // Canonicalize and structurally check each block, keeping the input
        // position for error messages.
        let mut tagged: Vec<(Vec<usize>, usize)> = Vec::with_capacity(blocks.len());
        for (index, block) in blocks.into_iter().enumerate() {
            let mut sorted = block;
            sorted.sort_unstable();
            if let Some(&point) = sorted.iter().find(|&&x| x >= v) {
                return Err(DesignError::PointOutOfRange { index, point, v });
            }
            sorted.dedup();
            if sorted.len() != k {
                return Err(DesignError::BlockWrongSize {
                    index,
                    len: sorted.len(),
                    k,
                });
            }
            tagged.push((sorted, index));
        }
        tagged.sort();
        for pair in tagged.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(DesignError::DuplicateBlock {
                    index: pair[1].1.max(pair[0].1),
                });
            }
        }
        let blocks: Vec<Vec<usize>> = tagged.into_iter().map(|(b, _)| b).collect();
        if blocks.is_empty() {
            return Err(DesignError::EmptyBlocks);
        }

        let required = binomial(v, t);
        if required > BigUint::from(work_limit) {
            return Err(DesignError::WorkLimit {
                required: required.to_u128().unwrap_or(u128::MAX),
                limit: work_limit,
            });
        }

        // Exhaustive covering check: one bitset of incident blocks per point,
        // intersected over each t-subset in lexicographic order, so the first
        // reported violation is deterministic.
        let b = blocks.len();
        let words = b.div_ceil(64);
        let mut point_masks = vec![vec![0u64; words]; v];
        for (bi, block) in blocks.iter().enumerate() {
            for &x in block {
                point_masks[x][bi / 64] |= 1 << (bi % 64);
            }
        }
        let mut acc = vec![0u64; words];
        for subset in subsets(v, t) {
            acc.copy_from_slice(&point_masks[subset[0]]);
            for &x in &subset[1..] {
                for (slot, word) in acc.iter_mut().zip(&point_masks[x]) {
                    *slot &= word;
                }
            }
            let count: u64 = acc.iter().map(|w| w.count_ones() as u64).sum();
            if count != lambda as u64 {
                return Err(DesignError::Coverage {
                    subset,
                    count,
                    lambda,
                });
            }
        }

        Ok(Design {
            t,
            v,
            k,
            lambda,
            blocks,
        })
    }

    /// Builds a design from blocks over arbitrary integer labels, relabeling
    /// the distinct labels in ascending order to `0..v−1`. Returns the design
    /// together with the label map (`map[i]` = original label of point `i`).
    /// `v` is the number of distinct labels and `k` the size of the first
    /// block.
    pub fn from_labeled_blocks(
        t: usize,
        lambda: usize,
        labeled: &[Vec<u64>],
    ) -> Result<(Design, Vec<u64>), DesignError> {
        if labeled.is_empty() {
            return Err(DesignError::EmptyBlocks);
        }
        let mut labels: Vec<u64> = labeled.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let position = |x: u64| labels.binary_search(&x).expect("label came from the list");
        let blocks: Vec<Vec<usize>> = labeled
            .iter()
            .map(|block| block.iter().map(|&x| position(x)).collect())
            .collect();
        let v = labels.len();
        let k = blocks[0].len();
        let design = Design::new(t, v, k, lambda, blocks)?;
        Ok((design, labels))
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Number of blocks.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks in canonical order (each sorted ascending, list lexicographic).
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// A design is non-trivial when `t < k < v`; at `t = k` every k-subset is
    /// a block and at `k = v` the single block is everything.
    pub fn is_trivial(&self) -> bool {
        !(self.t < self.k && self.k < self.v)
    }

    /// Exact counting statistics; infallible because the design is verified.
    pub fn stats(&self) -> DesignStats {
        let lambda_values: Vec<BigUint> = (0..=self.t)
            .map(|s| {
                lambda_s(self.t, self.v, self.k, self.lambda, s)
                    .expect("lambda_s is integral for a verified design")
            })
            .collect();
        DesignStats {
            t: self.t,
            v: self.v,
            k: self.k,
            lambda: self.lambda,
            b: lambda_values[0].clone(),
            r: lambda_values[1].clone(),
            lambda_s: lambda_values,
        }
    }

    /// The derived design at `point`: blocks through `point`, with the point
    /// deleted and the remaining points relabeled to `0..v−2` (labels above
    /// `point` shift down by one). A t-(v,k,λ) design yields a verified
    /// (t−1)-(v−1, k−1, λ) design; requires `t >= 2`.
    pub fn derived(&self, point: usize) -> Result<Design, DesignError> {
        if point >= self.v {
            return Err(DesignError::PointOutOfRange {
                index: 0,
                point,
                v: self.v,
            });
        }
        if self.t < 2 {
            return Err(DesignError::ParameterOrder {
                t: self.t.wrapping_sub(1),
                k: self.k - 1,
                v: self.v - 1,
                lambda: self.lambda,
            });
        }
        let blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .filter(|block| block.contains(&point))
            .map(|block| {
                block
                    .iter()
                    .filter(|&&x| x != point)
                    .map(|&x| if x > point { x - 1 } else { x })
                    .collect()
            })
            .collect();
        Design::new(self.t - 1, self.v - 1, self.k - 1, self.lambda, blocks)
    }
}

/// Exact counting statistics of a verified design: the block count `b`, the
/// replication number `r` (blocks through a point), and the full vector
/// λ_0..λ_t of blocks through an s-subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignStats {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    /// `λ_0 = b`.
    pub b: BigUint,
    /// `λ_1 = r`.
    pub r: BigUint,
    /// `lambda_s[s]` = number of blocks containing a fixed s-subset,
    /// `s = 0..=t`.
    pub lambda_s: Vec<BigUint>,
}

/// The number of blocks of a t-(v,k,λ) design through a fixed s-subset of
/// points: `λ·C(v−s, t−s)/C(k−s, t−s)`, computed exactly. A non-integral
/// value means no design with these parameters can exist
/// ([`DesignError::Inadmissible`]).
pub fn lambda_s(
    t: usize,
    v: usize,
    k: usize,
    lambda: usize,
    s: usize,
) -> Result<BigUint, DesignError> {
    if s > t {
        return Err(DesignError::SOutOfRange { s, t });
    }
    let numer = BigUint::from(lambda) * binomial(v - s, t - s);
    let denom = binomial(k - s, t - s);
    if (&numer % &denom) != BigUint::from(0u32) {
        return Err(DesignError::Inadmissible { t, v, k, lambda, s });
    }
    Ok(numer / denom)
}

/// Necessary-condition report for Steiner parameters (λ = 1): whether
/// `b = C(v,t)/C(k,t)` is an integer, and whether `v | b` — equivalently
/// `k | r`, the hypothesis under which a design of these parameters orders
/// into a perfect-secrecy encoding matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    /// `C(v,t)/C(k,t)` when integral; `None` marks inadmissible parameters.
    pub b: Option<BigUint>,
    /// `Some(v | b)` when `b` is integral.
    pub v_divides_b: Option<bool>,
}

/// Computes the [`DivisibilityReport`] for `(t, v, k)` with λ = 1.
/// Inadmissibility is reported in the result, not raised as an error.
pub fn divisibility_check(t: usize, v: usize, k: usize) -> DivisibilityReport {
    let b = lambda_s(t, v, k, 1, 0).ok();
    let v_divides_b = b
        .as_ref()
        .map(|b| b % BigUint::from(v) == BigUint::from(0u32));
    DivisibilityReport {
        t,
        v,
        k,
        b,
        v_divides_b,
    }
}
