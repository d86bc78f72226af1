//! Authentication codes with secrecy: exact deception probabilities,
//! perfect-secrecy checks, and optimality against the combinatorial lower
//! bounds.
//!
//! An [`AuthCode`] is an encoding matrix read as a cipher: row = encoding
//! rule (key), column = source state, entry = message. The probability model
//! is fixed — keys uniform (`1/b`), source states equiprobable (`1/k`) —
//! which is the model under which the design constructions in this crate are
//! provably optimal; other distributions are deliberately not supported.
//!
//! In a spoofing attack of order `i` the opponent observes `i` distinct
//! messages sent under one rule and injects a fresh message, winning if it
//! is valid under that rule. [`AuthCode::deception_probability`] brute-forces
//! the opponent's optimal success chance exactly: observing the message set
//! `M_i` leaves the rules containing `M_i` equally likely, so the best
//! injection maximizes the count of rules containing `M_i ∪ {m'}`. Every
//! computation in this module is exact big-rational arithmetic; nothing is
//! floated and nothing is sampled.

use std::collections::HashMap;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::combinatorics::{binomial, subsets};
use crate::ordering::EncodingMatrix;

/// Default ceiling on the number of subset tests one deception-probability
/// call may perform; exceeding it errors rather than degrading.
pub const DEFAULT_DECEPTION_WORK_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("row {row} is not injective: message {message} appears twice (an encoding rule must map source states to distinct messages)")]
    NonInjectiveRow { row: usize, message: usize },
    #[error("spoofing order {i} is not below the number of source states k = {k}")]
    OrderTooLarge { i: usize, k: usize },
    #[error("strength t = {t} must satisfy 1 <= t <= k = {k}")]
    BadStrength { t: usize, k: usize },
    #[error("order-{i} enumeration needs {required} subset tests, above the limit {limit}; raise the limit explicitly to proceed")]
    WorkLimit { i: usize, required: u128, limit: u64 },
    #[error("message {m} is never valid under any encoding rule; its posterior is undefined")]
    UndefinedPosterior { m: usize },
    #[error("source state {s} out of range 0..{k}")]
    SourceOutOfRange { s: usize, k: usize },
    #[error("message {m} out of range 0..{v}")]
    MessageOutOfRange { m: usize, v: usize },
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// The Massey floor `(k−i)/(v−i)`: no code on `v` messages and `k` source
/// states can push the order-`i` deception probability below it.
pub fn massey_floor(v: usize, k: usize, i: usize) -> BigRational {
    ratio(k as u64 - i as u64, v as u64 - i as u64)
}

/// The Massey–Schöbi floor on the number of encoding rules of a code that is
/// (t−1)-fold secure against spoofing: `C(v,t)/C(k,t)`.
///
/// # Panics
///
/// Requires `t <= k` (the denominator vanishes otherwise).
pub fn massey_schobi_bound(v: usize, k: usize, t: usize) -> BigRational {
    assert!(t <= k, "massey_schobi_bound needs t <= k (got t={t}, k={k})");
    ratio(
        BigInt::from(binomial(v, t)),
        BigInt::from(binomial(k, t)),
    )
}

// ---------------------------------------------------------------------------
// AuthCode
// ---------------------------------------------------------------------------

/// An authentication code: an encoding matrix with the uniform/equiprobable
/// probability model attached and per-message rule bitsets precomputed.
#[derive(Debug, Clone)]
pub struct AuthCode {
    matrix: EncodingMatrix,
    p_rule: Vec<BigRational>,
    p_source: Vec<BigRational>,
    /// `masks[m]` = bitset over rules containing message `m`.
    masks: Vec<Vec<u64>>,
    words: usize,
}

impl AuthCode {
    /// Attaches the probability model to a matrix. Every row must be
    /// injective — a rule assigning one message to two source states is not
    /// an encoding rule.
    pub fn new(matrix: EncodingMatrix) -> Result<AuthCode, CodeError> {
        let (b, v) = (matrix.b(), matrix.v());
        let words = b.div_ceil(64).max(1);
        let mut masks = vec![vec![0u64; words]; v];
        for (e, row) in matrix.rows().iter().enumerate() {
            let mut sorted = row.to_vec();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(CodeError::NonInjectiveRow {
                    row: e,
                    message: w[0],
                });
            }
            for &m in row {
                masks[m][e / 64] |= 1 << (e % 64);
            }
        }
        let p_rule = vec![ratio(1, b as u64); b];
        let p_source = vec![ratio(1, matrix.k() as u64); matrix.k()];
        Ok(AuthCode {
            matrix,
            p_rule,
            p_source,
            masks,
            words,
        })
    }

    pub fn matrix(&self) -> &EncodingMatrix {
        &self.matrix
    }

    /// Number of encoding rules.
    pub fn b(&self) -> usize {
        self.matrix.b()
    }

    /// Number of source states.
    pub fn k(&self) -> usize {
        self.matrix.k()
    }

    /// Number of messages.
    pub fn v(&self) -> usize {
        self.matrix.v()
    }

    /// Probability of encoding rule `e` (uniform `1/b`).
    pub fn rule_prob(&self, e: usize) -> &BigRational {
        &self.p_rule[e]
    }

    /// Probability of source state `s` (equiprobable `1/k`).
    pub fn source_prob(&self, s: usize) -> &BigRational {
        &self.p_source[s]
    }

    fn popcount_and(&self, acc: &[u64], m: usize) -> u64 {
        acc.iter()
            .zip(&self.masks[m])
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    /// Exact deception probability for a spoofing attack of order `i`, with
    /// the default work limit.
    pub fn deception_probability(&self, i: usize) -> Result<BigRational, CodeError> {
        self.deception_probability_with_limit(i, DEFAULT_DECEPTION_WORK_LIMIT)
    }

    /// As [`AuthCode::deception_probability`], with an explicit ceiling on
    /// the number of subset tests (`C(v,i)·(v−i+1)`).
    pub fn deception_probability_with_limit(
        &self,
        i: usize,
        limit: u64,
    ) -> Result<BigRational, CodeError> {
        let (b, k, v) = (self.b(), self.k(), self.v());
        if i >= k {
            return Err(CodeError::OrderTooLarge { i, k });
        }
        let required = binomial(v, i) * BigUint::from(v - i + 1);
        if required > BigUint::from(limit) {
            return Err(CodeError::WorkLimit {
                i,
                required: required.to_u128().unwrap_or(u128::MAX),
                limit,
            });
        }

        // For each observed i-subset with nonzero weight, the opponent's best
        // injection is the extension contained in the most candidate rules;
        // the subset's weight divides out to cnt-independent 1/(b·C(k,i)).
        let mut total: u128 = 0;
        let full: Vec<u64> = full_mask(b, self.words);
        let mut in_subset = vec![false; v];
        for subset in subsets(v, i) {
            let mut acc = full.clone();
            for &m in &subset {
                for (slot, word) in acc.iter_mut().zip(&self.masks[m]) {
                    *slot &= word;
                }
            }
            if acc.iter().all(|&w| w == 0) {
                continue;
            }
            for &m in &subset {
                in_subset[m] = true;
            }
            let mut best = 0u64;
            for (m_new, &observed) in in_subset.iter().enumerate() {
                if !observed {
                    best = best.max(self.popcount_and(&acc, m_new));
                }
            }
            for &m in &subset {
                in_subset[m] = false;
            }
            total += best as u128;
        }

        let denom = BigUint::from(b) * binomial(k, i);
        Ok(ratio(
            BigInt::from(total),
            BigInt::from(denom),
        ))
    }

    /// The Massey floor for this code's parameters at order `i`.
    pub fn massey_floor(&self, i: usize) -> BigRational {
        massey_floor(self.v(), self.k(), i)
    }

    /// True iff the deception probability meets the Massey floor with exact
    /// equality for every order `i ≤ t`.
    pub fn is_tfold_secure(&self, t: usize) -> Result<bool, CodeError> {
        if t >= self.k() {
            return Err(CodeError::OrderTooLarge { i: t, k: self.k() });
        }
        for i in 0..=t {
            if self.deception_probability(i)? != self.massey_floor(i) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact posterior probability of source state `s` given that message
    /// `m` was observed:
    /// `p(s|m) = p_S(s)·Σ_{e: e(s)=m} p_E(e) / Σ_{e: m∈M(e)} p_E(e)·p_S(e⁻¹(m))`,
    /// evaluated literally over the stored distributions.
    pub fn posterior(&self, s: usize, m: usize) -> Result<BigRational, CodeError> {
        let (k, v) = (self.k(), self.v());
        if s >= k {
            return Err(CodeError::SourceOutOfRange { s, k });
        }
        if m >= v {
            return Err(CodeError::MessageOutOfRange { m, v });
        }
        let mut matching = BigRational::zero(); // Σ p_E over rules with e(s) = m
        let mut per_source = vec![BigRational::zero(); k]; // Σ p_E over rules with e(s') = m
        for (e, row) in self.matrix.rows().iter().enumerate() {
            for (s_prime, &msg) in row.iter().enumerate() {
                if msg == m {
                    per_source[s_prime] += &self.p_rule[e];
                    if s_prime == s {
                        matching += &self.p_rule[e];
                    }
                }
            }
        }
        let numer = &self.p_source[s] * matching;
        let mut denom = BigRational::zero();
        for (s_prime, sum) in per_source.into_iter().enumerate() {
            denom += &self.p_source[s_prime] * sum;
        }
        if denom.is_zero() {
            return Err(CodeError::UndefinedPosterior { m });
        }
        Ok(numer / denom)
    }

    /// Checks perfect secrecy: the observed message must tell the opponent
    /// nothing about the source state. Verified two ways, both exact: the
    /// joint/marginal equality `Σ_{e:e(s)=m} p_E(e) = Σ_{e:m∈M(e)}
    /// p_E(e)·p_S(e⁻¹(m))` for every (s, m), and the posterior criterion
    /// `p(s|m) = p_S(s)` for every s and every message that occurs at all.
    /// Under uniform keys both reduce to: each message appears equally often
    /// in every column.
    pub fn check_perfect_secrecy(&self) -> SecrecyReport {
        let (b, k, v) = (self.b(), self.k(), self.v());
        let mut counts = vec![vec![0u64; k]; v];
        for row in self.matrix.rows() {
            for (s, &m) in row.iter().enumerate() {
                counts[m][s] += 1;
            }
        }
        let mut violations = Vec::new();
        let mut posterior_violations = Vec::new();
        for (m, per_column) in counts.iter().enumerate() {
            let total: u64 = per_column.iter().sum();
            for (s, &count) in per_column.iter().enumerate() {
                // Joint/marginal equality: lhs = p(message m in column s),
                // rhs = p_M(m) under the source distribution.
                let lhs = ratio(count, b as u64);
                let rhs = ratio(total, (b * k) as u64);
                if lhs != rhs {
                    violations.push(SecrecyViolation {
                        source: s,
                        message: m,
                        lhs,
                        rhs,
                    });
                }
                if total > 0 {
                    let post = self
                        .posterior(s, m)
                        .expect("posterior defined: message occurs");
                    if post != self.p_source[s] {
                        posterior_violations.push(SecrecyViolation {
                            source: s,
                            message: m,
                            lhs: post,
                            rhs: self.p_source[s].clone(),
                        });
                    }
                }
            }
        }
        SecrecyReport {
            column_counts: counts,
            violations,
            posterior_violations,
        }
    }

    /// Diagnostic for secrecy of higher order `t*`: the posterior of an
    /// unordered set `S*` of `t*` source states given the unordered message
    /// set `M* = e(S*)`, against the flat prior `1/C(k,t*)`. The observation
    /// model matches the spoofing model: keys uniform, every t*-subset of a
    /// rule's messages equally observable. Reported, not asserted — design
    /// codes generally do not have secrecy above order 1.
    pub fn check_higher_secrecy(&self, t_star: usize) -> Result<HigherSecrecyReport, CodeError> {
        let k = self.k();
        if t_star == 0 || t_star > k {
            return Err(CodeError::BadStrength { t: t_star, k });
        }
        if t_star == k {
            // Only one source set exists; the posterior is trivially 1.
            return Ok(HigherSecrecyReport {
                t_star,
                pairs_checked: 0,
                violations: Vec::new(),
            });
        }
        let source_sets: Vec<Vec<usize>> = subsets(k, t_star).collect();
        // joint[M*][index of S*] and marginal[M*], as integer rule counts.
        let mut joint: HashMap<Vec<usize>, Vec<u64>> = HashMap::new();
        for row in self.matrix.rows() {
            for (idx, s_set) in source_sets.iter().enumerate() {
                let mut m_set: Vec<usize> = s_set.iter().map(|&s| row[s]).collect();
                m_set.sort_unstable();
                joint.entry(m_set).or_insert_with(|| vec![0; source_sets.len()])[idx] += 1;
            }
        }
        let prior = ratio(BigInt::one(), BigInt::from(binomial(k, t_star)));
        let mut violations = Vec::new();
        let mut pairs_checked = 0usize;
        for (m_set, per_source) in &joint {
            let total: u64 = per_source.iter().sum();
            for (idx, &count) in per_source.iter().enumerate() {
                pairs_checked += 1;
                let post = ratio(count, total);
                if post != prior {
                    violations.push(HigherSecrecyViolation {
                        source_set: source_sets[idx].clone(),
                        message_set: m_set.clone(),
                        posterior: post,
                        prior: prior.clone(),
                    });
                }
            }
        }
        violations.sort_by(|a, b| {
            (&a.message_set, &a.source_set).cmp(&(&b.message_set, &b.source_set))
        });
        Ok(HigherSecrecyReport {
            t_star,
            pairs_checked,
            violations,
        })
    }

    /// True iff the code meets the Massey–Schöbi floor with equality — the
    /// rule count is `C(v,t)/C(k,t)` — while being (t−1)-fold secure.
    pub fn is_optimal(&self, t: usize) -> Result<bool, CodeError> {
        let k = self.k();
        if t == 0 || t > k {
            return Err(CodeError::BadStrength { t, k });
        }
        let bound = massey_schobi_bound(self.v(), k, t);
        if BigRational::from_integer(BigInt::from(self.b())) != bound {
            return Ok(false);
        }
        self.is_tfold_secure(t - 1)
    }

    /// Assembles the full report for a target spoofing order: deception
    /// probabilities `P_d0..P_d(order)` with their Massey floors, the
    /// secrecy verdict, and optimality against the Massey–Schöbi bound at
    /// strength `order + 1`.
    pub fn security_report(
        &self,
        spoof_order: usize,
        work_limit: u64,
    ) -> Result<SecurityReport, CodeError> {
        let (b, k, v) = (self.b(), self.k(), self.v());
        if spoof_order >= k {
            return Err(CodeError::OrderTooLarge { i: spoof_order, k });
        }
        let t = spoof_order + 1;
        let mut deception = Vec::with_capacity(t);
        let mut floors = Vec::with_capacity(t);
        for i in 0..=spoof_order {
            deception.push(self.deception_probability_with_limit(i, work_limit)?);
            floors.push(self.massey_floor(i));
        }
        let t_fold_secure = deception.iter().zip(&floors).all(|(p, f)| p == f);
        let secrecy = self.check_perfect_secrecy();
        let bound = massey_schobi_bound(v, k, t);
        let optimal =
            BigRational::from_integer(BigInt::from(b)) == bound && t_fold_secure;

        let mut notes = Vec::new();
        let duplicates = self.duplicate_rule_pairs();
        if duplicates > 0 {
            notes.push(format!(
                "{duplicates} pair(s) of identical encoding rules present"
            ));
        }
        if k == v {
            notes.push("every message is always valid (k = v); authentication is vacuous".into());
        }

        Ok(SecurityReport {
            b,
            k,
            v,
            spoof_order,
            deception,
            massey_floor: floors,
            t_fold_secure,
            secrecy,
            bound,
            optimal,
            notes,
        })
    }

    fn duplicate_rule_pairs(&self) -> usize {
        let mut sorted: Vec<&Vec<usize>> = self.matrix.rows().iter().collect();
        sorted.sort();
        sorted.windows(2).filter(|w| w[0] == w[1]).count()
    }
}

fn full_mask(bits: usize, words: usize) -> Vec<u64> {
    let mut mask = vec![u64::MAX; words];
    let tail = bits % 64;
    if tail != 0 {
        mask[words - 1] = (1u64 << tail) - 1;
    }
    mask
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// One (source, message) pair at which an exact secrecy equality fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecrecyViolation {
    pub source: usize,
    pub message: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

/// Outcome of [`AuthCode::check_perfect_secrecy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecrecyReport {
    /// `column_counts[m][s]` = number of rules with `e(s) = m`.
    pub column_counts: Vec<Vec<u64>>,
    /// Failures of the joint/marginal equality.
    pub violations: Vec<SecrecyViolation>,
    /// Failures of the posterior criterion `p(s|m) = p_S(s)`.
    pub posterior_violations: Vec<SecrecyViolation>,
}

impl SecrecyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.posterior_violations.is_empty()
    }
}

/// One (source set, message set) pair at which the higher-order posterior
/// deviates from the prior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherSecrecyViolation {
    pub source_set: Vec<usize>,
    pub message_set: Vec<usize>,
    pub posterior: BigRational,
    pub prior: BigRational,
}

/// Outcome of [`AuthCode::check_higher_secrecy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherSecrecyReport {
    pub t_star: usize,
    pub pairs_checked: usize,
    pub violations: Vec<HigherSecrecyViolation>,
}

impl HigherSecrecyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The full verification report for a code at a target spoofing order.
#[derive(Debug, Clone)]
pub struct SecurityReport {
    pub b: usize,
    pub k: usize,
    pub v: usize,
    pub spoof_order: usize,
    /// `deception[i]` = exact P_di for `i = 0..=spoof_order`.
    pub deception: Vec<BigRational>,
    /// `massey_floor[i]` = `(k−i)/(v−i)`.
    pub massey_floor: Vec<BigRational>,
    /// All computed deception probabilities meet their floors exactly.
    pub t_fold_secure: bool,
    pub secrecy: SecrecyReport,
    /// Massey–Schöbi floor on `b` at strength `spoof_order + 1`.
    pub bound: BigRational,
    /// `b` equals the bound and the code is `spoof_order`-fold secure.
    pub optimal: bool,
    pub notes: Vec<String>,
}

impl SecurityReport {
    /// True iff every requested check passed: floors met exactly, perfect
    /// secrecy, and optimality.
    pub fn all_pass(&self) -> bool {
        self.t_fold_secure && self.secrecy.ok() && self.optimal
    }

    /// JSON form: rationals as `{"num":…,"den":…}` string pairs (display
    /// renderings are left to front ends).
    pub fn to_json(&self) -> serde_json::Value {
        let rat = |r: &BigRational| {
            serde_json::json!({
                "num": r.numer().to_string(),
                "den": r.denom().to_string(),
            })
        };
        serde_json::json!({
            "b": self.b,
            "k": self.k,
            "v": self.v,
            "spoof_order": self.spoof_order,
            "deception": self.deception.iter().map(rat).collect::<Vec<_>>(),
            "massey_floor": self.massey_floor.iter().map(rat).collect::<Vec<_>>(),
            "t_fold_secure": self.t_fold_secure,
            "secrecy_ok": self.secrecy.ok(),
            "secrecy_violations": self.secrecy.violations.len()
                + self.secrecy.posterior_violations.len(),
            "bound": rat(&self.bound),
            "optimal": self.optimal,
            "all_pass": self.all_pass(),
            "notes": self.notes,
        })
    }
}

/// Renders an exact rational with a rounded decimal approximation for human
/// output, e.g. `3/7 (~0.428571)`.
pub fn display_rational(r: &BigRational) -> String {
    let approx = r
        .numer()
        .to_f64()
        .zip(r.denom().to_f64())
        .map(|(n, d)| n / d);
    match approx {
        Some(x) if r.denom() != &BigInt::one() => format!("{}/{} (~{:.6})", r.numer(), r.denom(), x),
        _ => format!("{}", r.numer()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::geometry::{pg_lines, spherical_design};
    use crate::designs::{lambda_s, Design};
    use crate::ordering::order_blocks;
    use proptest::prelude::*;

    fn code_of(design: &Design) -> AuthCode {
        AuthCode::new(order_blocks(design).unwrap()).unwrap()
    }

    fn fano_code() -> AuthCode {
        code_of(&pg_lines(2, 2).unwrap())
    }

    fn mobius_code() -> AuthCode {
        code_of(&spherical_design(3, 2).unwrap())
    }

    #[test]
    fn build_rejects_non_injective_rows() {
        let matrix = EncodingMatrix::new(4, vec![vec![0, 1], vec![2, 2]]).unwrap();
        assert!(matches!(
            AuthCode::new(matrix).unwrap_err(),
            CodeError::NonInjectiveRow { row: 1, message: 2 }
        ));
    }

    #[test]
    fn degenerate_single_cell_code() {
        let code = AuthCode::new(EncodingMatrix::new(1, vec![vec![0]]).unwrap()).unwrap();
        assert_eq!((code.b(), code.k(), code.v()), (1, 1, 1));
        assert_eq!(code.deception_probability(0).unwrap(), ratio(1, 1));
        assert!(code.check_perfect_secrecy().ok());
    }

    #[test]
    fn fano_deception_probabilities() {
        let code = fano_code();
        assert_eq!(code.rule_prob(0), &ratio(1, 7));
        assert_eq!(code.deception_probability(0).unwrap(), ratio(3, 7));
        assert_eq!(code.deception_probability(1).unwrap(), ratio(1, 3));
        // After two observed messages the third point of the line is forced.
        assert_eq!(code.deception_probability(2).unwrap(), ratio(1, 1));
        assert!(code.is_tfold_secure(1).unwrap());
        assert!(!code.is_tfold_secure(2).unwrap());
        assert!(matches!(
            code.deception_probability(3).unwrap_err(),
            CodeError::OrderTooLarge { i: 3, k: 3 }
        ));
    }

    #[test]
    fn mobius_deception_probabilities() {
        let code = mobius_code();
        assert_eq!(code.deception_probability(0).unwrap(), ratio(2, 5));
        assert_eq!(code.deception_probability(1).unwrap(), ratio(1, 3));
        assert_eq!(code.deception_probability(2).unwrap(), ratio(1, 4));
        assert!(code.is_tfold_secure(2).unwrap());
    }

    #[test]
    fn all_subsets_code_meets_every_floor() {
        // Rules = all k-subsets of v messages (as sorted rows): deception
        // probability telescopes to the floor at every order.
        let rows: Vec<Vec<usize>> = subsets(6, 3).collect();
        let code = AuthCode::new(EncodingMatrix::new(6, rows).unwrap()).unwrap();
        for i in 0..3 {
            assert_eq!(
                code.deception_probability(i).unwrap(),
                massey_floor(6, 3, i),
                "order {i}"
            );
        }
    }

    #[test]
    fn closed_form_cross_check_on_design_codes() {
        // Independent formula for design codes: P_di = C(v,i)·λ_{i+1} /
        // (b·C(k,i)) for i below the design strength.
        for design in [
            pg_lines(2, 2).unwrap(),
            spherical_design(3, 2).unwrap(),
            crate::designs::triples::sts_cyclic(13).unwrap(),
        ] {
            let code = code_of(&design);
            for i in 0..design.t() {
                let lam = lambda_s(design.t(), design.v(), design.k(), design.lambda(), i + 1)
                    .unwrap();
                let expected = ratio(
                    BigInt::from(binomial(design.v(), i) * lam),
                    BigInt::from(BigUint::from(design.b()) * binomial(design.k(), i)),
                );
                assert_eq!(
                    code.deception_probability(i).unwrap(),
                    expected,
                    "design {:?} order {i}",
                    (design.t(), design.v(), design.k())
                );
            }
        }
    }

    #[test]
    fn work_limit_is_enforced() {
        let code = mobius_code();
        let err = code.deception_probability_with_limit(2, 10).unwrap_err();
        assert!(matches!(err, CodeError::WorkLimit { i: 2, .. }));
    }

    #[test]
    fn secrecy_passes_on_ordered_design_codes() {
        for code in [fano_code(), mobius_code()] {
            let report = code.check_perfect_secrecy();
            assert!(report.ok());
            let per_column = code.b() as u64 / code.v() as u64;
            for m in 0..code.v() {
                for s in 0..code.k() {
                    assert_eq!(report.column_counts[m][s], per_column);
                }
            }
        }
    }

    #[test]
    fn secrecy_fails_on_sorted_blocks() {
        let fano = pg_lines(2, 2).unwrap();
        let sorted = EncodingMatrix::new(7, fano.blocks().to_vec()).unwrap();
        let code = AuthCode::new(sorted).unwrap();
        let report = code.check_perfect_secrecy();
        assert!(!report.ok());
        assert!(!report.violations.is_empty());
        assert!(!report.posterior_violations.is_empty());
    }

    #[test]
    fn posteriors_on_design_codes() {
        let code = fano_code();
        for m in 0..7 {
            for s in 0..3 {
                assert_eq!(code.posterior(s, m).unwrap(), ratio(1, 3));
            }
        }
        let code = mobius_code();
        assert_eq!(code.posterior(2, 5).unwrap(), ratio(1, 4));

        // Deterministic single-rule code: the posterior collapses.
        let single = AuthCode::new(EncodingMatrix::new(2, vec![vec![0, 1]]).unwrap()).unwrap();
        assert_eq!(single.posterior(0, 0).unwrap(), ratio(1, 1));
        assert_eq!(single.posterior(1, 0).unwrap(), ratio(0, 1));
        assert!(matches!(
            single.posterior(0, 5).unwrap_err(),
            CodeError::MessageOutOfRange { m: 5, .. }
        ));
    }

    #[test]
    fn undefined_posterior_is_an_error() {
        // Message 3 exists in the range but no rule ever emits it.
        let matrix = EncodingMatrix::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        let code = AuthCode::new(matrix).unwrap();
        assert!(matches!(
            code.posterior(0, 3).unwrap_err(),
            CodeError::UndefinedPosterior { m: 3 }
        ));
    }

    #[test]
    fn higher_secrecy_coincides_with_perfect_secrecy_at_order_one() {
        for code in [fano_code(), mobius_code()] {
            let report = code.check_higher_secrecy(1).unwrap();
            assert_eq!(report.ok(), code.check_perfect_secrecy().ok());
            assert!(report.ok());
        }
        // The sorted-Fano code fails at t* = 1 just as it fails secrecy.
        let fano = pg_lines(2, 2).unwrap();
        let sorted = AuthCode::new(EncodingMatrix::new(7, fano.blocks().to_vec()).unwrap()).unwrap();
        assert!(!sorted.check_higher_secrecy(1).unwrap().ok());
    }

    #[test]
    fn higher_secrecy_is_reported_not_asserted() {
        // Design codes are not expected to be secret at order 2; the
        // diagnostic just reports what brute force finds.
        let report = fano_code().check_higher_secrecy(2).unwrap();
        assert_eq!(report.t_star, 2);
        assert!(report.pairs_checked > 0);
    }

    #[test]
    fn bounds_and_optimality() {
        assert_eq!(massey_schobi_bound(7, 3, 2), ratio(7, 1));
        assert_eq!(massey_schobi_bound(10, 4, 3), ratio(30, 1));
        assert_eq!(massey_schobi_bound(12, 6, 5), ratio(132, 1));
        assert!(fano_code().is_optimal(2).unwrap());
        assert!(mobius_code().is_optimal(3).unwrap());
        // All 3-subsets of 6 messages: 20 rules, far above the bound C(6,1)/C(3,1) = 2 at t=1.
        let rows: Vec<Vec<usize>> = subsets(6, 3).collect();
        let code = AuthCode::new(EncodingMatrix::new(6, rows).unwrap()).unwrap();
        assert!(!code.is_optimal(1).unwrap());
        assert!(matches!(
            code.is_optimal(0).unwrap_err(),
            CodeError::BadStrength { .. }
        ));
    }

    #[test]
    fn security_report_for_fano() {
        let report = fano_code().security_report(1, DEFAULT_DECEPTION_WORK_LIMIT).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.deception, vec![ratio(3, 7), ratio(1, 3)]);
        assert_eq!(report.bound, ratio(7, 1));
        let json = report.to_json();
        assert_eq!(json["deception"][0]["num"], "3");
        assert_eq!(json["deception"][0]["den"], "7");
        assert_eq!(json["optimal"], true);
    }

    #[test]
    fn duplicate_rules_break_optimality_and_are_noted() {
        let fano = pg_lines(2, 2).unwrap();
        let mut rows = order_blocks(&fano).unwrap().rows().to_vec();
        rows.push(rows[0].clone()); // forged duplicate rule
        let code = AuthCode::new(EncodingMatrix::new(7, rows).unwrap()).unwrap();
        let report = code.security_report(1, DEFAULT_DECEPTION_WORK_LIMIT).unwrap();
        assert!(!report.optimal);
        assert!(!report.all_pass());
        assert!(report.notes.iter().any(|n| n.contains("identical")));
    }

    #[test]
    fn display_rational_renders() {
        assert_eq!(display_rational(&ratio(3, 7)), "3/7 (~0.428571)");
        assert_eq!(display_rational(&ratio(14, 2)), "7");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        /// The Massey floor holds for arbitrary codes, not only designs.
        #[test]
        fn massey_bound_is_universal(
            (v, k, rows) in (1usize..=4)
                .prop_flat_map(|k| ((k..=10usize), Just(k)))
                .prop_flat_map(|(v, k)| {
                    let row = proptest::sample::subsequence((0..v).collect::<Vec<_>>(), k)
                        .prop_shuffle();
                    (Just(v), Just(k), proptest::collection::vec(row, 1..=15))
                })
        ) {
            let code = AuthCode::new(EncodingMatrix::new(v, rows).unwrap()).unwrap();
            for i in 0..k {
                let p = code.deception_probability(i).unwrap();
                prop_assert!(p >= massey_floor(v, k, i), "P_d{i} = {p} below floor");
                prop_assert!(p <= ratio(1, 1));
            }
        }
    }
}
