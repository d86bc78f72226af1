//! Arithmetic in small finite fields GF(p^n) and the projective line over them.
//!
//! A field is described by a [`FieldSpec`]: a prime `p`, a degree `n`, and a
//! monic irreducible modulus of degree `n` over GF(p). Elements are residue
//! classes of polynomials, stored as coefficient vectors of length `n`
//! (ascending powers). The modulus is chosen deterministically — the
//! lexicographically smallest monic irreducible when candidates are ordered by
//! the integer `sum(c_i * p^i)` over their non-leading coefficients — so the
//! same `(p, n)` always yields the same field tables and the same downstream
//! block sets.
//!
//! On top of the field sits the projective line `GF(q) ∪ {∞}`
//! ([`ProjPoint`], [`projective_line`]) and the group of fractional linear
//! maps `x ↦ (ax + b)/(cx + d)` with `ad − bc ≠ 0` ([`FracLinearMap`],
//! [`pgl2`], [`psl2`]). Maps are kept in a canonical form (first nonzero
//! coefficient of `(a, b, c, d)` scaled to 1) so that equal group elements
//! compare equal.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order for which tables will be built. Everything in this
/// crate works on desk-sized geometries; refusing absurd orders up front is
/// friendlier than a multi-hour enumeration.
pub const MAX_FIELD_ORDER: u128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    OrderTooLarge(u128),
    #[error("operands belong to different fields")]
    MismatchedFields,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("coefficient matrix is singular (ad - bc = 0)")]
    SingularMap,
}

// ---------------------------------------------------------------------------
// Polynomial helpers over GF(p)
//
// Polynomials are coefficient vectors in ascending powers with no trailing
// zeros (the zero polynomial is the empty vector). Coefficients live in
// [0, p). These are private plumbing for the residue arithmetic below.
// ---------------------------------------------------------------------------

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Inverse of `a` modulo the prime `p`, by the extended Euclidean algorithm.
fn scalar_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out = vec![0u64; len];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    trim(out)
}

fn poly_scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|x| x * c % p).collect())
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    poly_add(a, &poly_scale(b, p - 1, p), p)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b` over GF(p). `b` must be nonzero.
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    debug_assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    let lead_inv = scalar_inv(*b.last().unwrap(), p);
    for shift in (0..quot.len()).rev() {
        let coeff = rem[shift + b.len() - 1] * lead_inv % p;
        if coeff == 0 {
            continue;
        }
        quot[shift] = coeff;
        for (j, &bj) in b.iter().enumerate() {
            let idx = shift + j;
            rem[idx] = (rem[idx] + p - coeff * bj % p) % p;
        }
    }
    (trim(quot), trim(rem))
}

/// Inverse of `a` modulo the monic polynomial `f` over GF(p), or `None` when
/// `gcd(a, f)` is not constant. With `f` irreducible this only happens for
/// `a = 0`.
fn poly_inverse(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = f.to_vec();
    let mut r1 = trim(a.to_vec());
    if r1.is_empty() {
        return None;
    }
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    if r0.len() != 1 {
        return None;
    }
    Some(poly_scale(&t0, scalar_inv(r0[0], p), p))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Field specification
// ---------------------------------------------------------------------------

#[derive(Debug, PartialEq, Eq, Hash)]
struct SpecData {
    p: u64,
    n: usize,
    /// Monic modulus of degree `n`, ascending coefficients, length `n + 1`.
    modulus: Vec<u64>,
}

/// An immutable description of GF(p^n), shared by the elements it produces.
///
/// Two specs compare equal exactly when they describe the same field with the
/// same modulus, so elements from independently constructed specs for the same
/// `(p, n)` interoperate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec(Arc<SpecData>);

impl FieldSpec {
    /// Builds GF(p^n), selecting the modulus deterministically as described in
    /// the module docs.
    pub fn new(p: u64, n: usize) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if order > MAX_FIELD_ORDER {
            return Err(FieldError::OrderTooLarge(order));
        }
        let modulus = smallest_irreducible(p, n);
        Ok(FieldSpec(Arc::new(SpecData { p, n, modulus })))
    }

    pub fn prime(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// Number of elements, `p^n`.
    pub fn order(&self) -> u64 {
        self.0.p.pow(self.0.n as u32)
    }

    /// The modulus as ascending coefficients; length `degree() + 1`, leading
    /// coefficient 1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// The element whose coefficient vector is the base-`p` digit expansion of
    /// `index`. Indices `0..order()` enumerate the field; 0 is zero and 1 is
    /// one.
    ///
    /// # Panics
    /// Panics if `index >= order()`.
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.order(), "element index out of range");
        let mut coeffs = vec![0u64; self.0.n];
        let mut rest = index;
        for c in coeffs.iter_mut() {
            *c = rest % self.0.p;
            rest /= self.0.p;
        }
        FieldElement {
            spec: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }
}

/// Returns the lexicographically smallest monic irreducible of degree `n`
/// over GF(p), where candidates are ordered by the integer value of their
/// non-leading coefficient digits.
fn smallest_irreducible(p: u64, n: usize) -> Vec<u64> {
    let count = p.pow(n as u32);
    for m in 0..count {
        let mut coeffs = vec![0u64; n + 1];
        let mut rest = m;
        for c in coeffs.iter_mut().take(n) {
            *c = rest % p;
            rest /= p;
        }
        coeffs[n] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of every degree exists over every prime field")
}

/// Trial division by all monic polynomials of degree 1..=n/2. Fine at the
/// orders this crate supports.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for m in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut rest = m;
            for c in g.iter_mut().take(d) {
                *c = rest % p;
                rest /= p;
            }
            g[d] = 1;
            let (_, r) = poly_divrem(f, &g, p);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

/// An element of the field described by its [`FieldSpec`].
///
/// Binary operations return [`FieldError::MismatchedFields`] when the
/// operands come from different specs rather than silently mixing tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    /// Length `spec.degree()`, entries in `[0, p)`, ascending powers.
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Coefficients in ascending powers, length `spec().degree()`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Position of this element in the canonical enumeration:
    /// `sum(coeffs[i] * p^i)`.
    pub fn index(&self) -> u64 {
        let p = self.spec.prime();
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_spec(&self, rhs: &FieldElement) -> Result<(), FieldError> {
        if self.spec == rhs.spec {
            Ok(())
        } else {
            Err(FieldError::MismatchedFields)
        }
    }

    fn from_poly(spec: &FieldSpec, poly: Vec<u64>) -> FieldElement {
        let mut coeffs = poly;
        coeffs.resize(spec.degree(), 0);
        FieldElement {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_spec(rhs)?;
        let p = self.spec.prime();
        let sum = poly_add(&self.coeffs, &rhs.coeffs, p);
        Ok(FieldElement::from_poly(&self.spec, sum))
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_spec(rhs)?;
        let p = self.spec.prime();
        let prod = poly_mul(&self.coeffs, &rhs.coeffs, p);
        let (_, rem) = poly_divrem(&prod, self.spec.modulus(), p);
        Ok(FieldElement::from_poly(&self.spec, rem))
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.spec.prime();
        FieldElement::from_poly(&self.spec, poly_scale(&self.coeffs, p - 1, p))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        let p = self.spec.prime();
        match poly_inverse(&self.coeffs, self.spec.modulus(), p) {
            Some(inv) => Ok(FieldElement::from_poly(&self.spec, inv)),
            None => Err(FieldError::ZeroInverse),
        }
    }

    /// Repeated-squaring power; `a.pow(0)` is one even for `a = 0`.
    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same spec");
            }
            base = base.mul(&base).expect("same spec");
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldElement {
    /// Renders as the index digits, e.g. `3` for `x + 1` over GF(2).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

// ---------------------------------------------------------------------------
// Projective line and fractional linear maps
// ---------------------------------------------------------------------------

/// A point of the projective line over some field: a field element or the
/// point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(FieldElement),
    Infinity,
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// The `q + 1` points of the projective line: the field elements in index
/// order followed by `∞`. Downstream code relies on this ordering to assign
/// stable integer labels (element index for finite points, `q` for `∞`).
pub fn projective_line(spec: &FieldSpec) -> Vec<ProjPoint> {
    let mut points: Vec<ProjPoint> = spec.elements().map(ProjPoint::Finite).collect();
    points.push(ProjPoint::Infinity);
    points
}

/// The fractional linear map `x ↦ (ax + b)/(cx + d)` with `ad − bc ≠ 0`,
/// acting on the projective line over the coefficients' field.
///
/// Coefficient tuples that differ by a nonzero scalar describe the same map;
/// construction normalizes the first nonzero coefficient of `(a, b, c, d)` to
/// 1, so derived equality and hashing agree with equality of group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FracLinearMap {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

impl FracLinearMap {
    pub fn new(
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
    ) -> Result<FracLinearMap, FieldError> {
        a.check_spec(&b)?;
        a.check_spec(&c)?;
        a.check_spec(&d)?;
        let det = a.mul(&d)?.sub(&b.mul(&c)?)?;
        if det.is_zero() {
            return Err(FieldError::SingularMap);
        }
        Ok(FracLinearMap { a, b, c, d }.canonical())
    }

    fn canonical(self) -> FracLinearMap {
        let lead = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("a map with ad - bc != 0 has a nonzero coefficient")
            .clone();
        let s = lead.inv().expect("nonzero element");
        let scale = |x: &FieldElement| x.mul(&s).expect("same spec");
        FracLinearMap {
            a: scale(&self.a),
            b: scale(&self.b),
            c: scale(&self.c),
            d: scale(&self.d),
        }
    }

    pub fn identity(spec: &FieldSpec) -> FracLinearMap {
        FracLinearMap {
            a: spec.one(),
            b: spec.zero(),
            c: spec.zero(),
            d: spec.one(),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        self.a.spec()
    }

    /// Canonical coefficients `(a, b, c, d)`.
    pub fn coefficients(&self) -> (&FieldElement, &FieldElement, &FieldElement, &FieldElement) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// Determinant `ad − bc` of the canonical coefficients.
    pub fn det(&self) -> FieldElement {
        self.a
            .mul(&self.d)
            .and_then(|ad| ad.sub(&self.b.mul(&self.c)?))
            .expect("same spec")
    }

    /// Applies the map. Conventions at the poles: a finite `x` with
    /// `cx + d = 0` goes to `∞`; `∞` goes to `a/c` when `c ≠ 0` and to `∞`
    /// when `c = 0`.
    pub fn apply(&self, point: &ProjPoint) -> ProjPoint {
        match point {
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(
                        self.a.mul(&self.c.inv().expect("nonzero")).expect("same spec"),
                    )
                }
            }
            ProjPoint::Finite(x) => {
                let num = self.a.mul(x).and_then(|ax| ax.add(&self.b)).expect("same spec");
                let den = self.c.mul(x).and_then(|cx| cx.add(&self.d)).expect("same spec");
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(num.mul(&den.inv().expect("nonzero")).expect("same spec"))
                }
            }
        }
    }

    /// The composite `self ∘ other` (apply `other` first), via the 2×2 matrix
    /// product.
    pub fn compose(&self, other: &FracLinearMap) -> Result<FracLinearMap, FieldError> {
        self.a.check_spec(&other.a)?;
        let mul = |x: &FieldElement, y: &FieldElement| x.mul(y).expect("same spec");
        let add = |x: FieldElement, y: FieldElement| x.add(&y).expect("same spec");
        Ok(FracLinearMap {
            a: add(mul(&self.a, &other.a), mul(&self.b, &other.c)),
            b: add(mul(&self.a, &other.b), mul(&self.b, &other.d)),
            c: add(mul(&self.c, &other.a), mul(&self.d, &other.c)),
            d: add(mul(&self.c, &other.b), mul(&self.d, &other.d)),
        }
        .canonical())
    }

    /// The inverse map, from the adjugate matrix `(d, −b; −c, a)`.
    pub fn inverse(&self) -> FracLinearMap {
        FracLinearMap {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
        .canonical()
    }
}

/// All of PGL(2, q): the `q³ − q` fractional linear maps over the given
/// field, each in canonical form, enumerated in coefficient-index order.
pub fn pgl2(spec: &FieldSpec) -> Vec<FracLinearMap> {
    let q = spec.order();
    let elems: Vec<FieldElement> = spec.elements().collect();
    let mut maps = Vec::with_capacity((q * q * q - q) as usize);
    for quad in 0..q * q * q * q {
        let di = quad % q;
        let ci = quad / q % q;
        let bi = quad / (q * q) % q;
        let ai = quad / (q * q * q);
        // Keep only tuples already in canonical form: the first nonzero
        // coordinate must be 1. This visits each map exactly once.
        let first = [ai, bi, ci, di].into_iter().find(|&x| x != 0);
        if first != Some(1) {
            continue;
        }
        let (a, b, c, d) = (&elems[ai as usize], &elems[bi as usize], &elems[ci as usize], &elems[di as usize]);
        let det = a.mul(d).and_then(|ad| ad.sub(&b.mul(c)?)).expect("same spec");
        if det.is_zero() {
            continue;
        }
        maps.push(FracLinearMap {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            d: d.clone(),
        });
    }
    maps
}

/// The subgroup PSL(2, q) of [`pgl2`]: maps whose canonical determinant is a
/// nonzero square. For even `q` every element is a square and PSL = PGL; for
/// odd `q` this keeps exactly half the maps.
///
/// Squareness of the determinant is well-defined on canonical forms: rescaling
/// the coefficients by `s` rescales the determinant by `s²`.
pub fn psl2(spec: &FieldSpec) -> Vec<FracLinearMap> {
    let squares: std::collections::HashSet<u64> = spec
        .elements()
        .filter(|x| !x.is_zero())
        .map(|x| x.mul(&x).expect("same spec").index())
        .collect();
    pgl2(spec)
        .into_iter()
        .filter(|m| squares.contains(&m.det().index()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldSpec::new(1, 1).unwrap_err(), FieldError::NotPrime(1));
        assert_eq!(FieldSpec::new(2, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(
            FieldSpec::new(2, 40).unwrap_err(),
            FieldError::OrderTooLarge(_)
        ));
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf4_modulus_and_arithmetic() {
        let f = FieldSpec::new(2, 2).unwrap();
        // x² + x + 1 is the only monic irreducible quadratic over GF(2).
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.element(2);
        // x * x = x + 1 (index 3), x * (x + 1) = 1.
        assert_eq!(x.mul(&x).unwrap().index(), 3);
        assert_eq!(x.mul(&f.element(3)).unwrap().index(), 1);
        assert_eq!(x.inv().unwrap().index(), 3);
    }

    /// Independent oracle for the GF(9) modulus: among the nine candidates
    /// x² + c1·x + c0, the chosen one must be the first (in the enumeration
    /// order) with no root in GF(3), and for quadratics rootlessness is
    /// equivalent to irreducibility.
    #[test]
    fn gf9_modulus_matches_root_check_oracle() {
        let expected = (0u64..9)
            .map(|m| vec![m % 3, m / 3 % 3, 1])
            .find(|f| {
                (0u64..3).all(|x| (f[2] * x * x + f[1] * x + f[0]) % 3 != 0)
            })
            .unwrap();
        assert_eq!(expected, vec![1, 0, 1]); // x² + 1
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.modulus(), expected.as_slice());
    }

    #[test]
    fn gf16_modulus() {
        let f = FieldSpec::new(2, 4).unwrap();
        // x⁴ + x + 1; the smaller candidates by the digit ordering are all
        // divisible by x or x + 1 or x² + x + 1.
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn element_index_round_trip() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 4)] {
            let f = FieldSpec::new(p, n).unwrap();
            for i in 0..f.order() {
                assert_eq!(f.element(i).index(), i);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            let f = FieldSpec::new(p, n).unwrap();
            let elems: Vec<FieldElement> = f.elements().collect();
            for a in &elems {
                // Additive inverse.
                assert!(a.add(&a.neg()).unwrap().is_zero());
                // Multiplicative identity and inverse.
                assert_eq!(&a.mul(&f.one()).unwrap(), a);
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), f.one());
                } else {
                    assert_eq!(a.inv().unwrap_err(), FieldError::ZeroInverse);
                }
                for b in &elems {
                    // Commutativity.
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for c in &elems {
                        // Associativity and distributivity.
                        assert_eq!(
                            a.add(b).unwrap().add(c).unwrap(),
                            a.add(&b.add(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.mul(b).unwrap().mul(c).unwrap(),
                            a.mul(&b.mul(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.mul(&b.add(c).unwrap()).unwrap(),
                            a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_spec_operations_error() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(
            f2.one().add(&f3.one()).unwrap_err(),
            FieldError::MismatchedFields
        );
        // Equal parameters from separate constructions interoperate.
        let f2b = FieldSpec::new(2, 1).unwrap();
        assert!(f2.one().add(&f2b.one()).unwrap().is_zero());
    }

    #[test]
    fn projective_line_has_q_plus_one_points() {
        for (p, n, q) in [(2, 1, 2), (3, 1, 3), (2, 2, 4), (3, 2, 9)] {
            let f = FieldSpec::new(p, n).unwrap();
            let line = projective_line(&f);
            assert_eq!(line.len(), q + 1);
            assert_eq!(line.last(), Some(&ProjPoint::Infinity));
        }
    }

    #[test]
    fn apply_conventions_at_infinity() {
        let f = FieldSpec::new(3, 1).unwrap();
        // x ↦ 1/x over GF(3): swaps 0 and ∞, fixes 1 and 2 (2·2 = 1).
        let inv_map = FracLinearMap::new(f.zero(), f.one(), f.one(), f.zero()).unwrap();
        assert_eq!(inv_map.apply(&ProjPoint::Infinity), ProjPoint::Finite(f.zero()));
        assert_eq!(inv_map.apply(&ProjPoint::Finite(f.zero())), ProjPoint::Infinity);
        assert_eq!(
            inv_map.apply(&ProjPoint::Finite(f.element(2))),
            ProjPoint::Finite(f.element(2))
        );
        // Affine map x ↦ x + 1 fixes ∞.
        let shift = FracLinearMap::new(f.one(), f.one(), f.zero(), f.one()).unwrap();
        assert_eq!(shift.apply(&ProjPoint::Infinity), ProjPoint::Infinity);
    }

    #[test]
    fn singular_map_rejected() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(
            FracLinearMap::new(f.element(2), f.element(4), f.one(), f.element(2)).unwrap_err(),
            FieldError::SingularMap
        );
    }

    #[test]
    fn canonical_form_identifies_scalar_multiples() {
        let f = FieldSpec::new(5, 1).unwrap();
        let m1 = FracLinearMap::new(f.element(1), f.element(2), f.element(3), f.element(4)).unwrap();
        // Same map scaled through by 2: (2, 4, 6, 8) ≡ (2, 4, 1, 3).
        let m2 = FracLinearMap::new(f.element(2), f.element(4), f.element(1), f.element(3)).unwrap();
        assert_eq!(m1, m2);
        let (a, ..) = m1.coefficients();
        assert_eq!(a.index(), 1);
    }

    #[test]
    fn pgl2_group_orders() {
        for (p, n, expect) in [(2, 1, 6), (3, 1, 24), (2, 2, 60), (5, 1, 120), (3, 2, 720)] {
            let f = FieldSpec::new(p, n).unwrap();
            assert_eq!(pgl2(&f).len(), expect, "PGL(2,{})", f.order());
        }
    }

    #[test]
    fn psl2_group_orders() {
        // Index 2 in PGL for odd q, everything for even q.
        for (p, n, expect) in [(2, 1, 6), (2, 2, 60), (3, 1, 12), (5, 1, 60), (11, 1, 660)] {
            let f = FieldSpec::new(p, n).unwrap();
            assert_eq!(psl2(&f).len(), expect, "PSL(2,{})", f.order());
        }
    }

    #[test]
    fn maps_are_distinct_permutations() {
        // Canonical forms are pairwise distinct AND induce pairwise distinct
        // permutations of the line (the action is faithful).
        let f = FieldSpec::new(3, 2).unwrap();
        let line = projective_line(&f);
        let maps = pgl2(&f);
        let mut actions = std::collections::HashSet::new();
        for m in &maps {
            let perm: Vec<ProjPoint> = line.iter().map(|pt| m.apply(pt)).collect();
            assert!(actions.insert(perm));
        }
        assert_eq!(actions.len(), 720);
    }

    #[test]
    fn group_closure_inverse_identity() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = FieldSpec::new(p, n).unwrap();
            let maps = pgl2(&f);
            let index_of: std::collections::HashMap<FracLinearMap, usize> =
                maps.iter().cloned().zip(0..).collect();
            let id = FracLinearMap::identity(&f);
            assert!(index_of.contains_key(&id));
            for m in &maps {
                // Inverse is in the group and composes to the identity.
                let minv = m.inverse();
                assert!(index_of.contains_key(&minv));
                assert_eq!(m.compose(&minv).unwrap(), id);
                assert_eq!(minv.compose(m).unwrap(), id);
            }
            // Closure under composition.
            for m1 in &maps {
                for m2 in &maps {
                    assert!(index_of.contains_key(&m1.compose(m2).unwrap()));
                }
            }
        }
    }

    #[test]
    fn apply_agrees_with_compose() {
        let f = FieldSpec::new(5, 1).unwrap();
        let line = projective_line(&f);
        let m1 = FracLinearMap::new(f.element(2), f.one(), f.element(3), f.one()).unwrap();
        let m2 = FracLinearMap::new(f.one(), f.element(2), f.zero(), f.one()).unwrap();
        let m12 = m1.compose(&m2).unwrap();
        for pt in &line {
            assert_eq!(m12.apply(pt), m1.apply(&m2.apply(pt)));
        }
    }
}
