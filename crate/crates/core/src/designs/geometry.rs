//! Designs from finite geometry: lines of projective spaces PG(d, q),
//! orbit closures under permutation groups, and the spherical geometries
//! 3-(q^d + 1, q + 1, 1) as orbits of a subline under PGL(2, q^d).

use std::collections::{HashMap, HashSet};

use crate::field::{pgl2, projective_line, FieldSpec, FracLinearMap, ProjPoint};

use super::{Design, DesignError, Permutation};

/// Decomposes `q` as `p^n` with `p` prime, or reports that `q` is not a
/// prime power.
pub fn prime_power(q: u64) -> Result<(u64, usize), DesignError> {
    if q < 2 {
        return Err(DesignError::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a prime factor");
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    if rest == 1 {
        Ok((p, n))
    } else {
        Err(DesignError::NotPrimePower(q))
    }
}

/// The points and lines of the projective space PG(d, q) as a Steiner
/// 2-((q^{d+1}−1)/(q−1), q+1, 1) design.
///
/// Points are the 1-dimensional subspaces of GF(q)^{d+1}, labeled in
/// lexicographic order of their canonical representatives (first nonzero
/// coordinate scaled to 1, coordinates read in the field's element-index
/// order); blocks are the point sets of 2-dimensional subspaces.
pub fn pg_lines(d: usize, q: u64) -> Result<Design, DesignError> {
    if d < 2 {
        return Err(DesignError::DimensionTooSmall(d));
    }
    let (p, n) = prime_power(q)?;
    let spec = FieldSpec::new(p, n)?;
    let qs = q as usize;

    // Index-level arithmetic tables keep the vector arithmetic below simple.
    let elems: Vec<_> = spec.elements().collect();
    let mut add = vec![vec![0usize; qs]; qs];
    let mut mul = vec![vec![0usize; qs]; qs];
    for i in 0..qs {
        for j in 0..qs {
            add[i][j] = elems[i].add(&elems[j])?.index() as usize;
            mul[i][j] = elems[i].mul(&elems[j])?.index() as usize;
        }
    }
    let inv: Vec<usize> = (0..qs)
        .map(|i| {
            if i == 0 {
                0
            } else {
                elems[i].inv().expect("nonzero").index() as usize
            }
        })
        .collect();

    let dim = d + 1;
    // Canonical representatives of the 1-dimensional subspaces: vectors whose
    // first nonzero coordinate is 1, in lexicographic order.
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut label_of: HashMap<Vec<usize>, usize> = HashMap::new();
    let total = qs.pow(dim as u32);
    for m in 0..total {
        let mut vector = vec![0usize; dim];
        let mut rest = m;
        for c in vector.iter_mut() {
            *c = rest % qs;
            rest /= qs;
        }
        if vector.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        label_of.insert(vector.clone(), reps.len());
        reps.push(vector);
    }
    let v = reps.len();
    debug_assert_eq!(v as u64, (q.pow(dim as u32) - 1) / (q - 1));

    let normalize = |vector: &[usize]| -> Vec<usize> {
        let lead = *vector.iter().find(|&&c| c != 0).expect("nonzero vector");
        let s = inv[lead];
        vector.iter().map(|&c| mul[c][s]).collect()
    };

    // Each unordered pair of points spans one line; the line through u, w
    // consists of w together with u + c·w for every scalar c.
    let mut lines: HashSet<Vec<usize>> = HashSet::new();
    for i in 0..v {
        for j in i + 1..v {
            let mut block: Vec<usize> = Vec::with_capacity(qs + 1);
            block.push(j);
            for c in 0..qs {
                let combo: Vec<usize> = reps[i]
                    .iter()
                    .zip(&reps[j])
                    .map(|(&u, &w)| add[u][mul[c][w]])
                    .collect();
                block.push(label_of[&normalize(&combo)]);
            }
            block.sort_unstable();
            block.dedup();
            lines.insert(block);
        }
    }
    let blocks: Vec<Vec<usize>> = lines.into_iter().collect();
    Design::new(2, v, qs + 1, 1, blocks)
}

/// Closes `base_block` under the group generated by `generators` (breadth-
/// first over block images, deduplicated as sets) and verifies the result
/// against the declared parameters. Errors if the orbit is not a
/// t-(v,k,λ) design as declared.
pub fn orbit_design(
    generators: &[Permutation],
    base_block: &[usize],
    t: usize,
    v: usize,
    k: usize,
    lambda: usize,
) -> Result<Design, DesignError> {
    for g in generators {
        if g.degree() != v {
            return Err(DesignError::GeneratorDegree {
                degree: g.degree(),
                v,
            });
        }
    }
    if let Some(&point) = base_block.iter().find(|&&x| x >= v) {
        return Err(DesignError::PointOutOfRange { index: 0, point, v });
    }
    let mut base = base_block.to_vec();
    base.sort_unstable();
    base.dedup();
    if base.len() != k {
        return Err(DesignError::BlockWrongSize {
            index: 0,
            len: base.len(),
            k,
        });
    }

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier = vec![base.clone()];
    seen.insert(base);
    while let Some(block) = frontier.pop() {
        for g in generators {
            let image = g.apply_to_block(&block);
            if !seen.contains(&image) {
                seen.insert(image.clone());
                frontier.push(image);
            }
        }
    }
    Design::new(t, v, k, lambda, seen.into_iter().collect())
}

/// Converts fractional linear maps into permutations of the projective
/// line's integer labels: a finite element is labeled by its index and `∞`
/// by `q`, matching [`projective_line`]'s ordering.
pub fn line_permutations(
    spec: &FieldSpec,
    maps: &[FracLinearMap],
) -> Result<Vec<Permutation>, DesignError> {
    let line = projective_line(spec);
    let q = spec.order() as usize;
    let label = |pt: &ProjPoint| -> usize {
        match pt {
            ProjPoint::Finite(x) => x.index() as usize,
            ProjPoint::Infinity => q,
        }
    };
    maps.iter()
        .map(|m| {
            let mut images = vec![0usize; q + 1];
            for pt in &line {
                images[label(pt)] = label(&m.apply(pt));
            }
            Permutation::new(images)
        })
        .collect()
}

/// The spherical geometry design 3-(q^d + 1, q + 1, 1): the orbit of the
/// subline GF(q) ∪ {∞} inside the projective line over GF(q^d) under all of
/// PGL(2, q^d). The subline's finite part is the subfield, recognized as the
/// elements fixed by `x ↦ x^q`.
pub fn spherical_design(q: u64, d: usize) -> Result<Design, DesignError> {
    if d < 2 {
        return Err(DesignError::DimensionTooSmall(d));
    }
    let (p, n) = prime_power(q)?;
    let spec = FieldSpec::new(p, n * d)?;
    let big_q = spec.order() as usize;

    let mut base: Vec<usize> = spec
        .elements()
        .filter(|x| &x.pow(q) == x)
        .map(|x| x.index() as usize)
        .collect();
    base.push(big_q); // ∞ lies on the subline
    debug_assert_eq!(base.len() as u64, q + 1);

    let generators = line_permutations(&spec, &pgl2(&spec))?;
    orbit_design(&generators, &base, 3, big_q + 1, q as usize + 1, 1)
}
