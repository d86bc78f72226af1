//! The small Witt design S(5, 6, 12) by orbit search over the projective
//! line of GF(11), together with its derived 4-(11, 5, 1) design.

use crate::combinatorics::subsets;
use crate::field::{psl2, FieldSpec};

use super::geometry::{line_permutations, orbit_design};
use super::{Design, DesignError};

/// Finds the 5-(12,6,1) design (132 blocks) as a group orbit on the 12-point
/// projective line over GF(11), and returns it together with its derived
/// 4-(11,5,1) design (66 blocks) at the last point. Both results are fully
/// verified.
///
/// The search scans 6-subsets of the line in lexicographic order and closes
/// each under PSL(2,11) — the square-determinant subgroup of the fractional
/// linear maps, 660 elements — returning the first orbit that verifies. The
/// full group PGL(2,11) cannot work here: the design's automorphism group is
/// the Mathieu group M12, which contains PSL(2,11) but no subgroup of order
/// 1320, so no PGL(2,11)-orbit is ever a 5-(12,6,1) design.
pub fn witt_search() -> Result<(Design, Design), DesignError> {
    let spec = FieldSpec::new(11, 1)?;
    let generators = line_permutations(&spec, &psl2(&spec))?;
    for hexad in subsets(12, 6) {
        match orbit_design(&generators, &hexad, 5, 12, 6, 1) {
            Ok(design) => {
                let derived = design.derived(11)?;
                return Ok((design, derived));
            }
            Err(_) => continue,
        }
    }
    Err(DesignError::SearchExhausted(
        "an orbit forming the 5-(12,6,1) design",
    ))
}
