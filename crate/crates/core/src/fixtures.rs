//! Reference fixtures: the two published encoding matrices (Fano plane,
//! Möbius plane of order 3) exactly as printed, and the parameter table of
//! further optimal codes.
//!
//! The matrices here are *fixed data*, not regenerated output: they pin down
//! the external answer the rest of the crate must agree with. The Fano
//! matrix uses message labels 1–7 and the Möbius matrix labels 0–9, as in
//! the source tables; [`fano_matrix`] and [`mobius_order3_matrix`] relabel
//! to the crate's canonical `0..v` on construction.

use crate::ordering::EncodingMatrix;

/// Encoding matrix of the optimal one-fold secure code from the Fano plane:
/// 7 rules × 3 source states on messages 1–7.
pub const FANO_TABLE: [[u64; 3]; 7] = [
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 7],
    [5, 6, 1],
    [6, 7, 2],
    [7, 1, 3],
];

/// Encoding matrix of the optimal two-fold secure code from the Möbius
/// plane of order 3: 30 rules × 4 source states on messages 0–9.
pub const MOBIUS_ORDER3_TABLE: [[u64; 4]; 30] = [
    [1, 2, 4, 5],
    [2, 3, 5, 6],
    [3, 4, 6, 7],
    [4, 5, 7, 8],
    [5, 6, 8, 9],
    [6, 7, 9, 0],
    [7, 8, 0, 1],
    [8, 9, 1, 2],
    [9, 0, 2, 3],
    [0, 1, 3, 4],
    [1, 2, 3, 7],
    [2, 3, 4, 8],
    [3, 4, 5, 9],
    [4, 5, 6, 0],
    [5, 6, 7, 1],
    [6, 7, 8, 2],
    [7, 8, 9, 3],
    [8, 9, 0, 4],
    [9, 0, 1, 5],
    [0, 1, 2, 6],
    [1, 3, 5, 8],
    [2, 4, 6, 9],
    [3, 5, 7, 0],
    [4, 6, 8, 1],
    [5, 7, 9, 2],
    [6, 8, 0, 3],
    [7, 9, 1, 4],
    [8, 0, 2, 5],
    [9, 1, 3, 6],
    [0, 2, 4, 7],
];

fn table_rows<const K: usize>(table: &[[u64; K]]) -> Vec<Vec<u64>> {
    table.iter().map(|row| row.to_vec()).collect()
}

fn table_csv<const K: usize>(table: &[[u64; K]]) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=K).map(|j| format!("s{j}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in table {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// The Fano matrix relabeled to messages `0..7` (original labels 1–7 map to
/// 0–6 in order).
pub fn fano_matrix() -> EncodingMatrix {
    EncodingMatrix::from_labeled_rows(&table_rows(&FANO_TABLE))
        .expect("fixture is well formed")
        .0
}

/// The Möbius matrix relabeled to messages `0..10` (labels are already 0–9,
/// so entries are unchanged).
pub fn mobius_order3_matrix() -> EncodingMatrix {
    EncodingMatrix::from_labeled_rows(&table_rows(&MOBIUS_ORDER3_TABLE))
        .expect("fixture is well formed")
        .0
}

/// The Fano matrix as CSV with its original 1-based message labels.
pub fn fano_csv() -> String {
    table_csv(&FANO_TABLE)
}

/// The Möbius matrix as CSV with its original message labels 0–9.
pub fn mobius_order3_csv() -> String {
    table_csv(&MOBIUS_ORDER3_TABLE)
}

/// One row of the published parameter table of further optimal codes: a
/// Steiner t-(v,k,1) design with `v | b` yields an optimal (t−1)-fold secure
/// code with perfect secrecy and `b` encoding rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub t: usize,
    pub k: usize,
    pub v: usize,
    /// Number of encoding rules as printed; must equal C(v,t)/C(k,t).
    pub b: u64,
    /// `witt` rows are constructible by this crate; `ingested` rows exist in
    /// the design-theory literature but are parameter-checked only.
    pub family: &'static str,
}

/// The published table of further optimal authentication codes, in printed
/// order. `b` values are the printed numbers with thousands separators
/// removed.
pub const REFERENCE_PARAMETERS: [ReferenceRow; 14] = [
    ReferenceRow { t: 3, k: 5, v: 26, b: 260, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 11, b: 66, family: "witt" },
    ReferenceRow { t: 4, k: 7, v: 23, b: 253, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 23, b: 1_771, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 47, b: 35_673, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 83, b: 367_524, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 71, b: 194_327, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 107, b: 1_032_122, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 131, b: 2_343_328, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 167, b: 6_251_311, family: "ingested" },
    ReferenceRow { t: 4, k: 5, v: 243, b: 28_344_492, family: "ingested" },
    ReferenceRow { t: 5, k: 6, v: 12, b: 132, family: "witt" },
    ReferenceRow { t: 5, k: 6, v: 84, b: 5_145_336, family: "ingested" },
    ReferenceRow { t: 5, k: 6, v: 244, b: 1_152_676_008, family: "ingested" },
];
