//! Ordering the blocks of a design into an encoding matrix with the
//! equal-frequency column property.
//!
//! The construction: split every point `x` into `r/k` copies and hand each
//! copy `k` of `x`'s incident blocks, giving a k-regular bipartite graph
//! between point copies and blocks ([`split_points`]). Properly k-edge-color
//! that graph ([`edge_color`]); then writing point `x` into column `c` of
//! block `B`'s row whenever the edge `(x-copy, B)` got color `c` produces a
//! `b × k` matrix in which every point occupies every column exactly
//! `r/k = b/v` times ([`order_blocks`]). This equal-frequency property is
//! exactly what makes the resulting authentication code perfectly secret
//! under uniform keys.
//!
//! The construction needs `k | r` (equivalently `v | b`, via `bk = vr`);
//! designs violating it are rejected with [`OrderingError::Divisibility`].

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::designs::Design;

#[derive(Debug, Error)]
pub enum OrderingError {
    #[error("k = {k} does not divide the replication number r = {r}: the construction requires every point to fill each column equally often (equivalently, v must divide b)")]
    Divisibility { k: usize, r: u64 },
    #[error("internal matching failure: the split incidence graph was not regular")]
    MatchingFailed,
    #[error("matrix has no rows")]
    EmptyMatrix,
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("row {row} contains message {entry}, outside 0..{v}")]
    EntryOutOfRange {
        row: usize,
        entry: usize,
        v: usize,
    },
    #[error("line {line} of the CSV is malformed: {reason}")]
    BadCsv { line: usize, reason: String },
    #[error("CSV header must be `{expected}`, found `{found}`")]
    HeaderMismatch { expected: String, found: String },
    #[error("cannot tell the matrix format of `{0}`: use a .csv or .json extension")]
    UnknownFormat(String),
    #[error("matrix file does not match the expected schema: {0}")]
    Schema(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// Incidence graph
// ---------------------------------------------------------------------------

/// A left vertex of the split incidence graph: one of the `r/k` copies of a
/// point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointCopy {
    pub point: usize,
    pub copy: usize,
}

/// The k-regular bipartite graph between point copies and blocks produced by
/// [`split_points`]: `adj[l]` lists the `k` blocks incident to left vertex
/// `l`, in ascending block order.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    k: usize,
    block_count: usize,
    left: Vec<PointCopy>,
    adj: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn left(&self) -> &[PointCopy] {
        &self.left
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }
}

/// Splits each point into `r/k` copies, assigning the point's incident
/// blocks (in canonical order) to copies in consecutive chunks of `k`. The
/// result has `v·r/k = b` left vertices and is k-regular on both sides.
pub fn split_points(design: &Design) -> Result<IncidenceGraph, OrderingError> {
    use num::ToPrimitive;
    let k = design.k();
    let r = design
        .stats()
        .r
        .to_u64()
        .expect("replication number fits u64 at verifiable scale");
    if !r.is_multiple_of(k as u64) {
        return Err(OrderingError::Divisibility { k, r });
    }
    let copies = (r / k as u64) as usize;

    let mut incident: Vec<Vec<usize>> = vec![Vec::with_capacity(r as usize); design.v()];
    for (bi, block) in design.blocks().iter().enumerate() {
        for &x in block {
            incident[x].push(bi);
        }
    }

    let mut left = Vec::with_capacity(design.b());
    let mut adj = Vec::with_capacity(design.b());
    for (point, blocks) in incident.iter().enumerate() {
        for copy in 0..copies {
            left.push(PointCopy { point, copy });
            adj.push(blocks[copy * k..(copy + 1) * k].to_vec());
        }
    }
    debug_assert_eq!(left.len(), design.b());
    Ok(IncidenceGraph {
        k,
        block_count: design.b(),
        left,
        adj,
    })
}

/// A proper k-edge-coloring of an [`IncidenceGraph`]: `color(l, j)` is the
/// color of the edge from left vertex `l` to its `j`-th neighbor.
#[derive(Debug, Clone)]
pub struct EdgeColoring {
    colors: Vec<Vec<usize>>,
}

impl EdgeColoring {
    pub fn color(&self, l: usize, j: usize) -> usize {
        self.colors[l][j]
    }
}

/// Properly colors the edges of a k-regular bipartite graph with k colors by
/// peeling off k perfect matchings, each found with deterministic
/// augmenting-path search. Regularity guarantees a perfect matching at every
/// round, so failure to find one means the input graph was not regular.
pub fn edge_color(graph: &IncidenceGraph) -> Result<EdgeColoring, OrderingError> {
    let left_count = graph.left.len();
    let mut colors: Vec<Vec<Option<usize>>> =
        graph.adj.iter().map(|nb| vec![None; nb.len()]).collect();

    for round in 0..graph.k {
        // match_edge[block] = (left vertex, neighbor index) of the matching
        // edge covering that block in this round.
        let mut match_edge: Vec<Option<(usize, usize)>> = vec![None; graph.block_count];
        for l in 0..left_count {
            let mut visited = vec![false; graph.block_count];
            if !augment(graph, &colors, l, &mut visited, &mut match_edge) {
                return Err(OrderingError::MatchingFailed);
            }
        }
        for entry in &match_edge {
            let (l, j) = entry.ok_or(OrderingError::MatchingFailed)?;
            colors[l][j] = Some(round);
        }
    }

    Ok(EdgeColoring {
        colors: colors
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.expect("all edges colored")).collect())
            .collect(),
    })
}

/// Augmenting-path step over the still-uncolored edges.
fn augment(
    graph: &IncidenceGraph,
    colors: &[Vec<Option<usize>>],
    l: usize,
    visited: &mut [bool],
    match_edge: &mut [Option<(usize, usize)>],
) -> bool {
    for (j, &block) in graph.adj[l].iter().enumerate() {
        if colors[l][j].is_some() || visited[block] {
            continue;
        }
        visited[block] = true;
        let free = match match_edge[block] {
            None => true,
            Some((l2, _)) => augment(graph, colors, l2, visited, match_edge),
        };
        if free {
            match_edge[block] = Some((l, j));
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Encoding matrix
// ---------------------------------------------------------------------------

/// A `b × k` matrix of message ids in `[0, v)`: rows are encoding rules,
/// columns are source states. Construction checks shape and entry range;
/// the stronger code-level properties (injective rows, column balance) are
/// checked where they are needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingMatrix {
    v: usize,
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    v: usize,
    rows: Vec<Vec<usize>>,
}

impl EncodingMatrix {
    pub fn new(v: usize, rows: Vec<Vec<usize>>) -> Result<EncodingMatrix, OrderingError> {
        let Some(first) = rows.first() else {
            return Err(OrderingError::EmptyMatrix);
        };
        let k = first.len();
        if k == 0 {
            return Err(OrderingError::RaggedRow {
                row: 0,
                len: 0,
                expected: 1,
            });
        }
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != k {
                return Err(OrderingError::RaggedRow {
                    row,
                    len: entries.len(),
                    expected: k,
                });
            }
            if let Some(&entry) = entries.iter().find(|&&m| m >= v) {
                return Err(OrderingError::EntryOutOfRange { row, entry, v });
            }
        }
        Ok(EncodingMatrix { v, rows })
    }

    /// Builds a matrix from rows over arbitrary integer labels, relabeling
    /// the distinct labels in ascending order to message ids `0..v−1` (`v` =
    /// number of distinct labels). Returns the label map alongside
    /// (`map[m]` = original label of message `m`).
    pub fn from_labeled_rows(
        labeled: &[Vec<u64>],
    ) -> Result<(EncodingMatrix, Vec<u64>), OrderingError> {
        let mut labels: Vec<u64> = labeled.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let position = |x: u64| labels.binary_search(&x).expect("label came from the list");
        let rows: Vec<Vec<usize>> = labeled
            .iter()
            .map(|row| row.iter().map(|&x| position(x)).collect())
            .collect();
        let matrix = EncodingMatrix::new(labels.len(), rows)?;
        Ok((matrix, labels))
    }

    /// Number of messages.
    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of source states (columns).
    pub fn k(&self) -> usize {
        self.rows[0].len()
    }

    /// Number of encoding rules (rows).
    pub fn b(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    /// CSV encoding: header `s1,...,sk`, one row per encoding rule, entries
    /// as message ids.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.k()).map(|i| format!("s{i}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|m| m.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV encoding. Entries may use any integer labels (the
    /// bundled fixture tables count from 1 and from 0); distinct labels are
    /// relabeled in ascending order to `0..v−1` and the label map returned.
    pub fn from_csv_str(text: &str) -> Result<(EncodingMatrix, Vec<u64>), OrderingError> {
        let mut lines = text.lines().enumerate();
        let Some((_, header)) = lines.next() else {
            return Err(OrderingError::EmptyMatrix);
        };
        let k = header.split(',').count();
        let expected: Vec<String> = (1..=k).map(|i| format!("s{i}")).collect();
        let expected = expected.join(",");
        if header.trim() != expected {
            return Err(OrderingError::HeaderMismatch {
                expected,
                found: header.trim().to_string(),
            });
        }
        let mut labeled: Vec<Vec<u64>> = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<u64>, _> = line.split(',').map(|cell| cell.trim().parse()).collect();
            match row {
                Ok(row) if row.len() == k => labeled.push(row),
                Ok(row) => {
                    return Err(OrderingError::BadCsv {
                        line: idx + 1,
                        reason: format!("{} entries, expected {k}", row.len()),
                    })
                }
                Err(e) => {
                    return Err(OrderingError::BadCsv {
                        line: idx + 1,
                        reason: e.to_string(),
                    })
                }
            }
        }
        EncodingMatrix::from_labeled_rows(&labeled)
    }

    /// JSON encoding: `{"v":…,"rows":[[…]]}` with canonical message ids.
    pub fn to_json_string(&self) -> String {
        let file = MatrixFile {
            v: self.v,
            rows: self.rows.clone(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("matrix serializes");
        text.push('\n');
        text
    }

    pub fn from_json_str(text: &str) -> Result<EncodingMatrix, OrderingError> {
        let file: MatrixFile = serde_json::from_str(text)?;
        EncodingMatrix::new(file.v, file.rows)
    }

    /// Reads a matrix file, choosing the format by extension (`.csv` or
    /// `.json`).
    pub fn read_path(path: &Path) -> Result<EncodingMatrix, OrderingError> {
        let text = std::fs::read_to_string(path)?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Ok(EncodingMatrix::from_csv_str(&text)?.0),
            Some("json") => EncodingMatrix::from_json_str(&text),
            _ => Err(OrderingError::UnknownFormat(path.display().to_string())),
        }
    }

    /// Writes a matrix file, choosing the format by extension.
    pub fn write_path(&self, path: &Path) -> Result<(), OrderingError> {
        let text = match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => self.to_csv_string(),
            Some("json") => self.to_json_string(),
            _ => return Err(OrderingError::UnknownFormat(path.display().to_string())),
        };
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Orders every block of `design` into a matrix row: block `B`'s row has
/// point `x` in the column given by the color of the edge between `B` and
/// the copy of `x` adjacent to it. Deterministic; requires `k | r`.
pub fn order_blocks(design: &Design) -> Result<EncodingMatrix, OrderingError> {
    let graph = split_points(design)?;
    let coloring = edge_color(&graph)?;
    let mut rows = vec![vec![usize::MAX; design.k()]; design.b()];
    for (l, neighbors) in graph.adj.iter().enumerate() {
        for (j, &block) in neighbors.iter().enumerate() {
            let column = coloring.color(l, j);
            debug_assert_eq!(rows[block][column], usize::MAX, "color clash at a block");
            rows[block][column] = graph.left[l].point;
        }
    }
    EncodingMatrix::new(design.v(), rows)
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// One defect found by [`validate_ordering`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderingViolation {
    /// Matrix dimensions or message range do not match the design.
    ShapeMismatch {
        design: (usize, usize, usize),
        matrix: (usize, usize, usize),
    },
    /// A row's entry set is not a block of the design (with multiplicity).
    RowSetMismatch { row: usize },
    /// `v ∤ b`: no equal column frequency is possible.
    NonDivisible { v: usize, b: usize },
    /// A message appears in a column more or fewer than `b/v` times.
    ColumnImbalance {
        message: usize,
        column: usize,
        count: u64,
        expected: u64,
    },
}

impl std::fmt::Display for OrderingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderingViolation::ShapeMismatch { design, matrix } => write!(
                f,
                "shape mismatch: design has (b, k, v) = {design:?}, matrix has {matrix:?}"
            ),
            OrderingViolation::RowSetMismatch { row } => {
                write!(f, "row {row} is not a block of the design")
            }
            OrderingViolation::NonDivisible { v, b } => {
                write!(f, "{v} does not divide {b}: columns cannot balance")
            }
            OrderingViolation::ColumnImbalance {
                message,
                column,
                count,
                expected,
            } => write!(
                f,
                "message {message} appears {count} times in column {column}, expected {expected}"
            ),
        }
    }
}

/// The outcome of [`validate_ordering`]: empty `violations` means the matrix
/// is a correct ordering of the design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingReport {
    pub violations: Vec<OrderingViolation>,
}

impl OrderingReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `matrix` is a valid ordering of `design`: same shape, rows
/// (as sets) equal the block list with multiplicity, and every message
/// appears exactly `b/v` times in every column. Violations are collected
/// into the report rather than raised.
pub fn validate_ordering(design: &Design, matrix: &EncodingMatrix) -> OrderingReport {
    let mut violations = Vec::new();
    let design_shape = (design.b(), design.k(), design.v());
    let matrix_shape = (matrix.b(), matrix.k(), matrix.v());
    if design_shape != matrix_shape {
        return OrderingReport {
            violations: vec![OrderingViolation::ShapeMismatch {
                design: design_shape,
                matrix: matrix_shape,
            }],
        };
    }

    // Row sets must reproduce the block list exactly, with multiplicity.
    let mut remaining: HashMap<&[usize], usize> = HashMap::new();
    for block in design.blocks() {
        *remaining.entry(block.as_slice()).or_default() += 1;
    }
    for (i, row) in matrix.rows().iter().enumerate() {
        let mut as_set = row.clone();
        as_set.sort_unstable();
        match remaining.get_mut(as_set.as_slice()) {
            Some(n) if *n > 0 => *n -= 1,
            _ => violations.push(OrderingViolation::RowSetMismatch { row: i }),
        }
    }

    // Column frequency: every message b/v times in every column.
    let (b, v, k) = (matrix.b(), matrix.v(), matrix.k());
    if b % v != 0 {
        violations.push(OrderingViolation::NonDivisible { v, b });
    } else {
        let expected = (b / v) as u64;
        let mut counts = vec![vec![0u64; k]; v];
        for row in matrix.rows() {
            for (col, &m) in row.iter().enumerate() {
                counts[m][col] += 1;
            }
        }
        for (message, per_column) in counts.iter().enumerate() {
            for (column, &count) in per_column.iter().enumerate() {
                if count != expected {
                    violations.push(OrderingViolation::ColumnImbalance {
                        message,
                        column,
                        count,
                        expected,
                    });
                }
            }
        }
    }

    OrderingReport { violations }
}
