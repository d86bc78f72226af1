//! Design files: a small JSON schema with explicit parameters and blocks.
//!
//! Schema: `{"t":2,"v":7,"k":3,"lambda":1,"blocks":[[0,1,3],...]}` — UTF-8,
//! integer-only, points implicit `0..v−1`. Ingestion always runs the full
//! design verification; a file that fails the design axioms is rejected,
//! never silently accepted.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Design, DesignError};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignFile {
    t: usize,
    v: usize,
    k: usize,
    lambda: usize,
    blocks: Vec<Vec<usize>>,
}

/// Parses and fully verifies a design from its JSON encoding.
pub fn from_json_str(text: &str) -> Result<Design, DesignError> {
    let file: DesignFile = serde_json::from_str(text)?;
    Design::new(file.t, file.v, file.k, file.lambda, file.blocks)
}

/// Canonical JSON encoding (blocks in canonical order, trailing newline).
pub fn to_json_string(design: &Design) -> String {
    let file = DesignFile {
        t: design.t(),
        v: design.v(),
        k: design.k(),
        lambda: design.lambda(),
        blocks: design.blocks().to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("design serializes");
    text.push('\n');
    text
}

/// Reads and verifies a design file.
pub fn ingest(path: &Path) -> Result<Design, DesignError> {
    from_json_str(&std::fs::read_to_string(path)?)
}

/// Writes a design file; [`ingest`] of the result yields an equal design.
pub fn emit(design: &Design, path: &Path) -> Result<(), DesignError> {
    std::fs::write(path, to_json_string(design))?;
    Ok(())
}
