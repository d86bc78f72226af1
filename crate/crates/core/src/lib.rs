//! Construction and exact verification of authentication codes built from
//! Steiner t-designs.
//!
//! The pipeline runs in three stages:
//!
//! 1. **Designs** ([`designs`]): construct Steiner systems — projective-plane
//!    and projective-space line designs, spherical geometries over GF(q^d),
//!    cyclic Steiner triple systems, and the small Witt design on 12 points —
//!    or ingest arbitrary block lists, and verify the defining covering
//!    property exhaustively.
//! 2. **Ordering** ([`ordering`]): arrange each block of a design into a row
//!    of a `b × k` encoding matrix so that every point appears equally often
//!    in every column. This is what turns a design into a key schedule with
//!    perfect secrecy.
//! 3. **Authentication codes** ([`authcode`]): treat the matrix rows as
//!    encoding rules (keys) and the columns as source states, then compute
//!    spoofing-attack deception probabilities, secrecy diagnostics, and
//!    optimality against the relevant combinatorial lower bounds — all in
//!    exact rational arithmetic.
//!
//! [`field`] supplies the finite-field and projective-line machinery for the
//! geometric constructions, and [`fixtures`] carries two small worked
//! matrices that double as regression anchors.

pub mod authcode;
pub mod combinatorics;
pub mod designs;
pub mod field;
pub mod fixtures;
pub mod ordering;
