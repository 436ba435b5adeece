//! Matrix partitions and full homomorphisms of loopless digraphs.
//!
//! A pattern matrix `M` with {0,1} entries prescribes a partition shape: part
//! `i` must be independent when `M(i,i) = 0` and a strong clique when
//! `M(i,i) = 1`, while for `i != j` every arc from part `i` to part `j` must
//! be present when `M(i,j) = 1` and absent when `M(i,j) = 0`. Finding such a
//! partition is the same problem as finding a full homomorphism onto the
//! template digraph whose adjacency matrix is `M`, with diagonal ones read
//! as loops.
//!
//! ```
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! use fullhom::{solve_mpartition, Digraph, PatternMatrix};
//!
//! let d = Digraph::new(2, &[(0, 1)])?;
//! let m: PatternMatrix = "2\n00\n11\n".parse()?;
//! let p = solve_mpartition(&d, &m).expect("partitionable");
//! assert_eq!(p.as_slice(), &[1, 0]);
//! # Ok(()) }
//! ```
//!
//! Beyond the solver, the crate canonically labels digraphs, classifies twin
//! pairs, enumerates the triples that govern point-determining digraphs, and
//! exhaustively catalogs the minimal obstructions of a pattern matrix: the
//! digraphs with no `M`-partition all of whose single-vertex deletions have
//! one. Every minimal obstruction of an `m x m` matrix with `k` zeros and
//! `l` ones on the diagonal has at most `(k+1)(l+1)` vertices, and
//! [`verify_bound`] confirms that exhaustively at small orders.
//!
//! ```
//! use fullhom::{enumerate_minimal_obstructions, PatternMatrix};
//!
//! let m: PatternMatrix = "1\n0\n".parse().unwrap();
//! let catalog = enumerate_minimal_obstructions(&m, 4);
//! assert_eq!(catalog.max_order(), Some(2));
//! assert_eq!(catalog.extremal_count(), 2);
//! ```

#![forbid(unsafe_code)]

pub mod canon;
pub mod digraph;
pub mod enumerate;
pub mod partition;
pub mod pattern;
pub mod triples;
pub mod twins;

#[cfg(doctest)]
mod book;

pub use canon::CanonicalForm;
pub use digraph::{Digraph, GraphError, ParseError, Relabeling, VertexSet, MAX_ORDER};
pub use enumerate::{
    enumerate_digraphs, enumerate_minimal_obstructions, extremal_census, verify_bound,
    verify_homogeneous_bounds, verify_removable_vertices, verify_triple_intersections,
    CatalogDocument, CatalogEntry, CeilingTooLow, ObstructionCatalog, VerificationReport,
};
pub use partition::{
    extend_partition_homogeneous, find_full_homomorphism, is_minimal_obstruction, satisfiable,
    solve_mpartition, validate_partition, ExtendError, Partition, PartitionError, PartitionVerdict,
    Violation, ViolationRule,
};
pub use pattern::{MatrixError, NormalizedPattern, PatternMatrix};
pub use triples::{enumerate_triples, red_free_vertices, triple_intersection_violations, Triple};
pub use twins::{
    distinguishes, is_homogeneous, is_point_determining, max_homogeneous, removable_vertex,
    twin_type, HomogeneousKind, NotPointDeterminingError, RemovableVertexError, TwinClassification,
};
