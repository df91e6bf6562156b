//! Berge-containment testing, shadow-extremal constructions, degeneracy
//! classification for 3-uniform hosts, and exact cover-Turán search with
//! certificates.
//!
//! The core objects are [`Graph`] and [`Hypergraph`] (a family of vertex
//! sets with a declared cardinality set `R`). Everything downstream is a
//! pure function of them: [`shadow`](Hypergraph::shadow) and co-degrees,
//! the [`embed`] solvers, the named [`constructions`], the [`classify`]
//! oracle, and the [`search`] kernel. All values are immutable after
//! construction and safe to share across threads.
//!
//! ```
//! use bergelab_core::{Budget, Graph};
//! use bergelab_core::embed::{contains_berge, BergeOutcome};
//! use bergelab_core::search::exact_cover_turan;
//!
//! // the triangle-free matched-pair family on 8 vertices
//! let family = bergelab_core::constructions::construct_h1(8)?.hypergraph;
//! assert_eq!(family.shadow().edge_count(), 18);
//! assert!(matches!(
//!     contains_berge(&family, &Graph::cycle(3), &Budget::unlimited()),
//!     BergeOutcome::Absent
//! ));
//!
//! // the largest shadow a Berge-triangle-free triple family on 4
//! // vertices can have, with a verified witness
//! let result = exact_cover_turan(4, [3], &Graph::cycle(3), &Budget::unlimited())?;
//! assert_eq!(result.value, 5);
//! assert_eq!(result.witness.edge_count(), 2);
//! # Ok::<(), bergelab_core::Error>(())
//! ```

pub mod bits;
pub mod budget;
pub mod canon;
pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod embed;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod search;

pub use budget::Budget;
pub use graph::Graph;
pub use hypergraph::{Hyperedge, Hypergraph, ShadowGraph};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} supports at most {limit} vertices, got {got}")]
    SizeCap {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("budget exhausted before a definitive answer")]
    BudgetExhausted,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
