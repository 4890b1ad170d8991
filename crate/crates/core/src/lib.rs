//! Incremental depth-first search trees for undirected graphs.
//!
//! A [`DfsTree`] of a graph is kept valid under edge and vertex insertions.
//! [`batch_insert`] rebuilds a tree for a whole batch of insertions from the
//! old tree and a query engine; [`Maintainer`] wraps it to report a tree
//! after every single insertion with bounded work per update.
//!
//! ```
//! use incdfs::{validate_dfs_tree, Graph, Maintainer, Update};
//!
//! let mut mt = Maintainer::new(Graph::new(3));
//! mt.insert(Update::Edge(0, 1)).unwrap();
//! mt.insert(Update::Edge(1, 2)).unwrap();
//! assert!(validate_dfs_tree(mt.graph(), mt.tree()));
//! ```

pub mod cascade;
pub mod dense;
pub mod engine;
pub mod error;
pub mod graph;
pub mod hybrid;
pub mod maintain;
pub mod meter;
pub mod oracle;
pub mod partition;
pub mod range;
pub mod rebuild;
pub mod tree;

pub use cascade::CascadeFamily;
pub use dense::DenseTable;
pub use engine::{reduce_query, BruteEngine, Engine, EngineKind, EngineStats, PathQuery, QueryAnswer, QueryEngine};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexId};
pub use hybrid::{build_marked_index, build_short_path_table, HybridIndex, MarkedIndex, ShortPathTable};
pub use maintain::{EngineChoice, Maintainer, MaintainerCounters, Update, UpdateStats};
pub use meter::{ceil_log2, Meter, WorkCounter};
pub use oracle::{brute_query, reference_batch_insert, validate_dfs_tree, validate_parents, Violation};
pub use partition::{compute_partition, Partition};
pub use range::RangeIndex;
pub use rebuild::{batch_insert, Rebuild, RebuildStats, UpdateBatch};
pub use tree::{static_dfs, static_dfs_metered, DfsTree};
