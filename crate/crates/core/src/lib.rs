//! Enumeration of conflict triples between two rooted binary phylogenetic
//! trees on the same taxa, in time linear in the number of taxa plus the
//! number of conflicts reported.
//!
//! ```
//! use tripconf::{count_conflicts, parse_newick, parse_newick_with_taxa};
//!
//! let (p, taxa) = parse_newick("((A,B),((C,D),E));").unwrap();
//! let q = parse_newick_with_taxa("((A,B),((D,E),C));", &taxa).unwrap();
//! assert_eq!(count_conflicts(&p, &q).unwrap(), 1);
//! ```

pub mod enumerate;
pub mod equivalence;
pub mod error;
pub mod generator;
pub mod lca;
pub mod newick;
pub mod oracle;
pub mod restrict;
pub mod tree;
pub mod triple;
pub mod work;

pub use enumerate::{
    count_conflicts, enumerate_conflicts, enumerate_conflicts_with, CollectingSink, ConflictSink,
    CountingSink, EnumerationOptions, FrameKind, FrameRecord, Instrumentation,
};
pub use equivalence::{build_leaf_equivalence, LeafEquivalence};
pub use error::{Error, Result};
pub use generator::{GeneratorConfig, Shape};
pub use lca::LcaIndex;
pub use newick::{parse_newick, parse_newick_with_taxa, serialize_newick};
pub use oracle::{
    enumerate_bruteforce, is_conflict, resolve_triple, BiasPair, Resolution, TripleResolver,
};
pub use restrict::{induced_subtree, RestrictedTree};
pub use tree::{
    build_tree, build_tree_with_taxa, NodeId, TaxonId, TaxonSet, Topology, Tree, TreeView,
};
pub use triple::ConflictTriple;
pub use work::WorkCounter;
