use thiserror::Error;

/// Errors produced while building, parsing, or comparing trees.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tree has no nodes")]
    EmptyTree,
    /// An internal node with a child count other than two.
    #[error("node {node} has {children} children; only binary trees are supported")]
    NonBinary { node: usize, children: usize },
    #[error("duplicate leaf label `{0}`")]
    DuplicateLabel(String),
    #[error("leaf node {0} has no label")]
    UnlabeledLeaf(usize),
    #[error("internal node {node} carries label `{label}`; internal labels are not supported")]
    InternalLabel { node: usize, label: String },
    #[error("node {0} is reachable more than once or not at all; input is not a rooted tree")]
    NotATree(usize),
    #[error("trees are not on the same taxa: {0}")]
    TaxonMismatch(String),
    #[error("triple taxa must be pairwise distinct")]
    NonDistinctTaxa,
    #[error("leaf subset is empty")]
    EmptySubset,
    #[error("leaf subset is not strictly ordered by post-order or contains a non-leaf")]
    UnorderedInput,
    #[error("newick syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
