//! Arena-backed rooted binary trees with leaf labels drawn from a [`TaxonSet`].
//!
//! Nodes are stored in post-order: a node's id *is* its post-order number.
//! The subtree of `v` therefore occupies the contiguous id interval
//! `[v + 2 - 2·leaf_count(v), v]`, which gives O(1) ancestry tests, and its
//! leaves occupy a contiguous run of [`Tree::leaves`].

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Index of a node inside one [`Tree`]; equal to its post-order number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense taxon identifier, `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaxonId(pub u32);

impl TaxonId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TaxonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Bijection between label strings and dense [`TaxonId`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaxonSet {
    names: Vec<String>,
    index: HashMap<String, TaxonId>,
}

impl TaxonSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set from distinct names; ids follow iteration order.
    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = Self::new();
        for name in names {
            set.insert_new(name.into())?;
        }
        Ok(set)
    }

    /// `t0, t1, ..., t{n-1}`.
    pub fn numbered(n: usize) -> Self {
        Self::from_names((0..n).map(|i| format!("t{i}"))).expect("generated names are distinct")
    }

    /// Adds a name that must not already be present.
    pub fn insert_new(&mut self, name: String) -> Result<TaxonId> {
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateLabel(name));
        }
        let id = TaxonId(self.names.len() as u32);
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn get(&self, name: &str) -> Option<TaxonId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: TaxonId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// True when both sets hold the same names, regardless of id assignment.
    pub fn same_names(&self, other: &TaxonSet) -> bool {
        self.len() == other.len() && self.names.iter().all(|n| other.index.contains_key(n))
    }
}

/// Unvalidated parent/child structure used as input to [`Tree`] construction.
///
/// Nodes are referenced by their insertion index. The root defaults to the
/// last inserted node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology<L> {
    nodes: Vec<TopologyNode<L>>,
    root: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyNode<L> {
    pub children: Vec<usize>,
    pub label: Option<L>,
}

impl<L> Default for Topology<L> {
    fn default() -> Self {
        Self {
            nodes: Vec::new(),
            root: None,
        }
    }
}

impl<L> Topology<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            nodes: Vec::with_capacity(n),
            root: None,
        }
    }

    pub fn add_leaf(&mut self, label: L) -> usize {
        self.add_node(Vec::new(), Some(label))
    }

    pub fn add_internal(&mut self, children: Vec<usize>) -> usize {
        self.add_node(children, None)
    }

    pub fn add_node(&mut self, children: Vec<usize>, label: Option<L>) -> usize {
        self.nodes.push(TopologyNode { children, label });
        self.nodes.len() - 1
    }

    pub fn set_root(&mut self, root: usize) {
        self.root = Some(root);
    }

    pub fn root(&self) -> Option<usize> {
        self.root.or_else(|| self.nodes.len().checked_sub(1))
    }

    pub fn nodes(&self) -> &[TopologyNode<L>] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node indices in post-order (children in stored order). Fails if some
    /// node is shared or unreachable from the root.
    fn post_order(&self) -> Result<Vec<usize>> {
        let root = self.root().ok_or(Error::EmptyTree)?;
        if root >= self.nodes.len() {
            return Err(Error::NotATree(root));
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(root, 0usize)];
        seen[root] = true;
        while let Some(top) = stack.last_mut() {
            let (node, next) = *top;
            if let Some(&child) = self.nodes[node].children.get(next) {
                top.1 += 1;
                if child >= self.nodes.len() || seen[child] {
                    return Err(Error::NotATree(child));
                }
                seen[child] = true;
                stack.push((child, 0));
            } else {
                order.push(node);
                stack.pop();
            }
        }
        if order.len() != self.nodes.len() {
            let missing = seen.iter().position(|s| !s).unwrap_or(0);
            return Err(Error::NotATree(missing));
        }
        Ok(order)
    }
}

/// Rooted binary tree whose leaves carry pairwise distinct taxa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<u32>,
    children: Vec<[u32; 2]>,
    taxon: Vec<u32>,
    leaf_count: Vec<u32>,
    leaf_start: Vec<u32>,
    depth: Vec<u32>,
    leaves: Vec<NodeId>,
}

/// Builds a tree and a fresh [`TaxonSet`] from labelled topology. Taxon ids
/// are assigned to leaves left to right.
pub fn build_tree(topology: &Topology<String>) -> Result<(Tree, TaxonSet)> {
    let order = topology.post_order()?;
    let mut taxa = TaxonSet::new();
    let mut ids: Vec<Option<TaxonId>> = vec![None; topology.len()];
    for &node in &order {
        let spec = &topology.nodes[node];
        if spec.children.is_empty() {
            let label = spec.label.clone().ok_or(Error::UnlabeledLeaf(node))?;
            ids[node] = Some(taxa.insert_new(label)?);
        }
    }
    let tree = Tree::assemble(topology, &order, |node, label| match label {
        Some(l) if !topology.nodes[node].children.is_empty() => Err(Error::InternalLabel {
            node,
            label: l.clone(),
        }),
        _ => Ok(ids[node]),
    })?;
    Ok((tree, taxa))
}

/// Builds a tree whose labels must match `taxa` exactly.
pub fn build_tree_with_taxa(topology: &Topology<String>, taxa: &TaxonSet) -> Result<Tree> {
    let order = topology.post_order()?;
    let tree = Tree::assemble(topology, &order, |node, label| {
        let is_leaf = topology.nodes[node].children.is_empty();
        match label {
            Some(l) if !is_leaf => Err(Error::InternalLabel {
                node,
                label: l.clone(),
            }),
            Some(l) => taxa.get(l).map(Some).ok_or_else(|| {
                Error::TaxonMismatch(format!("label `{l}` is not in the reference taxa"))
            }),
            None => Ok(None),
        }
    })?;
    tree.check_distinct_taxa()?;
    if tree.num_leaves() != taxa.len() {
        return Err(Error::TaxonMismatch(format!(
            "tree has {} leaves but the reference has {} taxa",
            tree.num_leaves(),
            taxa.len()
        )));
    }
    Ok(tree)
}

impl Tree {
    /// Builds a tree from topology labelled directly with taxon ids.
    pub fn from_topology(topology: &Topology<TaxonId>) -> Result<Tree> {
        let tree = Self::from_topology_trusted(topology)?;
        tree.check_distinct_taxa()?;
        Ok(tree)
    }

    /// As [`Tree::from_topology`] without the duplicate-taxon check; callers
    /// guarantee distinct leaf taxa.
    pub(crate) fn from_topology_trusted(topology: &Topology<TaxonId>) -> Result<Tree> {
        let order = topology.post_order()?;
        Self::assemble(topology, &order, |node, label| match label {
            Some(t) if !topology.nodes[node].children.is_empty() => Err(Error::InternalLabel {
                node,
                label: t.to_string(),
            }),
            _ => Ok(label.copied()),
        })
    }

    fn assemble<L>(
        topology: &Topology<L>,
        order: &[usize],
        mut taxon_of: impl FnMut(usize, Option<&L>) -> Result<Option<TaxonId>>,
    ) -> Result<Tree> {
        let m = order.len();
        let mut new_id = vec![NONE; topology.len()];
        let mut tree = Tree {
            parent: vec![NONE; m],
            children: vec![[NONE; 2]; m],
            taxon: vec![NONE; m],
            leaf_count: vec![0; m],
            leaf_start: vec![0; m],
            depth: vec![0; m],
            leaves: Vec::with_capacity(m / 2 + 1),
        };
        for (id, &node) in order.iter().enumerate() {
            new_id[node] = id as u32;
            let spec = &topology.nodes[node];
            let taxon = taxon_of(node, spec.label.as_ref())?;
            match spec.children.len() {
                0 => {
                    let taxon = taxon.ok_or(Error::UnlabeledLeaf(node))?;
                    tree.taxon[id] = taxon.0;
                    tree.leaf_count[id] = 1;
                    tree.leaf_start[id] = tree.leaves.len() as u32;
                    tree.leaves.push(NodeId(id as u32));
                }
                2 => {
                    let a = new_id[spec.children[0]];
                    let b = new_id[spec.children[1]];
                    tree.children[id] = [a, b];
                    tree.parent[a as usize] = id as u32;
                    tree.parent[b as usize] = id as u32;
                    tree.leaf_count[id] = tree.leaf_count[a as usize] + tree.leaf_count[b as usize];
                    tree.leaf_start[id] = tree.leaf_start[a as usize];
                }
                k => return Err(Error::NonBinary { node, children: k }),
            }
        }
        for id in (0..m.saturating_sub(1)).rev() {
            tree.depth[id] = tree.depth[tree.parent[id] as usize] + 1;
        }
        Ok(tree)
    }

    fn check_distinct_taxa(&self) -> Result<()> {
        let max = self
            .leaves
            .iter()
            .map(|&l| self.taxon[l.index()])
            .max()
            .unwrap_or(0);
        let mut seen = vec![false; max as usize + 1];
        for &leaf in &self.leaves {
            let t = self.taxon[leaf.index()] as usize;
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::DuplicateLabel(TaxonId(t as u32).to_string()));
            }
        }
        Ok(())
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves.len()
    }

    #[inline]
    pub fn root(&self) -> NodeId {
        NodeId(self.parent.len() as u32 - 1)
    }

    pub fn nodes(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator {
        (0..self.len() as u32).map(NodeId)
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let p = self.parent[v.index()];
        (p != NONE).then_some(NodeId(p))
    }

    #[inline]
    pub fn children(&self, v: NodeId) -> Option<[NodeId; 2]> {
        let [a, b] = self.children[v.index()];
        (a != NONE).then_some([NodeId(a), NodeId(b)])
    }

    #[inline]
    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.children[v.index()][0] == NONE
    }

    /// The other child of `v`'s parent.
    #[inline]
    pub fn sibling(&self, v: NodeId) -> Option<NodeId> {
        let [a, b] = self.children(self.parent(v)?)?;
        Some(if a == v { b } else { a })
    }

    #[inline]
    pub fn taxon(&self, v: NodeId) -> Option<TaxonId> {
        let t = self.taxon[v.index()];
        (t != NONE).then_some(TaxonId(t))
    }

    /// Taxon of a node known to be a leaf.
    #[inline]
    pub(crate) fn leaf_taxon(&self, v: NodeId) -> TaxonId {
        debug_assert!(self.is_leaf(v));
        TaxonId(self.taxon[v.index()])
    }

    #[inline]
    pub fn leaf_count(&self, v: NodeId) -> usize {
        self.leaf_count[v.index()] as usize
    }

    #[inline]
    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v.index()] as usize
    }

    #[inline]
    pub fn post_index(&self, v: NodeId) -> usize {
        v.index()
    }

    /// Post-order interval `(first, last)` covered by the subtree of `v`.
    #[inline]
    pub fn interval(&self, v: NodeId) -> (usize, usize) {
        let last = v.index();
        (last + 2 - 2 * self.leaf_count(v), last)
    }

    /// True iff `v` lies in the subtree of `u` (including `u == v`).
    #[inline]
    pub fn is_ancestor(&self, u: NodeId, v: NodeId) -> bool {
        let (lo, hi) = self.interval(u);
        lo <= v.index() && v.index() <= hi
    }

    /// Leaves of the whole tree in post-order.
    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }

    /// Leaves below `v` in post-order.
    #[inline]
    pub fn subtree_leaves(&self, v: NodeId) -> &[NodeId] {
        let start = self.leaf_start[v.index()] as usize;
        &self.leaves[start..start + self.leaf_count(v)]
    }

    /// Position of leaf `v` within [`Tree::leaves`].
    #[inline]
    pub fn leaf_rank(&self, v: NodeId) -> usize {
        self.leaf_start[v.index()] as usize
    }

    /// Taxa below `v` in post-order.
    pub fn subtree_taxa(&self, v: NodeId) -> impl ExactSizeIterator<Item = TaxonId> + '_ {
        self.subtree_leaves(v)
            .iter()
            .map(move |&l| self.leaf_taxon(l))
    }

    /// Largest taxon id plus one, i.e. the size of a dense per-taxon table.
    pub fn taxon_bound(&self) -> usize {
        self.leaves
            .iter()
            .map(|&l| self.taxon[l.index()] as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Dense table from taxon id to the leaf carrying it.
    pub fn taxon_lookup(&self) -> Vec<Option<NodeId>> {
        let mut table = vec![None; self.taxon_bound()];
        for &leaf in &self.leaves {
            table[self.taxon[leaf.index()] as usize] = Some(leaf);
        }
        table
    }

    /// Same topology with leaf taxa replaced by `relabel(old)`.
    pub fn relabeled(&self, mut relabel: impl FnMut(TaxonId) -> TaxonId) -> Result<Tree> {
        let mut tree = self.clone();
        for &leaf in &self.leaves {
            tree.taxon[leaf.index()] = relabel(TaxonId(self.taxon[leaf.index()])).0;
        }
        tree.check_distinct_taxa()?;
        Ok(tree)
    }

    /// Converts back into a topology; node indices equal post-order ids.
    pub fn to_topology(&self) -> Topology<TaxonId> {
        let mut topo = Topology::with_capacity(self.len());
        for v in self.nodes() {
            match self.children(v) {
                Some([a, b]) => topo.add_internal(vec![a.index(), b.index()]),
                None => topo.add_leaf(self.leaf_taxon(v)),
            };
        }
        topo
    }

    pub fn view(&self, root: NodeId) -> TreeView<'_> {
        TreeView { tree: self, root }
    }
}

/// A subtree of a [`Tree`] addressed by its root, without copying.
#[derive(Clone, Copy, Debug)]
pub struct TreeView<'a> {
    pub tree: &'a Tree,
    pub root: NodeId,
}

impl<'a> TreeView<'a> {
    pub fn whole(tree: &'a Tree) -> Self {
        Self {
            tree,
            root: tree.root(),
        }
    }

    pub fn num_leaves(&self) -> usize {
        self.tree.leaf_count(self.root)
    }

    pub fn leaves(&self) -> &'a [NodeId] {
        self.tree.subtree_leaves(self.root)
    }

    pub fn root_children(&self) -> Option<[NodeId; 2]> {
        self.tree.children(self.root)
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.tree.is_ancestor(self.root, v)
    }

    pub fn subview(&self, v: NodeId) -> TreeView<'a> {
        debug_assert!(self.contains(v));
        TreeView {
            tree: self.tree,
            root: v,
        }
    }
}
