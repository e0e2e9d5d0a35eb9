//! Subtree induced by an ordered leaf subset, built in O(|Z|).

use crate::error::{Error, Result};
use crate::lca::LcaIndex;
use crate::tree::{NodeId, TaxonId, Topology, Tree};
use crate::work::WorkCounter;

/// `T|Z` together with, for every node, the node of `T` it stands for.
#[derive(Clone, Debug)]
pub struct RestrictedTree {
    pub tree: Tree,
    pub origin_map: Vec<NodeId>,
}

impl RestrictedTree {
    pub fn origin(&self, v: NodeId) -> NodeId {
        self.origin_map[v.index()]
    }
}

pub fn induced_subtree(tree: &Tree, lca: &LcaIndex, z: &[NodeId]) -> Result<RestrictedTree> {
    induced_subtree_counted(tree, lca, z, &mut WorkCounter::new())
}

/// Stack sweep over `z` (leaves in post-order). Inner nodes of the result are
/// the LCAs of consecutive members; the stack holds the current rightmost
/// path with strictly increasing depth, so everything deeper than the next
/// LCA is complete and gets closed off in turn. Nodes are closed in
/// post-order, which is the order they are added to the output.
pub fn induced_subtree_counted(
    tree: &Tree,
    lca: &LcaIndex,
    z: &[NodeId],
    work: &mut WorkCounter,
) -> Result<RestrictedTree> {
    if z.is_empty() {
        return Err(Error::EmptySubset);
    }
    for (i, &leaf) in z.iter().enumerate() {
        if leaf.index() >= tree.len()
            || !tree.is_leaf(leaf)
            || (i > 0 && z[i - 1].index() >= leaf.index())
        {
            return Err(Error::UnorderedInput);
        }
    }
    work.touch(z.len());
    Ok(sweep(tree, lca, z, work))
}

struct Open {
    origin: NodeId,
    depth: usize,
    children: Vec<usize>,
}

fn sweep(tree: &Tree, lca: &LcaIndex, z: &[NodeId], work: &mut WorkCounter) -> RestrictedTree {
    let mut topo: Topology<TaxonId> = Topology::with_capacity(2 * z.len() - 1);
    let mut origin_map = Vec::with_capacity(2 * z.len() - 1);
    let mut stack: Vec<Open> = Vec::new();

    let mut close = |open: Open, topo: &mut Topology<TaxonId>| -> usize {
        origin_map.push(open.origin);
        if open.children.is_empty() {
            topo.add_leaf(tree.leaf_taxon(open.origin))
        } else {
            topo.add_internal(open.children)
        }
    };

    let leaf = |v: NodeId| Open {
        origin: v,
        depth: tree.depth(v),
        children: Vec::new(),
    };

    stack.push(leaf(z[0]));
    for pair in z.windows(2) {
        let w = lca.lca(pair[0], pair[1]);
        let w_depth = tree.depth(w);
        let mut done = close(stack.pop().unwrap(), &mut topo);
        work.touch(1);
        while stack.last().is_some_and(|top| top.depth > w_depth) {
            let mut top = stack.pop().unwrap();
            top.children.push(done);
            done = close(top, &mut topo);
            work.touch(1);
        }
        match stack.last_mut() {
            Some(top) if top.origin == w => {
                // only reachable for non-binary input trees
                top.children.push(done);
            }
            _ => stack.push(Open {
                origin: w,
                depth: w_depth,
                children: vec![done],
            }),
        }
        stack.push(leaf(pair[1]));
    }
    let mut done = close(stack.pop().unwrap(), &mut topo);
    while let Some(mut top) = stack.pop() {
        top.children.push(done);
        done = close(top, &mut topo);
        work.touch(1);
    }
    topo.set_root(done);

    let tree_out = Tree::from_topology_trusted(&topo).expect("sweep output is a binary tree");
    debug_assert_eq!(tree_out.len(), origin_map.len());
    work.touch(tree_out.len());
    RestrictedTree {
        tree: tree_out,
        origin_map,
    }
}
