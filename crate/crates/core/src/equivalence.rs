//! O(1) test for `L(P_u) = L(Q_v)` after linear preprocessing.
//!
//! `m(u)` is the lowest node of `Q` whose leaf set contains `L(P_u)`:
//! the matching leaf for a leaf, and the Q-LCA of the children's images
//! otherwise. Since `L(P_u) ⊆ L(Q_{m(u)})`, the sets are equal exactly when
//! `m(u) = v` and both subtrees hold the same number of leaves.

use crate::error::{Error, Result};
use crate::lca::LcaIndex;
use crate::tree::{NodeId, TaxonId, Tree};
use crate::work::WorkCounter;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct LeafEquivalence {
    m: Vec<NodeId>,
    count_p: Vec<u32>,
    count_q: Vec<u32>,
    q_leaf_to_p: Vec<u32>,
}

/// Per-taxon lookup table reused across many small trees. Entries written
/// under an older stamp read as absent, so a reset costs O(1).
#[derive(Clone, Debug, Default)]
pub(crate) struct TaxonScratch {
    slots: Vec<(u32, u32)>,
    stamp: u32,
}

impl TaxonScratch {
    pub(crate) fn with_capacity(n: usize) -> Self {
        Self {
            slots: vec![(0, 0); n],
            stamp: 0,
        }
    }

    pub(crate) fn reset(&mut self) {
        self.stamp += 1;
    }

    pub(crate) fn set(&mut self, taxon: TaxonId, v: NodeId) {
        let i = taxon.index();
        if i >= self.slots.len() {
            self.slots.resize(i + 1, (0, 0));
        }
        self.slots[i] = (self.stamp, v.0);
    }

    pub(crate) fn get(&self, taxon: TaxonId) -> Option<NodeId> {
        match self.slots.get(taxon.index()) {
            Some(&(s, v)) if s == self.stamp => Some(NodeId(v)),
            _ => None,
        }
    }
}

pub fn build_leaf_equivalence(p: &Tree, q: &Tree, q_lca: &LcaIndex) -> Result<LeafEquivalence> {
    if p.num_leaves() != q.num_leaves() {
        return Err(Error::TaxonMismatch(format!(
            "{} leaves versus {}",
            p.num_leaves(),
            q.num_leaves()
        )));
    }
    let mut scratch = TaxonScratch::with_capacity(q.taxon_bound());
    scratch.reset();
    for &leaf in q.leaves() {
        scratch.set(q.leaf_taxon(leaf), leaf);
    }
    if let Some(&missing) = p
        .leaves()
        .iter()
        .find(|&&l| scratch.get(p.leaf_taxon(l)).is_none())
    {
        return Err(Error::TaxonMismatch(format!(
            "taxon {} occurs only in the first tree",
            p.leaf_taxon(missing)
        )));
    }
    Ok(build_counted(
        p,
        q,
        q_lca,
        &mut scratch,
        &mut WorkCounter::new(),
    ))
}

/// Caller guarantees both trees carry the same taxa.
pub(crate) fn build_counted(
    p: &Tree,
    q: &Tree,
    q_lca: &LcaIndex,
    scratch: &mut TaxonScratch,
    work: &mut WorkCounter,
) -> LeafEquivalence {
    scratch.reset();
    for &leaf in q.leaves() {
        scratch.set(q.leaf_taxon(leaf), leaf);
    }
    let mut q_leaf_to_p = vec![NONE; q.len()];
    let mut m = Vec::with_capacity(p.len());
    for u in p.nodes() {
        let image = match p.children(u) {
            None => {
                let target = scratch
                    .get(p.leaf_taxon(u))
                    .expect("taxon present in both trees");
                q_leaf_to_p[target.index()] = u.0;
                target
            }
            Some([a, b]) => q_lca.lca(m[a.index()], m[b.index()]),
        };
        m.push(image);
    }
    work.touch(p.len() + q.len());
    LeafEquivalence {
        m,
        count_p: p.nodes().map(|v| p.leaf_count(v) as u32).collect(),
        count_q: q.nodes().map(|v| q.leaf_count(v) as u32).collect(),
        q_leaf_to_p,
    }
}

impl LeafEquivalence {
    /// Lowest Q-node whose leaf set contains `L(P_u)`.
    #[inline]
    pub fn m(&self, u: NodeId) -> NodeId {
        self.m[u.index()]
    }

    /// True iff `P_u` and `Q_v` have identical leaf sets.
    #[inline]
    pub fn leafsets_equal(&self, u: NodeId, v: NodeId) -> bool {
        self.m[u.index()] == v && self.count_p[u.index()] == self.count_q[v.index()]
    }

    /// The P-leaf with the same taxon as Q-leaf `v`.
    #[inline]
    pub fn p_leaf(&self, q_leaf: NodeId) -> NodeId {
        let u = self.q_leaf_to_p[q_leaf.index()];
        debug_assert_ne!(u, NONE, "not a leaf of Q");
        NodeId(u)
    }

    /// The Q-leaf with the same taxon as P-leaf `u`.
    #[inline]
    pub fn q_leaf(&self, p_leaf: NodeId) -> NodeId {
        self.m[p_leaf.index()]
    }
}
