#![allow(dead_code)]

use std::collections::BTreeSet;

use tripconf::generator::{generate_pair, random_binary_tree, GeneratorConfig, Shape};
use tripconf::{NodeId, TaxonId, Tree};

/// LCA by walking parent pointers up to equal depth, then in lockstep.
pub fn parent_walk_lca(t: &Tree, mut u: NodeId, mut v: NodeId) -> NodeId {
    while t.depth(u) > t.depth(v) {
        u = t.parent(u).unwrap();
    }
    while t.depth(v) > t.depth(u) {
        v = t.parent(v).unwrap();
    }
    while u != v {
        u = t.parent(u).unwrap();
        v = t.parent(v).unwrap();
    }
    u
}

/// Ancestry by walking up from `v`.
pub fn parent_walk_is_ancestor(t: &Tree, u: NodeId, v: NodeId) -> bool {
    let mut x = Some(v);
    while let Some(y) = x {
        if y == u {
            return true;
        }
        x = t.parent(y);
    }
    false
}

pub fn leaf_set(t: &Tree, v: NodeId) -> BTreeSet<TaxonId> {
    t.subtree_taxa(v).collect()
}

/// The random-pair corpus: `count` seeded pairs with n in [3, 40] and
/// k in [0, n] swaps, mixing shapes.
pub fn random_pairs(count: u64) -> impl Iterator<Item = (GeneratorConfig, Tree, Tree)> {
    (0..count).map(|i| {
        let seed = 0x5eed_0000 + i;
        let n = 3 + (i as usize * 7 + i as usize / 38) % 38;
        let k = (i as usize * 13) % (n + 1);
        let shape = if i % 10 == 9 {
            Shape::Balanced
        } else {
            Shape::UniformAttachment
        };
        let cfg = GeneratorConfig::new(n, seed, shape, k);
        let (p, q) = generate_pair(&cfg);
        (cfg, p, q)
    })
}

/// Two independent uniform trees on the same taxa.
pub fn independent_pair(n: usize, seed: u64) -> (Tree, Tree) {
    let p = random_binary_tree(&GeneratorConfig::new(n, seed, Shape::UniformAttachment, 0));
    let q = random_binary_tree(&GeneratorConfig::new(
        n,
        seed ^ 0xabcdef,
        Shape::UniformAttachment,
        0,
    ));
    (p, q)
}
