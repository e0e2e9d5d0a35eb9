//! Seeded tree generation for tests and benchmarks.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit value: stream 0 drives
//! tree shapes, stream 1 drives leaf swaps. Leaf `i` always carries
//! `TaxonId(i)`, so generated trees on the same `n` share taxa.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tree::{TaxonId, Topology, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Leaf `i` attaches to a uniformly chosen edge of the tree on `0..i`
    /// (the edge above the root included).
    UniformAttachment,
    /// `((((t0,t1),t2),t3),...)`
    Caterpillar,
    /// Leaves split into halves recursively.
    Balanced,
}

impl Shape {
    pub const ALL: [Shape; 3] = [
        Shape::UniformAttachment,
        Shape::Caterpillar,
        Shape::Balanced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::UniformAttachment => "uniform",
            Shape::Caterpillar => "caterpillar",
            Shape::Balanced => "balanced",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" | "uniform-attachment" => Ok(Shape::UniformAttachment),
            "caterpillar" => Ok(Shape::Caterpillar),
            "balanced" => Ok(Shape::Balanced),
            other => Err(format!(
                "unknown shape `{other}` (expected uniform, caterpillar or balanced)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    pub shape: Shape,
    /// Leaf-label swaps applied to obtain the second tree of a pair.
    pub swaps: usize,
}

impl GeneratorConfig {
    pub fn new(n: usize, seed: u64, shape: Shape, swaps: usize) -> Self {
        assert!(n >= 1, "a tree needs at least one leaf");
        Self {
            n,
            seed,
            shape,
            swaps,
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Mutable tree used while growing shapes leaf by leaf.
#[derive(Clone, Debug)]
struct Growing {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    taxon: Vec<Option<TaxonId>>,
    root: usize,
}

impl Growing {
    fn single(taxon: TaxonId) -> Self {
        Self {
            parent: vec![None],
            children: vec![Vec::new()],
            taxon: vec![Some(taxon)],
            root: 0,
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    /// Subdivides the edge above `x` and hangs a new leaf off the new node.
    fn attach_above(&mut self, x: usize, taxon: TaxonId, leaf_first: bool) {
        let leaf = self.len();
        let joint = leaf + 1;
        self.parent.extend([Some(joint), self.parent[x]]);
        self.taxon.extend([Some(taxon), None]);
        self.children.push(Vec::new());
        self.children.push(if leaf_first {
            vec![leaf, x]
        } else {
            vec![x, leaf]
        });
        match self.parent[x] {
            Some(up) => {
                let slot = self.children[up].iter().position(|&c| c == x).unwrap();
                self.children[up][slot] = joint;
            }
            None => self.root = joint,
        }
        self.parent[x] = Some(joint);
    }

    fn to_tree(&self) -> Tree {
        let mut topo = Topology::with_capacity(self.len());
        for v in 0..self.len() {
            topo.add_node(self.children[v].clone(), self.taxon[v]);
        }
        topo.set_root(self.root);
        Tree::from_topology(&topo).expect("grown trees are binary with distinct taxa")
    }
}

pub fn random_binary_tree(cfg: &GeneratorConfig) -> Tree {
    match cfg.shape {
        Shape::Caterpillar => caterpillar(cfg.n),
        Shape::Balanced => balanced(cfg.n),
        Shape::UniformAttachment => {
            let mut rng = rng(cfg.seed, 0);
            let mut tree = Growing::single(TaxonId(0));
            for i in 1..cfg.n {
                let x = rng.gen_range(0..tree.len());
                tree.attach_above(x, TaxonId(i as u32), rng.gen_bool(0.5));
            }
            tree.to_tree()
        }
    }
}

pub fn caterpillar(n: usize) -> Tree {
    caterpillar_with(n, |i| TaxonId(i as u32))
}

/// Caterpillar with labels reversed: the deepest cherry holds the two
/// highest taxa.
pub fn reversed_caterpillar(n: usize) -> Tree {
    caterpillar_with(n, |i| TaxonId((n - 1 - i) as u32))
}

fn caterpillar_with(n: usize, label: impl Fn(usize) -> TaxonId) -> Tree {
    assert!(n >= 1);
    let mut topo = Topology::with_capacity(2 * n - 1);
    let mut spine = topo.add_leaf(label(0));
    for i in 1..n {
        let leaf = topo.add_leaf(label(i));
        spine = topo.add_internal(vec![spine, leaf]);
    }
    topo.set_root(spine);
    Tree::from_topology(&topo).expect("caterpillar is binary")
}

pub fn balanced(n: usize) -> Tree {
    fn build(topo: &mut Topology<TaxonId>, lo: usize, hi: usize) -> usize {
        if hi - lo == 1 {
            return topo.add_leaf(TaxonId(lo as u32));
        }
        let mid = lo + (hi - lo) / 2;
        let left = build(topo, lo, mid);
        let right = build(topo, mid, hi);
        topo.add_internal(vec![left, right])
    }
    assert!(n >= 1);
    let mut topo = Topology::with_capacity(2 * n - 1);
    let root = build(&mut topo, 0, n);
    topo.set_root(root);
    Tree::from_topology(&topo).expect("balanced tree is binary")
}

/// Copy of `tree` with `k` random pairs of leaf labels exchanged.
pub fn perturb_leaf_swaps(tree: &Tree, k: usize, seed: u64) -> Tree {
    let n = tree.num_leaves();
    let mut labels: Vec<TaxonId> = tree.subtree_taxa(tree.root()).collect();
    if n >= 2 {
        let mut rng = rng(seed, 1);
        for _ in 0..k {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            labels.swap(i, j);
        }
    }
    let mut new_label = vec![TaxonId(0); tree.taxon_bound()];
    for (&leaf, &label) in tree.leaves().iter().zip(&labels) {
        new_label[tree.taxon(leaf).unwrap().index()] = label;
    }
    tree.relabeled(|t| new_label[t.index()])
        .expect("swaps permute the taxa")
}

/// A generated tree and its perturbed copy.
pub fn generate_pair(cfg: &GeneratorConfig) -> (Tree, Tree) {
    let p = random_binary_tree(cfg);
    let q = perturb_leaf_swaps(&p, cfg.swaps, cfg.seed);
    (p, q)
}

/// Every rooted binary tree on taxa `0..n`, each exactly once;
/// `(2n-3)!!` of them for `n ≥ 2`.
pub fn all_topologies(n: usize) -> Vec<Tree> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut stack = vec![Growing::single(TaxonId(0))];
    while let Some(tree) = stack.pop() {
        let placed = tree.len().div_ceil(2);
        if placed == n {
            out.push(tree.to_tree());
            continue;
        }
        for x in 0..tree.len() {
            let mut next = tree.clone();
            next.attach_above(x, TaxonId(placed as u32), false);
            stack.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::serialize_newick;
    use crate::tree::TaxonSet;

    #[test]
    fn sizes() {
        for shape in Shape::ALL {
            let t = random_binary_tree(&GeneratorConfig::new(1, 7, shape, 0));
            assert_eq!(t.len(), 1);
            let t = random_binary_tree(&GeneratorConfig::new(5, 7, shape, 0));
            assert_eq!(t.num_leaves(), 5);
            assert_eq!(t.len() - t.num_leaves(), 4);
        }
    }

    #[test]
    fn deterministic() {
        let taxa = TaxonSet::numbered(40);
        let cfg = GeneratorConfig::new(40, 12345, Shape::UniformAttachment, 3);
        let (a1, b1) = generate_pair(&cfg);
        let (a2, b2) = generate_pair(&cfg);
        assert_eq!(serialize_newick(&a1, &taxa), serialize_newick(&a2, &taxa));
        assert_eq!(serialize_newick(&b1, &taxa), serialize_newick(&b2, &taxa));
        let other = random_binary_tree(&GeneratorConfig::new(
            40,
            12346,
            Shape::UniformAttachment,
            0,
        ));
        assert_ne!(
            serialize_newick(&a1, &taxa),
            serialize_newick(&other, &taxa)
        );
    }

    #[test]
    fn fixed_shapes() {
        let taxa = TaxonSet::numbered(4);
        assert_eq!(
            serialize_newick(&caterpillar(4), &taxa),
            "(((t0,t1),t2),t3);"
        );
        assert_eq!(
            serialize_newick(&reversed_caterpillar(4), &taxa),
            "(((t3,t2),t1),t0);"
        );
        assert_eq!(serialize_newick(&balanced(4), &taxa), "((t0,t1),(t2,t3));");
    }

    #[test]
    fn perturbation_keeps_topology() {
        let t = random_binary_tree(&GeneratorConfig::new(30, 1, Shape::UniformAttachment, 0));
        let s = perturb_leaf_swaps(&t, 5, 9);
        assert_eq!(t.to_topology().nodes().len(), s.to_topology().nodes().len());
        for v in t.nodes() {
            assert_eq!(t.children(v), s.children(v));
        }
        assert_eq!(perturb_leaf_swaps(&t, 0, 9), t);
    }

    #[test]
    fn topology_counts() {
        assert_eq!(all_topologies(1).len(), 1);
        assert_eq!(all_topologies(2).len(), 1);
        assert_eq!(all_topologies(3).len(), 3);
        assert_eq!(all_topologies(4).len(), 15);
        let five = all_topologies(5);
        assert_eq!(five.len(), 105);
        let taxa = TaxonSet::numbered(5);
        let distinct: std::collections::HashSet<_> =
            five.iter().map(|t| canonical(t, &taxa)).collect();
        assert_eq!(distinct.len(), 105);
    }

    /// Newick with children ordered by their smallest taxon.
    fn canonical(t: &Tree, taxa: &TaxonSet) -> String {
        fn go(t: &Tree, taxa: &TaxonSet, v: crate::tree::NodeId) -> (u32, String) {
            match t.children(v) {
                None => {
                    let x = t.taxon(v).unwrap();
                    (x.0, taxa.name(x).to_string())
                }
                Some([a, b]) => {
                    let (mut x, mut y) = (go(t, taxa, a), go(t, taxa, b));
                    if x.0 > y.0 {
                        std::mem::swap(&mut x, &mut y);
                    }
                    (x.0, format!("({},{})", x.1, y.1))
                }
            }
        }
        go(t, taxa, t.root()).1
    }
}
