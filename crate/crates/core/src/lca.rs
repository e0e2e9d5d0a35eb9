//! Constant-time lowest common ancestor queries.
//!
//! Euler tour of the tree, then range-minimum over the depth sequence. The
//! depth sequence changes by exactly ±1 between neighbours, so it is cut into
//! blocks of `⌊log₂ len⌋ / 2` entries: a sparse table answers queries over
//! whole blocks and a per-shape lookup table answers queries inside a block.
//! Both tables are O(len) in size.

use crate::tree::{NodeId, Tree};
use crate::work::WorkCounter;

#[derive(Clone, Debug)]
pub struct LcaIndex {
    euler_tour: Vec<NodeId>,
    depth_sequence: Vec<u32>,
    first_occurrence: Vec<u32>,
    rmq: BlockRmq,
}

impl LcaIndex {
    pub fn build(tree: &Tree) -> Self {
        Self::build_counted(tree, &mut WorkCounter::new())
    }

    pub fn build_counted(tree: &Tree, work: &mut WorkCounter) -> Self {
        let m = tree.len();
        let mut euler_tour = Vec::with_capacity(2 * m - 1);
        let mut depth_sequence = Vec::with_capacity(2 * m - 1);
        let mut first_occurrence = vec![0u32; m];

        // (node, number of children already descended into)
        let mut stack = vec![(tree.root(), 0u8)];
        while let Some(top) = stack.last_mut() {
            let (v, visited) = *top;
            if visited == 0 {
                first_occurrence[v.index()] = euler_tour.len() as u32;
            }
            euler_tour.push(v);
            depth_sequence.push(tree.depth(v) as u32);
            match tree.children(v) {
                Some(kids) if visited < 2 => {
                    top.1 += 1;
                    stack.push((kids[visited as usize], 0));
                }
                _ => {
                    stack.pop();
                }
            }
        }
        debug_assert_eq!(euler_tour.len(), 2 * m - 1);
        work.touch(euler_tour.len());

        let rmq = BlockRmq::build(&depth_sequence, work);
        Self {
            euler_tour,
            depth_sequence,
            first_occurrence,
            rmq,
        }
    }

    /// Lowest common ancestor of `u` and `v`.
    #[inline]
    pub fn lca(&self, u: NodeId, v: NodeId) -> NodeId {
        let a = self.first_occurrence[u.index()] as usize;
        let b = self.first_occurrence[v.index()] as usize;
        let (l, r) = if a <= b { (a, b) } else { (b, a) };
        self.euler_tour[self.rmq.argmin(&self.depth_sequence, l, r)]
    }

    pub fn euler_tour(&self) -> &[NodeId] {
        &self.euler_tour
    }

    pub fn depth_sequence(&self) -> &[u32] {
        &self.depth_sequence
    }

    pub fn first_occurrence(&self, v: NodeId) -> usize {
        self.first_occurrence[v.index()] as usize
    }
}

/// ±1 range-minimum structure with block decomposition.
#[derive(Clone, Debug)]
struct BlockRmq {
    block: usize,
    /// Up/down step pattern of each block, bit `i` set when step `i → i+1` rises.
    shape: Vec<u32>,
    /// `sparse[k][j]`: position of the minimum over blocks `j .. j + 2^k`.
    sparse: Vec<Vec<u32>>,
    /// Per block shape, `block × block` table of in-block argmin offsets.
    in_block: Vec<Option<Box<[u8]>>>,
}

impl BlockRmq {
    fn build(values: &[u32], work: &mut WorkCounter) -> Self {
        let len = values.len();
        let block = ((floor_log2(len) / 2) as usize).max(1);
        let num_blocks = len.div_ceil(block);

        let mut shape = vec![0u32; num_blocks];
        let mut level0 = Vec::with_capacity(num_blocks);
        for (b, chunk) in values.chunks(block).enumerate() {
            let mut best = 0;
            for i in 1..chunk.len() {
                debug_assert_eq!(chunk[i].abs_diff(chunk[i - 1]), 1);
                if chunk[i] > chunk[i - 1] {
                    shape[b] |= 1 << (i - 1);
                }
                if chunk[i] < chunk[best] {
                    best = i;
                }
            }
            level0.push((b * block + best) as u32);
        }
        work.touch(len);

        let mut sparse = vec![level0];
        let mut width = 1;
        while 2 * width <= num_blocks {
            let prev = sparse.last().unwrap();
            let next: Vec<u32> = (0..=num_blocks - 2 * width)
                .map(|j| min_pos(values, prev[j], prev[j + width]))
                .collect();
            work.touch(next.len());
            sparse.push(next);
            width *= 2;
        }

        let mut in_block: Vec<Option<Box<[u8]>>> = vec![None; 1 << (block - 1)];
        for &s in &shape {
            let slot = &mut in_block[s as usize];
            if slot.is_none() {
                *slot = Some(shape_table(s, block));
                work.touch(block * block);
            }
        }

        Self {
            block,
            shape,
            sparse,
            in_block,
        }
    }

    #[inline]
    fn within(&self, b: usize, l: usize, r: usize) -> usize {
        let table = self.in_block[self.shape[b] as usize]
            .as_ref()
            .expect("table exists for every occurring shape");
        b * self.block + table[l * self.block + r] as usize
    }

    #[inline]
    fn argmin(&self, values: &[u32], l: usize, r: usize) -> usize {
        let (bl, br) = (l / self.block, r / self.block);
        if bl == br {
            return self.within(bl, l % self.block, r % self.block);
        }
        let mut best = min_pos(
            values,
            self.within(bl, l % self.block, self.block - 1) as u32,
            self.within(br, 0, r % self.block) as u32,
        );
        if bl + 1 < br {
            let (lo, hi) = (bl + 1, br - 1);
            let k = floor_log2(hi - lo + 1) as usize;
            let row = &self.sparse[k];
            best = min_pos(values, best, row[lo]);
            best = min_pos(values, best, row[hi + 1 - (1 << k)]);
        }
        best as usize
    }
}

#[inline]
fn min_pos(values: &[u32], a: u32, b: u32) -> u32 {
    if values[b as usize] < values[a as usize] {
        b
    } else {
        a
    }
}

fn floor_log2(x: usize) -> u32 {
    debug_assert!(x > 0);
    usize::BITS - 1 - x.leading_zeros()
}

/// Argmin offsets for every `l ≤ r` inside a block of the given step shape.
fn shape_table(shape: u32, block: usize) -> Box<[u8]> {
    let mut rel = vec![0i32; block];
    for i in 1..block {
        rel[i] = rel[i - 1] + if shape & (1 << (i - 1)) != 0 { 1 } else { -1 };
    }
    let mut table = vec![0u8; block * block].into_boxed_slice();
    for l in 0..block {
        let mut best = l;
        for r in l..block {
            if rel[r] < rel[best] {
                best = r;
            }
            table[l * block + r] = best as u8;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::parse_newick;

    fn naive_lca(t: &Tree, mut u: NodeId, mut v: NodeId) -> NodeId {
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

    #[test]
    fn single_leaf_tour() {
        let (t, _) = parse_newick("A;").unwrap();
        let idx = LcaIndex::build(&t);
        assert_eq!(idx.euler_tour().len(), 1);
        assert_eq!(idx.lca(t.root(), t.root()), t.root());
    }

    #[test]
    fn example_queries() {
        let (p, taxa) = parse_newick("((A,B),((C,D),E));").unwrap();
        let idx = LcaIndex::build(&p);
        assert_eq!(idx.euler_tour().len(), 17);
        let leaf = |s: &str| p.taxon_lookup()[taxa.get(s).unwrap().index()].unwrap();
        let cd = idx.lca(leaf("C"), leaf("D"));
        let names: Vec<_> = p
            .subtree_taxa(cd)
            .map(|t| taxa.name(t).to_string())
            .collect();
        assert_eq!(names, ["C", "D"]);
        assert_eq!(idx.lca(leaf("A"), leaf("E")), p.root());
        for v in p.nodes() {
            assert_eq!(idx.lca(v, v), v);
        }
    }

    #[test]
    fn tour_steps_are_unit() {
        let (t, _) = parse_newick("(((a,b),(c,(d,e))),((f,g),h));").unwrap();
        let idx = LcaIndex::build(&t);
        for w in idx.depth_sequence().windows(2) {
            assert_eq!(w[0].abs_diff(w[1]), 1);
        }
    }

    #[test]
    fn agrees_with_parent_walk_on_caterpillar() {
        // deep tree exercises many blocks and sparse levels
        let mut s = String::from("x0");
        for i in 1..300 {
            s = format!("({s},x{i})");
        }
        s.push(';');
        let (t, _) = parse_newick(&s).unwrap();
        let idx = LcaIndex::build(&t);
        for u in t.nodes().step_by(7) {
            for v in t.nodes() {
                assert_eq!(idx.lca(u, v), naive_lca(&t, u, v));
            }
        }
    }
}
