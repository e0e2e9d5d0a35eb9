//! Output-sensitive enumeration of all conflict triples of a tree pair.
//!
//! Each frame of the recursion looks at the children `u_p, v_p` of the
//! current P-root and `u_q, v_q` of the current Q-root. If the children carry
//! matching leaf sets (possibly after swapping `u_q`, `v_q`), nothing touches
//! the roots and both halves recurse as views without further work.
//! Otherwise the leaves are split into common/uncommon parts per child pair,
//! every conflict whose LCA is one of the two roots is listed, and the four
//! common-leaf sets recurse as freshly induced tree pairs. The work spent on
//! splitting and inducing is at most proportional to the conflicts listed in
//! that frame, since such a frame has at most `d_r + 2` leaves.
//!
//! The recursion runs on an explicit stack: caterpillar-shaped inputs nest
//! as deep as they have leaves.

use std::borrow::Cow;
use std::rc::Rc;

use crate::equivalence::{self, LeafEquivalence, TaxonScratch};
use crate::error::{Error, Result};
use crate::lca::LcaIndex;
use crate::restrict::induced_subtree_counted;
use crate::tree::{NodeId, TaxonId, Tree};
use crate::triple::ConflictTriple;
use crate::work::WorkCounter;

/// Receives every conflict exactly once, already in canonical form.
pub trait ConflictSink {
    fn emit(&mut self, triple: ConflictTriple);
}

impl<F: FnMut(ConflictTriple)> ConflictSink for F {
    #[inline]
    fn emit(&mut self, triple: ConflictTriple) {
        self(triple)
    }
}

/// Collects emitted triples in emission order.
#[derive(Clone, Debug, Default)]
pub struct CollectingSink {
    pub triples: Vec<ConflictTriple>,
}

impl ConflictSink for CollectingSink {
    fn emit(&mut self, triple: ConflictTriple) {
        self.triples.push(triple);
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CountingSink {
    pub count: u64,
}

impl ConflictSink for CountingSink {
    #[inline]
    fn emit(&mut self, _: ConflictTriple) {
        self.count += 1;
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerationOptions {
    /// Keep a [`FrameRecord`] for every frame. Costs time and memory
    /// proportional to the frame sizes; meant for testing small inputs.
    pub record_frames: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameKind {
    /// At most one leaf; returns immediately.
    Base,
    /// Root children carry matching leaf sets; recursed on as views.
    EqualLeafSets,
    /// Leaves were partitioned and root conflicts listed.
    Partitioned,
}

#[derive(Clone, Debug)]
pub struct FrameRecord {
    pub kind: FrameKind,
    /// Taxa of the frame, in P-post-order.
    pub taxa: Vec<TaxonId>,
    /// Conflicts listed by this frame (its `d_r` triples).
    pub emitted: Vec<ConflictTriple>,
    /// `com(u_p,u_q)`, `com(v_p,v_q)`, `com(u_p,v_q)`, `com(v_p,u_q)` for
    /// the pairing in effect after the swap rule; empty for base frames.
    pub com_sets: [Vec<TaxonId>; 4],
}

/// Counters describing one enumeration run.
#[derive(Clone, Debug, Default)]
pub struct Instrumentation {
    pub frames_opened: u64,
    pub equal_frames: u64,
    pub partition_frames: u64,
    pub nodes_touched: u64,
    pub triples_emitted: u64,
    /// Sum of the per-frame root conflict counts `d_r`.
    pub root_conflicts_total: u64,
    /// Largest `d_r` seen in a single frame.
    pub max_root_conflicts: u64,
    /// Partitioning frames with more than `d_r + 2` leaves. Always zero for
    /// binary inputs; debug builds assert it.
    pub budget_violations: u64,
    pub frames: Vec<FrameRecord>,
}

/// `com` and `unc` sets of one child pair `(x_p, x_q)`, as leaves of the
/// respective tree, each in that tree's post-order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeafPartition {
    /// `L(P_{x_p}) ∩ L(Q_{x_q})`, P-leaves.
    pub com_p: Vec<NodeId>,
    /// `L(Q_{x_q}) ∩ L(P_{x_p})`, Q-leaves.
    pub com_q: Vec<NodeId>,
    /// `L(P_{x_p}) \ L(Q_{x_q})`, P-leaves.
    pub unc_p: Vec<NodeId>,
    /// `L(Q_{x_q}) \ L(P_{x_p})`, Q-leaves.
    pub unc_q: Vec<NodeId>,
}

/// Splits the leaves below `x_p` and `x_q` into common and uncommon parts.
/// Order is inherited from scanning each subtree's leaves; nothing is sorted.
pub fn partition_leaves(
    p: &Tree,
    q: &Tree,
    equiv: &LeafEquivalence,
    x_p: NodeId,
    x_q: NodeId,
    work: &mut WorkCounter,
) -> LeafPartition {
    let mut part = LeafPartition::default();
    let p_leaves = p.subtree_leaves(x_p);
    let q_leaves = q.subtree_leaves(x_q);
    for &leaf in p_leaves {
        if q.is_ancestor(x_q, equiv.q_leaf(leaf)) {
            part.com_p.push(leaf);
        } else {
            part.unc_p.push(leaf);
        }
    }
    for &leaf in q_leaves {
        if p.is_ancestor(x_p, equiv.p_leaf(leaf)) {
            part.com_q.push(leaf);
        } else {
            part.unc_q.push(leaf);
        }
    }
    work.touch(p_leaves.len() + q_leaves.len());
    part
}

/// Lists `{a, b, c}` for every `a ∈ com`, `b ∈ unc`, `c ∈ rest`.
pub fn list_common_root_conflicts<S: ConflictSink + ?Sized>(
    sink: &mut S,
    com: &[TaxonId],
    unc: &[TaxonId],
    rest: &[TaxonId],
    work: &mut WorkCounter,
) {
    work.touch(1);
    if com.is_empty() || unc.is_empty() || rest.is_empty() {
        return;
    }
    for &a in com {
        for &b in unc {
            for &c in rest {
                sink.emit(ConflictTriple::new(a, b, c));
            }
        }
    }
    work.touch(com.len() * unc.len() * rest.len());
}

/// Lists every `{a, b, c}` with `a, b ∈ z`, `c ∈ candidates` and
/// `lca(a, b) = lca(a, b, c)` in `t`.
///
/// `z` and `candidates` are disjoint leaves of `t` in post-order. Only
/// candidates strictly below `r = lca(z)` can be below some `lca(a, b)`;
/// the rest are dismissed with one interval test. For a kept candidate `c`
/// the tree `T' = t|(z ∪ {c})` is built and the path from `c` to the root of
/// `T'` is walked, pairing each `a` that shares a subtree `y` with `c` with
/// each `b` below the sibling of `y`. Every kept candidate yields at least
/// `|z| - 1` triples, which pays for building `T'`.
pub fn list_subtree_conflicts<S: ConflictSink + ?Sized>(
    sink: &mut S,
    t: &Tree,
    lca: &LcaIndex,
    z: &[NodeId],
    candidates: &[NodeId],
    work: &mut WorkCounter,
) {
    work.touch(1);
    if z.len() < 2 {
        return;
    }
    let top = lca.lca(z[0], z[z.len() - 1]);
    let mut merged = Vec::with_capacity(z.len() + 1);
    work.touch(candidates.len());
    for &c in candidates {
        if c == top || !t.is_ancestor(top, c) {
            continue;
        }
        merged.clear();
        let at = z.partition_point(|&x| x < c);
        merged.extend_from_slice(&z[..at]);
        merged.push(c);
        merged.extend_from_slice(&z[at..]);
        work.touch(merged.len());

        let local = induced_subtree_counted(t, lca, &merged, work)
            .expect("merged subset is ordered leaves")
            .tree;
        let c_leaf = local.leaves()[at];
        let c_taxon = t.leaf_taxon(c);
        let root = local.root();
        let mut y = local.parent(c_leaf).expect("c is not alone in T'");
        debug_assert_ne!(y, root, "kept candidates sit strictly below lca(z)");
        while y != root {
            let sibling = local.sibling(y).unwrap();
            let bs = local.subtree_leaves(sibling);
            let mut listed = 0;
            for &a in local.subtree_leaves(y) {
                if a == c_leaf {
                    continue;
                }
                let a_taxon = local.leaf_taxon(a);
                for &b in bs {
                    sink.emit(ConflictTriple::new(a_taxon, local.leaf_taxon(b), c_taxon));
                }
                listed += bs.len();
            }
            work.touch(listed + 1);
            y = local.parent(y).unwrap();
        }
    }
}

/// A pair of trees on the same taxa, LCA-enabled, with leaf-set equivalence.
struct PreparedPair<'t> {
    p: Cow<'t, Tree>,
    q: Cow<'t, Tree>,
    p_lca: LcaIndex,
    q_lca: LcaIndex,
    equiv: LeafEquivalence,
}

impl<'t> PreparedPair<'t> {
    fn new(
        p: Cow<'t, Tree>,
        q: Cow<'t, Tree>,
        scratch: &mut TaxonScratch,
        work: &mut WorkCounter,
    ) -> Self {
        let p_lca = LcaIndex::build_counted(&p, work);
        let q_lca = LcaIndex::build_counted(&q, work);
        let equiv = equivalence::build_counted(&p, &q, &q_lca, scratch, work);
        Self {
            p,
            q,
            p_lca,
            q_lca,
            equiv,
        }
    }
}

struct Frame<'t> {
    pair: Rc<PreparedPair<'t>>,
    p_root: NodeId,
    q_root: NodeId,
}

/// Forwards to the caller's sink while counting, and optionally capturing,
/// what the current frame emits.
struct Tally<'s, S: ?Sized> {
    inner: &'s mut S,
    emitted: u64,
    capture: Option<Vec<ConflictTriple>>,
}

impl<S: ConflictSink + ?Sized> ConflictSink for Tally<'_, S> {
    #[inline]
    fn emit(&mut self, triple: ConflictTriple) {
        self.emitted += 1;
        if let Some(buf) = &mut self.capture {
            buf.push(triple);
        }
        self.inner.emit(triple);
    }
}

/// Enumerates all conflicts of `(p, q)` into `sink`.
pub fn enumerate_conflicts<S: ConflictSink + ?Sized>(
    p: &Tree,
    q: &Tree,
    sink: &mut S,
) -> Result<Instrumentation> {
    enumerate_conflicts_with(p, q, EnumerationOptions::default(), sink)
}

pub fn enumerate_conflicts_with<S: ConflictSink + ?Sized>(
    p: &Tree,
    q: &Tree,
    options: EnumerationOptions,
    sink: &mut S,
) -> Result<Instrumentation> {
    let mut work = WorkCounter::new();
    let mut scratch = check_same_taxa(p, q, &mut work)?;
    let top = PreparedPair::new(Cow::Borrowed(p), Cow::Borrowed(q), &mut scratch, &mut work);
    let mut run = Run {
        sink: Tally {
            inner: sink,
            emitted: 0,
            capture: None,
        },
        work,
        stats: Instrumentation::default(),
        scratch,
        stack: vec![Frame {
            pair: Rc::new(top),
            p_root: p.root(),
            q_root: q.root(),
        }],
        options,
    };
    while let Some(frame) = run.stack.pop() {
        run.process(frame);
    }
    let mut stats = run.stats;
    stats.triples_emitted = run.sink.emitted;
    stats.nodes_touched = run.work.nodes_touched;
    Ok(stats)
}

/// Number of conflicts, by enumerating into a counter.
pub fn count_conflicts(p: &Tree, q: &Tree) -> Result<u64> {
    Ok(enumerate_conflicts(p, q, &mut CountingSink::default())?.triples_emitted)
}

fn check_same_taxa(p: &Tree, q: &Tree, work: &mut WorkCounter) -> Result<TaxonScratch> {
    if p.num_leaves() != q.num_leaves() {
        return Err(Error::TaxonMismatch(format!(
            "{} leaves versus {}",
            p.num_leaves(),
            q.num_leaves()
        )));
    }
    let mut scratch = TaxonScratch::with_capacity(p.taxon_bound().max(q.taxon_bound()));
    scratch.reset();
    for &leaf in q.leaves() {
        scratch.set(q.taxon(leaf).unwrap(), leaf);
    }
    for &leaf in p.leaves() {
        let t = p.taxon(leaf).unwrap();
        if scratch.get(t).is_none() {
            return Err(Error::TaxonMismatch(format!(
                "taxon {t} occurs only in the first tree"
            )));
        }
    }
    work.touch(p.num_leaves() + q.num_leaves());
    Ok(scratch)
}

struct Run<'t, 's, S: ?Sized> {
    sink: Tally<'s, S>,
    work: WorkCounter,
    stats: Instrumentation,
    scratch: TaxonScratch,
    stack: Vec<Frame<'t>>,
    options: EnumerationOptions,
}

impl<'t, S: ConflictSink + ?Sized> Run<'t, '_, S> {
    fn process(&mut self, frame: Frame<'t>) {
        self.stats.frames_opened += 1;
        self.work.touch(1);
        let pair = Rc::clone(&frame.pair);
        let (p, q) = (&*pair.p, &*pair.q);
        let frame_leaves = p.leaf_count(frame.p_root);
        debug_assert_eq!(frame_leaves, q.leaf_count(frame.q_root));

        let (Some([u_p, v_p]), Some([mut u_q, mut v_q])) =
            (p.children(frame.p_root), q.children(frame.q_root))
        else {
            self.record(FrameKind::Base, &frame, Default::default(), Vec::new());
            return;
        };
        if pair.equiv.leafsets_equal(u_p, v_q) {
            std::mem::swap(&mut u_q, &mut v_q);
        }
        if pair.equiv.leafsets_equal(u_p, u_q) {
            debug_assert!(pair.equiv.leafsets_equal(v_p, v_q));
            self.stats.equal_frames += 1;
            if self.options.record_frames {
                let com_sets = [
                    p.subtree_taxa(u_p).collect(),
                    p.subtree_taxa(v_p).collect(),
                    Vec::new(),
                    Vec::new(),
                ];
                self.record(FrameKind::EqualLeafSets, &frame, com_sets, Vec::new());
            }
            self.stack.push(Frame {
                pair: Rc::clone(&pair),
                p_root: v_p,
                q_root: v_q,
            });
            self.stack.push(Frame {
                pair: Rc::clone(&pair),
                p_root: u_p,
                q_root: u_q,
            });
            return;
        }

        self.stats.partition_frames += 1;
        let emitted_before = self.sink.emitted;
        if self.options.record_frames {
            self.sink.capture = Some(Vec::new());
        }
        let work = &mut self.work;
        let part_u = partition_leaves(p, q, &pair.equiv, u_p, u_q, work);
        let part_v = partition_leaves(p, q, &pair.equiv, v_p, v_q, work);
        for (part, other_p) in [(&part_u, v_p), (&part_v, u_p)] {
            let com: Vec<TaxonId> = part.com_p.iter().map(|&l| p.leaf_taxon(l)).collect();
            let unc: Vec<TaxonId> = part.unc_p.iter().map(|&l| p.leaf_taxon(l)).collect();
            let rest: Vec<TaxonId> = p.subtree_taxa(other_p).collect();
            work.touch(com.len() + unc.len() + rest.len());
            list_common_root_conflicts(&mut self.sink, &com, &unc, &rest, work);
            list_subtree_conflicts(
                &mut self.sink,
                p,
                &pair.p_lca,
                &part.com_p,
                &part.unc_p,
                work,
            );
            list_subtree_conflicts(
                &mut self.sink,
                p,
                &pair.p_lca,
                &part.unc_p,
                &part.com_p,
                work,
            );
            list_subtree_conflicts(
                &mut self.sink,
                q,
                &pair.q_lca,
                &part.com_q,
                &part.unc_q,
                work,
            );
            list_subtree_conflicts(
                &mut self.sink,
                q,
                &pair.q_lca,
                &part.unc_q,
                &part.com_q,
                work,
            );
        }
        let root_conflicts = self.sink.emitted - emitted_before;
        self.stats.root_conflicts_total += root_conflicts;
        self.stats.max_root_conflicts = self.stats.max_root_conflicts.max(root_conflicts);
        if frame_leaves as u64 > root_conflicts + 2 {
            self.stats.budget_violations += 1;
        }
        debug_assert!(
            frame_leaves as u64 <= root_conflicts + 2,
            "partitioning frame with {frame_leaves} leaves listed only {root_conflicts} root conflicts"
        );

        if self.options.record_frames {
            let taxa_of =
                |leaves: &[NodeId]| leaves.iter().map(|&l| p.leaf_taxon(l)).collect::<Vec<_>>();
            let com_sets = [
                taxa_of(&part_u.com_p),
                taxa_of(&part_v.com_p),
                taxa_of(&part_u.unc_p),
                taxa_of(&part_v.unc_p),
            ];
            let emitted = self.sink.capture.take().unwrap_or_default();
            self.record(FrameKind::Partitioned, &frame, com_sets, emitted);
        }

        // popped in reverse: com(u), com(v), then the two uncommon pairs
        self.push_induced(&pair, &part_v.unc_p, &part_u.unc_q);
        self.push_induced(&pair, &part_u.unc_p, &part_v.unc_q);
        self.push_induced(&pair, &part_v.com_p, &part_v.com_q);
        self.push_induced(&pair, &part_u.com_p, &part_u.com_q);
    }

    /// Queues the pair `(P|zp, Q|zq)`; `zp` and `zq` hold the same taxa.
    fn push_induced(&mut self, pair: &PreparedPair<'t>, zp: &[NodeId], zq: &[NodeId]) {
        debug_assert_eq!(zp.len(), zq.len());
        if zp.len() <= 1 {
            return;
        }
        let work = &mut self.work;
        let p =
            induced_subtree_counted(&pair.p, &pair.p_lca, zp, work).expect("partition is ordered");
        let q =
            induced_subtree_counted(&pair.q, &pair.q_lca, zq, work).expect("partition is ordered");
        let prepared = PreparedPair::new(
            Cow::Owned(p.tree),
            Cow::Owned(q.tree),
            &mut self.scratch,
            work,
        );
        let (p_root, q_root) = (prepared.p.root(), prepared.q.root());
        self.stack.push(Frame {
            pair: Rc::new(prepared),
            p_root,
            q_root,
        });
    }

    fn record(
        &mut self,
        kind: FrameKind,
        frame: &Frame<'t>,
        com_sets: [Vec<TaxonId>; 4],
        emitted: Vec<ConflictTriple>,
    ) {
        if !self.options.record_frames {
            return;
        }
        self.stats.frames.push(FrameRecord {
            kind,
            taxa: frame.pair.p.subtree_taxa(frame.p_root).collect(),
            emitted,
            com_sets,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::{parse_newick, parse_newick_with_taxa};
    use crate::tree::TaxonSet;

    fn example() -> (Tree, Tree, TaxonSet) {
        let (p, taxa) = parse_newick("((A,B),((C,D),E));").unwrap();
        let q = parse_newick_with_taxa("((A,B),((D,E),C));", &taxa).unwrap();
        (p, q, taxa)
    }

    fn names(taxa: &TaxonSet, ts: &[TaxonId]) -> Vec<String> {
        ts.iter().map(|&t| taxa.name(t).to_string()).collect()
    }

    fn leaves(t: &Tree, taxa: &TaxonSet, s: &str) -> Vec<NodeId> {
        let lookup = t.taxon_lookup();
        let mut v: Vec<_> = s
            .chars()
            .map(|c| lookup[taxa.get(&c.to_string()).unwrap().index()].unwrap())
            .collect();
        v.sort();
        v
    }

    fn triple(taxa: &TaxonSet, s: &str) -> ConflictTriple {
        let v: Vec<_> = s
            .chars()
            .map(|c| taxa.get(&c.to_string()).unwrap())
            .collect();
        ConflictTriple::new(v[0], v[1], v[2])
    }

    #[test]
    fn example_single_conflict() {
        let (p, q, taxa) = example();
        let mut sink = CollectingSink::default();
        let stats = enumerate_conflicts(&p, &q, &mut sink).unwrap();
        assert_eq!(sink.triples, [triple(&taxa, "CDE")]);
        assert_eq!(stats.triples_emitted, 1);
        assert_eq!(stats.root_conflicts_total, 1);
        assert_eq!(count_conflicts(&p, &q).unwrap(), 1);
        assert_eq!(count_conflicts(&p, &p).unwrap(), 0);
    }

    #[test]
    fn example_partitions() {
        let (p, q, taxa) = example();
        let lca_q = LcaIndex::build(&q);
        let equiv = equivalence::build_leaf_equivalence(&p, &q, &lca_q).unwrap();
        let [ab_p, cde_p] = p.children(p.root()).unwrap();
        let [_, cde_q] = q.children(q.root()).unwrap();
        let mut work = WorkCounter::new();
        let part = partition_leaves(&p, &q, &equiv, ab_p, cde_q, &mut work);
        assert!(part.com_p.is_empty() && part.com_q.is_empty());
        assert_eq!(part.unc_p, leaves(&p, &taxa, "AB"));
        assert_eq!(part.unc_q, leaves(&q, &taxa, "DEC"));
        let part = partition_leaves(&p, &q, &equiv, cde_p, cde_q, &mut work);
        assert_eq!(part.com_p, leaves(&p, &taxa, "CDE"));
        assert_eq!(part.com_q, leaves(&q, &taxa, "DEC"));
        assert!(part.unc_p.is_empty() && part.unc_q.is_empty());
    }

    #[test]
    fn common_root_product() {
        let taxa = TaxonSet::from_names(["A", "B", "C", "D"]).unwrap();
        let id = |s| taxa.get(s).unwrap();
        let mut sink = CollectingSink::default();
        let mut work = WorkCounter::new();
        list_common_root_conflicts(
            &mut sink,
            &[id("C")],
            &[id("D")],
            &[id("A"), id("B")],
            &mut work,
        );
        assert_eq!(sink.triples, [triple(&taxa, "ACD"), triple(&taxa, "BCD")]);
        let mut sink = CollectingSink::default();
        list_common_root_conflicts(&mut sink, &[], &[id("D")], &[id("A")], &mut work);
        assert!(sink.triples.is_empty());
    }

    #[test]
    fn subtree_conflicts_on_example() {
        let (p, _, taxa) = example();
        let idx = LcaIndex::build(&p);
        let mut work = WorkCounter::new();
        let mut sink = CollectingSink::default();
        list_subtree_conflicts(
            &mut sink,
            &p,
            &idx,
            &leaves(&p, &taxa, "CE"),
            &leaves(&p, &taxa, "D"),
            &mut work,
        );
        assert_eq!(sink.triples, [triple(&taxa, "CDE")]);

        let mut sink = CollectingSink::default();
        list_subtree_conflicts(
            &mut sink,
            &p,
            &idx,
            &leaves(&p, &taxa, "AB"),
            &leaves(&p, &taxa, "C"),
            &mut work,
        );
        assert!(sink.triples.is_empty());

        let mut sink = CollectingSink::default();
        list_subtree_conflicts(
            &mut sink,
            &p,
            &idx,
            &leaves(&p, &taxa, "C"),
            &leaves(&p, &taxa, "DE"),
            &mut work,
        );
        list_subtree_conflicts(
            &mut sink,
            &p,
            &idx,
            &[],
            &leaves(&p, &taxa, "DE"),
            &mut work,
        );
        assert!(sink.triples.is_empty());
    }

    #[test]
    fn subtree_conflicts_walk_whole_path() {
        // c = C: first step lists DAC, DBC; second lists {A,B,D} × {E,F} with C
        let (t, taxa) = parse_newick("(((A,B),(C,D)),(E,F));").unwrap();
        let idx = LcaIndex::build(&t);
        let mut work = WorkCounter::new();
        let mut sink = CollectingSink::default();
        let z = leaves(&t, &taxa, "ABDEF");
        list_subtree_conflicts(&mut sink, &t, &idx, &z, &leaves(&t, &taxa, "C"), &mut work);
        let mut got = sink.triples.clone();
        got.sort();
        let mut want: Vec<_> = ["ACD", "BCD", "ACE", "ACF", "BCE", "BCF", "CDE", "CDF"]
            .iter()
            .map(|s| triple(&taxa, s))
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn records_frames() {
        let (p, q, taxa) = example();
        let mut sink = CountingSink::default();
        let stats = enumerate_conflicts_with(
            &p,
            &q,
            EnumerationOptions {
                record_frames: true,
            },
            &mut sink,
        )
        .unwrap();
        assert_eq!(stats.frames.len() as u64, stats.frames_opened);
        let root = &stats.frames[0];
        assert_eq!(root.kind, FrameKind::EqualLeafSets);
        assert_eq!(names(&taxa, &root.com_sets[0]), ["A", "B"]);
        let cde = stats
            .frames
            .iter()
            .find(|f| f.kind == FrameKind::Partitioned)
            .unwrap();
        assert_eq!(names(&taxa, &cde.taxa), ["C", "D", "E"]);
        assert_eq!(cde.emitted, [triple(&taxa, "CDE")]);
    }

    #[test]
    fn mismatched_taxa_rejected() {
        let (p, _, _) = example();
        let (other, _) = parse_newick("((A,B),(C,D));").unwrap();
        assert!(matches!(
            count_conflicts(&p, &other),
            Err(Error::TaxonMismatch(_))
        ));
    }
}
