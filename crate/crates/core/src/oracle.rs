//! Ground truth: triple resolution straight from LCA queries and the cubic
//! enumerator that checks every triple. Used as the reference the fast
//! enumerator is tested against, so it deliberately shares nothing with it
//! beyond the tree model and the LCA index.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lca::LcaIndex;
use crate::tree::{NodeId, TaxonId, TaxonSet, Tree};
use crate::triple::ConflictTriple;

/// Which pair of the canonical triple `a < b < c` is separated from the third.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BiasPair {
    /// `ab|c`
    AB,
    /// `ac|b`
    AC,
    /// `bc|a`
    BC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Resolution {
    pub triple: ConflictTriple,
    pub bias: BiasPair,
}

impl Resolution {
    /// The two taxa whose LCA lies strictly below the triple's LCA.
    pub fn pair(&self) -> (TaxonId, TaxonId) {
        let ConflictTriple { a, b, c } = self.triple;
        match self.bias {
            BiasPair::AB => (a, b),
            BiasPair::AC => (a, c),
            BiasPair::BC => (b, c),
        }
    }

    pub fn outgroup(&self) -> TaxonId {
        let ConflictTriple { a, b, c } = self.triple;
        match self.bias {
            BiasPair::AB => c,
            BiasPair::AC => b,
            BiasPair::BC => a,
        }
    }

    /// `xy|z` with taxon names.
    pub fn display<'a>(&'a self, taxa: &'a TaxonSet) -> impl fmt::Display + 'a {
        struct Named<'a>(&'a Resolution, &'a TaxonSet);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (x, y) = self.0.pair();
                let z = self.0.outgroup();
                write!(f, "{}{}|{}", self.1.name(x), self.1.name(y), self.1.name(z))
            }
        }
        Named(self, taxa)
    }
}

/// Resolves triples of one tree by taxon.
pub struct TripleResolver<'a> {
    tree: &'a Tree,
    lca: &'a LcaIndex,
    leaf_of: Vec<Option<NodeId>>,
}

impl<'a> TripleResolver<'a> {
    pub fn new(tree: &'a Tree, lca: &'a LcaIndex) -> Self {
        Self {
            tree,
            lca,
            leaf_of: tree.taxon_lookup(),
        }
    }

    pub fn tree(&self) -> &Tree {
        self.tree
    }

    fn leaf(&self, t: TaxonId) -> Result<NodeId> {
        self.leaf_of
            .get(t.index())
            .copied()
            .flatten()
            .ok_or_else(|| Error::TaxonMismatch(format!("taxon {t} is not a leaf of the tree")))
    }

    pub fn resolve(&self, x: TaxonId, y: TaxonId, z: TaxonId) -> Result<Resolution> {
        if x == y || y == z || x == z {
            return Err(Error::NonDistinctTaxa);
        }
        let triple = ConflictTriple::new(x, y, z);
        let [a, b, c] = triple.taxa();
        let (la, lb, lc) = (self.leaf(a)?, self.leaf(b)?, self.leaf(c)?);
        let ab = self.lca.lca(la, lb);
        let ac = self.lca.lca(la, lc);
        let bias = if ab == ac {
            BiasPair::BC
        } else if self.tree.is_ancestor(ac, ab) {
            BiasPair::AB
        } else {
            BiasPair::AC
        };
        if cfg!(debug_assertions) {
            let bc = self.lca.lca(lb, lc);
            let top = if bias == BiasPair::AB { ac } else { ab };
            let lows = [ab, ac, bc].iter().filter(|&&x| x != top).count();
            assert_eq!(
                lows, 1,
                "a binary tree resolves every triple with exactly one pair"
            );
        }
        Ok(Resolution { triple, bias })
    }
}

/// One-off resolution; builds a taxon lookup, so prefer [`TripleResolver`]
/// for repeated queries.
pub fn resolve_triple(
    tree: &Tree,
    lca: &LcaIndex,
    a: TaxonId,
    b: TaxonId,
    c: TaxonId,
) -> Result<Resolution> {
    TripleResolver::new(tree, lca).resolve(a, b, c)
}

pub fn is_conflict(
    p: &Tree,
    q: &Tree,
    p_lca: &LcaIndex,
    q_lca: &LcaIndex,
    a: TaxonId,
    b: TaxonId,
    c: TaxonId,
) -> Result<bool> {
    Ok(resolve_triple(p, p_lca, a, b, c)?.bias != resolve_triple(q, q_lca, a, b, c)?.bias)
}

/// Sorted taxa of `p`, after checking that `q` carries the same ones.
fn common_taxa(p: &Tree, q: &Tree) -> Result<Vec<TaxonId>> {
    let lp = p.taxon_lookup();
    let lq = q.taxon_lookup();
    let same = lp.len() == lq.len() && lp.iter().zip(&lq).all(|(x, y)| x.is_some() == y.is_some());
    if !same {
        return Err(Error::TaxonMismatch(
            "the two trees carry different taxa".into(),
        ));
    }
    Ok((0..lp.len() as u32)
        .map(TaxonId)
        .filter(|t| lp[t.index()].is_some())
        .collect())
}

/// Every conflict of `(p, q)` by testing all triples.
pub fn enumerate_bruteforce(p: &Tree, q: &Tree) -> Result<BTreeSet<ConflictTriple>> {
    let taxa = common_taxa(p, q)?;
    let (p_lca, q_lca) = (LcaIndex::build(p), LcaIndex::build(q));
    let rp = TripleResolver::new(p, &p_lca);
    let rq = TripleResolver::new(q, &q_lca);
    let mut out = BTreeSet::new();
    for (i, &a) in taxa.iter().enumerate() {
        for (j, &b) in taxa.iter().enumerate().skip(i + 1) {
            for &c in &taxa[j + 1..] {
                let x = rp.resolve(a, b, c)?;
                if x.bias != rq.resolve(a, b, c)?.bias {
                    out.insert(x.triple);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::{parse_newick, parse_newick_with_taxa};

    struct Example {
        p: Tree,
        q: Tree,
        taxa: TaxonSet,
    }

    fn example() -> Example {
        let (p, taxa) = parse_newick("((A,B),((C,D),E));").unwrap();
        let q = parse_newick_with_taxa("((A,B),((D,E),C));", &taxa).unwrap();
        Example { p, q, taxa }
    }

    fn ids(taxa: &TaxonSet, names: &str) -> [TaxonId; 3] {
        let v: Vec<_> = names
            .chars()
            .map(|c| taxa.get(&c.to_string()).unwrap())
            .collect();
        [v[0], v[1], v[2]]
    }

    fn show(t: &Tree, taxa: &TaxonSet, names: &str) -> String {
        let idx = LcaIndex::build(t);
        let [a, b, c] = ids(taxa, names);
        resolve_triple(t, &idx, a, b, c)
            .unwrap()
            .display(taxa)
            .to_string()
    }

    #[test]
    fn example_resolutions() {
        let f = example();
        assert_eq!(show(&f.p, &f.taxa, "CDE"), "CD|E");
        assert_eq!(show(&f.q, &f.taxa, "CDE"), "DE|C");
        assert_eq!(show(&f.p, &f.taxa, "ABE"), "AB|E");
        assert_eq!(show(&f.p, &f.taxa, "EBA"), "AB|E");
    }

    #[test]
    fn example_conflicts() {
        let f = example();
        let (ip, iq) = (LcaIndex::build(&f.p), LcaIndex::build(&f.q));
        let [c, d, e] = ids(&f.taxa, "CDE");
        assert!(is_conflict(&f.p, &f.q, &ip, &iq, c, d, e).unwrap());
        let [a, b, c] = ids(&f.taxa, "ABC");
        assert!(!is_conflict(&f.p, &f.q, &ip, &iq, a, b, c).unwrap());
        assert!(!is_conflict(&f.p, &f.p, &ip, &ip, a, b, c).unwrap());
        let all = enumerate_bruteforce(&f.p, &f.q).unwrap();
        let [c, d, e] = ids(&f.taxa, "CDE");
        assert_eq!(
            all.into_iter().collect::<Vec<_>>(),
            [ConflictTriple::new(c, d, e)]
        );
        assert!(enumerate_bruteforce(&f.p, &f.p).unwrap().is_empty());
    }

    #[test]
    fn caterpillar_against_reversed() {
        let p_text = "((((t0,t1),t2),t3),t4);";
        let (p, taxa) = parse_newick(p_text).unwrap();
        let q = parse_newick_with_taxa("((((t4,t3),t2),t1),t0);", &taxa).unwrap();
        assert_eq!(enumerate_bruteforce(&p, &q).unwrap().len(), 10);
    }

    #[test]
    fn rejects_repeated_taxa() {
        let f = example();
        let idx = LcaIndex::build(&f.p);
        let [a, b, _] = ids(&f.taxa, "ABC");
        assert_eq!(
            resolve_triple(&f.p, &idx, a, b, a).unwrap_err(),
            Error::NonDistinctTaxa
        );
    }

    #[test]
    fn mismatched_taxa() {
        let f = example();
        let (other, _) = parse_newick("((A,B),(C,D));").unwrap();
        assert!(matches!(
            enumerate_bruteforce(&f.p, &other),
            Err(Error::TaxonMismatch(_))
        ));
    }
}
