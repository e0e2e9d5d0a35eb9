use std::fmt;

use crate::tree::{TaxonId, TaxonSet};

/// Three distinct taxa in ascending order; the canonical form of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConflictTriple {
    pub a: TaxonId,
    pub b: TaxonId,
    pub c: TaxonId,
}

impl ConflictTriple {
    /// Sorts the three taxa; they must be distinct.
    #[inline]
    pub fn new(x: TaxonId, y: TaxonId, z: TaxonId) -> Self {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        let (y, z) = if y < z { (y, z) } else { (z, y) };
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        debug_assert!(x < y && y < z, "triple taxa must be distinct");
        Self { a: x, b: y, c: z }
    }

    pub fn taxa(&self) -> [TaxonId; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, t: TaxonId) -> bool {
        self.a == t || self.b == t || self.c == t
    }

    pub fn display<'a>(&'a self, taxa: &'a TaxonSet) -> impl fmt::Display + 'a {
        struct Named<'a>(&'a ConflictTriple, &'a TaxonSet);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let [a, b, c] = self.0.taxa();
                write!(
                    f,
                    "{}\t{}\t{}",
                    self.1.name(a),
                    self.1.name(b),
                    self.1.name(c)
                )
            }
        }
        Named(self, taxa)
    }
}
