/// Counts primitive steps (node visits, emitted triples) so that running
/// time can be checked against input plus output size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WorkCounter {
    pub nodes_touched: u64,
}

impl WorkCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn touch(&mut self, n: usize) {
        self.nodes_touched += n as u64;
    }
}
