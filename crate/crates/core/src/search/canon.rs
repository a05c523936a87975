//! Canonical labelling by individualization and refinement.
//!
//! The search tree branches on the first non-singleton cell of an
//! equitable ordered partition; every leaf is a labelling and the canonical
//! form is the leaf whose relabelled adjacency rows are lexicographically
//! smallest. Vertices in the same cell that are twins (same neighbourhood
//! apart from each other) give isomorphic subtrees, so only one of each
//! twin class is explored.

use crate::graph::Graph;

/// Adjacency rows of the canonical relabelling: isomorphic graphs, and only
/// those, get equal codes.
pub fn canonical_code(g: &Graph) -> Vec<u64> {
    let mut search = Search::new(g);
    search.run();
    search.best
}

/// The canonically relabelled copy of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let rows = canonical_code(g);
    Graph::from_rows_unchecked(rows)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && a.degree_profile() == b.degree_profile()
        && canonical_code(a) == canonical_code(b)
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    best: Vec<u64>,
    have_best: bool,
    scratch: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            adj: g.rows(),
            n: g.order(),
            best: vec![0; g.order()],
            have_best: false,
            scratch: vec![0; g.order()],
        }
    }

    fn run(&mut self) {
        if self.n == 0 {
            return;
        }
        let mut cells = vec![(1u64 << self.n) - 1];
        if self.n == 64 {
            cells[0] = u64::MAX;
        }
        self.refine(&mut cells);
        self.descend(cells);
    }

    /// Splits cells by neighbour counts into every other cell until the
    /// partition is equitable. Sub-cells are ordered by count, so the
    /// result does not depend on vertex labels.
    fn refine(&self, cells: &mut Vec<u64>) {
        let mut changed = true;
        while changed {
            changed = false;
            let mut s = 0;
            while s < cells.len() {
                let splitter = cells[s];
                let mut c = 0;
                while c < cells.len() {
                    let cell = cells[c];
                    if cell & (cell - 1) == 0 {
                        c += 1;
                        continue;
                    }
                    let parts = self.split(cell, splitter);
                    if parts.len() > 1 {
                        let added = parts.len() - 1;
                        cells.splice(c..=c, parts);
                        changed = true;
                        c += added + 1;
                    } else {
                        c += 1;
                    }
                }
                s += 1;
            }
        }
    }

    fn split(&self, cell: u64, splitter: u64) -> Vec<u64> {
        let mut buckets: [u64; 65] = [0; 65];
        let mut used = 0u128;
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & splitter).count_ones() as usize;
            buckets[d] |= 1 << v;
            used |= 1 << d;
        }
        if used.count_ones() == 1 {
            return vec![cell];
        }
        let mut parts = Vec::with_capacity(used.count_ones() as usize);
        while used != 0 {
            let d = used.trailing_zeros() as usize;
            used &= used - 1;
            parts.push(buckets[d]);
        }
        parts
    }

    fn descend(&mut self, cells: Vec<u64>) {
        let Some(target) = cells.iter().position(|c| c & (c - 1) != 0) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        let mut tried = 0u64;
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.twin_of_tried(v, tried) {
                continue;
            }
            tried |= 1 << v;
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(1 << v);
            next.push(cell & !(1 << v));
            next.extend_from_slice(&cells[target + 1..]);
            self.refine(&mut next);
            self.descend(next);
        }
    }

    fn twin_of_tried(&self, v: usize, tried: u64) -> bool {
        let mut t = tried;
        while t != 0 {
            let w = t.trailing_zeros() as usize;
            t &= t - 1;
            let mask = !((1u64 << v) | (1u64 << w));
            if self.adj[v] & mask == self.adj[w] & mask {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self, cells: &[u64]) {
        // cells are singletons: position i holds the vertex relabelled to i
        let mut new_of = [0usize; 64];
        for (i, c) in cells.iter().enumerate() {
            new_of[c.trailing_zeros() as usize] = i;
        }
        for (i, c) in cells.iter().enumerate() {
            let old = c.trailing_zeros() as usize;
            let mut row = 0u64;
            let mut nb = self.adj[old];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                row |= 1 << new_of[w];
            }
            self.scratch[i] = row;
        }
        if !self.have_best || self.scratch < self.best {
            self.best.copy_from_slice(&self.scratch);
            self.have_best = true;
        }
    }
}
