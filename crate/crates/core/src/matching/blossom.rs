//! Edmonds' augmenting-path algorithm with blossom contraction, restricted
//! to an induced vertex mask.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};

const NONE: usize = usize::MAX;

pub(crate) struct Blossom<'a> {
    adj: &'a [u64],
    mask: u64,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    pub(crate) fn new(g: &'a Graph, within: VertexSet) -> Self {
        let n = g.order();
        Blossom {
            adj: g.rows(),
            mask: within.bits() & VertexSet::full(n).bits(),
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    /// Runs to completion and returns the mate array (`usize::MAX` for
    /// exposed vertices).
    pub(crate) fn solve(mut self) -> Vec<usize> {
        self.greedy();
        for root in VertexSet::from_bits(self.mask) {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != NONE {
                    let pv = self.parent[v];
                    let next = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = next;
                }
            }
        }
        self.mate
    }

    fn greedy(&mut self) {
        for v in VertexSet::from_bits(self.mask) {
            if self.mate[v] != NONE {
                continue;
            }
            let free = VertexSet::from_bits(self.adj[v] & self.mask)
                .iter()
                .find(|&w| self.mate[w] == NONE);
            if let Some(w) = free {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its exposed far end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in VertexSet::from_bits(self.adj[v] & self.mask) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in VertexSet::from_bits(self.mask) {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}
