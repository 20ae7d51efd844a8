//! Maximum-cardinality bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const UNMATCHED: usize = usize::MAX;

pub struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    n_right: usize,
    match_left: Vec<usize>,
    match_right: Vec<usize>,
    dist: Vec<usize>,
}

impl<'a> HopcroftKarp<'a> {
    /// `adj[u]` lists the right vertices adjacent to left vertex `u`.
    pub fn new(adj: &'a [Vec<usize>], n_right: usize) -> Self {
        Self {
            adj,
            n_right,
            match_left: vec![UNMATCHED; adj.len()],
            match_right: vec![UNMATCHED; n_right],
            dist: vec![0; adj.len()],
        }
    }

    /// Runs to completion and returns the matching size.
    pub fn solve(&mut self) -> usize {
        let mut size = 0;
        while self.bfs() {
            for u in 0..self.adj.len() {
                if self.match_left[u] == UNMATCHED && self.dfs(u) {
                    size += 1;
                }
            }
        }
        size
    }

    /// Partner of each left vertex, if any.
    pub fn left_partners(&self) -> Vec<Option<usize>> {
        self.match_left
            .iter()
            .map(|&v| (v != UNMATCHED).then_some(v))
            .collect()
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.adj.len() {
            if self.match_left[u] == UNMATCHED {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let w = self.match_right[v];
                if w == UNMATCHED {
                    found = true;
                } else if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            let w = self.match_right[v];
            if w == UNMATCHED || (self.dist[w] == self.dist[u] + 1 && self.dfs(w)) {
                self.match_left[u] = v;
                self.match_right[v] = u;
                return true;
            }
        }
        self.dist[u] = usize::MAX;
        false
    }
}
