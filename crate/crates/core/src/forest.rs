//! Synchronization components over the cuts of a word.
//!
//! Cuts that must agree on membership in the left-cut and right-cut sets are
//! kept in one component. Components are stored as rooted trees of height
//! one: every cut points straight at its root, and only roots carry the
//! `L`/`R` flags. New synchronization edges are buffered and folded in by
//! [`SyncForest::recompress`], which rebuilds the height-one shape in time
//! linear in the number of cuts plus pending edges.

use crate::{Error, Result};

/// Which of the two cut sets a flag refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Left cuts.
    L,
    /// Right cuts.
    R,
}

#[derive(Clone, Debug)]
pub struct SyncForest {
    parent: Vec<usize>,
    flag_l: Vec<bool>,
    flag_r: Vec<bool>,
    pending: Vec<(usize, usize)>,
}

impl SyncForest {
    /// One singleton component per cut `0..=n`, no flags.
    pub fn new(n: usize) -> Self {
        SyncForest {
            parent: (0..=n).collect(),
            flag_l: vec![false; n + 1],
            flag_r: vec![false; n + 1],
            pending: Vec::new(),
        }
    }

    /// Number of cuts, `n + 1`.
    pub fn cut_count(&self) -> usize {
        self.parent.len()
    }

    fn check(&self, c: usize) -> Result<()> {
        if c < self.parent.len() {
            Ok(())
        } else {
            Err(Error::CutOutOfRange {
                cut: c,
                len: self.parent.len() - 1,
            })
        }
    }

    /// Root of `c` as of the last recompression.
    pub fn find(&self, c: usize) -> Result<usize> {
        self.check(c)?;
        Ok(self.parent[c])
    }

    fn flags_mut(&mut self, side: Side) -> &mut Vec<bool> {
        match side {
            Side::L => &mut self.flag_l,
            Side::R => &mut self.flag_r,
        }
    }

    fn flags(&self, side: Side) -> &[bool] {
        match side {
            Side::L => &self.flag_l,
            Side::R => &self.flag_r,
        }
    }

    /// Marks the component of `c` as belonging to `side`. Returns whether the
    /// flag was newly set.
    pub fn set_flag(&mut self, c: usize, side: Side) -> Result<bool> {
        let root = self.find(c)?;
        let flags = self.flags_mut(side);
        let fresh = !flags[root];
        flags[root] = true;
        Ok(fresh)
    }

    pub fn has_flag(&self, c: usize, side: Side) -> Result<bool> {
        let root = self.find(c)?;
        Ok(self.flags(side)[root])
    }

    /// Buffers synchronization edges; components are unchanged until the next
    /// [`recompress`](Self::recompress). All endpoints are validated before
    /// anything is buffered.
    pub fn add_edges<I>(&mut self, edges: I) -> Result<()>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let start = self.pending.len();
        for (u, v) in edges {
            if let Err(e) = self.check(u).and_then(|_| self.check(v)) {
                self.pending.truncate(start);
                return Err(e);
            }
            self.pending.push((u, v));
        }
        Ok(())
    }

    pub fn pending_edges(&self) -> usize {
        self.pending.len()
    }

    /// Merges pending edges into the component structure.
    ///
    /// Components become the connected closure of the old root links and the
    /// pending edges; each new root is the smallest cut of its component and
    /// carries the OR of its members' flags. Returns the number of cells
    /// touched (vertices plus adjacency entries), at most
    /// `3(n+1) + 2 * pending`.
    pub fn recompress(&mut self) -> usize {
        if self.pending.is_empty() {
            return 0;
        }
        let cuts = self.parent.len();

        // Adjacency in CSR form: old root links plus pending edges.
        let mut degree = vec![0usize; cuts + 1];
        let links = (0..cuts)
            .filter(|&c| self.parent[c] != c)
            .map(|c| (c, self.parent[c]));
        let edges: Vec<(usize, usize)> = links.chain(self.pending.drain(..)).collect();
        for &(u, v) in &edges {
            degree[u + 1] += 1;
            degree[v + 1] += 1;
        }
        for c in 0..cuts {
            degree[c + 1] += degree[c];
        }
        let mut fill = degree.clone();
        let mut adj = vec![0usize; degree[cuts]];
        for &(u, v) in &edges {
            adj[fill[u]] = v;
            fill[u] += 1;
            adj[fill[v]] = u;
            fill[v] += 1;
        }

        const UNSEEN: usize = usize::MAX;
        let mut root_of = vec![UNSEEN; cuts];
        let mut new_l = vec![false; cuts];
        let mut new_r = vec![false; cuts];
        let mut stack = Vec::new();
        let mut cells = 0;

        for start in 0..cuts {
            if root_of[start] != UNSEEN {
                continue;
            }
            root_of[start] = start;
            stack.push(start);
            let (mut l, mut r) = (false, false);
            while let Some(c) = stack.pop() {
                cells += 1;
                l |= self.flag_l[c];
                r |= self.flag_r[c];
                for &d in &adj[degree[c]..degree[c + 1]] {
                    cells += 1;
                    if root_of[d] == UNSEEN {
                        root_of[d] = start;
                        stack.push(d);
                    }
                }
            }
            new_l[start] = l;
            new_r[start] = r;
        }

        self.parent = root_of;
        self.flag_l = new_l;
        self.flag_r = new_r;
        cells
    }

    /// All cuts whose component carries the `side` flag, ascending.
    pub fn flagged_cuts(&self, side: Side) -> Vec<usize> {
        let flags = self.flags(side);
        (0..self.parent.len())
            .filter(|&c| flags[self.parent[c]])
            .collect()
    }

    /// True when every cut points directly at a root that points at itself.
    pub fn is_height_one(&self) -> bool {
        self.parent.iter().all(|&p| self.parent[p] == p)
    }

    /// True when no non-root cut carries a flag.
    pub fn flags_only_at_roots(&self) -> bool {
        (0..self.parent.len()).all(|c| self.parent[c] == c || (!self.flag_l[c] && !self.flag_r[c]))
    }
}
