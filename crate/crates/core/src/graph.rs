//! Labeled simple graphs stored as one adjacency bit-row per vertex.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 512;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A simple undirected graph on vertices `0..n`.
///
/// Row `v` is a bitset of the neighbours of `v`. Rows are kept symmetric and
/// irreflexive by every constructor and mutator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let words = words_for(n);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    /// Builds a graph from an edge list. Duplicate pairs are collapsed.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v);
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Neighbour bitset of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub(crate) fn unset(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::EndpointOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.set(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.unset(u, v);
        Ok(())
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        popcount(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Number of common neighbours of `u` and `v`.
    #[inline]
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// The same graph on `n` vertices, the new vertices isolated.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::InvalidParameters {
                family: "padding",
                reason: format!("cannot pad {} vertices down to {n}", self.n),
            });
        }
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        Ok(g)
    }

    /// Disjoint union, `other` relabeled after the vertices of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let mut g = self.padded(self.n + other.n)?;
        for (u, v) in other.edges() {
            g.set(self.n + u, self.n + v);
        }
        Ok(g)
    }

    /// Adds a new vertex `n` joined to every vertex whose bit is set in `mask`.
    /// Only valid while the graph has at most 63 vertices.
    pub(crate) fn extended(&self, mask: u64) -> Graph {
        debug_assert!(self.n < 64);
        let n = self.n + 1;
        let mut g = Graph::empty(n).expect("within capacity");
        for u in 0..self.n {
            g.rows[u * g.words] = self.rows[u * self.words];
        }
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            g.set(self.n, v);
        }
        g
    }

    /// Relabels so that old vertex `perm[i]` becomes new vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut inv = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut g = Graph::empty(self.n).expect("same size");
        for (u, v) in self.edges() {
            g.set(inv[u], inv[v]);
        }
        g
    }

    /// Subgraph induced on `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len()).expect("subset of a valid graph");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j);
                }
            }
        }
        g
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// True when non-adjacency is an equivalence relation, i.e. the graph is
    /// complete multipartite (the edgeless graph counts, with one part).
    pub fn is_complete_multipartite(&self) -> bool {
        (0..self.n)
            .all(|u| (u + 1..self.n).all(|v| self.has_edge(u, v) || self.row(u) == self.row(v)))
    }

    /// Part sizes of a complete multipartite graph, largest first.
    pub fn multipartite_parts(&self) -> Option<Vec<usize>> {
        if !self.is_complete_multipartite() {
            return None;
        }
        let mut seen = vec![false; self.n];
        let mut parts = Vec::new();
        for u in 0..self.n {
            if seen[u] {
                continue;
            }
            let mut size = 0;
            for v in u..self.n {
                if !seen[v] && !self.has_edge(u, v) {
                    seen[v] = true;
                    size += 1;
                }
            }
            parts.push(size);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(parts)
    }

    /// Whether `u` and `v` have identical neighbourhoods.
    pub fn same_neighborhood(&self, u: usize, v: usize) -> bool {
        self.row(u) == self.row(v)
    }

    /// Plain edge-list text form `n; u-v,u-v,...`.
    pub fn to_edge_list_string(&self) -> String {
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}; {}", self.n, edges.join(","))
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, tail) = text
            .split_once(';')
            .ok_or_else(|| Error::EdgeList("expected `n; u-v,...`".into()))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::EdgeList(format!("bad vertex count `{}`", head.trim())))?;
        let mut edges = Vec::new();
        for item in tail.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::EdgeList(format!("bad edge `{item}`")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::EdgeList(format!("bad endpoint `{s}`")))
            };
            edges.push((parse(a)?, parse(b)?));
        }
        Graph::from_edge_list(n, &edges)
    }

    /// Accepts either graph6 or the edge-list text form.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.contains(';') {
            Graph::parse_edge_list(text)
        } else {
            crate::graph6::decode(text)
        }
    }

    pub(crate) fn first_word_rows(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.n).map(move |v| self.rows[v * self.words])
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_edge_list_string())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list_string())
    }
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterator over the set bits of a word slice.
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_examples() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3, Graph::complete(3).unwrap());

        let e4 = Graph::from_edge_list(4, &[]).unwrap();
        assert_eq!(e4.n(), 4);
        assert_eq!(e4.edge_count(), 0);

        let m2 = Graph::from_edge_list(4, &[(0, 1), (2, 3), (1, 0)]).unwrap();
        assert_eq!(m2.edge_count(), 2);
        assert_eq!(m2.degrees(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::EndpointOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(Error::LoopEdge(1)));
        assert_eq!(Graph::empty(513), Err(Error::TooManyVertices(513)));
    }

    #[test]
    fn large_graph_rows_span_words() {
        let mut g = Graph::empty(300).unwrap();
        g.add_edge(0, 299).unwrap();
        g.add_edge(130, 64).unwrap();
        assert!(g.has_edge(299, 0));
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![130]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 299), (64, 130)]);
    }

    #[test]
    fn edge_list_text_round_trip() {
        let g = Graph::parse_edge_list("5; 0-1, 1-2,3-4").unwrap();
        assert_eq!(g.to_edge_list_string(), "5; 0-1,1-2,3-4");
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list_string()).unwrap(), g);
        assert_eq!(
            Graph::parse_edge_list("3;").unwrap(),
            Graph::empty(3).unwrap()
        );
        assert!(Graph::parse_edge_list("3; 0-3").is_err());
        assert!(Graph::parse_edge_list("x; 0-1").is_err());
    }

    #[test]
    fn multipartite_detection() {
        // K_{1,2,2}
        let mut g = Graph::empty(5).unwrap();
        for (u, v) in [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
        ] {
            g.add_edge(u, v).unwrap();
        }
        assert_eq!(g.multipartite_parts(), Some(vec![2, 2, 1]));
        g.remove_edge(0, 4).unwrap();
        assert!(!g.is_complete_multipartite());
        assert_eq!(Graph::empty(3).unwrap().multipartite_parts(), Some(vec![3]));
    }
}
