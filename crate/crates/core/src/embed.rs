//! Backtracking embedder: injective maps of a small pattern into a host graph.
//!
//! One plan serves subgraph containment, embedding counts and induced
//! embedding counts. Candidate sets are bitsets: the intersection of the
//! host rows of already-mapped pattern neighbours, minus used vertices.

use crate::graph::Graph;

/// Embedding order and back-edges for one pattern.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    order: Vec<usize>,
    degree: Vec<usize>,
    back: Vec<Vec<usize>>,
    back_non: Vec<Vec<usize>>,
}

impl Plan {
    /// `root` forces the first pattern vertex in the order. With `induced`,
    /// non-edges of the pattern must map to non-edges.
    pub(crate) fn new(h: &Graph, root: Option<usize>, induced: bool) -> Plan {
        let k = h.n();
        let mut order: Vec<usize> = Vec::with_capacity(k);
        let mut placed = vec![false; k];
        if let Some(r) = root {
            order.push(r);
            placed[r] = true;
        }
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let linked = order.iter().filter(|&&u| h.has_edge(u, v)).count();
                    (linked, h.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            order.push(next);
            placed[next] = true;
        }
        let mut back = Vec::with_capacity(k);
        let mut back_non = Vec::with_capacity(k);
        for (i, &v) in order.iter().enumerate() {
            back.push((0..i).filter(|&j| h.has_edge(order[j], v)).collect());
            back_non.push(if induced {
                (0..i).filter(|&j| !h.has_edge(order[j], v)).collect()
            } else {
                Vec::new()
            });
        }
        let degree = order.iter().map(|&v| h.degree(v)).collect();
        Plan {
            order,
            degree,
            back,
            back_non,
        }
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    /// Number of embeddings; with `stop`, returns as soon as one is found.
    fn run(&self, g: &Graph, root_image: Option<usize>, stop: bool) -> u128 {
        let k = self.len();
        if k == 0 {
            return 1;
        }
        if k > g.n() {
            return 0;
        }
        if g.words() == 1 {
            let rows: Vec<u64> = g.first_word_rows().collect();
            let degs: Vec<usize> = rows.iter().map(|r| r.count_ones() as usize).collect();
            let ok: Vec<u64> = self
                .degree
                .iter()
                .map(|&d| {
                    degs.iter()
                        .enumerate()
                        .filter(|&(_, &dg)| dg >= d)
                        .fold(0u64, |m, (v, _)| m | 1 << v)
                })
                .collect();
            let first = match root_image {
                Some(x) if x < g.n() => 1u64 << x,
                Some(_) => 0,
                None => u64::MAX,
            };
            let mut images = vec![0usize; k];
            self.run_word(&rows, &ok, first, 0, &mut images, 0, stop)
        } else {
            let words = g.words();
            let ok: Vec<Vec<u64>> = self
                .degree
                .iter()
                .map(|&d| {
                    let mut m = vec![0u64; words];
                    for v in 0..g.n() {
                        if g.degree(v) >= d {
                            m[v / 64] |= 1 << (v % 64);
                        }
                    }
                    m
                })
                .collect();
            let mut first = vec![0u64; words];
            match root_image {
                Some(x) if x < g.n() => first[x / 64] |= 1 << (x % 64),
                Some(_) => {}
                None => first.iter_mut().for_each(|w| *w = u64::MAX),
            }
            let mut images = vec![0usize; k];
            let mut used = vec![0u64; words];
            self.run_wide(g, &ok, &first, 0, &mut images, &mut used, stop)
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn run_word(
        &self,
        rows: &[u64],
        ok: &[u64],
        first: u64,
        depth: usize,
        images: &mut [usize],
        used: u64,
        stop: bool,
    ) -> u128 {
        let mut cand = ok[depth] & !used;
        if depth == 0 {
            cand &= first;
        }
        for &j in &self.back[depth] {
            cand &= rows[images[j]];
        }
        for &j in &self.back_non[depth] {
            cand &= !rows[images[j]];
        }
        if depth + 1 == self.len() {
            return cand.count_ones() as u128;
        }
        let mut total = 0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            images[depth] = v;
            total += self.run_word(rows, ok, first, depth + 1, images, used | 1 << v, stop);
            if stop && total > 0 {
                break;
            }
        }
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn run_wide(
        &self,
        g: &Graph,
        ok: &[Vec<u64>],
        first: &[u64],
        depth: usize,
        images: &mut [usize],
        used: &mut [u64],
        stop: bool,
    ) -> u128 {
        let mut cand: Vec<u64> = ok[depth]
            .iter()
            .zip(used.iter())
            .map(|(a, u)| a & !u)
            .collect();
        if depth == 0 {
            cand.iter_mut().zip(first).for_each(|(c, f)| *c &= f);
        }
        for &j in &self.back[depth] {
            cand.iter_mut()
                .zip(g.row(images[j]))
                .for_each(|(c, r)| *c &= r);
        }
        for &j in &self.back_non[depth] {
            cand.iter_mut()
                .zip(g.row(images[j]))
                .for_each(|(c, r)| *c &= !r);
        }
        if depth + 1 == self.len() {
            return crate::graph::popcount(&cand) as u128;
        }
        let mut total = 0;
        for v in crate::graph::BitIter::new(&cand) {
            images[depth] = v;
            used[v / 64] |= 1 << (v % 64);
            total += self.run_wide(g, ok, first, depth + 1, images, used, stop);
            used[v / 64] &= !(1 << (v % 64));
            if stop && total > 0 {
                break;
            }
        }
        total
    }

    pub(crate) fn count(&self, g: &Graph) -> u128 {
        self.run(g, None, false)
    }

    pub(crate) fn exists(&self, g: &Graph) -> bool {
        self.run(g, None, true) > 0
    }

    /// Whether an embedding maps the plan's root to `x`.
    pub(crate) fn exists_at(&self, g: &Graph, x: usize) -> bool {
        self.run(g, Some(x), true) > 0
    }
}

/// One plan per root orbit of a fixed pattern, so that embeddings through a
/// given host vertex can be found directly.
#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    rooted: Vec<Plan>,
}

impl Matcher {
    pub(crate) fn new(h: &Graph) -> Matcher {
        let rooted = crate::canon::orbit_representatives(h)
            .into_iter()
            .map(|r| Plan::new(h, Some(r), false))
            .collect();
        Matcher { rooted }
    }

    /// Whether some copy of the pattern in `g` uses vertex `x`.
    pub(crate) fn found_through(&self, g: &Graph, x: usize) -> bool {
        self.rooted.iter().any(|p| p.exists_at(g, x))
    }
}
