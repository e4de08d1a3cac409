//! Canonical labeling by individualization and refinement.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell,
//! recurse. Leaves are discrete partitions, read as vertex orderings; the
//! canonical form is the smallest upper-triangle bit string over all leaves.
//! Children are skipped when an automorphism already found (fixing the
//! current prefix) maps them onto an explored sibling. Twin transpositions
//! are seeded as generators up front, which keeps cliques, independent sets
//! and complete multipartite graphs cheap.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Key over isomorphism classes: vertex count, then the upper triangle of
/// the canonically relabeled adjacency matrix, row by row, packed MSB first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: u32,
    bits: Vec<u64>,
}

impl CanonicalForm {
    fn from_order(g: &Graph, lab: &[usize]) -> CanonicalForm {
        let n = lab.len();
        let total = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut k = 0;
        for i in 0..n {
            let row = g.row(lab[i]);
            for &w in &lab[i + 1..] {
                if row[w / 64] >> (w % 64) & 1 == 1 {
                    bits[k / 64] |= 1 << (63 - k % 64);
                }
                k += 1;
            }
        }
        CanonicalForm { n: n as u32, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The canonical representative graph itself.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n).expect("form of a valid graph");
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.bits[k / 64] >> (63 - k % 64) & 1 == 1 {
                    g.set(i, j);
                }
                k += 1;
            }
        }
        g
    }

    pub fn graph6(&self) -> String {
        crate::graph6::encode(&self.to_graph())
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.graph6())
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    pub form: CanonicalForm,
    /// `orbit[v]` is the smallest vertex in the automorphism orbit of `v`.
    pub orbit: Vec<usize>,
    /// Generators of the automorphism group, as vertex images.
    pub generators: Vec<Vec<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        // keep the smaller vertex as root so roots are orbit minima
        match a.cmp(&b) {
            Ordering::Less => self.0[b] = a,
            Ordering::Greater => self.0[a] = b,
            Ordering::Equal => {}
        }
    }

    fn absorb(&mut self, perm: &[usize]) {
        for (v, &w) in perm.iter().enumerate() {
            self.union(v, w);
        }
    }
}

struct Leaf {
    form: CanonicalForm,
    order: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    generators: Vec<Vec<usize>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
}

impl Search<'_> {
    fn mask(&self, cell: &[usize]) -> Vec<u64> {
        let mut m = vec![0u64; self.g.words()];
        for &v in cell {
            m[v / 64] |= 1 << (v % 64);
        }
        m
    }

    fn hits(&self, v: usize, mask: &[u64]) -> u32 {
        self.g
            .row(v)
            .iter()
            .zip(mask)
            .map(|(r, m)| (r & m).count_ones())
            .sum()
    }

    /// Refines an ordered partition to the coarsest equitable refinement
    /// reachable by splitting on neighbour counts, in a fixed cell order.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let mut changed = false;
            let mut wi = 0;
            while wi < cells.len() {
                let mask = self.mask(&cells[wi]);
                let mut ci = 0;
                while ci < cells.len() {
                    if cells[ci].len() == 1 {
                        ci += 1;
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = cells[ci]
                        .iter()
                        .map(|&v| (self.hits(v, &mask), v))
                        .collect();
                    if keyed.iter().all(|&(c, _)| c == keyed[0].0) {
                        ci += 1;
                        continue;
                    }
                    keyed.sort_unstable();
                    let mut pieces: Vec<Vec<usize>> = Vec::new();
                    let mut last = None;
                    for (c, v) in keyed {
                        if last != Some(c) {
                            pieces.push(Vec::new());
                            last = Some(c);
                        }
                        pieces.last_mut().unwrap().push(v);
                    }
                    let added = pieces.len();
                    cells.splice(ci..ci + 1, pieces);
                    ci += added;
                    changed = true;
                }
                wi += 1;
            }
            if !changed {
                break;
            }
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let form = CanonicalForm::from_order(self.g, &order);
        let n = order.len();
        let map_from = |reference: &[usize]| {
            let mut perm = vec![0; n];
            for (i, &v) in reference.iter().enumerate() {
                perm[v] = order[i];
            }
            perm
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                form: form.clone(),
                order: order.clone(),
            });
            self.best = Some(Leaf { form, order });
            return;
        };
        if form == first.form {
            let perm = map_from(&first.order);
            if perm.iter().enumerate().any(|(i, &p)| i != p) {
                self.generators.push(perm);
            }
            return;
        }
        let best = self.best.as_ref().expect("set with first");
        match form.cmp(&best.form) {
            Ordering::Equal => {
                let perm = map_from(&best.order);
                if perm.iter().enumerate().any(|(i, &p)| i != p) {
                    self.generators.push(perm);
                }
            }
            Ordering::Less => self.best = Some(Leaf { form, order }),
            Ordering::Greater => {}
        }
    }

    fn stabilizer_orbits(&self, prefix: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.g.n());
        for perm in &self.generators {
            if prefix.iter().all(|&p| perm[p] == p) {
                uf.absorb(perm);
            }
        }
        uf
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let target = cells[t].clone();
        let mut explored: Vec<usize> = Vec::new();
        let mut seen_generators = usize::MAX;
        let mut uf = UnionFind::new(0);
        for &v in &target {
            if !explored.is_empty() {
                if seen_generators != self.generators.len() {
                    uf = self.stabilizer_orbits(prefix);
                    seen_generators = self.generators.len();
                }
                let rv = uf.find(v);
                if explored.iter().any(|&u| uf.find(u) == rv) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = target.iter().copied().filter(|&w| w != v).collect();
            child[t] = vec![v];
            child.insert(t + 1, rest);
            self.refine(&mut child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }
}

/// Transpositions of twins (equal open or closed neighbourhoods).
fn twin_generators(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut gens = Vec::new();
    let mut claimed = vec![false; n];
    for u in 0..n {
        if claimed[u] {
            continue;
        }
        let mut prev = u;
        for v in u + 1..n {
            if claimed[v] {
                continue;
            }
            let open = g.row(u) == g.row(v);
            let closed = g.has_edge(u, v)
                && g.row(u)
                    .iter()
                    .zip(g.row(v))
                    .enumerate()
                    .all(|(w, (a, b))| {
                        // closed twins differ exactly in the bits of u and v
                        let mut diff = a ^ b;
                        if u / 64 == w {
                            diff ^= 1 << (u % 64);
                        }
                        if v / 64 == w {
                            diff ^= 1 << (v % 64);
                        }
                        diff == 0
                    });
            if open || closed {
                claimed[v] = true;
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(prev, v);
                gens.push(perm);
                prev = v;
            }
        }
    }
    gens
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.n();
    if n == 0 {
        return Labeling {
            order: Vec::new(),
            form: CanonicalForm::from_order(g, &[]),
            orbit: Vec::new(),
            generators: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        generators: twin_generators(g),
        first: None,
        best: None,
    };
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    search.refine(&mut cells);
    search.descend(cells, &mut Vec::new());
    let mut uf = UnionFind::new(n);
    for perm in &search.generators {
        uf.absorb(perm);
    }
    let orbit = (0..n).map(|v| uf.find(v)).collect();
    let best = search.best.expect("at least one leaf");
    Labeling {
        order: best.order,
        form: best.form,
        orbit,
        generators: search.generators,
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// Smallest vertex of each automorphism orbit.
pub fn orbit_representatives(g: &Graph) -> Vec<usize> {
    let lab = canonical_labeling(g);
    (0..g.n()).filter(|&v| lab.orbit[v] == v).collect()
}

/// Largest vertex count accepted by [`canonical_form_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Minimum upper-triangle string over all `n!` orderings. This is a
/// different canonical form from [`canonical_form`]; the two must never be
/// compared with each other, only their induced partitions.
pub fn canonical_form_exhaustive(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::SizeExceeded {
            size: n,
            max: EXHAUSTIVE_LIMIT,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = CanonicalForm::from_order(g, &order);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            let form = CanonicalForm::from_order(g, &order);
            if form < best {
                best = form;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}
