//! Isomorph-free generation of F-free graphs by canonical augmentation, and
//! exhaustive maximization of copy counts over them.
//!
//! A graph on `k+1` vertices is generated from its canonical parent: the
//! graph left after deleting the minimum-degree vertex that comes last in
//! the canonical order. Children are produced by adding a vertex with every
//! possible neighbourhood and kept only when the new vertex lies in the
//! orbit of that canonical deletion vertex.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labeling, CanonicalForm};
use crate::counting::{count_copies, count_copies_fast, CopyCount};
use crate::embed::Matcher;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::PatternId;
use crate::subgraph::contains_subgraph;

/// Largest vertex count the enumerator accepts.
pub const SEARCH_LIMIT: usize = 10;
/// Largest vertex count for labeled brute force.
pub const BRUTE_FORCE_LIMIT: usize = 6;

fn check_budget(n: usize) -> Result<()> {
    if n > SEARCH_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "isomorph-free search is limited to n <= {SEARCH_LIMIT}, asked for n = {n}"
        )));
    }
    Ok(())
}

/// Forbidden-subgraph filter used while generating.
#[derive(Clone, Debug)]
struct Filter {
    matcher: Option<Matcher>,
}

impl Filter {
    fn new(f: Option<PatternId>) -> Filter {
        Filter {
            matcher: f.map(|p| Matcher::new(&p.graph())),
        }
    }

    /// The child is F-free given that the graph minus `x` is.
    fn free_through(&self, g: &Graph, x: usize) -> bool {
        self.matcher.as_ref().is_none_or(|m| !m.found_through(g, x))
    }

    /// Every missing edge would create a forbidden copy.
    fn maximal(&self, g: &Graph) -> bool {
        let n = g.n();
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(u, v) {
                    continue;
                }
                let Some(m) = &self.matcher else { return false };
                let mut h = g.clone();
                h.set(u, v);
                if !m.found_through(&h, u) {
                    return false;
                }
            }
        }
        true
    }
}

/// Canonical children of `parent`, sorted by canonical form. Children are
/// returned relabeled canonically.
fn children(parent: &Graph, filter: &Filter) -> Vec<(CanonicalForm, Graph)> {
    let k = parent.n();
    let x = k;
    let degrees = parent.degrees();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << k {
        let d = mask.count_ones() as usize;
        // the new vertex must have minimum degree in the child
        let min_other = (0..k)
            .map(|v| degrees[v] + (mask >> v & 1) as usize)
            .min()
            .unwrap_or(usize::MAX);
        if d > min_other {
            continue;
        }
        let child = parent.extended(mask);
        if !filter.free_through(&child, x) {
            continue;
        }
        let lab = canonical_labeling(&child);
        let mut w = x;
        for &v in lab.order.iter().rev() {
            if child.degree(v) == d {
                w = v;
                break;
            }
        }
        if lab.orbit[w] != lab.orbit[x] {
            continue;
        }
        if seen.insert(lab.form.clone()) {
            let g = lab.form.to_graph();
            out.push((lab.form, g));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn next_level(parents: &[Graph], filter: &Filter) -> Vec<Graph> {
    let mut all: Vec<(CanonicalForm, Graph)> = parents
        .par_iter()
        .map(|p| children(p, filter))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.into_iter().map(|(_, g)| g).collect()
}

/// All F-free graphs on `n - 1` vertices, one per isomorphism class: the
/// parents of the final level.
fn parents_of_level(n: usize, filter: &Filter) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0).expect("empty graph")];
    for _ in 1..n {
        level = next_level(&level, filter);
    }
    level
}

/// One graph per isomorphism class of F-free graphs on `n` vertices (all
/// graphs when `f` is `None`), in a deterministic order. With
/// `maximal_only`, only edge-maximal F-free graphs are produced.
pub fn enumerate_f_free(
    n: usize,
    f: Option<PatternId>,
    maximal_only: bool,
) -> Result<impl Iterator<Item = Graph>> {
    check_budget(n)?;
    let filter = Filter::new(f);
    let parents = if n == 0 {
        Vec::new()
    } else {
        parents_of_level(n, &filter)
    };
    let empty = (n == 0).then(|| Graph::empty(0).expect("empty graph"));
    Ok(empty
        .into_iter()
        .chain(parents.into_iter().flat_map(move |p| {
            let kids = children(&p, &filter);
            let filter = filter.clone();
            kids.into_iter()
                .map(|(_, g)| g)
                .filter(move |g| !maximal_only || filter.maximal(g))
        })))
}

/// Number of isomorphism classes, counted in parallel over parents.
pub fn count_classes(n: usize, f: Option<PatternId>) -> Result<usize> {
    check_budget(n)?;
    if n == 0 {
        return Ok(1);
    }
    let filter = Filter::new(f);
    let parents = parents_of_level(n, &filter);
    Ok(parents.par_iter().map(|p| children(p, &filter).len()).sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub h: PatternId,
    pub f: PatternId,
    pub n: usize,
    pub maximum: CopyCount,
    /// Every extremal graph, by canonical form, in increasing order.
    pub extremal: Vec<CanonicalForm>,
    pub graphs_visited: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
struct Best {
    maximum: u128,
    extremal: Vec<CanonicalForm>,
    visited: u64,
}

impl Best {
    fn offer(&mut self, value: u128, g: &Graph) {
        self.visited += 1;
        if value > self.maximum || self.extremal.is_empty() {
            self.maximum = value;
            self.extremal.clear();
        }
        if value == self.maximum {
            self.extremal.push(crate::canon::canonical_form(g));
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.visited += other.visited;
        if other.extremal.is_empty() {
            return self;
        }
        if self.extremal.is_empty() || other.maximum > self.maximum {
            self.maximum = other.maximum;
            self.extremal = other.extremal;
        } else if other.maximum == self.maximum {
            self.extremal.extend(other.extremal);
        }
        self
    }
}

/// `ex(n, h, f)` by exhaustive isomorph-free search, with every extremal
/// graph. Searches all F-free graphs.
pub fn max_copies(h: PatternId, f: PatternId, n: usize) -> Result<SearchResult> {
    max_copies_with(h, f, n, false)
}

/// As [`max_copies`]; with `maximal_only` only edge-maximal F-free graphs
/// are scanned, which gives the same maximum but lists only the maximal
/// extremal graphs.
pub fn max_copies_with(
    h: PatternId,
    f: PatternId,
    n: usize,
    maximal_only: bool,
) -> Result<SearchResult> {
    check_budget(n)?;
    let start = Instant::now();
    let filter = Filter::new(Some(f));
    let parents = if n == 0 {
        vec![]
    } else {
        parents_of_level(n, &filter)
    };
    let mut best = parents
        .par_iter()
        .map(|p| {
            let mut best = Best::default();
            for (_, g) in children(p, &filter) {
                if maximal_only && !filter.maximal(&g) {
                    continue;
                }
                best.offer(count_copies_fast(h, &g).get(), &g);
            }
            best
        })
        .reduce(Best::default, Best::merge);
    if n == 0 {
        best.offer(0, &Graph::empty(0)?);
    }
    best.extremal.sort();
    best.extremal.dedup();
    let pattern = h.graph();
    let forbidden = f.graph();
    for form in &best.extremal {
        let g = form.to_graph();
        assert!(
            !contains_subgraph(&g, &forbidden),
            "extremal graph contains {f}"
        );
        assert_eq!(
            count_copies(&pattern, &g)?.get(),
            best.maximum,
            "recount disagrees"
        );
    }
    Ok(SearchResult {
        h,
        f,
        n,
        maximum: CopyCount(best.maximum),
        extremal: best.extremal,
        graphs_visited: best.visited,
        elapsed: start.elapsed(),
    })
}

/// Maximum of `N(h, G)` over all labeled F-free graphs on `n` vertices,
/// using only the backtracking embedder.
pub fn brute_force_labeled(h: PatternId, f: PatternId, n: usize) -> Result<CopyCount> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "labeled brute force is limited to n <= {BRUTE_FORCE_LIMIT}, asked for n = {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let pattern = h.graph();
    let forbidden = f.graph();
    let best = (0u64..1 << pairs.len())
        .into_par_iter()
        .map(|mask| {
            let mut g = Graph::empty(n).expect("small");
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.set(u, v);
                }
            }
            if contains_subgraph(&g, &forbidden) {
                0
            } else {
                count_copies(&pattern, &g).expect("small pattern").get()
            }
        })
        .max()
        .unwrap_or(0);
    Ok(CopyCount(best))
}

/// Maxima for every pattern at one vertex count, from a single pass over
/// the F-free graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMaxima {
    pub n: usize,
    pub classes: u64,
    /// Indexed like [`PatternId::ALL`]; each with the canonically smallest
    /// graph attaining it.
    pub maxima: Vec<(CopyCount, CanonicalForm)>,
}

fn fold_level(
    graphs: impl Iterator<Item = Graph>,
    n: usize,
) -> Vec<(u128, Option<(CanonicalForm, Graph)>)> {
    let mut acc: Vec<(u128, Option<(CanonicalForm, Graph)>)> =
        vec![(0, None); PatternId::ALL.len()];
    for g in graphs {
        for p in PatternId::ALL {
            let c = count_copies_fast(p, &g).get();
            let slot = &mut acc[p.index()];
            match &slot.1 {
                None => *slot = (c, Some((crate::canon::canonical_form(&g), g.clone()))),
                Some((form, _)) => {
                    if c > slot.0 {
                        *slot = (c, Some((crate::canon::canonical_form(&g), g.clone())));
                    } else if c == slot.0 {
                        let cf = crate::canon::canonical_form(&g);
                        if &cf < form {
                            *slot = (c, Some((cf, g.clone())));
                        }
                    }
                }
            }
        }
    }
    debug_assert!(acc
        .iter()
        .all(|s| s.1.as_ref().is_none_or(|(_, g)| g.n() == n)));
    acc
}

fn merge_folds(
    mut a: Vec<(u128, Option<(CanonicalForm, Graph)>)>,
    b: Vec<(u128, Option<(CanonicalForm, Graph)>)>,
) -> Vec<(u128, Option<(CanonicalForm, Graph)>)> {
    for (slot, other) in a.iter_mut().zip(b) {
        let Some((of, _)) = &other.1 else { continue };
        let replace = match &slot.1 {
            None => true,
            Some((sf, _)) => other.0 > slot.0 || (other.0 == slot.0 && of < sf),
        };
        if replace {
            *slot = other;
        }
    }
    a
}

/// For each `n` in `1..=n_max`, the maximum count of every pattern over
/// F-free graphs on `n` vertices. Levels are built once and shared.
pub fn scan_levels(f: PatternId, n_max: usize) -> Result<Vec<LevelMaxima>> {
    check_budget(n_max)?;
    let filter = Filter::new(Some(f));
    let mut out = Vec::new();
    let mut level = vec![Graph::empty(0)?];
    for n in 1..=n_max {
        let last = n == n_max;
        let (classes, folded) = if last {
            // the final level is streamed per parent and never stored
            let parts: Vec<(u64, _)> = level
                .par_iter()
                .map(|p| {
                    let kids = children(p, &filter);
                    let count = kids.len() as u64;
                    (count, fold_level(kids.into_iter().map(|(_, g)| g), n))
                })
                .collect();
            let classes = parts.iter().map(|p| p.0).sum();
            let folded = parts
                .into_iter()
                .map(|p| p.1)
                .reduce(merge_folds)
                .unwrap_or_else(|| vec![(0, None); PatternId::ALL.len()]);
            (classes, folded)
        } else {
            level = next_level(&level, &filter);
            (level.len() as u64, fold_level(level.iter().cloned(), n))
        };
        let maxima = folded
            .into_iter()
            .map(|(c, w)| (CopyCount(c), w.expect("every level is non-empty").0))
            .collect();
        out.push(LevelMaxima { n, classes, maxima });
    }
    Ok(out)
}
