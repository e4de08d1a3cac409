//! Zykov symmetrization: replace the neighbourhood of one vertex by that of
//! a non-adjacent vertex, repeated until non-adjacency is an equivalence
//! relation.
//!
//! Direction choice. For a complete multipartite pattern the two directions
//! satisfy `c(u->v) + c(v->u) >= 2 c(G)`, so the better one never loses
//! copies; among equal counts the direction with more twin pairs (pairs of
//! vertices with identical neighbourhoods) wins, then the smaller canonical
//! form. Twin classes never split under a step, and moving a vertex into a
//! class at least as large as its own raises the twin-pair count, so
//! `(count, twin pairs)` strictly increases and the run terminates. For
//! other patterns twin pairs are compared first, which still terminates.

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::counting::count_copies_fast;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::PatternId;

/// Replaces the neighbourhood of `u` by that of `v`.
pub fn symmetrize_step(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::EndpointOutOfRange {
                vertex: x,
                n: g.n(),
            });
        }
    }
    if u == v || g.has_edge(u, v) {
        return Err(Error::NotSymmetrizable(u, v));
    }
    let mut out = g.clone();
    for w in g.neighbors(u) {
        out.unset(u, w);
    }
    for w in g.neighbors(v) {
        out.set(u, w);
    }
    Ok(out)
}

/// Number of unordered vertex pairs with identical neighbourhoods.
pub fn twin_pairs(g: &Graph) -> u64 {
    let mut rows: Vec<&[u64]> = (0..g.n()).map(|v| g.row(v)).collect();
    rows.sort_unstable();
    let mut total = 0u64;
    let mut run = 0u64;
    for i in 0..rows.len() {
        if i > 0 && rows[i] == rows[i - 1] {
            run += 1;
            total += run;
        } else {
            run = 0;
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `u` takes the neighbourhood of `v`.
    UToV,
    /// `v` takes the neighbourhood of `u`.
    VToU,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub u: usize,
    pub v: usize,
    pub direction: Direction,
    pub count_before: u128,
    pub count_after: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrizationTrace {
    pub h: PatternId,
    pub steps: Vec<Step>,
    pub initial: Graph,
    pub final_graph: Graph,
    pub preserved_set: Option<Vec<usize>>,
}

impl SymmetrizationTrace {
    /// Every intermediate graph, starting with the input.
    pub fn replay(&self) -> Vec<Graph> {
        let mut out = vec![self.initial.clone()];
        for s in &self.steps {
            let g = out.last().expect("non-empty");
            let next = match s.direction {
                Direction::UToV => symmetrize_step(g, s.u, s.v),
                Direction::VToU => symmetrize_step(g, s.v, s.u),
            }
            .expect("recorded steps are valid");
            out.push(next);
        }
        out
    }
}

fn budget(n: usize) -> usize {
    (n * n * n).max(64)
}

/// First non-adjacent pair with different neighbourhoods, scanning
/// `(u, v)` with `u < v` in index order; pairs inside `priority` first.
fn next_pair(g: &Graph, priority: &[usize]) -> Option<(usize, usize)> {
    let differs = |u: usize, v: usize| !g.has_edge(u, v) && !g.same_neighborhood(u, v);
    for (i, &u) in priority.iter().enumerate() {
        for &v in &priority[i + 1..] {
            if differs(u, v) {
                return Some((u.min(v), u.max(v)));
            }
        }
    }
    let n = g.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .find(|&(u, v)| differs(u, v))
}

struct Candidate {
    graph: Graph,
    direction: Direction,
    count: u128,
    twins: u64,
}

fn choose(g: &Graph, u: usize, v: usize, h: PatternId) -> Result<Candidate> {
    let make = |direction| -> Result<Candidate> {
        let graph = match direction {
            Direction::UToV => symmetrize_step(g, u, v)?,
            Direction::VToU => symmetrize_step(g, v, u)?,
        };
        Ok(Candidate {
            count: count_copies_fast(h, &graph).get(),
            twins: twin_pairs(&graph),
            graph,
            direction,
        })
    };
    let a = make(Direction::UToV)?;
    let b = make(Direction::VToU)?;
    let key = |c: &Candidate| {
        if h.is_complete_multipartite() {
            (c.count, c.twins as u128)
        } else {
            (c.twins as u128, c.count)
        }
    };
    Ok(match key(&a).cmp(&key(&b)) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if canonical_form(&b.graph) < canonical_form(&a.graph) {
                b
            } else {
                a
            }
        }
    })
}

fn run(g: &Graph, h: PatternId, preserved: Option<&[usize]>) -> Result<SymmetrizationTrace> {
    let priority = preserved.unwrap_or(&[]);
    let limit = budget(g.n());
    let mut current = g.clone();
    let mut count = count_copies_fast(h, &current).get();
    let mut steps = Vec::new();
    while let Some((u, v)) = next_pair(&current, priority) {
        if steps.len() >= limit {
            return Err(Error::BudgetExceeded(format!(
                "symmetrization did not settle within {limit} steps"
            )));
        }
        let c = choose(&current, u, v, h)?;
        if h.is_complete_multipartite() {
            assert!(c.count >= count, "symmetrization lost copies of {h}");
        }
        if let Some(a) = preserved {
            debug_assert!(c.graph.is_independent(a));
        }
        steps.push(Step {
            u,
            v,
            direction: c.direction,
            count_before: count,
            count_after: c.count,
        });
        count = c.count;
        current = c.graph;
    }
    Ok(SymmetrizationTrace {
        h,
        steps,
        initial: g.clone(),
        final_graph: current,
        preserved_set: preserved.map(<[usize]>::to_vec),
    })
}

/// Symmetrizes until the graph is complete multipartite. The copy count of
/// `h` never drops when `h` is complete multipartite.
pub fn run_to_multipartite(g: &Graph, h: PatternId) -> Result<SymmetrizationTrace> {
    run(g, h, None)
}

/// As [`run_to_multipartite`], keeping the independent set `a` independent:
/// pairs inside `a` are always handled first, so `a` ends inside one part.
pub fn run_preserving_independent_set(
    g: &Graph,
    h: PatternId,
    a: &[usize],
) -> Result<SymmetrizationTrace> {
    for &x in a {
        if x >= g.n() {
            return Err(Error::EndpointOutOfRange {
                vertex: x,
                n: g.n(),
            });
        }
    }
    for (i, &x) in a.iter().enumerate() {
        for &y in &a[i + 1..] {
            if x == y || g.has_edge(x, y) {
                return Err(Error::NotIndependent(x, y));
            }
        }
    }
    run(g, h, Some(a))
}
