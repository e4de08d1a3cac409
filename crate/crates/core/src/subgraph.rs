//! Containment tests, exact chromatic number and blow-ups.

use crate::embed::Plan;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Whether `h` is a (not necessarily induced) subgraph of `g`.
pub fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return false;
    }
    Plan::new(h, None, false).exists(g)
}

/// Largest graph accepted by the exact coloring routines.
pub const COLORING_LIMIT: usize = 16;

fn colorable(g: &Graph, k: usize, colors: &mut [usize], v: usize) -> bool {
    if v == g.n() {
        return true;
    }
    // colors are introduced in order, so vertex v may open at most one new color
    let opened = colors[..v].iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..k.min(opened + 1) {
        if g.neighbors(v).all(|w| w >= v || colors[w] != c) {
            colors[v] = c;
            if colorable(g, k, colors, v + 1) {
                return true;
            }
        }
    }
    false
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    if g.n() > COLORING_LIMIT {
        return Err(Error::SizeExceeded {
            size: g.n(),
            max: COLORING_LIMIT,
        });
    }
    let mut colors = vec![0; g.n()];
    Ok((0..=g.n())
        .find(|&k| colorable(g, k, &mut colors, 0))
        .expect("n colors always suffice"))
}

/// Edges whose removal lowers the chromatic number.
pub fn color_critical_edges(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let chi = chromatic_number(g)?;
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        let mut h = g.clone();
        h.unset(u, v);
        if chromatic_number(&h)? < chi {
            out.push((u, v));
        }
    }
    Ok(out)
}

/// The `t`-fold blow-up: vertex `i` of `h` becomes the independent set
/// `i*t .. (i+1)*t`, and edges become complete bipartite joins.
pub fn blowup(h: &Graph, t: usize) -> Result<Graph> {
    let mut g = Graph::empty(h.n() * t)?;
    for (a, b) in h.edges() {
        for x in 0..t {
            for y in 0..t {
                g.set(a * t + x, b * t + y);
            }
        }
    }
    Ok(g)
}

/// Whether `f` embeds in the `t`-fold blow-up of `h`. With `t >= |V(f)|`
/// this decides containment in every blow-up of `h`.
pub fn blowup_contains(h: &Graph, f: &Graph, t: usize) -> Result<bool> {
    Ok(contains_subgraph(&blowup(h, t)?, f))
}
