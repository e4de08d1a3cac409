//! Exact copy counts: a generic embedder and closed forms for the ten patterns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embed::Plan;
use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};
use crate::pattern::PatternId;

/// Number of copies of a pattern; exact.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct CopyCount(pub u128);

impl CopyCount {
    pub fn get(self) -> u128 {
        self.0
    }
}

impl fmt::Display for CopyCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u128> for CopyCount {
    fn from(v: u128) -> Self {
        CopyCount(v)
    }
}

/// Largest pattern the backtracking counter accepts.
pub const PATTERN_LIMIT: usize = 8;

fn check_pattern(h: &Graph) -> Result<()> {
    if h.n() > PATTERN_LIMIT {
        return Err(Error::PatternTooLarge {
            size: h.n(),
            max: PATTERN_LIMIT,
        });
    }
    Ok(())
}

pub fn automorphism_order(h: &Graph) -> Result<u128> {
    check_pattern(h)?;
    Ok(Plan::new(h, None, false).count(h))
}

/// Copies of `h` in `g`: injective edge-preserving maps divided by |Aut(h)|.
pub fn count_copies(h: &Graph, g: &Graph) -> Result<CopyCount> {
    let aut = automorphism_order(h)?;
    Ok(CopyCount(Plan::new(h, None, false).count(g) / aut))
}

/// Vertex subsets of `g` inducing a graph isomorphic to `h`.
pub fn count_induced(h: &Graph, g: &Graph) -> Result<CopyCount> {
    let aut = automorphism_order(h)?;
    Ok(CopyCount(Plan::new(h, None, true).count(g) / aut))
}

/// Precompiled counter for repeated counting of one pattern.
#[derive(Clone, Debug)]
pub struct Counter {
    plan: Plan,
    aut: u128,
}

impl Counter {
    pub fn new(h: &Graph) -> Result<Counter> {
        Ok(Counter {
            aut: automorphism_order(h)?,
            plan: Plan::new(h, None, false),
        })
    }

    pub fn count(&self, g: &Graph) -> CopyCount {
        CopyCount(self.plan.count(g) / self.aut)
    }
}

fn choose2(x: u128) -> u128 {
    x * x.saturating_sub(1) / 2
}

fn choose3(x: u128) -> u128 {
    x * x.saturating_sub(1) * x.saturating_sub(2) / 6
}

/// Calls `visit(a, b, c)` once per triangle, with `a < b < c`.
fn for_each_triangle(g: &Graph, mut visit: impl FnMut(usize, usize, usize)) {
    let mut common = vec![0u64; g.words()];
    for (a, b) in g.edges() {
        for (w, (x, y)) in common.iter_mut().zip(g.row(a).iter().zip(g.row(b))) {
            *w = x & y;
        }
        for c in BitIter::new(&common) {
            if c > b {
                visit(a, b, c);
            }
        }
    }
}

fn triangles(g: &Graph) -> u128 {
    g.edges()
        .map(|(u, v)| g.codegree(u, v) as u128)
        .sum::<u128>()
        / 3
}

/// Copy counts of the ten patterns from degree and codegree identities.
pub fn count_copies_fast(p: PatternId, g: &Graph) -> CopyCount {
    let deg: Vec<u128> = g.degrees().into_iter().map(|d| d as u128).collect();
    let m = g.edge_count() as u128;
    let cherries: u128 = deg.iter().map(|&d| choose2(d)).sum();
    let value = match p {
        PatternId::K2 => m,
        PatternId::P3 => cherries,
        PatternId::K3 => triangles(g),
        PatternId::M2 => choose2(m) - cherries,
        PatternId::S4 => deg.iter().map(|&d| choose3(d)).sum(),
        PatternId::P4 => {
            let walks: u128 = g.edges().map(|(u, v)| (deg[u] - 1) * (deg[v] - 1)).sum();
            walks - 3 * triangles(g)
        }
        PatternId::C4 => {
            let n = g.n();
            let mut twice = 0;
            for u in 0..n {
                for v in u + 1..n {
                    twice += choose2(g.codegree(u, v) as u128);
                }
            }
            twice / 2
        }
        PatternId::T1 => {
            let mut total = 0;
            for_each_triangle(g, |a, b, c| total += deg[a] + deg[b] + deg[c] - 6);
            total
        }
        PatternId::B2 => g
            .edges()
            .map(|(u, v)| choose2(g.codegree(u, v) as u128))
            .sum(),
        PatternId::K4 => {
            let mut total = 0u128;
            for_each_triangle(g, |a, b, c| {
                total += g
                    .row(a)
                    .iter()
                    .zip(g.row(b))
                    .zip(g.row(c))
                    .map(|((x, y), z)| (x & y & z).count_ones() as u128)
                    .sum::<u128>();
            });
            total / 4
        }
    };
    CopyCount(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, FamilySpec};
    use crate::pattern::PatternId::*;
    use proptest::prelude::*;

    fn c(h: PatternId, g: &Graph) -> u128 {
        count_copies(&h.graph(), g).unwrap().get()
    }

    /// Independent oracle: every edge subset of `g` with the pattern's edge
    /// count, tested for isomorphism with the pattern by brute force over
    /// vertex maps. Only usable on tiny hosts.
    fn subset_oracle(h: &Graph, g: &Graph) -> u128 {
        let edges: Vec<_> = g.edges().collect();
        let k = h.edge_count();
        let mut count = 0;
        for mask in 0u64..1 << edges.len() {
            if mask.count_ones() as usize != k {
                continue;
            }
            let chosen: Vec<_> = (0..edges.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let mut verts: Vec<usize> = chosen.iter().flat_map(|&(u, v)| [u, v]).collect();
            verts.sort_unstable();
            verts.dedup();
            if verts.len() != h.n() {
                continue;
            }
            let mut sub = Graph::empty(verts.len()).unwrap();
            for &(u, v) in &chosen {
                let a = verts.binary_search(&u).unwrap();
                let b = verts.binary_search(&v).unwrap();
                sub.add_edge(a, b).unwrap();
            }
            if crate::canon::canonical_form_exhaustive(&sub).unwrap()
                == crate::canon::canonical_form_exhaustive(h).unwrap()
            {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn worked_examples() {
        assert_eq!(c(K3, &K4.graph()), 4);
        assert_eq!(c(P3, &K3.graph()), 3);
        let f7 = build(&FamilySpec::Friendship { n: 7 }).unwrap();
        assert_eq!(c(T1, &f7), subset_oracle(&T1.graph(), &f7));
        assert_eq!(c(T1, &f7), 12);
        let d = build(&FamilySpec::DGraph { k: 3, n: 7 }).unwrap();
        assert_eq!(c(M2, &d), subset_oracle(&M2.graph(), &d));
        assert_eq!(c(M2, &d), 9);
    }

    #[test]
    fn induced_examples() {
        let ind = |h: PatternId, g: &Graph| count_induced(&h.graph(), g).unwrap().get();
        let k22 = build(&FamilySpec::CompleteBipartite { a: 2, b: 2 }).unwrap();
        assert_eq!(ind(C4, &k22), 1);
        assert_eq!(ind(P4, &C4.graph()), 0);
        let c5 = build(&FamilySpec::Cycle { n: 5 }).unwrap();
        // oracle: induced subgraphs on all 4-subsets
        let mut oracle = 0;
        for skip in 0..5 {
            let keep: Vec<usize> = (0..5).filter(|&v| v != skip).collect();
            let sub = c5.induced(&keep);
            if crate::canon::canonical_form_exhaustive(&sub).unwrap()
                == crate::canon::canonical_form_exhaustive(&M2.graph()).unwrap()
            {
                oracle += 1;
            }
        }
        assert_eq!(ind(M2, &c5), oracle);
        // each 4-subset of C5 induces a path, so no induced matchings; as
        // plain subgraphs there are five
        assert_eq!(oracle, 0);
        assert_eq!(c(M2, &c5), 5);
    }

    #[test]
    fn automorphism_orders() {
        let aut = |p: PatternId| automorphism_order(&p.graph()).unwrap();
        assert_eq!(aut(K4), 24);
        assert_eq!(aut(P4), 2);
        assert_eq!(aut(T1), 2);
        assert_eq!(aut(C4), 8);
        assert_eq!(aut(B2), 4);
        assert!(automorphism_order(&Graph::empty(9).unwrap()).is_err());
    }

    #[test]
    fn fast_examples() {
        let k45 = build(&FamilySpec::CompleteBipartite { a: 4, b: 5 }).unwrap();
        assert_eq!(count_copies_fast(P3, &k45).get(), 4 * 10 + 5 * 6);
        assert_eq!(count_copies_fast(P3, &k45).get(), c(P3, &k45));
        assert_eq!(count_copies_fast(M2, &k45).get(), 190 - 70);
        assert_eq!(count_copies_fast(M2, &k45).get(), c(M2, &k45));
        let k22 = build(&FamilySpec::CompleteBipartite { a: 2, b: 2 }).unwrap();
        assert_eq!(count_copies_fast(C4, &k22).get(), 1);
    }

    #[test]
    fn counts_in_complete_graphs() {
        // closed forms for K_n: choose the vertex set, times labelings / |Aut|
        let k6 = Graph::complete(6).unwrap();
        let expect = [
            (K2, 15),
            (P3, 60),
            (K3, 20),
            (M2, 45),
            (S4, 60),
            (P4, 180),
            (C4, 45),
            (T1, 180),
            (B2, 90),
            (K4, 15),
        ];
        for (p, v) in expect {
            assert_eq!(c(p, &k6), v, "{p}");
            assert_eq!(count_copies_fast(p, &k6).get(), v, "{p}");
        }
    }

    #[test]
    fn subset_oracle_agrees_on_small_hosts() {
        for g in [
            build(&FamilySpec::Cycle { n: 5 }).unwrap(),
            K4.graph(),
            build(&FamilySpec::Friendship { n: 5 }).unwrap(),
        ] {
            for p in PatternId::ALL {
                assert_eq!(c(p, &g), subset_oracle(&p.graph(), &g), "{p} in {g}");
            }
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n, 0.1f64..0.9).prop_flat_map(|(n, density)| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(0.0f64..1.0, pairs).prop_map(move |coins| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if coins[k] < density {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn fast_matches_embedder(g in arb_graph(10)) {
            for p in PatternId::ALL {
                prop_assert_eq!(count_copies_fast(p, &g), count_copies(&p.graph(), &g).unwrap());
            }
        }

        #[test]
        fn adding_an_edge_never_lowers_counts(g in arb_graph(8)) {
            let n = g.n();
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut bigger = g.clone();
                    bigger.add_edge(u, v).unwrap();
                    for p in PatternId::ALL {
                        prop_assert!(c(p, &bigger) >= c(p, &g));
                    }
                }
            }
        }
    }
}
