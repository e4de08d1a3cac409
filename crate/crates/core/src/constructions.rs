//! Named graph families used as extremal and lower-bound constructions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::PatternId;
use crate::subgraph::contains_subgraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Balanced complete `r`-partite graph on `n` vertices.
    TuranGraph {
        n: usize,
        r: usize,
    },
    CompleteMultipartite {
        parts: Vec<usize>,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    /// `floor(n/k)` disjoint copies of `K_k` and a clique on the rest.
    DGraph {
        k: usize,
        n: usize,
    },
    /// `K_{s,t}` with the `s` side made a clique.
    CliquePlusIndependent {
        s: usize,
        t: usize,
    },
    /// Classes `A` (independent, `n-k+l`), `B` (universal, `l`) and
    /// `C` (clique, `k-2l`), with no `A`-`C` edges.
    GGraph {
        n: usize,
        k: usize,
        l: usize,
    },
    /// A universal vertex and a maximum matching on the others.
    Friendship {
        n: usize,
    },
    Star {
        n: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Matching {
        l: usize,
    },
    /// A triangle and `l` pendant vertices on one triangle vertex.
    TGraph {
        l: usize,
    },
    /// `k` triangles sharing one edge.
    Book {
        k: usize,
    },
    TwoRegularTriangleFree {
        n: usize,
    },
    /// Tripartite graph whose edges each lie in exactly one triangle.
    RSTriangleGraph {
        m: usize,
    },
}

fn invalid(family: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameters {
        family,
        reason: reason.into(),
    }
}

fn clique_on(g: &mut Graph, vertices: std::ops::Range<usize>) {
    for u in vertices.clone() {
        for v in u + 1..vertices.end {
            g.set(u, v);
        }
    }
}

fn multipartite(parts: &[usize]) -> Result<Graph> {
    let n: usize = parts.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut starts = Vec::with_capacity(parts.len());
    let mut at = 0;
    for &p in parts {
        starts.push(at..at + p);
        at += p;
    }
    for (i, a) in starts.iter().enumerate() {
        for b in &starts[i + 1..] {
            for u in a.clone() {
                for v in b.clone() {
                    g.set(u, v);
                }
            }
        }
    }
    Ok(g)
}

/// Part sizes of the Turán graph, larger parts first.
pub fn turan_parts(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

/// Greedy 3-term-progression-free subset of `0..m`, built upward from 0.
pub fn greedy_ap_free(m: usize) -> Vec<usize> {
    let mut set: Vec<usize> = Vec::new();
    let mut member = vec![false; m];
    for c in 0..m {
        // c would be the top of a progression a < b < c with a + c = 2b
        let closes = set
            .iter()
            .any(|&b| 2 * b >= c && member[2 * b - c] && 2 * b - c != b);
        if !closes {
            set.push(c);
            member[c] = true;
        }
    }
    set
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::TuranGraph { .. } => "turan",
            FamilySpec::CompleteMultipartite { .. } => "multipartite",
            FamilySpec::CompleteBipartite { .. } => "bipartite",
            FamilySpec::DGraph { .. } => "d",
            FamilySpec::CliquePlusIndependent { .. } => "clique-independent",
            FamilySpec::GGraph { .. } => "g",
            FamilySpec::Friendship { .. } => "friendship",
            FamilySpec::Star { .. } => "star",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Matching { .. } => "matching",
            FamilySpec::TGraph { .. } => "t",
            FamilySpec::Book { .. } => "book",
            FamilySpec::TwoRegularTriangleFree { .. } => "two-regular",
            FamilySpec::RSTriangleGraph { .. } => "rs",
        }
    }

    /// Family names accepted by [`FamilySpec::from_params`], with their
    /// parameter lists.
    pub const USAGE: &'static [(&'static str, &'static str)] = &[
        ("turan", "n r"),
        ("multipartite", "part sizes..."),
        ("bipartite", "a b"),
        ("d", "k n"),
        ("clique-independent", "s t"),
        ("g", "n k l"),
        ("friendship", "n"),
        ("star", "n"),
        ("path", "n"),
        ("cycle", "n"),
        ("matching", "l"),
        ("t", "l"),
        ("book", "k"),
        ("two-regular", "n"),
        ("rs", "m"),
    ];

    pub fn from_params(name: &str, p: &[usize]) -> Result<FamilySpec> {
        let want = |k: usize| -> Result<()> {
            if p.len() == k {
                Ok(())
            } else {
                Err(invalid(
                    "family",
                    format!("{name} takes {k} parameters, got {}", p.len()),
                ))
            }
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "turan" => {
                want(2)?;
                FamilySpec::TuranGraph { n: p[0], r: p[1] }
            }
            "multipartite" => FamilySpec::CompleteMultipartite { parts: p.to_vec() },
            "bipartite" => {
                want(2)?;
                FamilySpec::CompleteBipartite { a: p[0], b: p[1] }
            }
            "d" => {
                want(2)?;
                FamilySpec::DGraph { k: p[0], n: p[1] }
            }
            "clique-independent" => {
                want(2)?;
                FamilySpec::CliquePlusIndependent { s: p[0], t: p[1] }
            }
            "g" => {
                want(3)?;
                FamilySpec::GGraph {
                    n: p[0],
                    k: p[1],
                    l: p[2],
                }
            }
            other => {
                want(1)?;
                let x = p[0];
                match other {
                    "friendship" => FamilySpec::Friendship { n: x },
                    "star" => FamilySpec::Star { n: x },
                    "path" => FamilySpec::Path { n: x },
                    "cycle" => FamilySpec::Cycle { n: x },
                    "matching" => FamilySpec::Matching { l: x },
                    "t" => FamilySpec::TGraph { l: x },
                    "book" => FamilySpec::Book { k: x },
                    "two-regular" => FamilySpec::TwoRegularTriangleFree { n: x },
                    "rs" => FamilySpec::RSTriangleGraph { m: x },
                    _ => return Err(invalid("family", format!("unknown family {name}"))),
                }
            }
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::TuranGraph { n, r } => write!(f, "T_{r}({n})"),
            FamilySpec::CompleteMultipartite { parts } => {
                let p: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
                write!(f, "K_{{{}}}", p.join(","))
            }
            FamilySpec::CompleteBipartite { a, b } => write!(f, "K_{{{a},{b}}}"),
            FamilySpec::DGraph { k, n } => write!(f, "D({k},{n})"),
            FamilySpec::CliquePlusIndependent { s, t } => write!(f, "K'_{{{s},{t}}}"),
            FamilySpec::GGraph { n, k, l } => write!(f, "G_{{{n},{k},{l}}}"),
            FamilySpec::Friendship { n } => write!(f, "F({n})"),
            FamilySpec::Star { n } => write!(f, "S_{n}"),
            FamilySpec::Path { n } => write!(f, "P_{n}"),
            FamilySpec::Cycle { n } => write!(f, "C_{n}"),
            FamilySpec::Matching { l } => write!(f, "M_{l}"),
            FamilySpec::TGraph { l } => write!(f, "T_{l}"),
            FamilySpec::Book { k } => write!(f, "B_{k}"),
            FamilySpec::TwoRegularTriangleFree { n } => write!(f, "C_{n}"),
            FamilySpec::RSTriangleGraph { m } => write!(f, "RS({m})"),
        }
    }
}

pub fn build(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::TuranGraph { n, r } => {
            if r == 0 {
                return Err(invalid("turan", "r must be at least 1"));
            }
            multipartite(&turan_parts(n, r))
        }
        FamilySpec::CompleteMultipartite { ref parts } => multipartite(parts),
        FamilySpec::CompleteBipartite { a, b } => multipartite(&[a, b]),
        FamilySpec::DGraph { k, n } => {
            if k == 0 {
                return Err(invalid("d", "k must be at least 1"));
            }
            let mut g = Graph::empty(n)?;
            let mut start = 0;
            while start < n {
                let end = (start + k).min(n);
                clique_on(&mut g, start..end);
                start = end;
            }
            Ok(g)
        }
        FamilySpec::CliquePlusIndependent { s, t } => {
            let mut g = multipartite(&[s, t])?;
            clique_on(&mut g, 0..s);
            Ok(g)
        }
        FamilySpec::GGraph { n, k, l } => {
            if k < 2 * l {
                return Err(invalid("g", format!("need k >= 2l, got k={k}, l={l}")));
            }
            if n + l < k {
                return Err(invalid(
                    "g",
                    format!("need n >= k - l, got n={n}, k={k}, l={l}"),
                ));
            }
            let a = n + l - k;
            let mut g = Graph::empty(n)?;
            for b in a..a + l {
                for v in 0..n {
                    if v != b {
                        g.set(b, v);
                    }
                }
            }
            clique_on(&mut g, a + l..n);
            Ok(g)
        }
        FamilySpec::Friendship { n } => {
            if n == 0 {
                return Err(invalid("friendship", "n must be at least 1"));
            }
            let mut g = Graph::empty(n)?;
            for v in 1..n {
                g.set(0, v);
            }
            for v in (1..n.saturating_sub(1)).step_by(2) {
                g.set(v, v + 1);
            }
            Ok(g)
        }
        FamilySpec::Star { n } => {
            if n == 0 {
                return Err(invalid("star", "n must be at least 1"));
            }
            multipartite(&[1, n - 1])
        }
        FamilySpec::Path { n } => {
            let mut g = Graph::empty(n)?;
            for v in 1..n {
                g.set(v - 1, v);
            }
            Ok(g)
        }
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(invalid("cycle", "n must be at least 3"));
            }
            let mut g = build(&FamilySpec::Path { n })?;
            g.set(0, n - 1);
            Ok(g)
        }
        FamilySpec::Matching { l } => {
            let mut g = Graph::empty(2 * l)?;
            for i in 0..l {
                g.set(2 * i, 2 * i + 1);
            }
            Ok(g)
        }
        FamilySpec::TGraph { l } => {
            let mut g = Graph::complete(3)?.padded(l + 3)?;
            for v in 3..l + 3 {
                g.set(0, v);
            }
            Ok(g)
        }
        FamilySpec::Book { k } => {
            let mut g = Graph::empty(k + 2)?;
            g.set(0, 1);
            for v in 2..k + 2 {
                g.set(0, v);
                g.set(1, v);
            }
            Ok(g)
        }
        FamilySpec::TwoRegularTriangleFree { n } => {
            if n < 4 {
                return Err(invalid("two-regular", "n must be at least 4"));
            }
            build(&FamilySpec::Cycle { n })
        }
        FamilySpec::RSTriangleGraph { m } => {
            if m == 0 {
                return Err(invalid("rs", "m must be at least 1"));
            }
            let (y0, z0) = (m, 3 * m);
            let mut g = Graph::empty(6 * m)?;
            for s in greedy_ap_free(m) {
                for x in 0..m {
                    let (y, z) = (y0 + x + s, z0 + x + 2 * s);
                    g.set(x, y);
                    g.set(y, z);
                    g.set(x, z);
                }
            }
            Ok(g)
        }
    }
}

fn path_free(g: &Graph, vertices: usize) -> bool {
    let p = build(&FamilySpec::Path { n: vertices }).expect("small path");
    !contains_subgraph(g, &p)
}

fn every_edge_in_one_triangle(g: &Graph) -> bool {
    g.edges().all(|(u, v)| g.codegree(u, v) == 1)
}

fn triangle_count(g: &Graph) -> usize {
    g.edges().map(|(u, v)| g.codegree(u, v)).sum::<usize>() / 3
}

fn connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Checks the property that characterizes the family (mostly a freeness
/// condition) on a graph built from `spec`.
pub fn defining_property_check(spec: &FamilySpec, g: &Graph) -> bool {
    let degrees = g.degrees();
    match *spec {
        FamilySpec::TuranGraph { n, r } => {
            let mut parts = turan_parts(n, r);
            parts.retain(|&p| p > 0);
            g.multipartite_parts() == Some(parts)
                && !contains_subgraph(g, &Graph::complete(r + 1).expect("small clique"))
        }
        FamilySpec::CompleteMultipartite { ref parts } => {
            let mut parts = parts.clone();
            parts.retain(|&p| p > 0);
            parts.sort_unstable_by(|a, b| b.cmp(a));
            g.multipartite_parts() == Some(parts)
        }
        FamilySpec::CompleteBipartite { a, b } => {
            g.edge_count() == a * b && !contains_subgraph(g, &PatternId::K3.graph())
        }
        FamilySpec::DGraph { k, .. } => path_free(g, k + 1) && degrees.iter().all(|&d| d < k),
        FamilySpec::CliquePlusIndependent { s, t } => {
            g.edge_count() == s * (s - usize::from(s > 0)) / 2 + s * t
                && (s..s + t).all(|u| (u + 1..s + t).all(|v| !g.has_edge(u, v)))
        }
        FamilySpec::GGraph { k, l, .. } => path_free(g, k.max(2 * l + 1) + 1),
        FamilySpec::Friendship { .. } => !contains_subgraph(g, &PatternId::C4.graph()),
        FamilySpec::Star { n } => g.edge_count() == n - 1 && (n == 1 || degrees[0] == n - 1),
        FamilySpec::Path { n } => {
            g.edge_count() == n.saturating_sub(1) && connected(g) && degrees.iter().all(|&d| d <= 2)
        }
        FamilySpec::Cycle { .. } => degrees.iter().all(|&d| d == 2) && connected(g),
        FamilySpec::Matching { .. } => degrees.iter().all(|&d| d == 1),
        FamilySpec::TGraph { l } => triangle_count(g) == 1 && g.edge_count() == l + 3,
        FamilySpec::Book { k } => triangle_count(g) == k && g.codegree(0, 1) == k,
        FamilySpec::TwoRegularTriangleFree { .. } => {
            degrees.iter().all(|&d| d == 2) && !contains_subgraph(g, &PatternId::K3.graph())
        }
        FamilySpec::RSTriangleGraph { .. } => every_edge_in_one_triangle(g),
    }
}
