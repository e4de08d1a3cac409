use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::Graph;

/// The ten graphs on at most four vertices without isolated vertices, in
/// the row/column order of the generalized Turán table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PatternId {
    K2,
    P3,
    K3,
    M2,
    S4,
    P4,
    C4,
    /// Triangle with one pendant edge (the paw).
    T1,
    /// Two triangles sharing an edge, i.e. `K4` minus an edge.
    B2,
    K4,
}

impl PatternId {
    pub const ALL: [PatternId; 10] = [
        PatternId::K2,
        PatternId::P3,
        PatternId::K3,
        PatternId::M2,
        PatternId::S4,
        PatternId::P4,
        PatternId::C4,
        PatternId::T1,
        PatternId::B2,
        PatternId::K4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PatternId::K2 => "K2",
            PatternId::P3 => "P3",
            PatternId::K3 => "K3",
            PatternId::M2 => "M2",
            PatternId::S4 => "S4",
            PatternId::P4 => "P4",
            PatternId::C4 => "C4",
            PatternId::T1 => "T1",
            PatternId::B2 => "B2",
            PatternId::K4 => "K4",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn vertex_count(self) -> usize {
        match self {
            PatternId::K2 => 2,
            PatternId::P3 | PatternId::K3 => 3,
            _ => 4,
        }
    }

    fn edges(self) -> &'static [(usize, usize)] {
        match self {
            PatternId::K2 => &[(0, 1)],
            PatternId::P3 => &[(0, 1), (1, 2)],
            PatternId::K3 => &[(0, 1), (1, 2), (0, 2)],
            PatternId::M2 => &[(0, 1), (2, 3)],
            PatternId::S4 => &[(0, 1), (0, 2), (0, 3)],
            PatternId::P4 => &[(0, 1), (1, 2), (2, 3)],
            PatternId::C4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            PatternId::T1 => &[(0, 1), (1, 2), (0, 2), (0, 3)],
            PatternId::B2 => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            PatternId::K4 => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        }
    }

    pub fn graph(self) -> Graph {
        Graph::from_edge_list(self.vertex_count(), self.edges()).expect("static pattern")
    }

    pub fn edge_count(self) -> usize {
        self.edges().len()
    }

    /// Complete multipartite patterns: K2, P3 = K_{1,2}, K3, S4 = K_{1,3},
    /// C4 = K_{2,2}, B2 = K_{1,1,2}, K4.
    pub fn is_complete_multipartite(self) -> bool {
        !matches!(self, PatternId::M2 | PatternId::P4 | PatternId::T1)
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        PatternId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::UnknownPattern(s.to_string()))
    }
}
