//! The six stable dual graphs of the classical examples table, all nodes of
//! thickness 1, and the table itself.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::invariants::{circuit_invariant_c, index_m2, index_m3, ReductionData};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub picture: &'static str,
    pub vertices: usize,
    pub edges: &'static [(usize, usize)],
}

impl Fixture {
    pub fn graph(&self) -> MultiGraph {
        MultiGraph::from_edges(self.vertices, self.edges).expect("fixtures are connected")
    }
}

/// One vertex with a loop.
pub const LOOP: Fixture = Fixture {
    name: "loop",
    picture: "v0 (loop)",
    vertices: 1,
    edges: &[(0, 0)],
};

/// Two vertices joined by two edges.
pub const BANANA: Fixture = Fixture {
    name: "banana",
    picture: "v0 == v1",
    vertices: 2,
    edges: &[(0, 1), (0, 1)],
};

/// A circuit of four edges.
pub const SQUARE: Fixture = Fixture {
    name: "square",
    picture: "v0 - v1 - v2 - v3 - v0",
    vertices: 4,
    edges: &[(0, 1), (1, 2), (2, 3), (3, 0)],
};

/// Top and bottom vertex joined by three chains of two edges.
///
/// ```text
///        v0
///      / |  \
///    v1  v2  v3
///      \ |  /
///        v4
/// ```
pub const THETA_FAN: Fixture = Fixture {
    name: "theta-fan",
    picture: "v0 -{v1,v2,v3}- v4",
    vertices: 5,
    edges: &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
};

/// Two circuits of four edges joined by a bridge.
///
/// ```text
///     v0          v4
///    /  \        /  \
///  v1    v2 -- v5    v6
///    \  /        \  /
///     v3          v7
/// ```
pub const TWO_SQUARES_BRIDGE: Fixture = Fixture {
    name: "two-squares-bridge",
    picture: "[v0 v1 v3 v2] - [v5 v4 v6 v7]",
    vertices: 8,
    edges: &[(0, 1), (0, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 7), (6, 7), (2, 5)],
};

/// Two squares joined along two horizontal edges.
///
/// ```text
///       v0 ------ v1
///      /  |      |  \
///    v2   v3    v4   v5
///      \  |      |  /
///       v6 ------ v7
/// ```
pub const GRID: Fixture = Fixture {
    name: "grid",
    picture: "v0-v1 / v6-v7 joined by chains v2,v3 and v4,v5",
    vertices: 8,
    edges: &[(0, 2), (0, 3), (0, 1), (1, 4), (1, 5), (2, 6), (3, 6), (4, 7), (5, 7), (6, 7)],
};

pub const TABLE: [Fixture; 6] = [LOOP, BANANA, SQUARE, THETA_FAN, TWO_SQUARES_BRIDGE, GRID];

pub fn by_name(name: &str) -> Option<Fixture> {
    TABLE.iter().copied().find(|f| f.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub name: &'static str,
    pub c: u64,
    pub m1: u64,
    pub m2: u64,
    pub m3: u64,
}

/// `m1, m2, m3` for each fixture at torsion order `r`, which must be a
/// positive multiple of 4.
pub fn table(r: u64) -> Result<Vec<TableRow>> {
    if r == 0 || !r.is_multiple_of(4) {
        return Err(Error::BadModulus(r));
    }
    TABLE
        .iter()
        .map(|f| {
            let d = ReductionData::semistable(f.graph(), r)?;
            Ok(TableRow { name: f.name, c: circuit_invariant_c(d.graph()), m1: d.m1(), m2: index_m2(&d), m3: index_m3(&d) })
        })
        .collect()
}

pub fn format_table(r: u64, rows: &[TableRow]) -> String {
    let mut out = String::new();
    writeln!(out, "r = {r}").unwrap();
    writeln!(out, "{:<20} {:>4} {:>6} {:>6} {:>6}", "graph", "c", "m1", "m2", "m3").unwrap();
    for row in rows {
        writeln!(out, "{:<20} {:>4} {:>6} {:>6} {:>6}", row.name, row.c, row.m1, row.m2, row.m3).unwrap();
    }
    out
}
