//! Connected multigraphs with loops: the dual graph of a nodal special fibre.
//!
//! Vertices carry a geometric genus, edges carry the thickness of the node
//! and the order of its stabilizer on a twisted model. Edges are oriented
//! (`tail -> tip`) so that boundary and coboundary maps are well defined;
//! the orientation is arbitrary and none of the invariants depend on it.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_owned())
    }
}

/// Raw vertex record, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRecord {
    pub id: VertexId,
    pub genus: u64,
}

/// Raw edge record, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub tail: VertexId,
    pub tip: VertexId,
    pub thickness: u64,
    pub stabilizer: u64,
}

impl VertexRecord {
    pub fn new(id: &str) -> Self {
        VertexRecord { id: id.into(), genus: 0 }
    }

    pub fn with_genus(mut self, genus: u64) -> Self {
        self.genus = genus;
        self
    }
}

impl EdgeRecord {
    pub fn new(id: &str, tail: &str, tip: &str) -> Self {
        EdgeRecord {
            id: id.into(),
            tail: tail.into(),
            tip: tip.into(),
            thickness: 1,
            stabilizer: 1,
        }
    }

    pub fn with_thickness(mut self, thickness: u64) -> Self {
        self.thickness = thickness;
        self
    }

    pub fn with_stabilizer(mut self, stabilizer: u64) -> Self {
        self.stabilizer = stabilizer;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub genus: u64,
}

/// A validated edge; endpoints are vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: usize,
    pub tip: usize,
    pub thickness: u64,
    pub stabilizer: u64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.tip
    }

    /// The endpoint opposite to `v`; for a loop this is `v` itself.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.tip
        } else {
            self.tail
        }
    }
}

/// A connected multigraph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    /// Incident edge indices per vertex, in edge input order. A loop appears once.
    incidence: Vec<Vec<usize>>,
}

impl MultiGraph {
    /// Validates the records and builds the graph.
    pub fn build(vertices: Vec<VertexRecord>, edges: Vec<EdgeRecord>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        let mut vs = Vec::with_capacity(vertices.len());
        for (i, rec) in vertices.into_iter().enumerate() {
            if vertex_index.insert(rec.id.clone(), i).is_some() {
                return Err(Error::DuplicateId { kind: "vertex", id: rec.id.0 });
            }
            vs.push(Vertex { id: rec.id, genus: rec.genus });
        }

        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut es = Vec::with_capacity(edges.len());
        for (i, rec) in edges.into_iter().enumerate() {
            if edge_index.insert(rec.id.clone(), i).is_some() {
                return Err(Error::DuplicateId { kind: "edge", id: rec.id.0 });
            }
            let lookup = |v: &VertexId| {
                vertex_index.get(v).copied().ok_or_else(|| Error::DanglingEndpoint {
                    edge: rec.id.0.clone(),
                    vertex: v.0.clone(),
                })
            };
            let tail = lookup(&rec.tail)?;
            let tip = lookup(&rec.tip)?;
            if rec.thickness == 0 {
                return Err(Error::NonPositive {
                    field: format!("thickness of edge `{}`", rec.id),
                    value: 0,
                });
            }
            if rec.stabilizer == 0 {
                return Err(Error::NonPositive {
                    field: format!("stabilizer of edge `{}`", rec.id),
                    value: 0,
                });
            }
            es.push(Edge {
                id: rec.id,
                tail,
                tip,
                thickness: rec.thickness,
                stabilizer: rec.stabilizer,
            });
        }

        let mut incidence = vec![Vec::new(); vs.len()];
        for (i, e) in es.iter().enumerate() {
            incidence[e.tail].push(i);
            if !e.is_loop() {
                incidence[e.tip].push(i);
            }
        }

        let g = MultiGraph { vertices: vs, edges: es, vertex_index, edge_index, incidence };
        let components = g.component_count_without(None);
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(g)
    }

    /// Builds a graph on vertices `v0..v{n-1}` with edges `e0, e1, ...`
    /// oriented as given. Convenience for tests and built-in fixtures.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|i| VertexRecord::new(&format!("v{i}"))).collect();
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| EdgeRecord::new(&format!("e{i}"), &format!("v{a}"), &format!("v{b}")))
            .collect();
        Self::build(vertices, edges)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_position(&self, id: &VertexId) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_position(&self, id: &EdgeId) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    /// Incident edges of `v` in input order; a loop is listed once.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Degree of `v`, a loop counting twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v]
            .iter()
            .map(|&e| if self.edges[e].is_loop() { 2 } else { 1 })
            .sum()
    }

    /// Back to raw records, in input order.
    pub fn records(&self) -> (Vec<VertexRecord>, Vec<EdgeRecord>) {
        let vs = self
            .vertices
            .iter()
            .map(|v| VertexRecord { id: v.id.clone(), genus: v.genus })
            .collect();
        let es = self
            .edges
            .iter()
            .map(|e| EdgeRecord {
                id: e.id.clone(),
                tail: self.vertices[e.tail].id.clone(),
                tip: self.vertices[e.tip].id.clone(),
                thickness: e.thickness,
                stabilizer: e.stabilizer,
            })
            .collect();
        (vs, es)
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn betti1(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// Arithmetic genus of the curve: vertex genera plus `b1`.
    pub fn total_genus(&self) -> u64 {
        self.vertices.iter().map(|v| v.genus).sum::<u64>() + self.betti1() as u64
    }

    /// Whether deleting edge `id` keeps the graph connected.
    pub fn is_nonseparating(&self, id: &EdgeId) -> Result<bool> {
        let e = self.edge_position(id).ok_or_else(|| Error::UnknownEdge(id.0.clone()))?;
        Ok(self.is_nonseparating_at(e))
    }

    pub fn is_nonseparating_at(&self, e: usize) -> bool {
        self.edges[e].is_loop() || self.component_count_without(Some(e)) == 1
    }

    /// `true` at every nonseparating edge index.
    pub fn nonseparating_mask(&self) -> Vec<bool> {
        (0..self.edges.len()).map(|e| self.is_nonseparating_at(e)).collect()
    }

    fn component_count_without(&self, skip: Option<usize>) -> usize {
        self.component_labels_without(skip).1
    }

    /// Component label per vertex after deleting `skip`, plus the number of components.
    pub(crate) fn component_labels_without(&self, skip: Option<usize>) -> (Vec<usize>, usize) {
        let n = self.vertices.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &e in &self.incidence[u] {
                    if Some(e) == skip {
                        continue;
                    }
                    let w = self.edges[e].other(u);
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Index of the vertex whose id is least in byte order.
    pub fn least_vertex(&self) -> usize {
        (0..self.vertices.len())
            .min_by(|&a, &b| self.vertices[a].id.cmp(&self.vertices[b].id))
            .expect("graph has at least one vertex")
    }

    /// Breadth-first spanning tree rooted at the least vertex, scanning
    /// incident edges in input order. Returns, per vertex, the tree edge
    /// leading to its parent (`None` at the root), and the BFS depth.
    pub fn spanning_tree(&self) -> SpanningTree {
        let n = self.vertices.len();
        let root = self.least_vertex();
        let mut parent_edge = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut in_tree = vec![false; self.edges.len()];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.incidence[u] {
                let w = self.edges[e].other(u);
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent_edge[w] = Some(e);
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
        SpanningTree { root, parent_edge, depth, in_tree }
    }

    /// Whether the graph is obtained from another graph by subdividing
    /// every edge into exactly `r` edges.
    ///
    /// Every maximal chain (a path whose interior vertices have degree 2 and
    /// whose ends do not) must have length divisible by `r`; a graph all of
    /// whose vertices have degree 2 is a single cycle and must have length
    /// divisible by `r`.
    pub fn is_r_divided(&self, r: u64) -> bool {
        if r <= 1 {
            return true;
        }
        let r = r as usize;
        let degree: Vec<usize> = (0..self.vertices.len()).map(|v| self.degree(v)).collect();
        if degree.iter().all(|&d| d == 2) {
            return self.edges.len().is_multiple_of(r);
        }
        for start in (0..self.vertices.len()).filter(|&v| degree[v] != 2) {
            for &first in &self.incidence[start] {
                let mut len = 1;
                let mut prev_edge = first;
                let mut at = self.edges[first].other(start);
                while degree[at] == 2 && at != start {
                    let next = self.incidence[at]
                        .iter()
                        .copied()
                        .find(|&e| e != prev_edge)
                        .expect("degree-2 vertex has a second edge");
                    at = self.edges[next].other(at);
                    prev_edge = next;
                    len += 1;
                }
                if len % r != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// The dual graph of the minimal regular model: every edge of thickness
    /// `h` is replaced by a chain of `h` edges of thickness 1 through `h - 1`
    /// new genus-0 vertices. Edge `e` becomes `e`, or `e~0 .. e~{h-1}` when
    /// `h > 1`; the new vertices are `e~1 .. e~{h-1}`.
    pub fn regular_model(&self) -> Result<MultiGraph> {
        if self.edges.iter().all(|e| e.thickness == 1) {
            return Ok(self.clone());
        }
        let (mut vs, _) = self.records();
        let mut es = Vec::new();
        for e in &self.edges {
            let tail = self.vertices[e.tail].id.0.clone();
            let tip = self.vertices[e.tip].id.0.clone();
            if e.thickness == 1 {
                es.push(EdgeRecord::new(&e.id.0, &tail, &tip).with_stabilizer(e.stabilizer));
                continue;
            }
            let h = e.thickness;
            let mut prev = tail;
            for k in 0..h {
                let next = if k + 1 == h {
                    tip.clone()
                } else {
                    let id = format!("{}~{}", e.id, k + 1);
                    vs.push(VertexRecord::new(&id));
                    id
                };
                es.push(
                    EdgeRecord::new(&format!("{}~{}", e.id, k), &prev, &next)
                        .with_stabilizer(e.stabilizer),
                );
                prev = next;
            }
        }
        MultiGraph::build(vs, es)
    }
}

#[derive(Debug, Clone)]
pub struct SpanningTree {
    pub root: usize,
    pub parent_edge: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    pub in_tree: Vec<bool>,
}
