//! Circuits, their signed edge vectors, and circuit enumeration.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Default ceiling on the number of circuits [`enumerate_circuits`] will produce.
pub const DEFAULT_CIRCUIT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// One oriented step of a path: edge index into [`MultiGraph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Traversal {
    pub edge: usize,
    pub direction: Direction,
}

impl Traversal {
    pub fn forward(edge: usize) -> Self {
        Traversal { edge, direction: Direction::Forward }
    }

    pub fn backward(edge: usize) -> Self {
        Traversal { edge, direction: Direction::Backward }
    }

    fn start(&self, g: &MultiGraph) -> usize {
        let e = &g.edges()[self.edge];
        match self.direction {
            Direction::Forward => e.tail,
            Direction::Backward => e.tip,
        }
    }

    fn end(&self, g: &MultiGraph) -> usize {
        let e = &g.edges()[self.edge];
        match self.direction {
            Direction::Forward => e.tip,
            Direction::Backward => e.tail,
        }
    }
}

/// A closed path with no repeated vertices other than its endpoints,
/// stored in canonical form: the least rotation of either orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Circuit {
    traversals: Vec<Traversal>,
}

impl Circuit {
    /// Validates a traversal sequence against `g` and canonicalizes it.
    pub fn new(g: &MultiGraph, traversals: Vec<Traversal>) -> Result<Self> {
        if traversals.is_empty() {
            return Err(Error::InvalidCircuit("empty traversal list".into()));
        }
        if let Some(t) = traversals.iter().find(|t| t.edge >= g.edge_count()) {
            return Err(Error::InvalidCircuit(format!("edge index {} out of range", t.edge)));
        }
        let n = traversals.len();
        let mut seen = vec![false; g.vertex_count()];
        let mut used = vec![false; g.edge_count()];
        for (i, t) in traversals.iter().enumerate() {
            let next = &traversals[(i + 1) % n];
            if t.end(g) != next.start(g) {
                return Err(Error::InvalidCircuit(format!("traversal {i} does not chain")));
            }
            let v = t.start(g);
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidCircuit(format!(
                    "vertex `{}` repeated",
                    g.vertices()[v].id
                )));
            }
            if std::mem::replace(&mut used[t.edge], true) {
                return Err(Error::InvalidCircuit(format!(
                    "edge `{}` repeated",
                    g.edges()[t.edge].id
                )));
            }
        }
        Ok(Self::canonical(traversals))
    }

    fn canonical(traversals: Vec<Traversal>) -> Self {
        let reversed: Vec<Traversal> = traversals
            .iter()
            .rev()
            .map(|t| Traversal { edge: t.edge, direction: t.direction.flip() })
            .collect();
        let best = [traversals, reversed]
            .into_iter()
            .flat_map(|seq| {
                (0..seq.len()).map(move |k| {
                    let mut r = seq.clone();
                    r.rotate_left(k);
                    r
                })
            })
            .min()
            .expect("nonempty");
        Circuit { traversals: best }
    }

    pub fn traversals(&self) -> &[Traversal] {
        &self.traversals
    }

    pub fn len(&self) -> usize {
        self.traversals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traversals.is_empty()
    }

    /// The same circuit walked the other way; the canonical form is shared
    /// but the vector negates.
    pub fn reversed(&self) -> ReversedCircuit<'_> {
        ReversedCircuit(self)
    }

    pub fn vector(&self, g: &MultiGraph) -> OrientedCycleVector {
        let mut coefficients = vec![0i64; g.edge_count()];
        for t in &self.traversals {
            coefficients[t.edge] += t.direction.sign();
        }
        OrientedCycleVector { coefficients }
    }

    /// Vertex sequence `v0, v1, ..., v{n-1}` where traversal `i` leads from `v_i`.
    pub fn vertex_sequence(&self, g: &MultiGraph) -> Vec<usize> {
        self.traversals.iter().map(|t| t.start(g)).collect()
    }

    fn signed_edges(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.traversals.iter().map(|t| (t.edge, t.direction.sign()))
    }
}

/// Borrowed view of a circuit with its orientation flipped.
#[derive(Debug, Clone, Copy)]
pub struct ReversedCircuit<'a>(&'a Circuit);

/// Anything that contributes signed edges to an intersection count.
pub trait SignedEdges {
    fn signed_edges(&self) -> Vec<(usize, i64)>;
}

impl SignedEdges for Circuit {
    fn signed_edges(&self) -> Vec<(usize, i64)> {
        Circuit::signed_edges(self).collect()
    }
}

impl SignedEdges for ReversedCircuit<'_> {
    fn signed_edges(&self) -> Vec<(usize, i64)> {
        self.0.signed_edges().map(|(e, s)| (e, -s)).collect()
    }
}

/// Image of a circuit in `C1(G, Z)`, indexed by edge position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedCycleVector {
    pub coefficients: Vec<i64>,
}

impl OrientedCycleVector {
    pub fn zero(edges: usize) -> Self {
        OrientedCycleVector { coefficients: vec![0; edges] }
    }

    /// Coefficients keyed by edge id, zeros omitted.
    pub fn by_edge_id(&self, g: &MultiGraph) -> BTreeMap<String, i64> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (g.edges()[i].id.0.clone(), c))
            .collect()
    }

    pub fn dot(&self, other: &Self) -> i64 {
        self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a * b).sum()
    }
}

/// Signed number of common edges: edges on both circuits count `+1` when
/// walked the same way and `-1` otherwise.
pub fn signed_common_edges(a: &impl SignedEdges, b: &impl SignedEdges) -> i64 {
    let a: BTreeMap<usize, i64> = a.signed_edges().into_iter().collect();
    b.signed_edges()
        .into_iter()
        .filter_map(|(e, s)| a.get(&e).map(|t| s * t))
        .sum()
}

/// One circuit per non-tree edge of [`MultiGraph::spanning_tree`]: the edge
/// walked forward, then back through the tree. Their vectors form a basis of
/// `H1(G, Z)`.
pub fn fundamental_cycle_basis(g: &MultiGraph) -> Vec<Circuit> {
    let tree = g.spanning_tree();
    let mut basis = Vec::with_capacity(g.betti1());
    for (i, e) in g.edges().iter().enumerate() {
        if tree.in_tree[i] {
            continue;
        }
        let mut traversals = vec![Traversal::forward(i)];
        if !e.is_loop() {
            // climb from tip and from tail to their common ancestor
            let (mut up, mut down) = (e.tip, e.tail);
            let mut ascent = Vec::new();
            let mut descent = Vec::new();
            while up != down {
                if tree.depth[up] >= tree.depth[down] {
                    let t = tree.parent_edge[up].expect("non-root vertex has a parent");
                    let te = &g.edges()[t];
                    ascent.push(if te.tail == up { Traversal::forward(t) } else { Traversal::backward(t) });
                    up = te.other(up);
                } else {
                    let t = tree.parent_edge[down].expect("non-root vertex has a parent");
                    let te = &g.edges()[t];
                    // walked later from parent towards `down`
                    descent.push(if te.tip == down { Traversal::forward(t) } else { Traversal::backward(t) });
                    down = te.other(down);
                }
            }
            traversals.extend(ascent);
            traversals.extend(descent.into_iter().rev());
        }
        basis.push(Circuit::new(g, traversals).expect("fundamental cycle is a circuit"));
    }
    basis
}

/// All circuits of `g`, each once up to rotation and reversal, sorted.
///
/// Loops give length-1 circuits and each pair of parallel edges gives a
/// length-2 circuit. Longer circuits come from Johnson's algorithm on the
/// underlying simple graph, expanded over every choice of parallel edge.
pub fn enumerate_circuits(g: &MultiGraph, cap: usize) -> Result<Vec<Circuit>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let push = |out: &mut Vec<Circuit>, c: Circuit| -> Result<()> {
        if out.len() >= cap {
            return Err(Error::TooManyCircuits { cap });
        }
        out.push(c);
        Ok(())
    };

    // parallel classes: bundles[u][v] = edges between u < v, input order
    let mut bundles: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            push(&mut out, Circuit::canonical(vec![Traversal::forward(i)]))?;
        } else {
            bundles.entry((e.tail.min(e.tip), e.tail.max(e.tip))).or_default().push(i);
        }
    }
    for edges in bundles.values() {
        for (k, &a) in edges.iter().enumerate() {
            for &b in &edges[k + 1..] {
                let ea = &g.edges()[a];
                let back = if g.edges()[b].tail == ea.tip { Traversal::forward(b) } else { Traversal::backward(b) };
                push(&mut out, Circuit::canonical(vec![Traversal::forward(a), back]))?;
            }
        }
    }

    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in bundles.keys() {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let mut johnson = Johnson::new(n);
    for s in 0..n {
        johnson.reset(s);
        let mut cycles = Vec::new();
        johnson.circuit(s, s, &adjacency, &mut cycles);
        for cycle in cycles {
            // each undirected cycle shows up in both directions
            if cycle.len() < 3 || cycle[1] > cycle[cycle.len() - 1] {
                continue;
            }
            expand(g, &bundles, &cycle, &mut out, cap)?;
        }
    }
    out.sort();
    Ok(out)
}

fn expand(
    g: &MultiGraph,
    bundles: &BTreeMap<(usize, usize), Vec<usize>>,
    cycle: &[usize],
    out: &mut Vec<Circuit>,
    cap: usize,
) -> Result<()> {
    let len = cycle.len();
    let choices: Vec<&Vec<usize>> = (0..len)
        .map(|i| {
            let (u, v) = (cycle[i], cycle[(i + 1) % len]);
            &bundles[&(u.min(v), u.max(v))]
        })
        .collect();
    let mut pick = vec![0usize; len];
    loop {
        let traversals = (0..len)
            .map(|i| {
                let e = choices[i][pick[i]];
                if g.edges()[e].tail == cycle[i] { Traversal::forward(e) } else { Traversal::backward(e) }
            })
            .collect();
        if out.len() >= cap {
            return Err(Error::TooManyCircuits { cap });
        }
        out.push(Circuit::canonical(traversals));
        // odometer over parallel-edge choices
        let mut i = 0;
        loop {
            if i == len {
                return Ok(());
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Johnson's elementary-circuit search on the symmetric digraph of a simple
/// graph, restricted to vertices `>= s` for the current start `s`.
struct Johnson {
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    start: usize,
}

impl Johnson {
    fn new(n: usize) -> Self {
        Johnson { blocked: vec![false; n], blocked_by: vec![Vec::new(); n], stack: Vec::new(), start: 0 }
    }

    fn reset(&mut self, s: usize) {
        self.start = s;
        self.blocked.iter_mut().for_each(|b| *b = false);
        self.blocked_by.iter_mut().for_each(Vec::clear);
        self.stack.clear();
    }

    fn unblock(&mut self, u: usize) {
        let mut work = vec![u];
        while let Some(u) = work.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            work.append(&mut self.blocked_by[u]);
        }
    }

    fn circuit(&mut self, v: usize, s: usize, adjacency: &[Vec<usize>], found: &mut Vec<Vec<usize>>) -> bool {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in adjacency[v].iter().filter(|&&w| w >= s) {
            if w == s {
                found.push(self.stack.clone());
                closed = true;
            } else if !self.blocked[w] && self.circuit(w, s, adjacency, found) {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in adjacency[v].iter().filter(|&&w| w >= s) {
                if !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        closed
    }
}
