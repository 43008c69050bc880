//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use neron_core::graph::{EdgeRecord, MultiGraph, VertexRecord};
use num_integer::Integer;
use rand::Rng;

/// Random connected multigraph: a random tree on `n` vertices plus extra
/// edges (loops and parallels allowed) until `m` edges.
pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize) -> MultiGraph {
    assert!(m + 1 >= n);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    while edges.len() < m {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for e in edges.iter_mut() {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    MultiGraph::from_edges(n, &edges).unwrap()
}

/// Same graph with vertices and edges relabelled and listed by `perm_v`,
/// `perm_e`, optionally flipping edge orientations.
pub fn relabel(g: &MultiGraph, perm_v: &[usize], perm_e: &[usize], flip: &[bool]) -> MultiGraph {
    let mut vertices: Vec<VertexRecord> = vec![VertexRecord::new(""); g.vertex_count()];
    for (i, v) in g.vertices().iter().enumerate() {
        vertices[perm_v[i]] = VertexRecord::new(&format!("w{}", perm_v[i])).with_genus(v.genus);
    }
    let mut edges: Vec<EdgeRecord> = vec![EdgeRecord::new("", "", ""); g.edge_count()];
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = if flip[i] { (e.tip, e.tail) } else { (e.tail, e.tip) };
        edges[perm_e[i]] = EdgeRecord::new(&format!("f{}", perm_e[i]), &format!("w{}", perm_v[a]), &format!("w{}", perm_v[b]))
            .with_thickness(e.thickness)
            .with_stabilizer(e.stabilizer);
    }
    MultiGraph::build(vertices, edges).unwrap()
}

fn is_circuit_subset(g: &MultiGraph, mask: u32) -> bool {
    let mut degree = vec![0usize; g.vertex_count()];
    let mut touched = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            degree[e.tail] += 1;
            degree[e.tip] += 1;
            touched.push(e.tail);
        }
    }
    if touched.is_empty() || degree.iter().any(|&d| d != 0 && d != 2) {
        return false;
    }
    // connected: walk from the first touched vertex
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![touched[0]];
    while let Some(v) = stack.pop() {
        if std::mem::replace(&mut seen[v], true) {
            continue;
        }
        for (i, e) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 1 && (e.tail == v || e.tip == v) {
                stack.push(e.tail);
                stack.push(e.tip);
            }
        }
    }
    (0..g.vertex_count()).all(|v| degree[v] == 0 || seen[v])
}

/// Oriented cycle vector of an edge subset that forms a circuit, walking it
/// from the tail of its first edge.
fn walk(g: &MultiGraph, mask: u32) -> Vec<i64> {
    let mut coeff = vec![0i64; g.edge_count()];
    let mut used = 0u32;
    let first = (0..g.edge_count()).find(|&i| mask >> i & 1 == 1).unwrap();
    let start = g.edges()[first].tail;
    let mut at = start;
    loop {
        let next = (0..g.edge_count()).find(|&i| {
            let e = &g.edges()[i];
            mask >> i & 1 == 1 && used >> i & 1 == 0 && (e.tail == at || e.tip == at)
        });
        let Some(i) = next else { break };
        used |= 1 << i;
        let e = &g.edges()[i];
        if e.tail == at {
            coeff[i] = 1;
            at = e.tip;
        } else {
            coeff[i] = -1;
            at = e.tail;
        }
    }
    assert_eq!(at, start);
    coeff
}

/// Every circuit found by testing all edge subsets for being connected and
/// 2-regular, as oriented vectors.
pub fn subset_circuits(g: &MultiGraph) -> Vec<Vec<i64>> {
    assert!(g.edge_count() < 20);
    (1u32..1 << g.edge_count()).filter(|&m| is_circuit_subset(g, m)).map(|m| walk(g, m)).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of `|<a, b>|` over all ordered pairs of circuits, with `0` if none.
pub fn brute_c(g: &MultiGraph) -> u64 {
    let cs = subset_circuits(g);
    let mut acc = 0u64;
    for a in &cs {
        for b in &cs {
            acc = acc.gcd(&dot(a, b).unsigned_abs());
        }
    }
    acc
}

/// Spanning trees counted by testing every `(|V| - 1)`-subset of edges for acyclicity.
pub fn brute_spanning_trees(g: &MultiGraph) -> u64 {
    let n = g.vertex_count();
    let m = g.edge_count();
    assert!(m < 25);
    let mut count = 0;
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let acyclic = g.edges().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).all(|(_, e)| {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.tip));
            parent[a] = b;
            a != b
        });
        if acyclic {
            count += 1;
        }
    }
    count
}

/// Every vector of `(Z/q)^n`, by counting in base `q`.
pub fn all_vectors(n: usize, q: u64) -> Vec<Vec<i64>> {
    let total = (q as usize).pow(n as u32);
    (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % q as usize) as i64;
                    k /= q as usize;
                    d
                })
                .collect()
        })
        .collect()
}
