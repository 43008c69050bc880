//! Exhaustive generation of small connected multigraphs (loops and parallel
//! edges allowed) up to isomorphism.
//!
//! Every connected multigraph with `m >= 1` edges arises from one with
//! `m - 1` edges by adding an edge between existing vertices or a pendant
//! edge to a new vertex: delete any cycle edge, or a leaf edge of a tree. So
//! the family is grown one edge at a time, deduplicated by canonical form.

use std::collections::BTreeSet;

use crate::graph::MultiGraph;

/// Unlabeled multigraph: `n` vertices, edges `(a, b)` with `a <= b`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    pub fn single_vertex() -> Self {
        SmallGraph { n: 1, edges: Vec::new() }
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        MultiGraph::from_edges(self.n, &self.edges).expect("enumerated graphs are connected")
    }

    fn relabel(&self, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Least relabeled edge list over all relabelings that order vertices
    /// by (degree, loop count, neighbour degree multiset).
    pub fn canonical(&self) -> SmallGraph {
        let n = self.n;
        let mut degree = vec![0usize; n];
        let mut loops = vec![0usize; n];
        for &(a, b) in &self.edges {
            degree[a] += 1;
            degree[b] += 1;
            if a == b {
                loops[a] += 1;
            }
        }
        let mut neighbour_degrees = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            if a != b {
                neighbour_degrees[a].push(degree[b]);
                neighbour_degrees[b].push(degree[a]);
            }
        }
        neighbour_degrees.iter_mut().for_each(|v| v.sort_unstable());
        let key: Vec<_> = (0..n).map(|v| (degree[v], loops[v], neighbour_degrees[v].clone())).collect();

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| key[a].cmp(&key[b]));
        // blocks of vertices sharing an invariant, in target position order
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match blocks.last_mut() {
                Some(b) if key[b[0]] == key[v] => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }

        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut perm = vec![0usize; n];
        let mut blocks_perm: Vec<Vec<usize>> = blocks.clone();
        search(self, &mut blocks_perm, 0, &mut perm, &mut best);
        SmallGraph { n, edges: best.expect("at least one relabeling") }
    }
}

fn search(
    g: &SmallGraph,
    blocks: &mut [Vec<usize>],
    block: usize,
    perm: &mut [usize],
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if block == blocks.len() {
        let edges = g.relabel(perm);
        if best.as_ref().is_none_or(|b| edges < *b) {
            *best = Some(edges);
        }
        return;
    }
    let offset: usize = blocks[..block].iter().map(Vec::len).sum();
    let len = blocks[block].len();
    // Heap's algorithm over the current block
    let mut c = vec![0usize; len];
    let assign = |blocks: &[Vec<usize>], perm: &mut [usize]| {
        for (k, &v) in blocks[block].iter().enumerate() {
            perm[v] = offset + k;
        }
    };
    assign(blocks, perm);
    search(g, blocks, block + 1, perm, best);
    let mut i = 0;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                blocks[block].swap(0, i);
            } else {
                blocks[block].swap(c[i], i);
            }
            assign(blocks, perm);
            search(g, blocks, block + 1, perm, best);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// All connected multigraphs with exactly `m` edges, for each `m` in
/// `0..=max_edges`, up to isomorphism, in canonical order.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Vec<SmallGraph>> {
    let mut levels = vec![vec![SmallGraph::single_vertex()]];
    for _ in 0..max_edges {
        let prev = levels.last().expect("level 0 exists");
        let mut next = BTreeSet::new();
        for g in prev {
            for a in 0..g.n {
                for b in a..g.n {
                    let mut edges = g.edges.clone();
                    edges.push((a, b));
                    next.insert(SmallGraph { n: g.n, edges }.canonical());
                }
                let mut edges = g.edges.clone();
                edges.push((a, g.n));
                next.insert(SmallGraph { n: g.n + 1, edges }.canonical());
            }
        }
        levels.push(next.into_iter().collect());
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let levels = connected_multigraphs(3);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        // 1 edge: loop, single edge.
        // 2 edges: double loop, banana, path, lollipop.
        assert_eq!(&counts[..3], &[1, 2, 4]);
    }

    #[test]
    fn canonical_form_is_label_independent() {
        let a = SmallGraph { n: 3, edges: vec![(0, 1), (1, 2), (2, 2)] };
        let b = SmallGraph { n: 3, edges: vec![(0, 0), (0, 2), (1, 2)] };
        assert_eq!(a.canonical(), b.canonical());
        let c = SmallGraph { n: 3, edges: vec![(0, 1), (1, 1), (1, 2)] };
        assert_ne!(a.canonical(), c.canonical());
    }
}
