//! Chain and cochain maps of an oriented graph.

use crate::graph::MultiGraph;
use crate::matrix::IntMatrix;

/// `d: C1 -> C0`, `|V| x |E|`. Edge `e` maps to `tip - tail`; loops map to 0.
pub fn boundary_matrix(g: &MultiGraph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for (j, e) in g.edges().iter().enumerate() {
        if !e.is_loop() {
            m[(e.tip, j)] += 1;
            m[(e.tail, j)] -= 1;
        }
    }
    m
}

/// `delta: C0 -> C1`, the transpose of the boundary. Vertex `v` maps to the
/// edges ending at `v` minus the edges starting at `v`.
pub fn coboundary_matrix(g: &MultiGraph) -> IntMatrix {
    boundary_matrix(g).transpose()
}

/// Intersection matrix `M = -(d . delta)` of the components of the special
/// fibre: the negated graph Laplacian.
pub fn intersection_matrix(g: &MultiGraph) -> IntMatrix {
    let d = boundary_matrix(g);
    (&d * &d.transpose()).neg()
}
