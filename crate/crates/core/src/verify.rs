//! Exhaustive check that the circuit criterion, the homological criterion
//! and fullness of `Phi[q]` agree on every small connected multigraph.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::DEFAULT_CIRCUIT_CAP;
use crate::component_group::{homological_criterion, phi_group};
use crate::enumerate::{connected_multigraphs, SmallGraph};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::invariants::{circuit_invariant_c, circuit_invariant_c_enumerated};

pub const MAX_EDGES_LIMIT: usize = 7;
pub const MAX_Q_LIMIT: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// `None` for the Gram versus enumeration comparison of `c`.
    pub q: Option<u64>,
    pub circuit_criterion: bool,
    pub homological_criterion: bool,
    pub full_torsion: bool,
    pub c_enumerated: u64,
    pub c_gram: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub edges: usize,
    pub graphs: usize,
    pub cases: usize,
    pub counterexamples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub max_edges: usize,
    pub max_q: u64,
    pub sizes: Vec<SizeSummary>,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifySummary {
    pub fn total_graphs(&self) -> usize {
        self.sizes.iter().map(|s| s.graphs).sum()
    }

    pub fn total_cases(&self) -> usize {
        self.sizes.iter().map(|s| s.cases).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "edges  graphs  cases  counterexamples")?;
        for s in &self.sizes {
            writeln!(f, "{:>5} {:>7} {:>6} {:>15}", s.edges, s.graphs, s.cases, s.counterexamples)?;
        }
        writeln!(
            f,
            "{} graphs, {} cases (q = 1..={}), {} counterexamples",
            self.total_graphs(),
            self.total_cases(),
            self.max_q,
            self.counterexamples.len()
        )?;
        for c in &self.counterexamples {
            writeln!(f, "  counterexample: {c:?}")?;
        }
        Ok(())
    }
}

pub fn check_bounds(max_edges: usize, max_q: u64) -> Result<()> {
    if max_edges > MAX_EDGES_LIMIT {
        return Err(Error::BoundsTooLarge(format!("max_edges = {max_edges} exceeds {MAX_EDGES_LIMIT}")));
    }
    if max_q == 0 || max_q > MAX_Q_LIMIT {
        return Err(Error::BoundsTooLarge(format!("max_q = {max_q} must lie in 1..={MAX_Q_LIMIT}")));
    }
    Ok(())
}

fn check_graph(sg: &SmallGraph, max_q: u64) -> Result<Vec<Counterexample>> {
    let g = sg.to_multigraph();
    let c_enumerated = circuit_invariant_c_enumerated(&g, DEFAULT_CIRCUIT_CAP)?;
    let c_gram = circuit_invariant_c(&g);
    let phi = phi_group(&g)?;
    let b1 = g.betti1();
    let mut found = Vec::new();
    let base = Counterexample {
        vertices: sg.n,
        edges: sg.edges.clone(),
        q: None,
        circuit_criterion: true,
        homological_criterion: true,
        full_torsion: true,
        c_enumerated,
        c_gram,
    };
    if c_enumerated != c_gram {
        found.push(base.clone());
    }
    for q in 1..=max_q {
        let circuit = c_enumerated % q == 0;
        let homological = homological_criterion(&g, q);
        let full = phi.torsion(q) == AbelianGroup::elementary(q, b1);
        if circuit != homological || circuit != full {
            found.push(Counterexample {
                q: Some(q),
                circuit_criterion: circuit,
                homological_criterion: homological,
                full_torsion: full,
                ..base.clone()
            });
        }
    }
    Ok(found)
}

/// Runs every check on all connected multigraphs with at most `max_edges`
/// edges and all `1 <= q <= max_q`. Graphs are checked in parallel; results
/// are reported in canonical graph order.
pub fn verify_lemma(max_edges: usize, max_q: u64) -> Result<VerifySummary> {
    check_bounds(max_edges, max_q)?;
    let mut sizes = Vec::new();
    let mut counterexamples = Vec::new();
    for (m, level) in connected_multigraphs(max_edges).into_iter().enumerate() {
        let per_graph: Vec<Vec<Counterexample>> =
            level.par_iter().map(|g| check_graph(g, max_q)).collect::<Result<_>>()?;
        let bad: Vec<Counterexample> = per_graph.into_iter().flatten().collect();
        sizes.push(SizeSummary {
            edges: m,
            graphs: level.len(),
            cases: level.len() * max_q as usize,
            counterexamples: bad.len(),
        });
        counterexamples.extend(bad);
    }
    Ok(VerifySummary { max_edges, max_q, sizes, counterexamples })
}
