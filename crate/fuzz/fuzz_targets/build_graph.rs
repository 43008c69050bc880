#![no_main]

use libfuzzer_sys::fuzz_target;
use neron_core::component_group::{homological_criterion, phi_group, spanning_tree_count};
use neron_core::graph::{EdgeRecord, MultiGraph, VertexRecord};
use neron_core::invariants::circuit_invariant_c;

// Byte layout: vertex count, then (tail, tip, thickness) triples.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = (n % 8) as usize;
    let vertices: Vec<VertexRecord> = (0..n).map(|i| VertexRecord::new(&format!("v{i}"))).collect();
    let edges: Vec<EdgeRecord> = rest
        .chunks_exact(3)
        .take(10)
        .enumerate()
        .map(|(i, c)| {
            let name = |b: u8| format!("v{}", b % 9);
            EdgeRecord::new(&format!("e{i}"), &name(c[0]), &name(c[1])).with_thickness(u64::from(c[2] % 4))
        })
        .collect();
    let Ok(g) = MultiGraph::build(vertices, edges) else { return };
    let phi = phi_group(&g).expect("connected graphs have one zero invariant");
    assert_eq!(phi.order(), spanning_tree_count(&g));
    let c = circuit_invariant_c(&g);
    for q in 1..=4 {
        assert_eq!(homological_criterion(&g, q), c % q == 0);
    }
});
