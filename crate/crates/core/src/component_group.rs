//! The component group of a dual graph, its torsion, and the two equivalent
//! criteria for the `r`-torsion to be as large as possible.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::circuit::{Circuit, OrientedCycleVector};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::group::AbelianGroup;
use crate::homology::{boundary_matrix, coboundary_matrix, intersection_matrix};
use crate::smith::{kernel_generators_mod, reduce_vec, smith_normal_form, solve_mod, subgroup_contained_mod};

/// `Phi = ker(eps) / im(M)`, read off the Smith form of the intersection
/// matrix: one zero on the diagonal, the other entries are the invariant
/// factors (after dropping ones).
pub fn phi_group(g: &MultiGraph) -> Result<AbelianGroup> {
    let diag = smith_normal_form(&intersection_matrix(g)).diagonal();
    let zeros = diag.iter().filter(|x| x.is_zero()).count();
    if zeros != 1 {
        return Err(Error::MalformedSpectrum { zeros });
    }
    Ok(AbelianGroup::from_cyclic_orders(
        diag.iter().filter(|x| !x.is_zero()).map(|x| x.magnitude().clone()),
    ))
}

/// `Phi[r]`.
pub fn phi_r_torsion(g: &MultiGraph, r: u64) -> Result<AbelianGroup> {
    Ok(phi_group(g)?.torsion(r))
}

/// Whether `Phi[r]` is `(Z/r)^b1`, the largest it can be.
pub fn is_full_r_torsion(g: &MultiGraph, r: u64) -> Result<bool> {
    Ok(phi_r_torsion(g, r)? == AbelianGroup::elementary(r, g.betti1()))
}

/// Whether every cycle mod `q` is a coboundary mod `q`: `ker d_q` inside `im delta_q`.
pub fn homological_criterion(g: &MultiGraph, q: u64) -> bool {
    let gens = kernel_generators_mod(&boundary_matrix(g), q);
    subgroup_contained_mod(&gens, &coboundary_matrix(g), q).expect("dimensions agree by construction")
}

/// A vertex potential `A` with `delta_q(A) = z`, if one exists.
pub fn coboundary_witness(g: &MultiGraph, z: &OrientedCycleVector, q: u64) -> Result<Option<Vec<BigInt>>> {
    if z.coefficients.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), found: z.coefficients.len() });
    }
    let z: Vec<BigInt> = z.coefficients.iter().map(|&c| BigInt::from(c)).collect();
    let boundary = reduce_vec(&boundary_matrix(g).mul_vec(&z), q);
    if boundary.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotACycle { q });
    }
    let delta = coboundary_matrix(g);
    let Some(a) = solve_mod(&delta, &z, q)? else {
        return Ok(None);
    };
    let qb = BigInt::from(q);
    let agrees = delta.mul_vec(&a).iter().zip(&z).all(|(l, r)| (l - r).mod_floor(&qb).is_zero());
    assert!(agrees, "coboundary witness failed re-verification");
    Ok(Some(a))
}

/// Constructive potential for a circuit: the `i`-th vertex of the circuit is
/// labelled `i`, and every other vertex inherits the label of the circuit
/// vertex it reaches without using circuit edges. `None` when two circuit
/// vertices with labels distinct mod `q` are so connected, or when the
/// length of the circuit is not a multiple of `q`.
pub fn circuit_potential(g: &MultiGraph, c: &Circuit, q: u64) -> Option<Vec<u64>> {
    let on_circuit: Vec<bool> = {
        let mut m = vec![false; g.edge_count()];
        c.traversals().iter().for_each(|t| m[t.edge] = true);
        m
    };
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let next = p[x];
            p[x] = r;
            x = next;
        }
        r
    }
    for (i, e) in g.edges().iter().enumerate() {
        if !on_circuit[i] {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.tip));
            parent[a] = b;
        }
    }
    let mut label_of_root: HashMap<usize, u64> = HashMap::new();
    for (i, &v) in c.vertex_sequence(g).iter().enumerate() {
        let root = find(&mut parent, v);
        let label = i as u64 % q;
        if *label_of_root.entry(root).or_insert(label) != label {
            return None;
        }
    }
    let potential: Vec<u64> = (0..g.vertex_count())
        .map(|v| {
            let root = find(&mut parent, v);
            label_of_root[&root]
        })
        .collect();
    let z = c.vector(g);
    let ok = g.edges().iter().enumerate().all(|(i, e)| {
        let delta = (potential[e.tip] + q - potential[e.tail]) % q;
        delta == z.coefficients[i].rem_euclid(q as i64) as u64
    });
    ok.then_some(potential)
}

/// Number of spanning trees by deletion-contraction, memoized on the
/// normalized edge multiset. Independent of the Smith-form route.
pub fn spanning_tree_count(g: &MultiGraph) -> BigUint {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.tail, e.tip)).collect();
    let mut memo = HashMap::new();
    count_trees(g.vertex_count(), normalize(edges), &mut memo)
}

type Memo = HashMap<(usize, Vec<(usize, usize)>), BigUint>;

fn normalize(edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> =
        edges.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
    out.sort_unstable();
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

fn count_trees(n: usize, edges: Vec<(usize, usize)>, memo: &mut Memo) -> BigUint {
    if n == 1 {
        return BigUint::one();
    }
    if edges.is_empty() {
        return BigUint::zero();
    }
    let key = (n, edges);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (n, edges) = key;
    let (u, v) = *edges.last().expect("nonempty");
    let multiplicity = edges.iter().filter(|&&e| e == (u, v)).count();
    let rest: Vec<(usize, usize)> = edges.iter().copied().filter(|&e| e != (u, v)).collect();

    // contract u-v: v merges into u, higher labels shift down
    let relabel = |w: usize| match w.cmp(&v) {
        std::cmp::Ordering::Equal => u,
        std::cmp::Ordering::Greater => w - 1,
        std::cmp::Ordering::Less => w,
    };
    let contracted = normalize(rest.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect());
    let mut total = BigUint::from(multiplicity) * count_trees(n - 1, contracted, memo);
    if connected(n, &rest) {
        total += count_trees(n, rest, memo);
    }
    memo.insert((n, edges), total.clone());
    total
}
