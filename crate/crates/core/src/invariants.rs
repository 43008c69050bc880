//! The reduction-data layer: the invariants `c` and `t`, the indices `m2`,
//! `m3`, and the finiteness verdicts for the torsion group and the torsor of
//! `r`-th roots.
//!
//! The graph of a [`ReductionData`] is the dual graph of the stable model and
//! edge thickness is the thickness of the node. Quantities that live on the
//! minimal regular model (the circuit invariant entering `m2`, the component
//! group, the torsor criterion) are evaluated on [`MultiGraph::regular_model`],
//! which is the graph itself when every thickness is 1.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::circuit::{enumerate_circuits, fundamental_cycle_basis, signed_common_edges};
use crate::component_group::{homological_criterion, is_full_r_torsion, phi_group};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::group::AbelianGroup;
use crate::homology::intersection_matrix;
use crate::smith::image_contains_mod;

/// A dual graph together with the torsion order `r`, the semistability
/// index `m1`, and optionally the multidegree of a line bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionData {
    graph: MultiGraph,
    r: u64,
    m1: u64,
    /// Degree per vertex index.
    multidegree: Option<Vec<i64>>,
}

impl ReductionData {
    pub fn new(graph: MultiGraph, r: u64, m1: u64, multidegree: Option<&BTreeMap<VertexId, i64>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::NonPositive { field: "r".into(), value: 0 });
        }
        if m1 == 0 {
            return Err(Error::NonPositive { field: "m1".into(), value: 0 });
        }
        r.checked_mul(m1).ok_or(Error::ModulusOverflow)?;
        let multidegree = match multidegree {
            None => None,
            Some(map) => {
                let mut degrees = vec![0i64; graph.vertex_count()];
                for (id, &deg) in map {
                    let v = graph.vertex_position(id).ok_or_else(|| Error::UnknownVertex(id.0.clone()))?;
                    degrees[v] = deg;
                }
                let total: i128 = degrees.iter().map(|&x| x as i128).sum();
                if total.rem_euclid(r as i128) != 0 {
                    return Err(Error::MultidegreeNotDivisible { total, r });
                }
                Some(degrees)
            }
        };
        Ok(ReductionData { graph, r, m1, multidegree })
    }

    /// Semistable data (`m1 = 1`) without a multidegree.
    pub fn semistable(graph: MultiGraph, r: u64) -> Result<Self> {
        Self::new(graph, r, 1, None)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn m1(&self) -> u64 {
        self.m1
    }

    pub fn multidegree(&self) -> Option<&[i64]> {
        self.multidegree.as_deref()
    }

    pub fn with_r(&self, r: u64) -> Result<Self> {
        let map = self.multidegree_map();
        Self::new(self.graph.clone(), r, self.m1, map.as_ref())
    }

    pub fn multidegree_map(&self) -> Option<BTreeMap<VertexId, i64>> {
        self.multidegree.as_ref().map(|d| {
            self.graph.vertices().iter().zip(d).map(|(v, &x)| (v.id.clone(), x)).collect()
        })
    }

    fn require_semistable(&self) -> Result<()> {
        if self.m1 != 1 {
            return Err(Error::SemistabilityRequired { m1: self.m1 });
        }
        Ok(())
    }

    fn require_multidegree(&self) -> Result<&[i64]> {
        self.multidegree.as_deref().ok_or(Error::MissingMultidegree)
    }
}

fn gcd_with(r: u64, x: u64) -> u64 {
    // gcd(r, 0) = r
    r.gcd(&x)
}

/// gcd of the Gram matrix of the fundamental cycle basis, entries weighted
/// per edge by `weight`.
fn gram_gcd(g: &MultiGraph, weight: impl Fn(usize) -> i64) -> u64 {
    let vectors: Vec<_> = fundamental_cycle_basis(g).iter().map(|c| c.vector(g)).collect();
    let mut acc = 0u64;
    for (i, a) in vectors.iter().enumerate() {
        for b in &vectors[i..] {
            let dot: i64 = a
                .coefficients
                .iter()
                .zip(&b.coefficients)
                .enumerate()
                .map(|(e, (x, y))| weight(e) * x * y)
                .sum();
            acc = acc.gcd(&dot.unsigned_abs());
        }
    }
    acc
}

/// gcd over all pairs of circuits (a circuit with itself included) of the
/// absolute signed number of common edges; 0 for a graph without circuits.
///
/// Computed from the Gram matrix of a cycle basis: every circuit is an
/// integer combination of basis circuits and the pairing is bilinear.
pub fn circuit_invariant_c(g: &MultiGraph) -> u64 {
    gram_gcd(g, |_| 1)
}

/// Same quantity as [`circuit_invariant_c`], by enumerating every circuit
/// pair.
pub fn circuit_invariant_c_enumerated(g: &MultiGraph, cap: usize) -> Result<u64> {
    let circuits = enumerate_circuits(g, cap)?;
    let mut acc = 0u64;
    for (i, a) in circuits.iter().enumerate() {
        for b in &circuits[i..] {
            acc = acc.gcd(&signed_common_edges(a, b).unsigned_abs());
        }
    }
    Ok(acc)
}

/// Circuit invariant of the minimal regular model without building it: a
/// node of thickness `h` becomes a chain of `h` edges, so each shared edge
/// counts `h` times.
pub fn regular_circuit_invariant(g: &MultiGraph) -> u64 {
    gram_gcd(g, |e| g.edges()[e].thickness as i64)
}

/// gcd of the thicknesses of the nonseparating edges; 0 if there are none.
pub fn thickness_invariant_t(g: &MultiGraph) -> u64 {
    g.edges()
        .iter()
        .zip(g.nonseparating_mask())
        .filter(|(_, nonsep)| *nonsep)
        .fold(0u64, |acc, (e, _)| acc.gcd(&e.thickness))
}

/// `m2 = m1 * r / gcd(r, c)` with `c` on the regular model.
pub fn index_m2(d: &ReductionData) -> u64 {
    d.m1 * (d.r / gcd_with(d.r, regular_circuit_invariant(&d.graph)))
}

/// `m3 = m1 * r / gcd(r, t)`.
pub fn index_m3(d: &ReductionData) -> u64 {
    d.m1 * (d.r / gcd_with(d.r, thickness_invariant_t(&d.graph)))
}

/// Finiteness of the Neron model of the `r`-torsion: `r | c`.
pub fn group_neron_finite(d: &ReductionData) -> Result<bool> {
    d.require_semistable()?;
    Ok(regular_circuit_invariant(&d.graph).is_multiple_of(d.r))
}

/// Whether `pi^* F` has the full `r^(2g)` roots on the twisted curve whose
/// node stabilizers are the edge stabilizer orders.
pub fn twisted_roots_finite(d: &ReductionData) -> Result<bool> {
    let degrees = d.require_multidegree()?;
    let g = &d.graph;
    let r = d.r as i128;
    let least = g.least_vertex();
    for (i, e) in g.edges().iter().enumerate() {
        let stab = e.stabilizer as i128;
        if g.is_nonseparating_at(i) {
            if stab % r != 0 {
                return Ok(false);
            }
        } else {
            let (label, _) = g.component_labels_without(Some(i));
            let side: i128 = (0..g.vertex_count())
                .filter(|&v| label[v] == label[least])
                .map(|v| degrees[v] as i128)
                .sum();
            if (stab * side).rem_euclid(r) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of `r`-torsion line bundles on the semistable special fibre, `r^(2g - b1)`.
pub fn torsion_count_special(g: &MultiGraph, r: u64) -> BigUint {
    let exp = 2 * g.total_genus() - g.betti1() as u64;
    BigUint::from(r).pow(exp as u32)
}

/// Number of `r`-torsion line bundles on the twisted fibre with all
/// stabilizers of order `r`: `r^(2g - b1) * |ker d_r| = r^(2g)`.
pub fn torsion_count_twisted(g: &MultiGraph, r: u64) -> Result<BigUint> {
    if let Some(e) = g.edges().iter().find(|e| e.stabilizer != r) {
        return Err(Error::StabilizerMismatch { edge: e.id.0.clone(), found: e.stabilizer, expected: r });
    }
    Ok(torsion_count_special(g, r) * BigUint::from(r).pow(g.betti1() as u32))
}

/// Finiteness of the Neron model of the torsor of `r`-th roots of the line
/// bundle: the group criterion, plus the multidegree (mod `r`) lying in the
/// image of the intersection matrix of the regular model.
pub fn torsor_neron_finite(d: &ReductionData) -> Result<bool> {
    d.require_semistable()?;
    let degrees = d.require_multidegree()?;
    if !group_neron_finite(d)? {
        return Ok(false);
    }
    let regular = d.graph.regular_model()?;
    // chain vertices of the regular model carry degree 0
    let mut b: Vec<BigInt> = degrees.iter().map(|&x| BigInt::from(x)).collect();
    b.resize(regular.vertex_count(), BigInt::from(0));
    image_contains_mod(&intersection_matrix(&regular), &b, d.r)
}

/// `m1 | m2`, `m2 | m3`, `m3 | r * m1`.
pub fn divisibility_chain(m1: u64, m2: u64, m3: u64, r: u64) -> bool {
    let divides = |a: u64, b: u64| a != 0 && b.is_multiple_of(a);
    divides(m1, m2) && divides(m2, m3) && r.checked_mul(m1).is_some_and(|rm| divides(m3, rm))
}

/// Sufficient condition for finiteness: the graph is `r`-divided.
pub fn lorenzini_sufficient(g: &MultiGraph, r: u64) -> bool {
    g.is_r_divided(r)
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_some(&x.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| s.parse().map_err(D::Error::custom))
                .transpose()
        }
    }
}

/// Every invariant computed for one [`ReductionData`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub r: u64,
    pub m1: u64,
    pub b1: u64,
    pub genus: u64,
    /// Circuit invariant on the regular model.
    pub c: u64,
    pub t: u64,
    pub phi: AbelianGroup,
    pub phi_r: AbelianGroup,
    pub m2: u64,
    pub m3: u64,
    pub divisibility_chain: bool,
    /// `m2 == 1`.
    pub group_neron_finite: bool,
    pub homological_criterion: bool,
    pub full_r_torsion: bool,
    pub torsor_neron_finite: Option<bool>,
    pub r_divided: bool,
    pub twisted_roots_finite: Option<bool>,
    #[serde(with = "decimal")]
    pub torsion_count_special_fibre: BigUint,
    #[serde(with = "decimal")]
    pub torsion_count_generic: BigUint,
    #[serde(with = "decimal::option", default)]
    pub torsion_count_twisted: Option<BigUint>,
}

/// Runs every criterion on `d`.
///
/// The group verdict is `m2 == 1`, valid for any `m1`; the torsor verdict is
/// only defined for semistable data and fails with
/// [`Error::SemistabilityRequired`] when a multidegree accompanies `m1 != 1`.
pub fn analyze(d: &ReductionData) -> Result<AnalysisReport> {
    let g = &d.graph;
    let regular = g.regular_model()?;
    let phi = phi_group(&regular)?;
    let phi_r = phi.torsion(d.r);
    let m2 = index_m2(d);
    let m3 = index_m3(d);
    let torsor = match d.multidegree {
        Some(_) => Some(torsor_neron_finite(d)?),
        None => None,
    };
    let twisted = match d.multidegree {
        Some(_) => Some(twisted_roots_finite(d)?),
        None => None,
    };
    let twisted_count = torsion_count_twisted(g, d.r).ok();
    Ok(AnalysisReport {
        r: d.r,
        m1: d.m1,
        b1: g.betti1() as u64,
        genus: g.total_genus(),
        c: regular_circuit_invariant(g),
        t: thickness_invariant_t(g),
        full_r_torsion: is_full_r_torsion(&regular, d.r)?,
        phi,
        phi_r,
        m2,
        m3,
        divisibility_chain: divisibility_chain(d.m1, m2, m3, d.r),
        group_neron_finite: m2 == 1,
        homological_criterion: homological_criterion(&regular, d.r),
        torsor_neron_finite: torsor,
        r_divided: regular.is_r_divided(d.r),
        twisted_roots_finite: twisted,
        torsion_count_special_fibre: torsion_count_special(g, d.r),
        torsion_count_generic: BigUint::from(d.r).pow((2 * g.total_genus()) as u32),
        torsion_count_twisted: twisted_count,
    })
}
