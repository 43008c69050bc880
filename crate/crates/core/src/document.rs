//! JSON input and report documents.
//!
//! An input document describes one dual graph with its reduction data:
//!
//! ```json
//! {
//!   "name": "banana",
//!   "r": 2,
//!   "vertices": [{"id": "a"}, {"id": "b", "genus": 1}],
//!   "edges": [
//!     {"id": "e", "tail": "a", "tip": "b"},
//!     {"id": "f", "tail": "a", "tip": "b", "thickness": 1, "stabilizer": 2}
//!   ],
//!   "multidegree": {"a": 1, "b": -1}
//! }
//! ```
//!
//! `m1`, `genus`, `thickness`, `stabilizer` and `multidegree` are optional.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::graph::{EdgeRecord, MultiGraph, VertexId, VertexRecord};
use crate::invariants::{analyze, AnalysisReport, ReductionData};

pub const TOOL_NAME: &str = "neron";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    #[serde(default)]
    pub genus: u64,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub tail: String,
    pub tip: String,
    #[serde(default = "one")]
    pub thickness: u64,
    #[serde(default = "one")]
    pub stabilizer: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    pub r: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<u64>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<BTreeMap<String, i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{field}: {source}")]
    Invalid { field: String, source: Error },
}

impl DocumentError {
    fn invalid(field: impl Into<String>, source: Error) -> Self {
        DocumentError::Invalid { field: field.into(), source }
    }

    pub fn kind(&self) -> Option<&Error> {
        match self {
            DocumentError::Parse { .. } => None,
            DocumentError::Invalid { source, .. } => Some(source),
        }
    }
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_owned(),
            None => message,
        };
        DocumentError::Parse { line: e.line(), column: e.column(), message }
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

impl InputDocument {
    /// Validates the document, naming the offending field on failure.
    pub fn to_reduction_data(&self, r_override: Option<u64>) -> Result<ReductionData, DocumentError> {
        let r = r_override.unwrap_or(self.r);
        if r == 0 {
            return Err(DocumentError::invalid("r", Error::NonPositive { field: "r".into(), value: 0 }));
        }
        let m1 = self.m1.unwrap_or(1);
        if m1 == 0 {
            return Err(DocumentError::invalid("m1", Error::NonPositive { field: "m1".into(), value: 0 }));
        }
        let graph = self.graph()?;
        let multidegree = self.multidegree.as_ref().map(|m| {
            m.iter().map(|(k, &v)| (VertexId(k.clone()), v)).collect::<BTreeMap<_, _>>()
        });
        ReductionData::new(graph, r, m1, multidegree.as_ref()).map_err(|e| {
            let field = match &e {
                Error::UnknownVertex(v) => format!("multidegree.{v}"),
                Error::MultidegreeNotDivisible { .. } => "multidegree".into(),
                Error::ModulusOverflow => "m1".into(),
                _ => "document".into(),
            };
            DocumentError::invalid(field, e)
        })
    }

    fn graph(&self) -> Result<MultiGraph, DocumentError> {
        let mut seen = HashSet::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !seen.insert(v.id.as_str()) {
                return Err(DocumentError::invalid(
                    format!("vertices[{i}].id"),
                    Error::DuplicateId { kind: "vertex", id: v.id.clone() },
                ));
            }
        }
        let mut edge_ids = HashSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !edge_ids.insert(e.id.as_str()) {
                return Err(DocumentError::invalid(
                    format!("edges[{i}].id"),
                    Error::DuplicateId { kind: "edge", id: e.id.clone() },
                ));
            }
            for (field, v) in [("tail", &e.tail), ("tip", &e.tip)] {
                if !seen.contains(v.as_str()) {
                    return Err(DocumentError::invalid(
                        format!("edges[{i}].{field}"),
                        Error::DanglingEndpoint { edge: e.id.clone(), vertex: v.clone() },
                    ));
                }
            }
            for (field, value) in [("thickness", e.thickness), ("stabilizer", e.stabilizer)] {
                if value == 0 {
                    return Err(DocumentError::invalid(
                        format!("edges[{i}].{field}"),
                        Error::NonPositive { field: format!("{field} of edge `{}`", e.id), value },
                    ));
                }
            }
        }
        let vertices = self.vertices.iter().map(|v| VertexRecord::new(&v.id).with_genus(v.genus)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                EdgeRecord::new(&e.id, &e.tail, &e.tip).with_thickness(e.thickness).with_stabilizer(e.stabilizer)
            })
            .collect();
        MultiGraph::build(vertices, edges).map_err(|e| {
            let field = match e {
                Error::EmptyGraph => "vertices",
                _ => "edges",
            };
            DocumentError::invalid(field, e)
        })
    }

    /// Document for an already-built graph.
    pub fn from_graph(name: &str, g: &MultiGraph, r: u64) -> Self {
        let (vs, es) = g.records();
        InputDocument {
            name: name.to_owned(),
            r,
            m1: None,
            vertices: vs.into_iter().map(|v| VertexDoc { id: v.id.0, genus: v.genus }).collect(),
            edges: es
                .into_iter()
                .map(|e| EdgeDoc {
                    id: e.id.0,
                    tail: e.tail.0,
                    tip: e.tip.0,
                    thickness: e.thickness,
                    stabilizer: e.stabilizer,
                })
                .collect(),
            multidegree: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assumptions {
    /// The torsion group scheme is assumed tamely ramified.
    pub tameness_assumed: bool,
    /// `m1` was given in the input rather than defaulted.
    pub m1_supplied: bool,
    /// `m1 = 1`: a semistable minimal regular model over the base exists.
    pub semistable: bool,
    /// For `r <= 2` the graph criterion is an equivalence only under semistability.
    pub small_r_caveat: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input: InputDocument,
    pub assumptions: Assumptions,
    pub report: AnalysisReport,
}

/// Analyzes a document; the echoed input carries the effective `r`.
pub fn analyze_document(doc: &InputDocument, r_override: Option<u64>) -> Result<ReportDocument, DocumentError> {
    let data = doc.to_reduction_data(r_override)?;
    let report = analyze(&data).map_err(|e| {
        let field = match e {
            Error::SemistabilityRequired { .. } => "m1",
            Error::MissingMultidegree => "multidegree",
            _ => "document",
        };
        DocumentError::invalid(field, e)
    })?;
    let mut input = doc.clone();
    input.r = data.r();
    Ok(ReportDocument {
        tool: TOOL_NAME.into(),
        version: TOOL_VERSION.into(),
        assumptions: Assumptions {
            tameness_assumed: true,
            m1_supplied: doc.m1.is_some(),
            semistable: data.m1() == 1,
            small_r_caveat: data.r() <= 2,
        },
        input,
        report,
    })
}

pub fn parse_report(text: &str) -> Result<ReportDocument, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering.
    pub fn to_table(&self) -> String {
        let r = &self.report;
        let opt = |x: Option<bool>| x.map_or_else(|| "n/a".to_owned(), |b| b.to_string());
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k:<28} {v}").unwrap();
        line("name", self.input.name.clone());
        line("r", r.r.to_string());
        line("m1", r.m1.to_string());
        line("b1", r.b1.to_string());
        line("genus", r.genus.to_string());
        line("c", r.c.to_string());
        line("t", r.t.to_string());
        line("phi", r.phi.to_string());
        line("phi[r]", r.phi_r.to_string());
        line("m2", r.m2.to_string());
        line("m3", r.m3.to_string());
        line("divisibility chain", r.divisibility_chain.to_string());
        line("group neron finite", r.group_neron_finite.to_string());
        line("homological criterion", r.homological_criterion.to_string());
        line("phi[r] full", r.full_r_torsion.to_string());
        line("torsor neron finite", opt(r.torsor_neron_finite));
        line("r-divided", r.r_divided.to_string());
        line("twisted roots finite", opt(r.twisted_roots_finite));
        line("torsion (special fibre)", r.torsion_count_special_fibre.to_string());
        line("torsion (generic fibre)", r.torsion_count_generic.to_string());
        line(
            "torsion (twisted fibre)",
            r.torsion_count_twisted.as_ref().map_or_else(|| "n/a".to_owned(), ToString::to_string),
        );
        let a = &self.assumptions;
        line("assumed: tame ramification", a.tameness_assumed.to_string());
        line("assumed: semistable (m1=1)", a.semistable.to_string());
        if a.small_r_caveat {
            line("note", "r <= 2: criterion relies on semistability".into());
        }
        out
    }
}
