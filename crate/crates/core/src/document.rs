//! The JSON graph document read by the CLI and written for fuzz
//! counterexamples.
//!
//! ```json
//! {"schema": 1, "dimension": 3, "model": "rod-bar",
//!  "vertices": [{"id": "r1", "kind": "rod"}, {"id": "r2", "kind": "rod"}],
//!  "edges": [["r1", "r2"], ["r1", "r2"]]}
//! ```
//!
//! Direction documents may add `"joints": {"a": [0, 1], ...}` with integer
//! coordinates, read modulo the working prime.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::{Model, SCHEMA};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::graph::{Multigraph, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub schema: u32,
    pub dimension: usize,
    pub model: Model,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joints: Option<BTreeMap<String, Vec<i64>>>,
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("schema error: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::Invalid(format!(
                "schema error: unsupported schema version {} (expected {SCHEMA})",
                doc.schema
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_graph(g: &Multigraph, dimension: usize, model: Model) -> Self {
        GraphDocument {
            schema: SCHEMA,
            dimension,
            model,
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    kind: v.kind,
                })
                .collect(),
            edges: g
                .edge_ids()
                .map(|e| {
                    let (u, v) = g.endpoints(e);
                    [g.vertex(u).id.clone(), g.vertex(v).id.clone()]
                })
                .collect(),
            joints: None,
        }
    }

    pub fn graph(&self) -> Result<Multigraph> {
        Multigraph::new(
            self.vertices.iter().map(|v| (v.id.clone(), v.kind)),
            self.edges.iter().map(|[u, v]| (u.as_str(), v.as_str())),
        )
    }

    /// Joint coordinates in vertex order, reduced into `field`.
    pub fn joints(&self, g: &Multigraph, field: &PrimeField) -> Result<Option<Vec<Vec<u64>>>> {
        let Some(map) = &self.joints else {
            return Ok(None);
        };
        if let Some(unknown) = map.keys().find(|k| g.vertex_id(k).is_none()) {
            return Err(Error::Invalid(format!("joint for unknown vertex `{unknown}`")));
        }
        g.vertices()
            .iter()
            .map(|v| {
                let p = map.get(&v.id).ok_or_else(|| Error::MissingJoint(v.id.clone()))?;
                if p.len() != self.dimension {
                    return Err(Error::LengthMismatch {
                        expected: self.dimension,
                        got: p.len(),
                    });
                }
                Ok(p.iter().map(|&c| field.from_i64(c)).collect())
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}
