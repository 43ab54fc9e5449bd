//! Random multigraphs for cross-validation.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::Model;
use crate::graph::{Multigraph, VertexKind};

/// Erdős–Rényi on a random number of vertices, with extra parallel copies
/// injected per edge, truncated to `max_edges`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDistribution {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub edge_probability: f64,
    /// Each edge gains another parallel copy with this probability, repeatedly.
    pub parallel_probability: f64,
    /// Probability that a vertex is a rod (or a hinge in the body-hinge model).
    pub rod_bias: f64,
    pub max_edges: usize,
}

impl Default for GraphDistribution {
    fn default() -> Self {
        GraphDistribution {
            min_vertices: 2,
            max_vertices: 7,
            edge_probability: 0.5,
            parallel_probability: 0.3,
            rod_bias: 0.5,
            max_edges: 24,
        }
    }
}

/// A random graph whose vertex kinds suit `model`. Direction graphs are
/// simple; body-hinge graphs are bipartite between bodies and hinges and
/// carry no parallel edges.
pub fn random_multigraph<R: Rng + ?Sized>(rng: &mut R, dist: &GraphDistribution, model: Model) -> Multigraph {
    use VertexKind::*;
    let lo = dist.min_vertices.max(1);
    let n = rng.gen_range(lo..=dist.max_vertices.max(lo));
    let kinds: Vec<VertexKind> = (0..n)
        .map(|_| match model {
            Model::BodyBar | Model::Direction => Body,
            Model::RodBar => Rod,
            Model::BodyRodBar => {
                if rng.gen_bool(dist.rod_bias) {
                    Rod
                } else {
                    Body
                }
            }
            Model::BodyHinge => {
                if rng.gen_bool(dist.rod_bias) {
                    Hinge
                } else {
                    Body
                }
            }
        })
        .collect();
    let parallel = !matches!(model, Model::Direction | Model::BodyHinge);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if model == Model::BodyHinge && (kinds[u] == Body) == (kinds[v] == Body) {
                continue;
            }
            if rng.gen_bool(dist.edge_probability) {
                edges.push((u, v));
                while parallel && rng.gen_bool(dist.parallel_probability) {
                    edges.push((u, v));
                }
            }
        }
    }
    edges.shuffle(rng);
    edges.truncate(dist.max_edges);
    Multigraph::from_indices(&kinds, &edges).expect("generated graph is valid")
}
