//! Rigidity matrices over `F_p` and their motion spaces.
//!
//! Every row belongs to one edge `e = uv` and has the form
//! `(..., c, ..., -c, ...)` with `c` in the column block of `u` and `-c` in
//! the block of `v`. For bar models the block width is `D` and `c = q_e`, so
//! a kernel vector `x` corresponds to the motion `m` with
//! `x_v = pairing_dual(m(v))`, and `row · x = ⟨q_e, m(u) - m(v)⟩`.

mod config;

pub use config::{
    check_incidence, sample_bar_config, sample_free_bars, sample_joints, sample_rod_config, BarConfig, RodConfig,
};

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::pairing_dual;
use crate::field::{Field, PrimeField};
use crate::flats::{Flat, FlatFamily};
use crate::graph::{binomial, expand_uniform, EdgeId, Expansion, Multigraph, VertexId, VertexKind};
use crate::linalg::{kernel, rank, rank_of_rows, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixModel {
    BodyBar,
    /// One uniform random `D`-vector per edge, not constrained to be a bar.
    Unconstrained,
    BodyRodBar,
    Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub edge: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub coeffs: Vec<u64>,
}

/// Sparse rigidity matrix with one column block per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityMatrix {
    model: MatrixModel,
    block: usize,
    vertices: usize,
    rows: Vec<Row>,
}

impl RigidityMatrix {
    pub fn model(&self) -> MatrixModel {
        self.model
    }

    pub fn block_width(&self) -> usize {
        self.block
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.block * self.vertices
    }

    pub fn dense_row(&self, field: &PrimeField, row: &Row) -> Vec<u64> {
        let mut out = vec![0; self.column_count()];
        for (j, c) in row.coeffs.iter().enumerate() {
            out[row.u.0 * self.block + j] = *c;
            out[row.v.0 * self.block + j] = field.neg(c);
        }
        out
    }

    pub fn to_dense(&self, field: &PrimeField) -> Matrix<u64> {
        let rows: Vec<Vec<u64>> = self.rows.iter().map(|r| self.dense_row(field, r)).collect();
        if rows.is_empty() {
            return Matrix::zeros(0, self.column_count(), 0);
        }
        Matrix::from_rows(self.column_count(), &rows)
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        rank(field, &self.to_dense(field))
    }

    pub fn kernel(&self, field: &PrimeField) -> Vec<Vec<u64>> {
        kernel(field, &self.to_dense(field))
    }

    /// `M x`, computed row by row from the two blocks.
    pub fn apply(&self, field: &PrimeField, x: &[u64]) -> Vec<u64> {
        let b = self.block;
        self.rows
            .iter()
            .map(|r| {
                let xu = &x[r.u.0 * b..(r.u.0 + 1) * b];
                let xv = &x[r.v.0 * b..(r.v.0 + 1) * b];
                field.sub(&field.dot(&r.coeffs, xu), &field.dot(&r.coeffs, xv))
            })
            .collect()
    }

    pub fn annihilates(&self, field: &PrimeField, x: &[u64]) -> bool {
        self.apply(field, x).iter().all(|v| *v == 0)
    }

    /// The matrix with every row of `edge` removed.
    pub fn without_edge(&self, edge: EdgeId) -> RigidityMatrix {
        RigidityMatrix {
            rows: self.rows.iter().filter(|r| r.edge != edge).cloned().collect(),
            ..self.clone()
        }
    }

    /// Rows restricted to `edges`.
    pub fn restrict(&self, edges: &[EdgeId]) -> RigidityMatrix {
        RigidityMatrix {
            rows: self.rows.iter().filter(|r| edges.contains(&r.edge)).cloned().collect(),
            ..self.clone()
        }
    }

    /// Each row has support in exactly two distinct blocks, with entries
    /// negatives of each other, and is nonzero.
    pub fn row_pattern_holds(&self, field: &PrimeField) -> bool {
        self.rows.iter().all(|r| {
            let dense = self.dense_row(field, r);
            let blocks: Vec<usize> = (0..self.vertices)
                .filter(|&w| dense[w * self.block..(w + 1) * self.block].iter().any(|c| *c != 0))
                .collect();
            r.u != r.v
                && blocks == {
                    let mut b = vec![r.u.0, r.v.0];
                    b.sort();
                    b
                }
        })
    }
}

/// `D = C(d+1, 2)`.
pub fn big_d(d: usize) -> usize {
    binomial(d + 1, 2)
}

fn bar_rows(g: &Multigraph, bars: &BarConfig) -> Vec<Row> {
    g.edge_ids()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            Row {
                edge: e,
                u,
                v,
                coeffs: bars.bar(e).coords().to_vec(),
            }
        })
        .collect()
}

/// One row `(q_e in block u, -q_e in block v)` per edge; vertex kinds and
/// incidence are ignored.
pub fn matrix_body_bar(g: &Multigraph, d: usize, bars: &BarConfig) -> RigidityMatrix {
    RigidityMatrix {
        model: MatrixModel::BodyBar,
        block: big_d(d),
        vertices: g.vertex_count(),
        rows: bar_rows(g, bars),
    }
}

/// Same row pattern with an unconstrained uniform `D`-vector per edge.
pub fn matrix_unconstrained<R: Rng + ?Sized>(
    field: &PrimeField,
    g: &Multigraph,
    d: usize,
    rng: &mut R,
) -> RigidityMatrix {
    let block = big_d(d);
    let rows = g
        .edge_ids()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            Row {
                edge: e,
                u,
                v,
                coeffs: field.sample_vec(rng, block),
            }
        })
        .collect();
    RigidityMatrix {
        model: MatrixModel::Unconstrained,
        block,
        vertices: g.vertex_count(),
        rows,
    }
}

/// Body-rod-bar matrix; every bar must meet the rods at its endpoints.
pub fn matrix_body_rod_bar(
    field: &PrimeField,
    g: &Multigraph,
    rods: &RodConfig,
    bars: &BarConfig,
) -> Result<RigidityMatrix> {
    check_incidence(field, g, rods, bars)?;
    Ok(RigidityMatrix {
        model: MatrixModel::BodyRodBar,
        block: big_d(rods.d()),
        vertices: g.vertex_count(),
        rows: bar_rows(g, bars),
    })
}

/// Direction constraints: for each edge, `d - 1` rows `(α, -α)` with `α`
/// running over a basis of the complement of `p(u) - p(v)` (pivot on the
/// first nonzero coordinate).
pub fn matrix_direction(field: &PrimeField, g: &Multigraph, d: usize, joints: &[Vec<u64>]) -> Result<RigidityMatrix> {
    if joints.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            got: joints.len(),
        });
    }
    if let Some(p) = joints.iter().find(|p| p.len() != d) {
        return Err(Error::LengthMismatch {
            expected: d,
            got: p.len(),
        });
    }
    let mut rows = Vec::new();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let delta: Vec<u64> = joints[u.0]
            .iter()
            .zip(&joints[v.0])
            .map(|(a, b)| field.sub(a, b))
            .collect();
        if delta.iter().all(|c| *c == 0) {
            return Err(Error::CoincidentJoints { edge: e.0 });
        }
        for alpha in kernel(field, &Matrix::from_rows(d, &[delta])) {
            rows.push(Row {
                edge: e,
                u,
                v,
                coeffs: alpha,
            });
        }
    }
    Ok(RigidityMatrix {
        model: MatrixModel::Direction,
        block: d,
        vertices: g.vertex_count(),
        rows,
    })
}

/// An identified body-hinge framework realized as a body-rod-bar framework.
#[derive(Clone, Debug)]
pub struct HingeFramework {
    /// The input graph with hinges relabelled as rods and every edge
    /// replaced by `D - 1` parallel copies.
    pub expansion: Expansion,
    pub rods: RodConfig,
    pub bars: BarConfig,
}

impl HingeFramework {
    pub fn graph(&self) -> &Multigraph {
        &self.expansion.graph
    }

    pub fn matrix(&self, field: &PrimeField) -> Result<RigidityMatrix> {
        matrix_body_rod_bar(field, self.graph(), &self.rods, &self.bars)
    }
}

/// Checks that `g` only has body and hinge vertices and every edge joins a
/// body to a hinge.
pub fn check_body_hinge(g: &Multigraph) -> Result<()> {
    if let Some(v) = g.vertices().iter().find(|v| v.kind == VertexKind::Rod) {
        return Err(Error::KindMismatch {
            vertex: v.id.clone(),
            kind: v.kind.name(),
            model: "body-hinge",
        });
    }
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let bodies = [u, v].iter().filter(|&&w| g.kind(w) == VertexKind::Body).count();
        if bodies != 1 {
            return Err(Error::NotBipartite(e.0));
        }
    }
    Ok(())
}

/// Regards each hinge as a rod joined to each neighbouring body by `D - 1`
/// bars through it, and samples that framework.
pub fn expand_hinge<R: Rng + ?Sized>(
    field: &PrimeField,
    g: &Multigraph,
    d: usize,
    rng: &mut R,
) -> Result<HingeFramework> {
    check_body_hinge(g)?;
    let as_rods = g.with_kinds(|k| if k == VertexKind::Hinge { VertexKind::Rod } else { k });
    let expansion = expand_uniform(&as_rods, big_d(d) - 1);
    let rods = sample_rod_config(field, &expansion.graph, d, rng)?;
    let bars = sample_bar_config(field, &expansion.graph, &rods, rng)?;
    Ok(HingeFramework { expansion, rods, bars })
}

/// Whether the motion `x` of a hinge framework moves any two bodies on a
/// common hinge `w` relative to each other only by a rotation about `w`:
/// `m(u) - m(v)` is a multiple of `r_w`.
pub fn hinge_motion_holds(field: &PrimeField, fw: &HingeFramework, x: &[u64]) -> bool {
    let g = fw.graph();
    let b = big_d(fw.rods.d());
    fw.rods.iter().all(|(w, rod)| {
        let axis = pairing_dual(field, &rod.plucker);
        let mut bodies: Vec<VertexId> = g
            .incident(w)
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                if u == w {
                    v
                } else {
                    u
                }
            })
            .collect();
        bodies.sort();
        bodies.dedup();
        bodies.windows(2).all(|pair| {
            let diff: Vec<u64> = (0..b)
                .map(|j| field.sub(&x[pair[0].0 * b + j], &x[pair[1].0 * b + j]))
                .collect();
            rank_of_rows(field, b, &[diff, axis.clone()]) <= 1
        })
    })
}

/// For each edge, the flat of all rows it could contribute: `(c, -c)` with
/// `c` ranging over the 2-vectors meeting the rods at its endpoints. Its
/// rank is `D` minus the number of rod endpoints.
pub fn edge_flats(field: &PrimeField, g: &Multigraph, rods: &RodConfig) -> FlatFamily {
    let block = big_d(rods.d());
    let ambient = block * g.vertex_count();
    let flats = g
        .edge_ids()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            let constraints: Vec<Vec<u64>> = [u, v]
                .iter()
                .filter_map(|&w| rods.rod(w).map(|r| pairing_dual(field, &r.plucker)))
                .collect();
            let choices = if constraints.is_empty() {
                (0..block)
                    .map(|i| {
                        let mut c = vec![0; block];
                        c[i] = 1;
                        c
                    })
                    .collect()
            } else {
                kernel(field, &Matrix::from_rows(block, &constraints))
            };
            let basis: Vec<Vec<u64>> = choices
                .iter()
                .map(|c| {
                    let mut row = vec![0; ambient];
                    for (j, x) in c.iter().enumerate() {
                        row[u.0 * block + j] = *x;
                        row[v.0 * block + j] = field.neg(x);
                    }
                    row
                })
                .collect();
            Flat::new(field, ambient, basis).expect("independent rows")
        })
        .collect();
    FlatFamily::new(ambient, flats).expect("shared ambient space")
}

/// Flats spanned by the rows of `m`, grouped: row `r` joins flat
/// `group(r.edge)` of `groups`.
pub fn row_flats(field: &PrimeField, m: &RigidityMatrix, groups: usize, group: impl Fn(EdgeId) -> usize) -> FlatFamily {
    let mut rows: Vec<Vec<Vec<u64>>> = vec![Vec::new(); groups];
    for r in &m.rows {
        rows[group(r.edge)].push(m.dense_row(field, r));
    }
    let ambient = m.column_count();
    let flats = rows
        .iter()
        .map(|rs| Flat::spanned_by(field, ambient, rs).expect("rows share the column space"))
        .collect();
    FlatFamily::new(ambient, flats).expect("shared ambient space")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MotionKind {
    /// The same screw on every vertex.
    Constant,
    /// Spin of one rod about itself, zero elsewhere.
    RodSpin(VertexId),
    Translation,
    Dilation,
    Nontrivial,
}

impl MotionKind {
    pub fn is_trivial(self) -> bool {
        self != MotionKind::Nontrivial
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motion {
    pub kind: MotionKind,
    pub vector: Vec<u64>,
}

/// The `D` constant motions and one spin per rod.
pub fn body_rod_trivial_motions(field: &PrimeField, g: &Multigraph, rods: &RodConfig) -> Vec<Motion> {
    let b = big_d(rods.d());
    let n = g.vertex_count();
    let mut out: Vec<Motion> = (0..b)
        .map(|i| {
            let mut x = vec![0; b * n];
            for v in 0..n {
                x[v * b + i] = 1;
            }
            Motion {
                kind: MotionKind::Constant,
                vector: x,
            }
        })
        .collect();
    for (v, rod) in rods.iter() {
        let mut x = vec![0; b * n];
        x[v.0 * b..(v.0 + 1) * b].copy_from_slice(&pairing_dual(field, &rod.plucker));
        out.push(Motion {
            kind: MotionKind::RodSpin(v),
            vector: x,
        });
    }
    out
}

/// The `d` translations and the dilation `m(v) = p(v)`.
pub fn direction_trivial_motions(d: usize, joints: &[Vec<u64>]) -> Vec<Motion> {
    let n = joints.len();
    let mut out: Vec<Motion> = (0..d)
        .map(|i| {
            let mut x = vec![0; d * n];
            for v in 0..n {
                x[v * d + i] = 1;
            }
            Motion {
                kind: MotionKind::Translation,
                vector: x,
            }
        })
        .collect();
    out.push(Motion {
        kind: MotionKind::Dilation,
        vector: joints.concat(),
    });
    out
}

/// A kernel basis whose first members are the independent trivial motions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionBasis {
    pub motions: Vec<Motion>,
}

impl MotionBasis {
    pub fn dimension(&self) -> usize {
        self.motions.len()
    }

    pub fn trivial_dimension(&self) -> usize {
        self.motions.iter().filter(|m| m.kind.is_trivial()).count()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Motion> {
        self.motions.iter().filter(|m| !m.kind.is_trivial())
    }
}

/// Trivial motions not annihilated by `m`.
pub fn trivial_violations<'a>(field: &PrimeField, m: &RigidityMatrix, trivial: &'a [Motion]) -> Vec<&'a Motion> {
    trivial.iter().filter(|t| !m.annihilates(field, &t.vector)).collect()
}

/// Kernel of `m`, listing the given trivial motions (those that lie in the
/// kernel and are independent) before a completion by nontrivial ones.
pub fn kernel_basis(field: &PrimeField, m: &RigidityMatrix, trivial: &[Motion]) -> MotionBasis {
    let cols = m.column_count();
    let mut motions: Vec<Motion> = Vec::new();
    let mut span: Vec<Vec<u64>> = Vec::new();
    let mut push = |motion: Motion, motions: &mut Vec<Motion>| {
        span.push(motion.vector.clone());
        if rank_of_rows(field, cols, &span) == span.len() {
            motions.push(motion);
        } else {
            span.pop();
        }
    };
    for t in trivial {
        if m.annihilates(field, &t.vector) {
            push(t.clone(), &mut motions);
        }
    }
    for x in m.kernel(field) {
        push(
            Motion {
                kind: MotionKind::Nontrivial,
                vector: x,
            },
            &mut motions,
        );
    }
    MotionBasis { motions }
}
