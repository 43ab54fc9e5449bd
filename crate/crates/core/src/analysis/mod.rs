//! Runs the count engine and the matrix engine on one framework and
//! compares them.

pub mod fuzz;
pub mod random;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::count::{fhat_bruteforce, rank_bruteforce, CountMatroid, InducedPolymatroid};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graph::{check_dimension, CountProfile, EdgeId, Multigraph, VertexKind};
use crate::rigidity::{
    big_d, body_rod_trivial_motions, direction_trivial_motions, expand_hinge, hinge_motion_holds, kernel_basis,
    matrix_body_bar, matrix_body_rod_bar, matrix_direction, sample_bar_config, sample_free_bars, sample_joints,
    sample_rod_config, trivial_violations, Motion, RigidityMatrix, RodConfig,
};

pub use fuzz::{check_polymatroid, fuzz_equivalence, Counterexample, FuzzConfig, FuzzSummary};
pub use random::{random_multigraph, GraphDistribution};

pub const SCHEMA: u32 = 1;
/// Total trials allowed once escalation kicks in.
pub const MAX_TRIALS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    BodyBar,
    RodBar,
    BodyRodBar,
    BodyHinge,
    Direction,
}

impl Model {
    pub const ALL: [Model; 5] = [
        Model::BodyBar,
        Model::RodBar,
        Model::BodyRodBar,
        Model::BodyHinge,
        Model::Direction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::BodyBar => "body-bar",
            Model::RodBar => "rod-bar",
            Model::BodyRodBar => "body-rod-bar",
            Model::BodyHinge => "body-hinge",
            Model::Direction => "direction",
        }
    }

    fn accepts(self, kind: VertexKind) -> bool {
        use VertexKind::*;
        match self {
            Model::BodyBar => kind == Body,
            Model::RodBar => kind == Rod,
            Model::BodyRodBar => kind != Hinge,
            Model::BodyHinge => kind != Rod,
            Model::Direction => true,
        }
    }

    /// Whether the model has rods (hinges count as rods), which need `d >= 3`.
    pub fn has_rods(self) -> bool {
        matches!(self, Model::RodBar | Model::BodyRodBar | Model::BodyHinge)
    }

    /// Validates `g` for this model in dimension `d`. Direction frameworks
    /// ignore vertex kinds, so they come back relabelled as bodies.
    pub fn prepare(self, g: &Multigraph, d: usize) -> Result<Multigraph> {
        check_dimension(d)?;
        if g.vertex_count() == 0 {
            return Err(Error::Invalid("graph has no vertices".into()));
        }
        if self.has_rods() && d < 3 {
            return Err(Error::DimensionTooSmall { model: self.name(), d });
        }
        if let Some(v) = g.vertices().iter().find(|v| !self.accepts(v.kind)) {
            return Err(Error::KindMismatch {
                vertex: v.id.clone(),
                kind: v.kind.name(),
                model: self.name(),
            });
        }
        match self {
            Model::BodyHinge => {
                crate::rigidity::check_body_hinge(g)?;
                Ok(g.clone())
            }
            Model::Direction => Ok(g.with_kinds(|_| VertexKind::Body)),
            _ => Ok(g.clone()),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown model `{s}`")))
    }
}

/// splitmix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of stream `stream` under `master`: the splitmix64 output at state
/// `master + (stream + 1) * 0x9e3779b97f4a7c15`. Deterministic and
/// independent of thread scheduling.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    splitmix64(master.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub dimension: usize,
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
    pub oracle: bool,
    /// Joint positions for the direction model; sampled per trial if absent.
    pub joints: Option<Vec<Vec<u64>>>,
}

impl Options {
    pub fn new(dimension: usize) -> Self {
        Options {
            dimension,
            prime: crate::field::DEFAULT_PRIME,
            trials: 3,
            seed: 0,
            oracle: false,
            joints: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub bodies: usize,
    pub rods: usize,
    pub hinges: usize,
}

/// `rank = |singletons| + sum of f over parts`, edges by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub singletons: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorialResult {
    pub rank: usize,
    /// Rank of an infinitesimally rigid framework on the same vertices.
    pub target: i64,
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearResult {
    pub trial_seeds: Vec<u64>,
    pub trial_ranks: Vec<usize>,
    pub max_rank: usize,
    pub escalated: bool,
    /// Kernel and trivial-motion dimensions at the first trial reaching `max_rank`.
    pub kernel_dimension: usize,
    pub trivial_dimension: usize,
    /// Trivial motions missing from the kernel, over all trials.
    pub trivial_violations: usize,
    /// Trials whose rank exceeded the combinatorial rank.
    pub bound_violations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hinge_violations: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "minimally rigid")]
    MinimallyRigid,
    #[serde(rename = "rigid")]
    Rigid,
    #[serde(rename = "flexible")]
    Flexible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::MinimallyRigid => "minimally rigid",
            Verdict::Rigid => "rigid",
            Verdict::Flexible => "flexible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub model: Model,
    pub dimension: usize,
    #[serde(rename = "D")]
    pub big_d: usize,
    pub prime: u64,
    pub seed: u64,
    pub graph: GraphSummary,
    pub combinatorial: CombinatorialResult,
    pub linear: LinearResult,
    pub verdict: Verdict,
    pub rigid: bool,
    pub minimally_rigid: bool,
    pub agreement: bool,
    pub p_components: Vec<Vec<usize>>,
}

fn indices(edges: &[EdgeId]) -> Vec<usize> {
    edges.iter().map(|e| e.0).collect()
}

struct CountSide {
    rank: usize,
    target: i64,
    certificate: Certificate,
    p_components: Vec<Vec<usize>>,
    deletions_drop: bool,
    oracle: Option<usize>,
}

fn count_profile(model: Model, d: usize) -> Result<CountProfile> {
    match model {
        Model::Direction => CountProfile::direction(d),
        _ => CountProfile::body_rod(d),
    }
}

/// The graph the count engine sees: hinges become rods.
fn count_graph(model: Model, g: &Multigraph) -> Multigraph {
    match model {
        Model::BodyHinge => g.with_kinds(|k| if k == VertexKind::Hinge { VertexKind::Rod } else { k }),
        _ => g.clone(),
    }
}

fn without(all: &[EdgeId], e: EdgeId) -> Vec<EdgeId> {
    all.iter().copied().filter(|&x| x != e).collect()
}

fn count_side(model: Model, g: &Multigraph, d: usize, oracle: bool) -> Result<CountSide> {
    let prof = count_profile(model, d)?;
    let cg = count_graph(model, g);
    let all = cg.all_edges();
    let target = prof.global_count(&cg)?;
    let poly = InducedPolymatroid::new(&cg, &prof)?;
    let p_components: Vec<Vec<usize>> = poly.p_components()?.components.iter().map(|c| indices(c)).collect();
    let small = all.len() <= crate::count::oracle::ORACLE_LIMIT;
    match model {
        Model::BodyBar | Model::RodBar | Model::BodyRodBar => {
            let m = CountMatroid::new(&cg, &prof)?;
            let cert = m.certificate(&all)?;
            let mut deletions_drop = true;
            for &e in &all {
                if m.rank(&without(&all, e))? as i64 >= target {
                    deletions_drop = false;
                    break;
                }
            }
            Ok(CountSide {
                rank: cert.value,
                target,
                certificate: Certificate {
                    singletons: indices(&cert.singletons),
                    parts: cert.parts.iter().map(|p| indices(p)).collect(),
                },
                p_components,
                deletions_drop,
                oracle: if oracle && small {
                    Some(rank_bruteforce(&cg, &all, &prof)?.value)
                } else {
                    None
                },
            })
        }
        Model::BodyHinge | Model::Direction => {
            let rank = if all.is_empty() { 0 } else { poly.fhat(&all)? as usize };
            let mut deletions_drop = true;
            for &e in &all {
                let rest = without(&all, e);
                let r = if rest.is_empty() { 0 } else { poly.fhat(&rest)? };
                if r >= target {
                    deletions_drop = false;
                    break;
                }
            }
            let oracle = if oracle && small && !all.is_empty() {
                Some(fhat_bruteforce(&cg, &all, &prof)? as usize)
            } else if oracle && all.is_empty() {
                Some(0)
            } else {
                None
            };
            Ok(CountSide {
                rank,
                target,
                certificate: Certificate {
                    singletons: Vec::new(),
                    parts: p_components.clone(),
                },
                p_components,
                deletions_drop,
                oracle,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub edges: Vec<usize>,
    pub vertices: Vec<String>,
    pub f: i64,
    pub fhat: i64,
}

/// The P-components of a graph under the count function of its model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub schema: u32,
    pub model: Model,
    pub dimension: usize,
    pub rank: i64,
    pub nontrivial: usize,
    pub components: Vec<ComponentSummary>,
}

pub fn decompose(g: &Multigraph, model: Model, d: usize) -> Result<DecompositionReport> {
    let g = model.prepare(g, d)?;
    let prof = count_profile(model, d)?;
    let cg = count_graph(model, &g);
    let poly = InducedPolymatroid::new(&cg, &prof)?;
    let all = cg.all_edges();
    let rank = if all.is_empty() { 0 } else { poly.fhat(&all)? };
    let components = poly
        .p_components()?
        .components
        .iter()
        .map(|c| {
            Ok(ComponentSummary {
                edges: indices(c),
                vertices: cg.spanned(c).into_iter().map(|v| cg.vertex(v).id.clone()).collect(),
                f: crate::graph::f_value(&cg, c, &prof)?,
                fhat: poly.fhat(c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionReport {
        schema: SCHEMA,
        model,
        dimension: d,
        rank,
        nontrivial: components.iter().filter(|c| c.edges.len() > 1).count(),
        components,
    })
}

/// One sampled framework of the model on `g`.
pub struct Framework {
    pub matrix: RigidityMatrix,
    pub trivial: Vec<Motion>,
    pub rods: Option<RodConfig>,
    pub hinge: Option<crate::rigidity::HingeFramework>,
}

impl Framework {
    /// Kernel motions violating the hinge condition (hinge model only).
    pub fn hinge_violations(&self, field: &PrimeField, motions: &[Motion]) -> Option<usize> {
        self.hinge.as_ref().map(|fw| {
            motions
                .iter()
                .filter(|m| !hinge_motion_holds(field, fw, &m.vector))
                .count()
        })
    }
}

/// Samples a generic framework for `model` on a prepared graph.
pub fn sample_framework(
    field: &PrimeField,
    model: Model,
    g: &Multigraph,
    d: usize,
    joints: Option<&[Vec<u64>]>,
    seed: u64,
) -> Result<Framework> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        Model::BodyBar => {
            let bars = sample_free_bars(field, g, d, &mut rng)?;
            let rods = RodConfig::empty(d, g.vertex_count());
            Ok(Framework {
                matrix: matrix_body_bar(g, d, &bars),
                trivial: body_rod_trivial_motions(field, g, &rods),
                rods: None,
                hinge: None,
            })
        }
        Model::RodBar | Model::BodyRodBar => {
            let rods = sample_rod_config(field, g, d, &mut rng)?;
            let bars = sample_bar_config(field, g, &rods, &mut rng)?;
            Ok(Framework {
                matrix: matrix_body_rod_bar(field, g, &rods, &bars)?,
                trivial: body_rod_trivial_motions(field, g, &rods),
                rods: Some(rods),
                hinge: None,
            })
        }
        Model::BodyHinge => {
            let fw = expand_hinge(field, g, d, &mut rng)?;
            Ok(Framework {
                matrix: fw.matrix(field)?,
                trivial: body_rod_trivial_motions(field, fw.graph(), &fw.rods),
                rods: Some(fw.rods.clone()),
                hinge: Some(fw),
            })
        }
        Model::Direction => {
            let p = match joints {
                Some(p) => p.to_vec(),
                None => sample_joints(field, g, d, &mut rng)?,
            };
            Ok(Framework {
                matrix: matrix_direction(field, g, d, &p)?,
                trivial: direction_trivial_motions(d, &p),
                rods: None,
                hinge: None,
            })
        }
    }
}

struct Trial {
    rank: usize,
    kernel_dimension: usize,
    trivial_dimension: usize,
    trivial_violations: usize,
    hinge_violations: Option<usize>,
}

fn run_trial(field: &PrimeField, model: Model, g: &Multigraph, opts: &Options, seed: u64) -> Result<Trial> {
    let fw = sample_framework(field, model, g, opts.dimension, opts.joints.as_deref(), seed)?;
    let basis = kernel_basis(field, &fw.matrix, &fw.trivial);
    Ok(Trial {
        rank: fw.matrix.column_count() - basis.dimension(),
        kernel_dimension: basis.dimension(),
        trivial_dimension: basis.trivial_dimension(),
        trivial_violations: trivial_violations(field, &fw.matrix, &fw.trivial).len(),
        hinge_violations: fw.hinge_violations(field, &basis.motions),
    })
}

/// Analyzes `g` as a `model` framework: exact combinatorial rank, generic
/// linear rank (maximum over seeded trials, escalating to [`MAX_TRIALS`]
/// while below the combinatorial rank), and the resulting verdicts.
pub fn analyze(g: &Multigraph, model: Model, opts: &Options) -> Result<Report> {
    let d = opts.dimension;
    let g = model.prepare(g, d)?;
    let field = PrimeField::new(opts.prime)?;
    if let Some(p) = &opts.joints {
        if model != Model::Direction {
            return Err(Error::Invalid(
                "joint coordinates only apply to the direction model".into(),
            ));
        }
        if p.len() != g.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: g.vertex_count(),
                got: p.len(),
            });
        }
    }
    let count = count_side(model, &g, d, opts.oracle)?;

    let mut trials: Vec<(u64, Trial)> = Vec::new();
    let wanted = opts.trials.max(1);
    let limit = wanted.max(MAX_TRIALS);
    let mut escalated = false;
    loop {
        let n = trials.len();
        let max = trials.iter().map(|(_, t)| t.rank).max().unwrap_or(0);
        if n >= wanted && (max >= count.rank || n >= limit) {
            break;
        }
        if n >= wanted {
            escalated = true;
        }
        let seed = derive_seed(opts.seed, n as u64);
        trials.push((seed, run_trial(&field, model, &g, opts, seed)?));
    }
    let max_rank = trials.iter().map(|(_, t)| t.rank).max().unwrap_or(0);
    let best = &trials
        .iter()
        .find(|(_, t)| t.rank == max_rank)
        .expect("at least one trial")
        .1;
    let hinge_violations = if model == Model::BodyHinge {
        Some(trials.iter().filter_map(|(_, t)| t.hinge_violations).sum())
    } else {
        None
    };
    let linear = LinearResult {
        trial_seeds: trials.iter().map(|(s, _)| *s).collect(),
        trial_ranks: trials.iter().map(|(_, t)| t.rank).collect(),
        max_rank,
        escalated,
        kernel_dimension: best.kernel_dimension,
        trivial_dimension: best.trivial_dimension,
        trivial_violations: trials.iter().map(|(_, t)| t.trivial_violations).sum(),
        bound_violations: trials.iter().filter(|(_, t)| t.rank > count.rank).count(),
        hinge_violations,
    };

    let rigid = max_rank as i64 == count.target;
    let minimally_rigid = rigid && count.deletions_drop;
    let verdict = if minimally_rigid {
        Verdict::MinimallyRigid
    } else if rigid {
        Verdict::Rigid
    } else {
        Verdict::Flexible
    };
    Ok(Report {
        schema: SCHEMA,
        model,
        dimension: d,
        big_d: big_d(d),
        prime: opts.prime,
        seed: opts.seed,
        graph: GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            bodies: g.count_kind(VertexKind::Body),
            rods: g.count_kind(VertexKind::Rod),
            hinges: g.count_kind(VertexKind::Hinge),
        },
        combinatorial: CombinatorialResult {
            rank: count.rank,
            target: count.target,
            certificate: count.certificate,
            oracle_rank: count.oracle,
        },
        agreement: count.rank == max_rank,
        linear,
        verdict,
        rigid,
        minimally_rigid,
        p_components: count.p_components,
    })
}

#[cfg(test)]
mod tests;
