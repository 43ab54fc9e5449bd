//! Randomized equivalence testing of the two engines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    analyze, count_graph, count_profile, derive_seed, random_multigraph, sample_framework, Certificate,
    GraphDistribution, Model, Options, SCHEMA,
};
use crate::count::oracle::subset;
use crate::count::{BruteForce, InducedPolymatroid};
use crate::document::GraphDocument;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::flats::{span_rank, FlatFamily};
use crate::graph::Multigraph;
use crate::rigidity::{edge_flats, row_flats, RodConfig};

/// Environment variable capping the number of fuzz worker threads.
pub const THREADS_ENV: &str = "RIGIKIT_THREADS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub model: Model,
    pub dimension: usize,
    pub cases: usize,
    pub seed: u64,
    pub trials: usize,
    pub prime: u64,
    pub distribution: GraphDistribution,
    /// Cases with at most this many edges also get the full polymatroid check.
    pub polymatroid_edges: usize,
    pub oracle: bool,
    /// Worker threads; `None` reads [`THREADS_ENV`], else uses all cores.
    pub threads: Option<usize>,
}

impl FuzzConfig {
    pub fn new(model: Model, dimension: usize, cases: usize, seed: u64) -> Self {
        FuzzConfig {
            model,
            dimension,
            cases,
            seed,
            trials: 3,
            prime: crate::field::DEFAULT_PRIME,
            distribution: GraphDistribution {
                max_vertices: 7,
                max_edges: 24,
                ..GraphDistribution::default()
            },
            polymatroid_edges: 6,
            oracle: false,
            threads: None,
        }
    }
}

/// A failing case, replayable with `analyze` on `document` and `case_seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: usize,
    pub case_seed: u64,
    pub reasons: Vec<String>,
    pub document: GraphDocument,
    pub combinatorial_rank: usize,
    pub certificate: Certificate,
    pub trial_ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub schema: u32,
    pub model: Model,
    pub dimension: usize,
    pub seed: u64,
    pub cases: usize,
    /// Cases with no disagreement or violation of any kind.
    pub agree: usize,
    /// `"<agree>/<cases> agree"`.
    pub summary: String,
    /// Cases that needed more than the configured number of trials.
    pub escalations: usize,
    pub bound_violations: usize,
    pub trivial_violations: usize,
    pub hinge_violations: usize,
    pub polymatroid_cases: usize,
    pub polymatroid_subsets: usize,
    pub polymatroid_mismatches: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

struct CaseOutcome {
    escalated: bool,
    bound_violations: usize,
    trivial_violations: usize,
    hinge_violations: usize,
    polymatroid: Option<(usize, usize)>,
    counterexample: Option<Counterexample>,
}

/// The realized flat of each edge: every row it could contribute for bar
/// models, the span of its rows otherwise.
fn linear_flats(field: &PrimeField, model: Model, g: &Multigraph, d: usize, seed: u64) -> Result<FlatFamily> {
    let fw = sample_framework(field, model, g, d, None, seed)?;
    Ok(match model {
        Model::BodyBar => edge_flats(field, g, &RodConfig::empty(d, g.vertex_count())),
        Model::RodBar | Model::BodyRodBar => edge_flats(field, g, fw.rods.as_ref().expect("rods sampled")),
        Model::BodyHinge => {
            let hinge = fw.hinge.as_ref().expect("hinge framework");
            row_flats(field, &fw.matrix, g.edge_count(), |e| hinge.expansion.origin[e.0].0)
        }
        Model::Direction => row_flats(field, &fw.matrix, g.edge_count(), |e| e.0),
    })
}

/// Compares, on every nonempty edge subset, the count engine's `f̂`, the
/// partition minimum, and the rank of the realized flats. Returns
/// `(subsets checked, mismatches)`.
pub fn check_polymatroid(
    field: &PrimeField,
    model: Model,
    g: &Multigraph,
    d: usize,
    seed: u64,
) -> Result<(usize, usize)> {
    let prof = count_profile(model, d)?;
    let cg = count_graph(model, g);
    let all = cg.all_edges();
    let poly = InducedPolymatroid::new(&cg, &prof)?;
    let bf = BruteForce::new(&cg, &all, &prof)?;
    let flats = linear_flats(field, model, g, d, seed)?;
    let mut mismatches = 0;
    for mask in 1..=bf.full_mask() {
        let set = subset(&all, mask);
        let idx: Vec<usize> = set.iter().map(|e| e.0).collect();
        let exact = bf.fhat(mask);
        if poly.fhat(&set)? != exact || span_rank(field, &flats, &idx) as i64 != exact {
            mismatches += 1;
        }
    }
    Ok((bf.full_mask(), mismatches))
}

fn run_case(cfg: &FuzzConfig, field: &PrimeField, case: usize) -> Result<CaseOutcome> {
    let case_seed = derive_seed(cfg.seed, case as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let g = random_multigraph(&mut rng, &cfg.distribution, cfg.model);
    let opts = Options {
        dimension: cfg.dimension,
        prime: cfg.prime,
        trials: cfg.trials,
        seed: case_seed,
        oracle: cfg.oracle,
        joints: None,
    };
    let report = analyze(&g, cfg.model, &opts)?;
    let mut reasons = Vec::new();
    if !report.agreement {
        reasons.push(format!(
            "combinatorial rank {} but linear ranks {:?}",
            report.combinatorial.rank, report.linear.trial_ranks
        ));
    }
    if report.linear.bound_violations > 0 {
        reasons.push(format!(
            "{} trials exceed the combinatorial rank",
            report.linear.bound_violations
        ));
    }
    if report.linear.trivial_violations > 0 {
        reasons.push(format!(
            "{} trivial motions outside the kernel",
            report.linear.trivial_violations
        ));
    }
    let hinge_violations = report.linear.hinge_violations.unwrap_or(0);
    if hinge_violations > 0 {
        reasons.push(format!("{hinge_violations} kernel motions break a hinge"));
    }
    if let Some(oracle) = report.combinatorial.oracle_rank {
        if oracle != report.combinatorial.rank {
            reasons.push(format!(
                "oracle rank {oracle} differs from count rank {}",
                report.combinatorial.rank
            ));
        }
    }
    let polymatroid = if g.edge_count() > 0 && g.edge_count() <= cfg.polymatroid_edges {
        let prepared = cfg.model.prepare(&g, cfg.dimension)?;
        let (checked, bad) = check_polymatroid(
            field,
            cfg.model,
            &prepared,
            cfg.dimension,
            derive_seed(case_seed, u64::MAX),
        )?;
        if bad > 0 {
            reasons.push(format!("{bad} of {checked} subsets break the polymatroid equality"));
        }
        Some((checked, bad))
    } else {
        None
    };
    let counterexample = (!reasons.is_empty()).then(|| Counterexample {
        case,
        case_seed,
        reasons,
        document: GraphDocument::from_graph(&g, cfg.dimension, cfg.model),
        combinatorial_rank: report.combinatorial.rank,
        certificate: report.combinatorial.certificate.clone(),
        trial_ranks: report.linear.trial_ranks.clone(),
    });
    Ok(CaseOutcome {
        escalated: report.linear.escalated,
        bound_violations: report.linear.bound_violations,
        trivial_violations: report.linear.trivial_violations,
        hinge_violations,
        polymatroid,
        counterexample,
    })
}

fn thread_count(cfg: &FuzzConfig) -> Option<usize> {
    cfg.threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&n| n > 0)
}

/// Runs `cfg.cases` random cases in parallel. Case `i` uses the seed
/// `derive_seed(cfg.seed, i)`, so results do not depend on scheduling.
pub fn fuzz_equivalence(cfg: &FuzzConfig) -> Result<FuzzSummary> {
    let field = PrimeField::new(cfg.prime)?;
    if cfg.distribution.max_vertices > 8 || cfg.distribution.max_edges > 24 {
        return Err(Error::Invalid(
            "fuzz graphs are limited to 8 vertices and 24 edges".into(),
        ));
    }
    crate::graph::check_dimension(cfg.dimension)?;
    if cfg.model.has_rods() && cfg.dimension < 3 {
        return Err(Error::DimensionTooSmall {
            model: cfg.model.name(),
            d: cfg.dimension,
        });
    }
    let work = || -> Result<Vec<CaseOutcome>> {
        (0..cfg.cases)
            .into_par_iter()
            .map(|i| run_case(cfg, &field, i))
            .collect()
    };
    let outcomes = match thread_count(cfg) {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let mut summary = FuzzSummary {
        schema: SCHEMA,
        model: cfg.model,
        dimension: cfg.dimension,
        seed: cfg.seed,
        cases: cfg.cases,
        agree: 0,
        summary: String::new(),
        escalations: 0,
        bound_violations: 0,
        trivial_violations: 0,
        hinge_violations: 0,
        polymatroid_cases: 0,
        polymatroid_subsets: 0,
        polymatroid_mismatches: 0,
        counterexamples: Vec::new(),
    };
    for o in outcomes {
        summary.agree += o.counterexample.is_none() as usize;
        summary.escalations += o.escalated as usize;
        summary.bound_violations += o.bound_violations;
        summary.trivial_violations += o.trivial_violations;
        summary.hinge_violations += o.hinge_violations;
        if let Some((checked, bad)) = o.polymatroid {
            summary.polymatroid_cases += 1;
            summary.polymatroid_subsets += checked;
            summary.polymatroid_mismatches += bad;
        }
        summary.counterexamples.extend(o.counterexample);
    }
    summary.summary = format!("{}/{} agree", summary.agree, summary.cases);
    Ok(summary)
}
