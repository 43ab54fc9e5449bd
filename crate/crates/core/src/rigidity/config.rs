//! Random rod, bar and joint configurations over `F_p`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{pairing, proportional, sample_grassmannian, wedge2, KVector, Subspace};
use crate::field::PrimeField;
use crate::flats::random_point;
use crate::flats::Flat;
use crate::graph::{EdgeId, Multigraph, VertexId, VertexKind};
use crate::linalg::rank_of_rows;

const RETRIES: usize = 64;

/// A `(d-1)`-dimensional subspace of `W` for every rod vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RodConfig {
    d: usize,
    rods: Vec<Option<Subspace>>,
}

impl RodConfig {
    /// No rods on a graph with `vertices` vertices.
    pub fn empty(d: usize, vertices: usize) -> Self {
        RodConfig {
            d,
            rods: vec![None; vertices],
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rod(&self, v: VertexId) -> Option<&Subspace> {
        self.rods.get(v.0).and_then(|r| r.as_ref())
    }

    /// Rod vertices with their subspaces, in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &Subspace)> {
        self.rods
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (VertexId(i), r)))
    }

    pub fn len(&self) -> usize {
        self.rods.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Samples a random `(d-1)`-subspace for every [`VertexKind::Rod`] vertex,
/// resampling any rod proportional to an earlier one.
pub fn sample_rod_config<R: Rng + ?Sized>(
    field: &PrimeField,
    g: &Multigraph,
    d: usize,
    rng: &mut R,
) -> Result<RodConfig> {
    let mut rods: Vec<Option<Subspace>> = vec![None; g.vertex_count()];
    for (i, v) in g.vertices().iter().enumerate() {
        if v.kind != VertexKind::Rod {
            continue;
        }
        let mut accepted = None;
        for _ in 0..RETRIES {
            let s = sample_grassmannian(field, d, d - 1, rng)?;
            let clash = rods
                .iter()
                .flatten()
                .any(|r| proportional(field, &r.plucker, &s.plucker));
            if !clash {
                accepted = Some(s);
                break;
            }
        }
        rods[i] = Some(accepted.ok_or(Error::SamplingExhausted(RETRIES))?);
    }
    Ok(RodConfig { d, rods })
}

/// A Plücker 2-vector for every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarConfig {
    bars: Vec<KVector<u64>>,
}

impl BarConfig {
    pub fn new(bars: Vec<KVector<u64>>) -> Self {
        BarConfig { bars }
    }

    pub fn bar(&self, e: EdgeId) -> &KVector<u64> {
        &self.bars[e.0]
    }

    pub fn bars(&self) -> &[KVector<u64>] {
        &self.bars
    }
}

fn endpoint_point<R: Rng + ?Sized>(field: &PrimeField, rods: &RodConfig, v: VertexId, rng: &mut R) -> Vec<u64> {
    let d = rods.d;
    match rods.rod(v) {
        Some(r) => random_point(
            field,
            d + 1,
            &Flat::new(field, d + 1, r.basis.clone()).expect("rod basis"),
            rng,
        ),
        None => field.sample_vec(rng, d + 1),
    }
}

/// Samples `q_e = x ∧ y` for each edge `e = uv`, with `x` on the rod of `u`
/// when `u` is a rod (otherwise anywhere in `W`) and likewise `y` for `v`.
/// Every bar therefore meets the rods at its endpoints.
pub fn sample_bar_config<R: Rng + ?Sized>(
    field: &PrimeField,
    g: &Multigraph,
    rods: &RodConfig,
    rng: &mut R,
) -> Result<BarConfig> {
    let d = rods.d;
    let mut bars = Vec::with_capacity(g.edge_count());
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let mut bar = None;
        for _ in 0..RETRIES {
            let x = endpoint_point(field, rods, u, rng);
            let y = endpoint_point(field, rods, v, rng);
            if rank_of_rows(field, d + 1, &[x.clone(), y.clone()]) == 2 {
                bar = Some(wedge2(field, &x, &y)?);
                break;
            }
        }
        bars.push(bar.ok_or(Error::SamplingExhausted(RETRIES))?);
    }
    Ok(BarConfig { bars })
}

/// Uniform random 2-vectors, decomposable by construction, with no
/// incidence constraints.
pub fn sample_free_bars<R: Rng + ?Sized>(
    field: &PrimeField,
    g: &Multigraph,
    d: usize,
    rng: &mut R,
) -> Result<BarConfig> {
    sample_bar_config(field, g, &RodConfig::empty(d, g.vertex_count()), rng)
}

/// Checks `⟨q_e, r_v⟩ = 0` for every edge `e` and rod endpoint `v`.
pub fn check_incidence(field: &PrimeField, g: &Multigraph, rods: &RodConfig, bars: &BarConfig) -> Result<()> {
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if let Some(r) = rods.rod(w) {
                if pairing(field, bars.bar(e), &r.plucker)? != 0 {
                    return Err(Error::IncidenceViolation {
                        edge: e.0,
                        rod: g.vertex(w).id.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Random joint positions in `F_p^d`, resampled while some edge joins
/// coincident joints.
pub fn sample_joints<R: Rng + ?Sized>(
    field: &PrimeField,
    g: &Multigraph,
    d: usize,
    rng: &mut R,
) -> Result<Vec<Vec<u64>>> {
    for _ in 0..RETRIES {
        let joints: Vec<Vec<u64>> = (0..g.vertex_count()).map(|_| field.sample_vec(rng, d)).collect();
        if g.edge_ids().all(|e| {
            let (u, v) = g.endpoints(e);
            joints[u.0] != joints[v.0]
        }) {
            return Ok(joints);
        }
    }
    Err(Error::SamplingExhausted(RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{grassmann_check, hodge_star, is_decomposable};
    use crate::graph::VertexKind::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rod_configs() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let bodies = Multigraph::from_indices(&[Body, Body], &[(0, 1)]).unwrap();
        assert!(sample_rod_config(&f, &bodies, 3, &mut rng).unwrap().is_empty());

        let rods = Multigraph::from_indices(&[Rod, Rod], &[(0, 1)]).unwrap();
        let cfg = sample_rod_config(&f, &rods, 3, &mut rng).unwrap();
        assert_eq!(cfg.len(), 2);
        let r0 = &cfg.rod(VertexId(0)).unwrap().plucker;
        let r1 = &cfg.rod(VertexId(1)).unwrap().plucker;
        assert!(!proportional(&f, r0, r1));
        for (_, r) in cfg.iter() {
            assert!(grassmann_check(&f, &hodge_star(&f, &r.plucker)).unwrap());
        }
        for d in 3..=5 {
            let cfg = sample_rod_config(&f, &rods, d, &mut rng).unwrap();
            assert!(cfg
                .iter()
                .all(|(_, r)| is_decomposable(&f, &r.plucker) && r.plucker.k() == d - 1));
        }
    }

    #[test]
    fn bars_meet_their_rods() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 3..=5 {
            let g = Multigraph::from_indices(&[Body, Body, Rod, Rod], &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
            let rods = sample_rod_config(&f, &g, d, &mut rng).unwrap();
            let bars = sample_bar_config(&f, &g, &rods, &mut rng).unwrap();
            check_incidence(&f, &g, &rods, &bars).unwrap();
            for b in bars.bars() {
                assert!(is_decomposable(&f, b) && !b.is_zero(&f));
            }
            // The body-body bar does not meet a random rod.
            let r = &rods.rod(VertexId(2)).unwrap().plucker;
            assert_ne!(pairing(&f, bars.bar(EdgeId(0)), r).unwrap(), 0);
            // A body-rod bar does not meet some other rod.
            let r3 = &rods.rod(VertexId(3)).unwrap().plucker;
            assert_ne!(pairing(&f, bars.bar(EdgeId(1)), r3).unwrap(), 0);
        }
    }

    #[test]
    fn incidence_violation_is_named() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Multigraph::new([("a", Body), ("r", Rod)], [("a", "r")]).unwrap();
        let rods = sample_rod_config(&f, &g, 3, &mut rng).unwrap();
        let free = sample_free_bars(&f, &g, 3, &mut rng).unwrap();
        assert_eq!(
            check_incidence(&f, &g, &rods, &free),
            Err(Error::IncidenceViolation {
                edge: 0,
                rod: "r".into()
            })
        );
    }

    #[test]
    fn joints_are_distinct_on_edges() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = Multigraph::from_indices(&[Body; 3], &[(0, 1), (1, 2)]).unwrap();
        let p = sample_joints(&f, &g, 2, &mut rng).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.iter().all(|x| x.len() == 2));
    }
}
