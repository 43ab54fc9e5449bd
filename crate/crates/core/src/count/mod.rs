//! The count matroid `M_f(G, P)` induced by `f`, its polymatroid `f̂`, and
//! M-/P-connected decompositions.
//!
//! Independence is decided by a vertex-capacitated pebble game
//! ([`pebble::PebbleGame`]). The brute-force partition minimum in
//! [`oracle`] is the reference it is tested against.

pub mod oracle;
pub mod pebble;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{expand_f, f_value, CountProfile, EdgeId, Expansion, Multigraph, VertexKind};
use pebble::PebbleGame;

pub use oracle::{fhat_bruteforce, rank_bruteforce, BruteForce};

/// A rank value together with a partition `{F_0, F_1, ..., F_k}` of the
/// queried set witnessing `rank = |F_0| + sum f(F_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub value: usize,
    /// `F_0`, elements counted one each.
    pub singletons: Vec<EdgeId>,
    /// `F_1..F_k`, each nonempty and counted by `f`.
    pub parts: Vec<Vec<EdgeId>>,
}

impl RankCertificate {
    /// `|F_0| + sum f(F_i)`; an upper bound on the rank for any partition.
    pub fn bound(&self, g: &Multigraph, prof: &CountProfile) -> Result<i64> {
        let mut total = self.singletons.len() as i64;
        for part in &self.parts {
            total += f_value(g, part, prof)?;
        }
        Ok(total)
    }

    /// All edges covered by the certificate, sorted.
    pub fn support(&self) -> Vec<EdgeId> {
        let mut all: Vec<EdgeId> = self
            .singletons
            .iter()
            .chain(self.parts.iter().flatten())
            .copied()
            .collect();
        all.sort();
        all
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    MConnected,
    PConnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub kind: ComponentKind,
    /// Components sorted by smallest edge id; each sorted.
    pub components: Vec<Vec<EdgeId>>,
}

impl Decomposition {
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<EdgeId>> {
        self.components.iter().filter(|c| c.len() > 1)
    }
}

struct Play<'g> {
    accepted: Vec<EdgeId>,
    rejected: Vec<(EdgeId, Vec<crate::graph::VertexId>)>,
    game: PebbleGame<'g>,
}

/// The count matroid on the edges of one graph.
#[derive(Clone, Debug)]
pub struct CountMatroid<'g> {
    graph: &'g Multigraph,
    prof: CountProfile,
    capacity: Vec<i64>,
}

impl<'g> CountMatroid<'g> {
    /// Rejects graphs containing hinge vertices.
    pub fn new(graph: &'g Multigraph, prof: &CountProfile) -> Result<Self> {
        Ok(CountMatroid {
            graph,
            prof: *prof,
            capacity: prof.capacities(graph)?,
        })
    }

    pub fn graph(&self) -> &'g Multigraph {
        self.graph
    }

    pub fn profile(&self) -> &CountProfile {
        &self.prof
    }

    pub fn game(&self) -> PebbleGame<'g> {
        PebbleGame::new(self.graph, self.capacity.clone(), self.prof.offset())
    }

    /// Greedy insertion in ascending edge id. Each rejected edge is
    /// recorded with the vertex region reachable from its endpoints at the
    /// moment of rejection; that region spans a tight set holding the
    /// edge's fundamental circuit.
    fn play(&self, edges: &[EdgeId]) -> Result<Play<'g>> {
        self.graph.check_edges(edges)?;
        let mut sorted = edges.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut game = self.game();
        let mut rejected = Vec::new();
        for &e in &sorted {
            if !game.try_insert(e) {
                let (u, v) = self.graph.endpoints(e);
                rejected.push((e, game.reach(u, v)));
            }
        }
        Ok(Play {
            accepted: game.inserted().to_vec(),
            rejected,
            game,
        })
    }

    pub fn is_independent(&self, edges: &[EdgeId]) -> Result<bool> {
        Ok(self.play(edges)?.rejected.is_empty())
    }

    /// A maximal independent subset of `edges`.
    pub fn basis(&self, edges: &[EdgeId]) -> Result<Vec<EdgeId>> {
        Ok(self.play(edges)?.accepted)
    }

    pub fn rank(&self, edges: &[EdgeId]) -> Result<usize> {
        Ok(self.play(edges)?.accepted.len())
    }

    /// M-connected components of the restriction to `edges`.
    ///
    /// Each rejected edge is joined with every basis edge of its
    /// fundamental circuit; the components are the connected classes of
    /// that relation.
    pub fn components(&self, edges: &[EdgeId]) -> Result<Vec<Vec<EdgeId>>> {
        let Play {
            accepted,
            rejected,
            game,
        } = self.play(edges)?;
        let mut all: Vec<EdgeId> = accepted
            .iter()
            .chain(rejected.iter().map(|(e, _)| e))
            .copied()
            .collect();
        all.sort();
        let pos = |e: EdgeId| all.binary_search(&e).expect("edge in set");
        let mut sets = DisjointSets::new(all.len());
        for (r, region) in &rejected {
            for &a in &accepted {
                let (x, y) = self.graph.endpoints(a);
                if region.binary_search(&x).is_err() || region.binary_search(&y).is_err() {
                    continue;
                }
                let mut trial = game.clone();
                trial.remove(a);
                if trial.try_insert(*r) {
                    sets.union(pos(*r), pos(a));
                }
            }
        }
        Ok(sets.classes_by(&all, |i, _| i))
    }

    pub fn m_components(&self) -> Result<Decomposition> {
        Ok(Decomposition {
            kind: ComponentKind::MConnected,
            components: self.components(&self.graph.all_edges())?,
        })
    }

    /// Rank with a partition certificate built from the M-components of
    /// the restriction: coloops go to `F_0`, nontrivial components become
    /// parts.
    pub fn certificate(&self, edges: &[EdgeId]) -> Result<RankCertificate> {
        let value = self.rank(edges)?;
        let mut singletons = Vec::new();
        let mut parts = Vec::new();
        for c in self.components(edges)? {
            if c.len() == 1 {
                singletons.push(c[0]);
            } else {
                parts.push(c);
            }
        }
        singletons.sort();
        Ok(RankCertificate {
            value,
            singletons,
            parts,
        })
    }
}

/// Whether every nonempty `F' ⊆ edges` satisfies `|F'| <= f(F')`.
pub fn is_independent(g: &Multigraph, edges: &[EdgeId], prof: &CountProfile) -> Result<bool> {
    CountMatroid::new(g, prof)?.is_independent(edges)
}

pub fn rank(g: &Multigraph, edges: &[EdgeId], prof: &CountProfile) -> Result<RankCertificate> {
    CountMatroid::new(g, prof)?.certificate(edges)
}

/// The polymatroid `PM_f(G)` evaluated through `M_f(f∘G)`.
#[derive(Clone, Debug)]
pub struct InducedPolymatroid {
    prof: CountProfile,
    expansion: Expansion,
}

impl InducedPolymatroid {
    pub fn new(g: &Multigraph, prof: &CountProfile) -> Result<Self> {
        prof.capacities(g)?;
        Ok(InducedPolymatroid {
            prof: *prof,
            expansion: expand_f(g, prof)?,
        })
    }

    pub fn expansion(&self) -> &Expansion {
        &self.expansion
    }

    fn matroid(&self) -> CountMatroid<'_> {
        CountMatroid::new(&self.expansion.graph, &self.prof).expect("capacities checked")
    }

    /// `f̂(edges) = r_f(f∘edges)`.
    pub fn fhat(&self, edges: &[EdgeId]) -> Result<i64> {
        if let Some(e) = edges.iter().find(|e| e.0 >= self.expansion.copies.len()) {
            return Err(Error::UnknownEdge(e.0));
        }
        Ok(self.matroid().rank(&self.expansion.lift(edges))? as i64)
    }

    /// P-components of `PM_f(G)`: M-components of `M_f(f∘G)` pulled back
    /// along the copy map.
    pub fn p_components(&self) -> Result<Decomposition> {
        let all = self.expansion.graph.all_edges();
        self.p_components_of_lifted(&all)
    }

    fn p_components_of_lifted(&self, lifted: &[EdgeId]) -> Result<Decomposition> {
        let n = self.expansion.copies.len();
        let mut sets = DisjointSets::new(n);
        for comp in self.matroid().components(lifted)? {
            let first = self.expansion.origin[comp[0].0];
            for c in &comp[1..] {
                sets.union(first.0, self.expansion.origin[c.0].0);
            }
        }
        let mut present: Vec<EdgeId> = lifted.iter().map(|c| self.expansion.origin[c.0]).collect();
        present.sort();
        present.dedup();
        Ok(Decomposition {
            kind: ComponentKind::PConnected,
            components: sets.classes_by(&present, |_, e| e.0),
        })
    }

    /// Whether a nonempty edge set is P-connected (singletons are).
    pub fn is_p_connected(&self, edges: &[EdgeId]) -> Result<bool> {
        if edges.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        let lifted = self.expansion.lift(edges);
        Ok(self.p_components_of_lifted(&lifted)?.components.len() == 1)
    }
}

/// `f̂(edges)` computed as the rank of `f∘edges` in `M_f(f∘G)`.
pub fn fhat(g: &Multigraph, edges: &[EdgeId], prof: &CountProfile) -> Result<i64> {
    g.check_edges(edges)?;
    InducedPolymatroid::new(g, prof)?.fhat(edges)
}

pub fn m_components(g: &Multigraph, prof: &CountProfile) -> Result<Decomposition> {
    CountMatroid::new(g, prof)?.m_components()
}

pub fn p_components(g: &Multigraph, prof: &CountProfile) -> Result<Decomposition> {
    InducedPolymatroid::new(g, prof)?.p_components()
}

/// Replaces the nontrivial P-connected set `component` by a star: its
/// edges are removed and a new body vertex is joined to every vertex the
/// component spans. Remaining edges keep their relative order; the star
/// edges come last.
pub fn simplify_component(g: &Multigraph, component: &[EdgeId], prof: &CountProfile) -> Result<Multigraph> {
    g.check_edges(component)?;
    let mut comp = component.to_vec();
    comp.sort();
    comp.dedup();
    if comp.len() < 2 {
        return Err(Error::NotPConnected("only nontrivial components are simplified".into()));
    }
    if !InducedPolymatroid::new(g, prof)?.is_p_connected(&comp)? {
        return Err(Error::NotPConnected(format!("{comp:?}")));
    }
    let mut out = g.empty_like();
    for e in g.edge_ids().filter(|e| comp.binary_search(e).is_err()) {
        let (u, v) = g.endpoints(e);
        out.add_edge(u, v)?;
    }
    let mut k = g.vertex_count();
    let name = loop {
        let candidate = format!("c{k}");
        if g.vertex_id(&candidate).is_none() {
            break candidate;
        }
        k += 1;
    };
    let center = out.push_vertex(name, VertexKind::Body)?;
    for w in g.spanned(&comp) {
        out.add_edge(center, w)?;
    }
    Ok(out)
}

/// Count models whose rigidity is decided by `M_f` directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountModel {
    BodyBar,
    RodBar,
    BodyRodBar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountVerdict {
    pub edges: usize,
    pub rank: usize,
    /// `D|B| + (D-1)|R| - D` for the model's vertex kinds.
    pub global_count: i64,
    /// Every nonempty subset obeys the count.
    pub independent: bool,
    pub rigid: bool,
    pub minimally_rigid: bool,
}

/// Checks the counting conditions for rigidity of the given model. Vertex
/// kinds are forced to bodies (body-bar) or rods (rod-bar).
pub fn check_counts(g: &Multigraph, d: usize, model: CountModel) -> Result<CountVerdict> {
    let prof = CountProfile::body_rod(d)?;
    let g = match model {
        CountModel::BodyBar => g.with_kinds(|_| VertexKind::Body),
        CountModel::RodBar => g.with_kinds(|_| VertexKind::Rod),
        CountModel::BodyRodBar => g.clone(),
    };
    let global_count = prof.global_count(&g)?;
    let rank = CountMatroid::new(&g, &prof)?.rank(&g.all_edges())?;
    let independent = rank == g.edge_count();
    let rigid = rank as i64 == global_count;
    Ok(CountVerdict {
        edges: g.edge_count(),
        rank,
        global_count,
        independent,
        rigid,
        minimally_rigid: rigid && independent,
    })
}

/// Union-find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Groups `items` into classes sorted by smallest member; `index` maps
    /// an item (with its position) to its element of `0..n`.
    pub(crate) fn classes_by(&mut self, items: &[EdgeId], index: impl Fn(usize, EdgeId) -> usize) -> Vec<Vec<EdgeId>> {
        let mut groups: std::collections::BTreeMap<usize, Vec<EdgeId>> = Default::default();
        for (i, &e) in items.iter().enumerate() {
            let key = self.find(index(i, e));
            groups.entry(key).or_default().push(e);
        }
        let mut out: Vec<Vec<EdgeId>> = groups.into_values().collect();
        for c in &mut out {
            c.sort();
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests;
