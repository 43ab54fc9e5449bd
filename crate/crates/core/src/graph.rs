//! Multigraphs with a body/rod vertex partition, and the counting function
//! `f(F) = D|B(F)| + (D-1)|R(F)| - D` that drives the count matroid.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Body,
    Rod,
    Hinge,
}

impl VertexKind {
    pub fn name(self) -> &'static str {
        match self {
            VertexKind::Body => "body",
            VertexKind::Rod => "rod",
            VertexKind::Hinge => "hinge",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
}

/// A loopless multigraph. Immutable once built; edge ids are positions in
/// the edge list, so parallel edges stay distinguishable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    index: HashMap<String, VertexId>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    /// Validates and builds a graph from named vertices and edges given by
    /// endpoint names.
    pub fn new<S, T>(
        vertices: impl IntoIterator<Item = (S, VertexKind)>,
        edges: impl IntoIterator<Item = (T, T)>,
    ) -> Result<Self>
    where
        S: Into<String>,
        T: AsRef<str>,
    {
        let mut g = Multigraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            index: HashMap::new(),
            incidence: Vec::new(),
        };
        for (id, kind) in vertices {
            let id = id.into();
            if g.index.contains_key(&id) {
                return Err(Error::DuplicateVertex(id));
            }
            g.index.insert(id.clone(), VertexId(g.vertices.len()));
            g.vertices.push(Vertex { id, kind });
            g.incidence.push(Vec::new());
        }
        for (i, (a, b)) in edges.into_iter().enumerate() {
            let lookup = |name: &str| {
                g.index.get(name).copied().ok_or_else(|| Error::DanglingEndpoint {
                    edge: i,
                    vertex: name.to_string(),
                })
            };
            let u = lookup(a.as_ref())?;
            let v = lookup(b.as_ref())?;
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph with vertices named `v0, v1, ...`.
    pub fn from_indices(kinds: &[VertexKind], edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (0..kinds.len()).map(|i| format!("v{i}")).collect();
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= kinds.len() {
                    return Err(Error::DanglingEndpoint {
                        edge: i,
                        vertex: format!("v{w}"),
                    });
                }
            }
        }
        Multigraph::new(
            names.iter().cloned().zip(kinds.iter().copied()),
            edges.iter().map(|&(u, v)| (names[u].as_str(), names[v].as_str())),
        )
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let e = EdgeId(self.edges.len());
        if u == v {
            return Err(Error::Loop {
                edge: e.0,
                vertex: self.vertices[u.0].id.clone(),
            });
        }
        self.edges.push((u, v));
        self.incidence[u.0].push(e);
        self.incidence[v.0].push(e);
        Ok(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.vertices[v.0].kind
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn all_edges(&self) -> Vec<EdgeId> {
        self.edge_ids().collect()
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.0]
    }

    pub fn count_kind(&self, kind: VertexKind) -> usize {
        self.vertices.iter().filter(|v| v.kind == kind).count()
    }

    /// Same graph with every vertex kind rewritten by `f`.
    pub fn with_kinds(&self, f: impl Fn(VertexKind) -> VertexKind) -> Multigraph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.kind = f(v.kind);
        }
        g
    }

    /// Returns a copy of the graph without edge `e` (later ids shift down).
    pub fn without_edge(&self, e: EdgeId) -> Multigraph {
        let mut g = Multigraph {
            vertices: self.vertices.clone(),
            edges: Vec::new(),
            index: self.index.clone(),
            incidence: vec![Vec::new(); self.vertices.len()],
        };
        for f in self.edge_ids().filter(|&f| f != e) {
            let (u, v) = self.endpoints(f);
            g.push_edge(u, v).expect("edges of a valid graph");
        }
        g
    }

    /// Adds a vertex to a copy of the graph. Used by simplification.
    pub(crate) fn push_vertex(&mut self, id: String, kind: VertexKind) -> Result<VertexId> {
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        let v = VertexId(self.vertices.len());
        self.index.insert(id.clone(), v);
        self.vertices.push(Vertex { id, kind });
        self.incidence.push(Vec::new());
        Ok(v)
    }

    pub(crate) fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.push_edge(u, v)
    }

    pub(crate) fn empty_like(&self) -> Multigraph {
        Multigraph {
            vertices: self.vertices.clone(),
            edges: Vec::new(),
            index: self.index.clone(),
            incidence: vec![Vec::new(); self.vertices.len()],
        }
    }

    pub fn check_edges(&self, edges: &[EdgeId]) -> Result<()> {
        match edges.iter().find(|e| e.0 >= self.edges.len()) {
            Some(e) => Err(Error::UnknownEdge(e.0)),
            None => Ok(()),
        }
    }

    /// Vertices spanned by `edges`, sorted.
    pub fn spanned(&self, edges: &[EdgeId]) -> Vec<VertexId> {
        let mut seen = vec![false; self.vertices.len()];
        for &e in edges {
            let (u, v) = self.endpoints(e);
            seen[u.0] = true;
            seen[v.0] = true;
        }
        (0..seen.len()).filter(|&i| seen[i]).map(VertexId).collect()
    }
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Per-vertex capacities and offset of a count function
/// `f(F) = sum of capacity(v) over V(F) - offset`.
///
/// The body-rod profile has capacity `D` on bodies, `D-1` on rods and offset
/// `D`, where `D = C(d+1, 2)`. The direction profile uses capacity `d` and
/// offset `d+1` on every vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountProfile {
    d: usize,
    body: i64,
    rod: i64,
    offset: i64,
}

impl CountProfile {
    pub fn body_rod(d: usize) -> Result<Self> {
        check_dimension(d)?;
        let big_d = binomial(d + 1, 2) as i64;
        Ok(CountProfile {
            d,
            body: big_d,
            rod: big_d - 1,
            offset: big_d,
        })
    }

    /// `f'(F) = d|V(F)| - (d+1)`; vertex kinds are ignored.
    pub fn direction(d: usize) -> Result<Self> {
        check_dimension(d)?;
        Ok(CountProfile {
            d,
            body: d as i64,
            rod: d as i64,
            offset: d as i64 + 1,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `D = C(d+1, 2)`.
    pub fn big_d(&self) -> usize {
        binomial(self.d + 1, 2)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn capacity(&self, kind: VertexKind) -> Option<i64> {
        match kind {
            VertexKind::Body => Some(self.body),
            VertexKind::Rod => Some(self.rod),
            VertexKind::Hinge => None,
        }
    }

    /// Capacity of every vertex of `g`; hinge vertices are rejected.
    pub fn capacities(&self, g: &Multigraph) -> Result<Vec<i64>> {
        g.vertices()
            .iter()
            .map(|v| self.capacity(v.kind).ok_or_else(|| Error::HingeVertex(v.id.clone())))
            .collect()
    }

    /// Value of the count on the whole vertex set, `f(V)`.
    pub fn global_count(&self, g: &Multigraph) -> Result<i64> {
        Ok(self.capacities(g)?.iter().sum::<i64>() - self.offset)
    }
}

pub fn check_dimension(d: usize) -> Result<()> {
    if (2..=6).contains(&d) {
        Ok(())
    } else {
        Err(Error::Dimension(d))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexCounts {
    pub vertices: usize,
    pub bodies: usize,
    pub rods: usize,
}

/// `(|V(F)|, |B(F)|, |R(F)|)`; hinges count toward `|V(F)|` only.
pub fn vertex_counts(g: &Multigraph, edges: &[EdgeId]) -> VertexCounts {
    let spanned = g.spanned(edges);
    VertexCounts {
        vertices: spanned.len(),
        bodies: spanned.iter().filter(|&&v| g.kind(v) == VertexKind::Body).count(),
        rods: spanned.iter().filter(|&&v| g.kind(v) == VertexKind::Rod).count(),
    }
}

/// `f(F)` for a nonempty edge set.
pub fn f_value(g: &Multigraph, edges: &[EdgeId], prof: &CountProfile) -> Result<i64> {
    if edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    g.check_edges(edges)?;
    let mut total = -prof.offset;
    for v in g.spanned(edges) {
        let vx = g.vertex(v);
        total += prof
            .capacity(vx.kind)
            .ok_or_else(|| Error::HingeVertex(vx.id.clone()))?;
    }
    Ok(total)
}

/// A multigraph obtained by replacing each edge with parallel copies.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: Multigraph,
    /// `copies[e]` is the set of copies of original edge `e`.
    pub copies: Vec<Vec<EdgeId>>,
    /// `origin[c]` is the original edge of copy `c`.
    pub origin: Vec<EdgeId>,
}

impl Expansion {
    /// Union of the copies of `edges`.
    pub fn lift(&self, edges: &[EdgeId]) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = edges.iter().flat_map(|e| self.copies[e.0].iter().copied()).collect();
        out.sort();
        out
    }
}

fn expand_by(g: &Multigraph, multiplicity: impl Fn(EdgeId) -> Result<usize>) -> Result<Expansion> {
    let mut out = g.empty_like();
    let mut copies = Vec::with_capacity(g.edge_count());
    let mut origin = Vec::new();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let k = multiplicity(e)?;
        let mut set = Vec::with_capacity(k);
        for _ in 0..k {
            set.push(out.add_edge(u, v)?);
            origin.push(e);
        }
        copies.push(set);
    }
    Ok(Expansion {
        graph: out,
        copies,
        origin,
    })
}

/// `f∘G`: every edge `e` replaced by `f(e)` parallel copies.
pub fn expand_f(g: &Multigraph, prof: &CountProfile) -> Result<Expansion> {
    expand_by(g, |e| {
        let fe = f_value(g, &[e], prof)?;
        if fe < 1 {
            return Err(Error::Invalid(format!("f({e}) = {fe} < 1")));
        }
        Ok(fe as usize)
    })
}

/// `k∘G`: every edge replaced by `k` parallel copies.
pub fn expand_uniform(g: &Multigraph, k: usize) -> Expansion {
    expand_by(g, |_| Ok(k)).expect("copies of valid edges")
}
