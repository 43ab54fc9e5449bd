//! Vertex-capacitated pebble game.
//!
//! Each vertex `v` starts with `capacity(v)` pebbles. An edge `uv` is
//! accepted once `offset + 1` pebbles can be gathered on `{u, v}` by
//! reversing directed paths; it is then oriented out of an endpoint that
//! holds a pebble, which is consumed. Throughout,
//! `pebbles(v) + outdegree(v) = capacity(v)`.

use crate::graph::{EdgeId, Multigraph, VertexId};

#[derive(Clone, Debug)]
pub struct PebbleGame<'g> {
    graph: &'g Multigraph,
    capacity: Vec<i64>,
    offset: i64,
    pebbles: Vec<i64>,
    /// Inserted edges directed out of each vertex, sorted by id.
    out: Vec<Vec<EdgeId>>,
    tail: Vec<Option<VertexId>>,
    inserted: Vec<EdgeId>,
}

impl<'g> PebbleGame<'g> {
    pub fn new(graph: &'g Multigraph, capacity: Vec<i64>, offset: i64) -> Self {
        assert_eq!(capacity.len(), graph.vertex_count());
        PebbleGame {
            graph,
            pebbles: capacity.clone(),
            capacity,
            offset,
            out: vec![Vec::new(); graph.vertex_count()],
            tail: vec![None; graph.edge_count()],
            inserted: Vec::new(),
        }
    }

    pub fn pebbles(&self, v: VertexId) -> i64 {
        self.pebbles[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v.0].len()
    }

    /// Accepted edges in insertion order.
    pub fn inserted(&self) -> &[EdgeId] {
        &self.inserted
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.tail[e.0].is_some()
    }

    /// Vertex the inserted edge `e` currently points out of.
    pub fn tail(&self, e: EdgeId) -> Option<VertexId> {
        self.tail[e.0]
    }

    /// `pebbles(v) + outdegree(v) = capacity(v)` and `pebbles(v) >= 0` for all `v`.
    pub fn invariant_holds(&self) -> bool {
        (0..self.capacity.len())
            .all(|v| self.pebbles[v] >= 0 && self.pebbles[v] + self.out[v].len() as i64 == self.capacity[v])
    }

    /// Tries to insert `e`; returns whether it was accepted. Rejected edges
    /// leave the state valid (paths may have been reversed).
    pub fn try_insert(&mut self, e: EdgeId) -> bool {
        assert!(!self.contains(e), "edge {e} already inserted");
        let (u, v) = self.graph.endpoints(e);
        let need = self.offset + 1;
        while self.pebbles[u.0] + self.pebbles[v.0] < need {
            if self.pebbles[u.0] < self.capacity[u.0] && self.acquire(u, [u, v]) {
                continue;
            }
            if self.pebbles[v.0] < self.capacity[v.0] && self.acquire(v, [u, v]) {
                continue;
            }
            return false;
        }
        let t = if self.pebbles[u.0] > 0 { u } else { v };
        self.pebbles[t.0] -= 1;
        insert_sorted(&mut self.out[t.0], e);
        self.tail[e.0] = Some(t);
        self.inserted.push(e);
        true
    }

    /// Removes an inserted edge, returning its pebble to the tail.
    pub fn remove(&mut self, e: EdgeId) {
        let t = self.tail[e.0].take().expect("edge not inserted");
        self.out[t.0].retain(|&x| x != e);
        self.pebbles[t.0] += 1;
        self.inserted.retain(|&x| x != e);
    }

    fn head(&self, e: EdgeId, tail: VertexId) -> VertexId {
        let (a, b) = self.graph.endpoints(e);
        if a == tail {
            b
        } else {
            a
        }
    }

    /// Depth-first search from `start` along out-edges (ascending edge id)
    /// for a pebble outside `blocked`; on success the path is reversed and
    /// the pebble moves to `start`.
    fn acquire(&mut self, start: VertexId, blocked: [VertexId; 2]) -> bool {
        let n = self.capacity.len();
        let mut visited = vec![false; n];
        let mut via: Vec<Option<EdgeId>> = vec![None; n];
        for b in blocked {
            visited[b.0] = true;
        }
        visited[start.0] = true;
        let mut stack: Vec<(VertexId, usize)> = vec![(start, 0)];
        let mut found = None;
        'search: while let Some(top) = stack.last_mut() {
            let (x, next) = *top;
            if next >= self.out[x.0].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let e = self.out[x.0][next];
            let y = self.head(e, x);
            if visited[y.0] {
                continue;
            }
            visited[y.0] = true;
            via[y.0] = Some(e);
            if self.pebbles[y.0] > 0 {
                found = Some(y);
                break 'search;
            }
            stack.push((y, 0));
        }
        let Some(target) = found else {
            return false;
        };
        self.pebbles[target.0] -= 1;
        self.pebbles[start.0] += 1;
        let mut y = target;
        while y != start {
            let e = via[y.0].expect("path edge");
            let x = self.tail[e.0].expect("inserted edge");
            self.out[x.0].retain(|&f| f != e);
            insert_sorted(&mut self.out[y.0], e);
            self.tail[e.0] = Some(y);
            y = x;
        }
        true
    }

    /// Vertices reachable from `{u, v}` along directed inserted edges.
    pub fn reach(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.capacity.len()];
        let mut stack = vec![u, v];
        seen[u.0] = true;
        seen[v.0] = true;
        while let Some(x) = stack.pop() {
            for &e in &self.out[x.0] {
                let y = self.head(e, x);
                if !seen[y.0] {
                    seen[y.0] = true;
                    stack.push(y);
                }
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).map(VertexId).collect()
    }
}

fn insert_sorted(list: &mut Vec<EdgeId>, e: EdgeId) {
    let pos = list.partition_point(|&x| x < e);
    list.insert(pos, e);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexKind::*;

    #[test]
    fn parallel_body_edges_saturate_at_six() {
        let g = Multigraph::from_indices(&[Body, Body], &[(0, 1); 7]).unwrap();
        let mut game = PebbleGame::new(&g, vec![6, 6], 6);
        let accepted: Vec<bool> = g.edge_ids().map(|e| game.try_insert(e)).collect();
        assert_eq!(accepted.iter().filter(|&&a| a).count(), 6);
        assert!(!accepted[6]);
        assert!(game.invariant_holds());
        assert_eq!(game.pebbles(VertexId(0)) + game.pebbles(VertexId(1)), 6);
    }

    #[test]
    fn removal_restores_pebble() {
        let g = Multigraph::from_indices(&[Rod, Rod], &[(0, 1); 5]).unwrap();
        let mut game = PebbleGame::new(&g, vec![5, 5], 6);
        for e in g.edge_ids() {
            game.try_insert(e);
        }
        assert_eq!(game.inserted().len(), 4);
        game.remove(EdgeId(0));
        assert!(game.invariant_holds());
        assert!(game.try_insert(EdgeId(4)));
        assert!(game.invariant_holds());
    }
}
