//! Exponential partition-minimum oracles for the count matroid and its
//! induced polymatroid. Used as ground truth in tests and by `--oracle`.

use crate::count::RankCertificate;
use crate::error::{Error, Result};
use crate::graph::{f_value, CountProfile, EdgeId, Multigraph};

pub const ORACLE_LIMIT: usize = 12;

/// Tables of `f`, `f̂` and `r_f` over every subset of a ground set of at
/// most [`ORACLE_LIMIT`] edges. Subsets are bitmasks over `ground`.
///
/// `f̂(S) = min over partitions {S_1..S_k} of sum f(S_i)` and
/// `r_f(S) = min over S_0 ⊆ S of |S_0| + f̂(S \ S_0)`.
#[derive(Clone, Debug)]
pub struct BruteForce {
    ground: Vec<EdgeId>,
    f: Vec<i64>,
    fhat: Vec<i64>,
    fhat_block: Vec<usize>,
    rank: Vec<i64>,
    rank_free: Vec<usize>,
}

impl BruteForce {
    pub fn new(g: &Multigraph, ground: &[EdgeId], prof: &CountProfile) -> Result<Self> {
        let n = ground.len();
        if n > ORACLE_LIMIT {
            return Err(Error::OracleLimit {
                size: n,
                limit: ORACLE_LIMIT,
            });
        }
        g.check_edges(ground)?;
        let full = 1usize << n;
        let mut f = vec![0i64; full];
        for (mask, slot) in f.iter_mut().enumerate().skip(1) {
            *slot = f_value(g, &subset(ground, mask), prof)?;
        }

        let mut fhat = vec![0i64; full];
        let mut fhat_block = vec![0usize; full];
        for s in 1..full {
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut best = i64::MAX;
            let mut arg = s;
            // Blocks containing the lowest element of s.
            let mut t = rest;
            loop {
                let block = t | low;
                let value = f[block] + fhat[s ^ block];
                if value < best {
                    best = value;
                    arg = block;
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & rest;
            }
            fhat[s] = best;
            fhat_block[s] = arg;
        }

        let mut rank = vec![0i64; full];
        let mut rank_free = vec![0usize; full];
        for s in 1..full {
            let mut best = i64::MAX;
            let mut arg = 0;
            let mut t = s;
            loop {
                let value = t.count_ones() as i64 + fhat[s ^ t];
                if value < best {
                    best = value;
                    arg = t;
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
            rank[s] = best;
            rank_free[s] = arg;
        }
        Ok(BruteForce {
            ground: ground.to_vec(),
            f,
            fhat,
            fhat_block,
            rank,
            rank_free,
        })
    }

    pub fn ground(&self) -> &[EdgeId] {
        &self.ground
    }

    pub fn full_mask(&self) -> usize {
        (1 << self.ground.len()) - 1
    }

    pub fn f(&self, mask: usize) -> i64 {
        self.f[mask]
    }

    pub fn fhat(&self, mask: usize) -> i64 {
        self.fhat[mask]
    }

    pub fn rank(&self, mask: usize) -> usize {
        self.rank[mask] as usize
    }

    /// A partition of `mask` attaining `f̂`.
    pub fn fhat_partition(&self, mask: usize) -> Vec<Vec<EdgeId>> {
        let mut parts = Vec::new();
        let mut s = mask;
        while s != 0 {
            let block = self.fhat_block[s];
            parts.push(subset(&self.ground, block));
            s ^= block;
        }
        parts
    }

    pub fn certificate(&self, mask: usize) -> RankCertificate {
        let free = self.rank_free[mask];
        RankCertificate {
            value: self.rank(mask),
            singletons: subset(&self.ground, free),
            parts: self.fhat_partition(mask ^ free),
        }
    }

    pub fn mask_of(&self, edges: &[EdgeId]) -> usize {
        edges.iter().fold(0, |m, e| {
            let i = self.ground.iter().position(|g| g == e).expect("edge in ground set");
            m | (1 << i)
        })
    }
}

pub fn subset(ground: &[EdgeId], mask: usize) -> Vec<EdgeId> {
    ground
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// Exact rank of `edges` as the partition minimum; at most [`ORACLE_LIMIT`] edges.
pub fn rank_bruteforce(g: &Multigraph, edges: &[EdgeId], prof: &CountProfile) -> Result<RankCertificate> {
    let bf = BruteForce::new(g, edges, prof)?;
    Ok(bf.certificate(bf.full_mask()))
}

/// Exact `f̂(edges)` by partition enumeration.
pub fn fhat_bruteforce(g: &Multigraph, edges: &[EdgeId], prof: &CountProfile) -> Result<i64> {
    let bf = BruteForce::new(g, edges, prof)?;
    Ok(bf.fhat(bf.full_mask()))
}
