//! Families of projective flats over `F_p`: span ranks, connectivity,
//! representative-point matroids and Dilworth truncation.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{kernel, rank_of_rows, Matrix};

/// Largest family accepted by the exponential partition oracles.
pub const PARTITION_LIMIT: usize = 8;
/// Largest subset split by [`connectivity`].
pub const CONNECTIVITY_LIMIT: usize = 16;
const HYPERPLANE_RETRIES: usize = 64;

/// A flat stored by a basis of its underlying linear subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    basis: Vec<Vec<u64>>,
}

impl Flat {
    pub fn new(field: &PrimeField, ambient: usize, basis: Vec<Vec<u64>>) -> Result<Self> {
        for v in &basis {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch(ambient, v.len()));
            }
        }
        if rank_of_rows(field, ambient, &basis) != basis.len() {
            return Err(Error::Invalid("flat basis is dependent".into()));
        }
        Ok(Flat { basis })
    }

    /// Span of arbitrary vectors, keeping an independent subset in order.
    pub fn spanned_by(field: &PrimeField, ambient: usize, vectors: &[Vec<u64>]) -> Result<Self> {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch(ambient, v.len()));
            }
            basis.push(v.clone());
            if rank_of_rows(field, ambient, &basis) < basis.len() {
                basis.pop();
            }
        }
        Ok(Flat { basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatFamily {
    ambient: usize,
    flats: Vec<Flat>,
}

impl FlatFamily {
    pub fn new(ambient: usize, flats: Vec<Flat>) -> Result<Self> {
        for f in &flats {
            if let Some(v) = f.basis.iter().find(|v| v.len() != ambient) {
                return Err(Error::AmbientMismatch(ambient, v.len()));
            }
        }
        Ok(FlatFamily { ambient, flats })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.flats.len()).collect()
    }

    fn vectors(&self, subset: &[usize]) -> Vec<Vec<u64>> {
        subset
            .iter()
            .flat_map(|&i| self.flats[i].basis.iter().cloned())
            .collect()
    }
}

/// Rank of the span of the flats indexed by `subset`.
pub fn span_rank(field: &PrimeField, fam: &FlatFamily, subset: &[usize]) -> usize {
    rank_of_rows(field, fam.ambient, &fam.vectors(subset))
}

fn mask_members(subset: &[usize], mask: usize) -> Vec<usize> {
    subset
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &x)| x)
        .collect()
}

/// Finest partition of `subset` whose parts have additive span ranks.
pub fn connectivity(field: &PrimeField, fam: &FlatFamily, subset: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = subset.len();
    if n > CONNECTIVITY_LIMIT {
        return Err(Error::OracleLimit {
            size: n,
            limit: CONNECTIVITY_LIMIT,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let full = (1usize << n) - 1;
    let total = span_rank(field, fam, subset);
    let separators: Vec<usize> = (1..full)
        .filter(|&m| {
            m & 1 == 1
                && span_rank(field, fam, &mask_members(subset, m))
                    + span_rank(field, fam, &mask_members(subset, full ^ m))
                    == total
        })
        .collect();
    // Separators are closed under complement and intersection, so the
    // component of element i is the intersection of separators holding it.
    let mut parts = Vec::new();
    let mut done = 0usize;
    for i in 0..n {
        if done >> i & 1 == 1 {
            continue;
        }
        let mut atom = full;
        for &s in &separators {
            let side = if s >> i & 1 == 1 { s } else { full ^ s };
            atom &= side;
        }
        done |= atom;
        parts.push(mask_members(subset, atom));
    }
    Ok(parts)
}

/// A uniformly random point of `flat` (a random combination of its basis).
pub fn random_point<R: Rng + ?Sized>(field: &PrimeField, ambient: usize, flat: &Flat, rng: &mut R) -> Vec<u64> {
    let mut p = vec![0; ambient];
    for b in &flat.basis {
        field.axpy(&mut p, &field.sample(rng), b);
    }
    p
}

/// Rank of one random representative point per flat, maximized over `trials`.
pub fn generic_matroid_rank<R: Rng + ?Sized>(
    field: &PrimeField,
    fam: &FlatFamily,
    subset: &[usize],
    rng: &mut R,
    trials: usize,
) -> usize {
    (0..trials.max(1))
        .map(|_| {
            let points: Vec<Vec<u64>> = subset
                .iter()
                .map(|&i| random_point(field, fam.ambient, &fam.flats[i], rng))
                .collect();
            rank_of_rows(field, fam.ambient, &points)
        })
        .max()
        .unwrap_or(0)
}

/// `min over F ⊆ S of |S \ F| + span_rank(F)`.
pub fn point_rank_bruteforce(field: &PrimeField, fam: &FlatFamily, subset: &[usize]) -> Result<usize> {
    let n = subset.len();
    if n > CONNECTIVITY_LIMIT {
        return Err(Error::OracleLimit {
            size: n,
            limit: CONNECTIVITY_LIMIT,
        });
    }
    Ok((0..1usize << n)
        .map(|m| n - m.count_ones() as usize + span_rank(field, fam, &mask_members(subset, m)))
        .min()
        .unwrap_or(0))
}

/// A uniformly random linear functional vanishing on `through`.
pub fn hyperplane_through<R: Rng + ?Sized>(
    field: &PrimeField,
    ambient: usize,
    through: &[Vec<u64>],
    rng: &mut R,
) -> Result<Vec<u64>> {
    let mut h = vec![0; ambient];
    if through.is_empty() {
        return Ok(field.sample_vec(rng, ambient));
    }
    let m = Matrix::from_rows(ambient, through);
    let ker = kernel(field, &m);
    if ker.is_empty() {
        return Err(Error::Invalid("points span the whole space".into()));
    }
    for k in &ker {
        field.axpy(&mut h, &field.sample(rng), k);
    }
    Ok(h)
}

/// Intersects every flat with the hyperplane `{x : h·x = 0}`. Fails with
/// [`Error::FlatInHyperplane`] if some flat lies inside it.
pub fn intersect_with_hyperplane(field: &PrimeField, fam: &FlatFamily, h: &[u64]) -> Result<FlatFamily> {
    if h.len() != fam.ambient {
        return Err(Error::AmbientMismatch(fam.ambient, h.len()));
    }
    let mut out = Vec::with_capacity(fam.len());
    for (i, flat) in fam.flats.iter().enumerate() {
        let values: Vec<u64> = flat.basis.iter().map(|b| field.dot(h, b)).collect();
        if values.iter().all(|v| *v == 0) {
            return Err(Error::FlatInHyperplane(i));
        }
        let combos = kernel(field, &Matrix::from_rows(values.len(), &[values]));
        let basis = combos
            .iter()
            .map(|c| {
                let mut v = vec![0; fam.ambient];
                for (s, b) in c.iter().zip(&flat.basis) {
                    field.axpy(&mut v, s, b);
                }
                v
            })
            .collect();
        out.push(Flat { basis });
    }
    Ok(FlatFamily {
        ambient: fam.ambient,
        flats: out,
    })
}

/// Dilworth truncation by one shared random hyperplane, resampled while
/// some flat lies inside it.
pub fn dilworth_truncate<R: Rng + ?Sized>(field: &PrimeField, fam: &FlatFamily, rng: &mut R) -> Result<FlatFamily> {
    if let Some(i) = fam.flats.iter().position(|f| f.rank() == 0) {
        return Err(Error::Invalid(format!("flat {i} is empty")));
    }
    for _ in 0..HYPERPLANE_RETRIES {
        let h = field.sample_vec(rng, fam.ambient);
        match intersect_with_hyperplane(field, fam, &h) {
            Err(Error::FlatInHyperplane(_)) => continue,
            other => return other,
        }
    }
    Err(Error::SamplingExhausted(HYPERPLANE_RETRIES))
}

/// `min over partitions {A_1..A_k} of the family of Σ (span_rank(A_i) - 1)`.
pub fn truncation_rhs_bruteforce(field: &PrimeField, fam: &FlatFamily) -> Result<i64> {
    let n = fam.len();
    if n > PARTITION_LIMIT {
        return Err(Error::OracleLimit {
            size: n,
            limit: PARTITION_LIMIT,
        });
    }
    let all = fam.all();
    let full = 1usize << n;
    let weight: Vec<i64> = (0..full)
        .map(|m| span_rank(field, fam, &mask_members(&all, m)) as i64 - 1)
        .collect();
    let mut best = vec![0i64; full];
    for s in 1..full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut value = i64::MAX;
        let mut t = rest;
        loop {
            let block = t | low;
            value = value.min(weight[block] + best[s ^ block]);
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        best[s] = value;
    }
    Ok(best[full - 1])
}

fn unit(ambient: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; ambient];
    v[i] = 1;
    v
}

/// Three hyperplanes of `P^3` pairwise meeting in the line `span(e1, e2)`:
/// `span(e1,e2,e3)`, `span(e1,e2,e4)`, `span(e1,e2,e3+e4)`.
pub fn shared_line_family(field: &PrimeField) -> FlatFamily {
    let e = |i| unit(4, i);
    let mut e34 = e(2);
    e34[3] = 1;
    let flats = [vec![e(0), e(1), e(2)], vec![e(0), e(1), e(3)], vec![e(0), e(1), e34]]
        .into_iter()
        .map(|b| Flat::new(field, 4, b).expect("independent basis"))
        .collect();
    FlatFamily { ambient: 4, flats }
}

/// The common line of [`shared_line_family`].
pub fn shared_line() -> Vec<Vec<u64>> {
    vec![unit(4, 0), unit(4, 1)]
}

/// Random family of `n` flats in `F_p^ambient`, each spanned by 1..=max_rank
/// vectors drawn from a shared pool so that flats overlap.
pub fn random_family<R: Rng + ?Sized>(
    field: &PrimeField,
    rng: &mut R,
    n: usize,
    ambient: usize,
    max_rank: usize,
) -> FlatFamily {
    let pool_size = rng.gen_range(1..=ambient + 2);
    let pool: Vec<Vec<u64>> = (0..pool_size).map(|_| field.sample_vec(rng, ambient)).collect();
    let flats = (0..n)
        .map(|_| {
            let r = rng.gen_range(1..=max_rank.max(1));
            let picks: Vec<Vec<u64>> = (0..r).map(|_| pool[rng.gen_range(0..pool_size)].clone()).collect();
            Flat::spanned_by(field, ambient, &picks).expect("ambient matches")
        })
        .collect();
    FlatFamily { ambient, flats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn fam(ambient: usize, flats: Vec<Vec<Vec<u64>>>) -> FlatFamily {
        let field = f();
        FlatFamily::new(
            ambient,
            flats
                .into_iter()
                .map(|b| Flat::new(&field, ambient, b).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn span_rank_examples() {
        let field = f();
        let line = fam(4, vec![vec![unit(4, 0), unit(4, 1)]]);
        assert_eq!(span_rank(&field, &line, &[0]), 2);
        let twice = fam(4, vec![vec![unit(4, 0), unit(4, 1)], vec![unit(4, 0), unit(4, 1)]]);
        assert_eq!(span_rank(&field, &twice, &[0, 1]), 2);
        let foot = shared_line_family(&field);
        assert_eq!(span_rank(&field, &foot, &[0, 1, 2]), 4);
        assert_eq!(span_rank(&field, &foot, &[]), 0);
    }

    #[test]
    fn rejects_bad_flats() {
        let field = f();
        assert!(Flat::new(&field, 3, vec![vec![1, 0, 0], vec![2, 0, 0]]).is_err());
        assert!(matches!(
            Flat::new(&field, 3, vec![vec![1, 0]]),
            Err(Error::AmbientMismatch(3, 2))
        ));
    }

    #[test]
    fn connectivity_examples() {
        let field = f();
        let blocks = fam(4, vec![vec![unit(4, 0), unit(4, 1)], vec![unit(4, 2), unit(4, 3)]]);
        assert_eq!(connectivity(&field, &blocks, &[0, 1]).unwrap(), vec![vec![0], vec![1]]);
        let shared = fam(4, vec![vec![unit(4, 0), unit(4, 1)], vec![unit(4, 1), unit(4, 2)]]);
        assert_eq!(connectivity(&field, &shared, &[0, 1]).unwrap(), vec![vec![0, 1]]);
        let foot = shared_line_family(&field);
        assert_eq!(connectivity(&field, &foot, &[0, 1, 2]).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn connectivity_parts_are_additive_and_connected() {
        let field = f();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6);
            let fam = random_family(&field, &mut rng, n, 8, 3);
            let parts = connectivity(&field, &fam, &fam.all()).unwrap();
            let sum: usize = parts.iter().map(|p| span_rank(&field, &fam, p)).sum();
            assert_eq!(sum, span_rank(&field, &fam, &fam.all()));
            for p in &parts {
                assert_eq!(connectivity(&field, &fam, p).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn generic_points() {
        let field = f();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let line = vec![unit(5, 0), unit(5, 1)];
        for k in 1..5 {
            let copies = fam(5, vec![line.clone(); k]);
            assert_eq!(
                generic_matroid_rank(&field, &copies, &copies.all(), &mut rng, 3),
                k.min(2)
            );
            assert_eq!(point_rank_bruteforce(&field, &copies, &copies.all()).unwrap(), k.min(2));
        }
        let blocks = fam(4, vec![vec![unit(4, 0), unit(4, 1)], vec![unit(4, 2), unit(4, 3)]]);
        assert_eq!(generic_matroid_rank(&field, &blocks, &[0, 1], &mut rng, 3), 2);
        let foot = shared_line_family(&field);
        assert_eq!(point_rank_bruteforce(&field, &foot, &[0, 1, 2]).unwrap(), 3);
        assert_eq!(generic_matroid_rank(&field, &foot, &[0, 1, 2], &mut rng, 3), 3);
    }

    #[test]
    fn point_rank_upper_bound_for_any_points() {
        let field = f();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = rng.gen_range(1..=6);
            let fam = random_family(&field, &mut rng, n, 6, 3);
            let all = fam.all();
            let one = generic_matroid_rank(&field, &fam, &all, &mut rng, 1);
            assert!(one <= point_rank_bruteforce(&field, &fam, &all).unwrap());
        }
    }

    #[test]
    fn truncation_examples() {
        let field = f();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let line = fam(4, vec![vec![unit(4, 0), unit(4, 1)]]);
        let t = dilworth_truncate(&field, &line, &mut rng).unwrap();
        assert_eq!(t.flats()[0].rank(), 1);
        assert_eq!(truncation_rhs_bruteforce(&field, &line).unwrap(), 1);

        let blocks = fam(4, vec![vec![unit(4, 0), unit(4, 1)], vec![unit(4, 2), unit(4, 3)]]);
        assert_eq!(truncation_rhs_bruteforce(&field, &blocks).unwrap(), 2);

        let foot = shared_line_family(&field);
        assert_eq!(truncation_rhs_bruteforce(&field, &foot).unwrap(), 3);
        let h = hyperplane_through(&field, 4, &shared_line(), &mut rng).unwrap();
        let through = intersect_with_hyperplane(&field, &foot, &h).unwrap();
        assert_eq!(span_rank(&field, &through, &[0, 1, 2]), 2);
        let random = dilworth_truncate(&field, &foot, &mut rng).unwrap();
        assert_eq!(span_rank(&field, &random, &[0, 1, 2]), 3);
    }

    #[test]
    fn flat_inside_hyperplane_is_reported() {
        let field = f();
        let line = fam(3, vec![vec![unit(3, 0)]]);
        assert!(matches!(
            intersect_with_hyperplane(&field, &line, &[0, 1, 1]),
            Err(Error::FlatInHyperplane(0))
        ));
    }

    #[test]
    fn truncation_never_exceeds_partition_minimum() {
        let field = f();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(1..=5);
            let fam = random_family(&field, &mut rng, n, 6, 3);
            let rhs = truncation_rhs_bruteforce(&field, &fam).unwrap();
            // Hyperplanes through a random pool vector are far from generic.
            let p = fam.flats()[0].basis()[0].clone();
            if let Ok(t) =
                intersect_with_hyperplane(&field, &fam, &hyperplane_through(&field, 6, &[p], &mut rng).unwrap())
            {
                assert!(span_rank(&field, &t, &t.all()) as i64 <= rhs);
            }
            let t = dilworth_truncate(&field, &fam, &mut rng).unwrap();
            assert_eq!(span_rank(&field, &t, &t.all()) as i64, rhs);
        }
    }
}
