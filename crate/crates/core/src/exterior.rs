//! Exterior algebra of `W = F^{d+1}`.
//!
//! A [`KVector`] of degree `k` stores one coordinate per `k`-subset of
//! `{0..=d}` in lexicographic order, so for `d = 3, k = 2` the order is
//! `01, 02, 03, 12, 13, 23` (the 1-based `12, 13, 14, 23, 24, 34`).

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::graph::binomial;
use crate::linalg::{determinant, rank_of_rows};

const SAMPLE_RETRIES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVector<E> {
    d: usize,
    k: usize,
    coords: Vec<E>,
}

impl<E: Clone> KVector<E> {
    pub fn from_coords(d: usize, k: usize, coords: Vec<E>) -> Result<Self> {
        if k > d + 1 {
            return Err(Error::Invalid(format!("degree {k} exceeds {}", d + 1)));
        }
        let expected = binomial(d + 1, k);
        if coords.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: coords.len(),
            });
        }
        Ok(KVector { d, k, coords })
    }

    pub fn zero<F: Field<Elem = E>>(field: &F, d: usize, k: usize) -> Self {
        KVector {
            d,
            k,
            coords: vec![field.zero(); binomial(d + 1, k)],
        }
    }

    /// The basis element `e_{i_1} ∧ ... ∧ e_{i_k}` for a sorted 0-based index set.
    pub fn basis<F: Field<Elem = E>>(field: &F, d: usize, set: &[usize]) -> Result<Self> {
        if !set.windows(2).all(|w| w[0] < w[1]) || set.iter().any(|&i| i > d) {
            return Err(Error::Invalid(format!("bad index set {set:?}")));
        }
        let mut x = Self::zero(field, d, set.len());
        x.coords[subset_index(d + 1, set)] = field.one();
        Ok(x)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }

    /// Coordinate at a sorted 0-based index set.
    pub fn get(&self, set: &[usize]) -> &E {
        &self.coords[subset_index(self.d + 1, set)]
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        KVector {
            d: self.d,
            k: self.k,
            coords: self.coords.iter().map(|c| field.mul(c, s)).collect(),
        }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        self.scale(field, &field.neg(&field.one()))
    }

    /// Coordinate with an arbitrary index list: zero on repeats, otherwise
    /// the sorted coordinate times the sign of the sorting permutation.
    fn signed<F: Field<Elem = E>>(&self, field: &F, idx: &[usize]) -> E {
        let mut sorted = idx.to_vec();
        let mut odd = false;
        for i in 0..sorted.len() {
            for j in 0..sorted.len() - 1 - i {
                if sorted[j] > sorted[j + 1] {
                    sorted.swap(j, j + 1);
                    odd = !odd;
                }
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return field.zero();
        }
        let c = self.get(&sorted).clone();
        if odd {
            field.neg(&c)
        } else {
            c
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Position of a sorted subset of `0..n` in the lexicographic order of [`subsets`].
pub fn subset_index(n: usize, set: &[usize]) -> usize {
    let k = set.len();
    let mut index = 0;
    let mut next = 0;
    for (t, &s) in set.iter().enumerate() {
        for x in next..s {
            index += binomial(n - x - 1, k - t - 1);
        }
        next = s + 1;
    }
    index
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !set.contains(i)).collect()
}

/// Whether `sum_{i in I} #{j not in I : j < i}` is odd, i.e. the parity of
/// the shuffle permutation `(I, I^c)`.
fn shuffle_odd(set: &[usize]) -> bool {
    set.iter().enumerate().map(|(t, &i)| i - t).sum::<usize>() % 2 == 1
}

fn check_len(d: usize, v: &[impl Sized]) -> Result<()> {
    if v.len() != d + 1 {
        return Err(Error::LengthMismatch {
            expected: d + 1,
            got: v.len(),
        });
    }
    Ok(())
}

/// `a ∧ b` with coordinates the plain minors `a_i b_j - a_j b_i`.
///
/// This is the convention under which a bar through a point of a rod pairs
/// to zero with that rod; see [`screw_wedge`] for the appendix variant.
pub fn wedge2<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<KVector<F::Elem>> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::LengthMismatch {
            expected: a.len().max(2),
            got: b.len(),
        });
    }
    let d = a.len() - 1;
    let coords = subsets(d + 1, 2)
        .into_iter()
        .map(|s| field.sub(&field.mul(&a[s[0]], &b[s[1]]), &field.mul(&a[s[1]], &b[s[0]])))
        .collect();
    Ok(KVector { d, k: 2, coords })
}

/// `a ∧ b` in screw coordinates: the `(i, j)` minor carries the sign
/// `(-1)^{i+j+1}` (1-based). It differs from [`wedge2`] by a fixed diagonal
/// sign change, so it has the same zero set and satisfies the same
/// quadratic relations.
pub fn screw_wedge<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<KVector<F::Elem>> {
    let mut x = wedge2(field, a, b)?;
    for (s, c) in subsets(x.d + 1, 2).into_iter().zip(x.coords.iter_mut()) {
        // 0-based i + j odd means 1-based i + j + 1 odd.
        if (s[0] + s[1]) % 2 == 0 {
            *c = field.neg(c);
        }
    }
    Ok(x)
}

/// `v_1 ∧ ... ∧ v_k`; coordinates are the `k × k` minors of the stacked vectors.
pub fn wedge_list<F: Field>(field: &F, d: usize, vs: &[Vec<F::Elem>]) -> Result<KVector<F::Elem>> {
    let k = vs.len();
    if k > d + 1 {
        return Err(Error::Invalid(format!("{k} vectors in dimension {}", d + 1)));
    }
    for v in vs {
        check_len(d, v)?;
    }
    let coords = subsets(d + 1, k)
        .into_iter()
        .map(|cols| {
            let minor: Vec<Vec<F::Elem>> = vs
                .iter()
                .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
                .collect();
            determinant(field, &minor)
        })
        .collect();
    Ok(KVector { d, k, coords })
}

/// Hodge star `∗e_I = sign(σ) e_{I^c}`, with `σ` the shuffle `(I, I^c)`.
/// `∗∗x = (-1)^{k(d+1-k)} x`.
pub fn hodge_star<F: Field>(field: &F, x: &KVector<F::Elem>) -> KVector<F::Elem> {
    let n = x.d + 1;
    let mut out = KVector::zero(field, x.d, n - x.k);
    for (set, c) in subsets(n, x.k).into_iter().zip(&x.coords) {
        let j = subset_index(n, &complement(n, &set));
        out.coords[j] = if shuffle_odd(&set) { field.neg(c) } else { c.clone() };
    }
    out
}

/// Vector `c` with `⟨p, q⟩ = Σ_I p_I c_I` for every `p` of complementary degree.
pub fn pairing_dual<F: Field>(field: &F, q: &KVector<F::Elem>) -> Vec<F::Elem> {
    let n = q.d + 1;
    subsets(n, n - q.k)
        .into_iter()
        .map(|set| {
            let c = q.get(&complement(n, &set)).clone();
            if shuffle_odd(&set) {
                field.neg(&c)
            } else {
                c
            }
        })
        .collect()
}

/// `⟨p, q⟩ = Σ_I ε(I) p_I q_{I^c}` where `ε(I)` is the sign of the shuffle
/// `(I, I^c)`, so that `p ∧ q = ⟨p, q⟩ e_1 ∧ ... ∧ e_{d+1}`. For `d = 3`:
/// `p12 q34 - p13 q24 + p14 q23 + p23 q14 - p24 q13 + p34 q12`.
pub fn pairing<F: Field>(field: &F, p: &KVector<F::Elem>, q: &KVector<F::Elem>) -> Result<F::Elem> {
    if p.d != q.d {
        return Err(Error::AmbientMismatch(p.d + 1, q.d + 1));
    }
    if p.k + q.k != p.d + 1 {
        return Err(Error::DegreeMismatch(format!(
            "degrees {} and {} are not complementary in dimension {}",
            p.k,
            q.k,
            p.d + 1
        )));
    }
    Ok(field.dot(&p.coords, &pairing_dual(field, q)))
}

/// The three-term relations `p_ij p_kl - p_ik p_jl + p_il p_jk = 0` over all
/// `i < j < k < l`. For degree 2 these cut out exactly the decomposable vectors.
pub fn grassmann_check<F: Field>(field: &F, x: &KVector<F::Elem>) -> Result<bool> {
    if x.k != 2 {
        return Err(Error::DegreeMismatch(format!("expected degree 2, got {}", x.k)));
    }
    Ok(subsets(x.d + 1, 4).into_iter().all(|s| {
        let p = |a: usize, b: usize| x.get(&[s[a], s[b]]).clone();
        let t1 = field.mul(&p(0, 1), &p(2, 3));
        let t2 = field.mul(&p(0, 2), &p(1, 3));
        let t3 = field.mul(&p(0, 3), &p(1, 2));
        field.is_zero(&field.add(&field.sub(&t1, &t2), &t3))
    }))
}

/// Whether `x` satisfies every quadratic Plücker relation
/// `Σ_l (-1)^l x_{A b_l} x_{B - b_l} = 0` for `|A| = k-1`, `|B| = k+1`.
pub fn is_decomposable<F: Field>(field: &F, x: &KVector<F::Elem>) -> bool {
    let n = x.d + 1;
    let k = x.k;
    if k <= 1 || k + 1 >= n {
        return true;
    }
    for a in subsets(n, k - 1) {
        for b in subsets(n, k + 1) {
            let mut sum = field.zero();
            for l in 0..=k {
                let mut left = a.clone();
                left.push(b[l]);
                let right: Vec<usize> = b.iter().enumerate().filter(|&(i, _)| i != l).map(|(_, &v)| v).collect();
                let term = field.mul(&x.signed(field, &left), &x.signed(field, &right));
                sum = if l % 2 == 0 {
                    field.add(&sum, &term)
                } else {
                    field.sub(&sum, &term)
                };
            }
            if !field.is_zero(&sum) {
                return false;
            }
        }
    }
    true
}

/// Whether `a = s b` for some scalar `s`, zero vectors included.
pub fn proportional<F: Field>(field: &F, a: &KVector<F::Elem>, b: &KVector<F::Elem>) -> bool {
    a.k == b.k && a.d == b.d && rank_of_rows(field, a.coords.len(), &[a.coords.clone(), b.coords.clone()]) < 2
}

/// A random `k`-dimensional subspace of `F_p^{d+1}`: its Plücker vector and
/// the spanning vectors it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub plucker: KVector<u64>,
    pub basis: Vec<Vec<u64>>,
}

/// Wedge of `k` uniformly random vectors, resampled while dependent.
pub fn sample_grassmannian<R: Rng + ?Sized>(field: &PrimeField, d: usize, k: usize, rng: &mut R) -> Result<Subspace> {
    if k > d + 1 {
        return Err(Error::Invalid(format!("degree {k} exceeds {}", d + 1)));
    }
    for _ in 0..SAMPLE_RETRIES {
        let basis: Vec<Vec<u64>> = (0..k).map(|_| field.sample_vec(rng, d + 1)).collect();
        if rank_of_rows(field, d + 1, &basis) == k {
            let plucker = wedge_list(field, d, &basis)?;
            return Ok(Subspace { plucker, basis });
        }
    }
    Err(Error::SamplingExhausted(SAMPLE_RETRIES))
}
