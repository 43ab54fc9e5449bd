use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigikit::analysis::{analyze, derive_seed, random_multigraph, GraphDistribution, Model, Options, Report};
use rigikit::count::{fhat_bruteforce, CountMatroid, InducedPolymatroid};
use rigikit::document::GraphDocument;
use rigikit::exterior::{hodge_star, pairing, KVector};
use rigikit::field::{Field, PrimeField};
use rigikit::graph::{f_value, CountProfile, EdgeId, Multigraph, VertexKind};

fn small_graph() -> impl Strategy<Value = (Multigraph, usize)> {
    (
        2usize..=4,
        2usize..=5,
        proptest::collection::vec((0usize..5, 0usize..5), 0..9),
        any::<u8>(),
    )
        .prop_map(|(d, n, pairs, kinds)| {
            let kinds: Vec<VertexKind> = (0..n)
                .map(|i| {
                    if kinds >> i & 1 == 1 {
                        VertexKind::Rod
                    } else {
                        VertexKind::Body
                    }
                })
                .collect();
            let edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .map(|(u, v)| (u % n, v % n))
                .filter(|(u, v)| u != v)
                .collect();
            (Multigraph::from_indices(&kinds, &edges).unwrap(), d)
        })
}

fn mask_edges(mask: u32, n: usize) -> Vec<EdgeId> {
    (0..n).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_is_monotone_and_submodular((g, d) in small_graph(), a in any::<u32>(), b in any::<u32>()) {
        let n = g.edge_count();
        prop_assume!(n > 0);
        let prof = CountProfile::body_rod(d).unwrap();
        let full = (1u32 << n) - 1;
        let (a, b) = (a & full, b & full);
        prop_assume!(a != 0 && b != 0 && a & b != 0);
        let f = |m: u32| f_value(&g, &mask_edges(m, n), &prof).unwrap();
        prop_assert!(f(a | b) + f(a & b) <= f(a) + f(b));
        prop_assert!(f(a) <= f(a | b));
    }

    #[test]
    fn rank_is_a_matroid_rank((g, d) in small_graph(), a in any::<u32>(), b in any::<u32>()) {
        let n = g.edge_count();
        let prof = CountProfile::body_rod(d).unwrap();
        let m = CountMatroid::new(&g, &prof).unwrap();
        let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let (a, b) = (a & full, b & full);
        let r = |x: u32| m.rank(&mask_edges(x, n)).unwrap();
        prop_assert!(r(a) <= a.count_ones() as usize);
        prop_assert!(r(a & b) <= r(a));
        prop_assert!(r(a | b) + r(a & b) <= r(a) + r(b));
    }

    #[test]
    fn fhat_matches_partition_minimum((g, d) in small_graph()) {
        prop_assume!(g.edge_count() > 0);
        let prof = CountProfile::body_rod(d).unwrap();
        let poly = InducedPolymatroid::new(&g, &prof).unwrap();
        let all = g.all_edges();
        prop_assert_eq!(poly.fhat(&all).unwrap(), fhat_bruteforce(&g, &all, &prof).unwrap());
    }

    #[test]
    fn pairing_is_a_dot_product_with_the_star(
        d in 2usize..=5,
        k in 1usize..=5,
        seed in any::<u64>(),
    ) {
        prop_assume!(k <= d);
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rigikit::graph::binomial(d + 1, k);
        let p = KVector::from_coords(d, k, f.sample_vec(&mut rng, n)).unwrap();
        let q = KVector::from_coords(d, d + 1 - k, f.sample_vec(&mut rng, n)).unwrap();
        let dot = f.dot(p.coords(), hodge_star(&f, &q).coords());
        let expected = if (k * (d + 1 - k)) % 2 == 0 { dot } else { f.neg(&dot) };
        prop_assert_eq!(pairing(&f, &p, &q).unwrap(), expected);
    }

    #[test]
    fn seed_derivation_is_a_pure_function(master in any::<u64>(), stream in any::<u64>()) {
        prop_assert_eq!(derive_seed(master, stream), derive_seed(master, stream));
    }

    #[test]
    fn reports_round_trip_and_repeat(seed in any::<u64>(), model_ix in 0usize..5) {
        let model = Model::ALL[model_ix];
        let d = if model == Model::Direction { 2 } else { 3 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dist = GraphDistribution { max_vertices: 5, max_edges: 10, ..GraphDistribution::default() };
        let g = random_multigraph(&mut rng, &dist, model);
        let doc = GraphDocument::from_graph(&g, d, model);
        prop_assert_eq!(GraphDocument::from_json(&doc.to_json()).unwrap(), doc.clone());
        let mut opts = Options::new(d);
        opts.seed = seed;
        let a = analyze(&doc.graph().unwrap(), model, &opts).unwrap();
        let b = analyze(&g, model, &opts).unwrap();
        let json = serde_json::to_string_pretty(&a).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Report>(&json).unwrap(), &a);
        prop_assert_eq!(json, serde_json::to_string_pretty(&b).unwrap());
        prop_assert!(a.linear.max_rank <= a.combinatorial.rank);
        prop_assert_eq!(a.linear.trivial_violations, 0);
    }
}
