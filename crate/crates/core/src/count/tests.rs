use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::count::oracle::subset;
use crate::graph::VertexKind::{self, *};

fn graph(kinds: &[VertexKind], edges: &[(usize, usize)]) -> Multigraph {
    Multigraph::from_indices(kinds, edges).unwrap()
}

fn p3() -> CountProfile {
    CountProfile::body_rod(3).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, max_v: usize, max_e: usize) -> Multigraph {
    let n = rng.gen_range(2..=max_v);
    let kinds: Vec<VertexKind> = (0..n).map(|_| if rng.gen_bool(0.5) { Body } else { Rod }).collect();
    let m = rng.gen_range(1..=max_e);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    graph(&kinds, &edges)
}

#[test]
fn single_edges_are_independent() {
    for d in 2..=6 {
        let p = CountProfile::body_rod(d).unwrap();
        for kinds in [[Body, Body], [Body, Rod], [Rod, Rod]] {
            let g = graph(&kinds, &[(0, 1)]);
            assert!(is_independent(&g, &[EdgeId(0)], &p).unwrap());
        }
    }
}

#[test]
fn parallel_edge_thresholds() {
    let g = graph(&[Body, Body], &[(0, 1); 7]);
    assert!(!is_independent(&g, &g.all_edges(), &p3()).unwrap());
    assert!(is_independent(&g, &g.all_edges()[..6], &p3()).unwrap());

    let rods = graph(&[Rod, Rod], &[(0, 1); 5]);
    assert!(is_independent(&rods, &rods.all_edges()[..4], &p3()).unwrap());
    assert!(!is_independent(&rods, &rods.all_edges(), &p3()).unwrap());
    // Same answer from the partition oracle.
    let bf = BruteForce::new(&rods, &rods.all_edges(), &p3()).unwrap();
    assert_eq!(bf.rank(0b01111), 4);
    assert_eq!(bf.rank(0b11111), 4);
}

#[test]
fn hinge_vertices_rejected() {
    let g = graph(&[Body, Hinge], &[(0, 1)]);
    assert!(matches!(
        is_independent(&g, &[EdgeId(0)], &p3()),
        Err(Error::HingeVertex(_))
    ));
}

#[test]
fn rank_examples() {
    let g = graph(&[Body, Body], &[(0, 1); 10]);
    let c = rank(&g, &g.all_edges(), &p3()).unwrap();
    assert_eq!(c.value, 6);
    assert_eq!(c.bound(&g, &p3()).unwrap(), 6);

    let rod_bar = graph(&[Rod, Rod], &[(0, 1); 4]);
    assert_eq!(rank(&rod_bar, &rod_bar.all_edges(), &p3()).unwrap().value, 4);

    let k4 = graph(&[Body; 4], &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let c = rank(&k4, &k4.all_edges(), &p3()).unwrap();
    assert_eq!(c.value, 6);
    assert_eq!(rank_bruteforce(&k4, &k4.all_edges(), &p3()).unwrap().value, 6);
    assert_eq!(c.singletons.len(), 6);
}

#[test]
fn fhat_examples() {
    let rr = graph(&[Rod, Rod], &[(0, 1)]);
    assert_eq!(fhat(&rr, &[EdgeId(0)], &p3()).unwrap(), 4);

    let tri = graph(&[Body; 3], &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(fhat(&tri, &tri.all_edges(), &p3()).unwrap(), 12);

    // Two triangles on disjoint vertex sets add up.
    let two = graph(
        &[Body, Body, Body, Rod, Rod, Rod],
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
    );
    let left = &two.all_edges()[..3];
    let right = &two.all_edges()[3..];
    let total = fhat(&two, &two.all_edges(), &p3()).unwrap();
    assert_eq!(
        total,
        fhat(&two, left, &p3()).unwrap() + fhat(&two, right, &p3()).unwrap()
    );
    assert_eq!(total, fhat_bruteforce(&two, &two.all_edges(), &p3()).unwrap());
}

#[test]
fn p_component_examples() {
    let two = graph(&[Body; 6], &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
    let dec = p_components(&two, &p3()).unwrap();
    assert_eq!(dec.kind, ComponentKind::PConnected);
    assert_eq!(
        dec.components,
        vec![
            vec![EdgeId(0), EdgeId(1), EdgeId(2)],
            vec![EdgeId(3), EdgeId(4), EdgeId(5)]
        ]
    );

    let single = graph(&[Body, Rod], &[(0, 1)]);
    assert_eq!(p_components(&single, &p3()).unwrap().components, vec![vec![EdgeId(0)]]);

    let tri = graph(&[Body; 3], &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(p_components(&tri, &p3()).unwrap().components.len(), 1);
}

#[test]
fn simplification_replaces_component_by_star() {
    let tri = graph(&[Body; 3], &[(0, 1), (1, 2), (0, 2)]);
    let s = simplify_component(&tri, &tri.all_edges(), &p3()).unwrap();
    assert_eq!(s.vertex_count(), 4);
    assert_eq!(s.edge_count(), 3);
    let center = VertexId(3);
    assert_eq!(s.kind(center), Body);
    assert!(s.edge_ids().all(|e| {
        let (u, v) = s.endpoints(e);
        u == center || v == center
    }));

    assert!(simplify_component(&tri, &[EdgeId(0)], &p3()).is_err());
    // A path of two body edges is not P-connected.
    let path = graph(&[Body; 3], &[(0, 1), (1, 2)]);
    assert!(matches!(
        simplify_component(&path, &path.all_edges(), &p3()),
        Err(Error::NotPConnected(_))
    ));
}

use crate::graph::VertexId;

#[test]
fn simplified_star_edges_are_coloops() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..200 {
        let g = random_graph(&mut rng, 5, 8);
        let p = CountProfile::body_rod(rng.gen_range(2..=4)).unwrap();
        let dec = p_components(&g, &p).unwrap();
        let Some(c) = dec.nontrivial().next().cloned() else {
            continue;
        };
        let s = simplify_component(&g, &c, &p).unwrap();
        let star_start = g.edge_count() - c.len();
        let poly = InducedPolymatroid::new(&s, &p).unwrap();
        let lifted = &poly.expansion().graph;
        let m = CountMatroid::new(lifted, &p).unwrap();
        let all = lifted.all_edges();
        let full = m.rank(&all).unwrap();
        for star in star_start..s.edge_count() {
            for &copy in &poly.expansion().copies[star] {
                let rest: Vec<EdgeId> = all.iter().copied().filter(|&x| x != copy).collect();
                assert_eq!(m.rank(&rest).unwrap() + 1, full, "copy {copy} is not a coloop");
            }
        }
        checked += 1;
    }
    assert!(checked > 10, "too few nontrivial components sampled ({checked})");
}

#[test]
fn check_counts_examples() {
    let rods = graph(&[Rod, Rod], &[(0, 1); 4]);
    let v = check_counts(&rods, 3, CountModel::RodBar).unwrap();
    assert!(v.minimally_rigid && v.rigid);
    assert_eq!(v.global_count, 4);

    let tree = graph(&[Body; 3], &[(0, 1), (1, 2)]);
    let v = check_counts(&tree, 3, CountModel::BodyBar).unwrap();
    assert!(!v.rigid);
    assert_eq!(v.global_count, 12);

    let br = graph(&[Body, Rod], &[(0, 1); 5]);
    let v = check_counts(&br, 3, CountModel::BodyRodBar).unwrap();
    assert!(v.minimally_rigid);
    assert_eq!(v.global_count, 5);

    let lone = Multigraph::from_indices(&[Body], &[]).unwrap();
    assert!(check_counts(&lone, 3, CountModel::BodyBar).unwrap().rigid);
    let lone_rod = Multigraph::from_indices(&[Rod], &[]).unwrap();
    assert!(!check_counts(&lone_rod, 3, CountModel::RodBar).unwrap().rigid);
}

#[test]
fn pebble_rank_matches_partition_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..120 {
        let g = random_graph(&mut rng, 5, 8);
        let d = rng.gen_range(2..=4);
        let p = CountProfile::body_rod(d).unwrap();
        let m = CountMatroid::new(&g, &p).unwrap();
        let all = g.all_edges();
        let bf = BruteForce::new(&g, &all, &p).unwrap();
        for mask in 0..=bf.full_mask() {
            let set = subset(&all, mask);
            assert_eq!(m.rank(&set).unwrap(), bf.rank(mask), "d={d} {g:?} mask={mask:b}");
        }
        let cert = m.certificate(&all).unwrap();
        assert_eq!(cert.bound(&g, &p).unwrap(), cert.value as i64);
        assert_eq!(cert.support(), all);
    }
}

#[test]
fn pebble_invariant_after_every_insertion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let g = random_graph(&mut rng, 6, 14);
        let m = CountMatroid::new(&g, &p3()).unwrap();
        let mut game = m.game();
        for e in g.edge_ids() {
            game.try_insert(e);
            assert!(game.invariant_holds());
        }
    }
}

#[test]
fn circuits_are_tight_plus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut circuits = 0;
    for _ in 0..60 {
        let g = random_graph(&mut rng, 4, 9);
        let p = CountProfile::body_rod(rng.gen_range(2..=3)).unwrap();
        let all = g.all_edges();
        let bf = BruteForce::new(&g, &all, &p).unwrap();
        for mask in 1..=bf.full_mask() {
            let n = mask.count_ones() as usize;
            let dependent = bf.rank(mask) < n;
            let minimal = (0..all.len())
                .filter(|i| mask >> i & 1 == 1)
                .all(|i| bf.rank(mask & !(1 << i)) == n - 1);
            if dependent && minimal {
                circuits += 1;
                assert_eq!(n as i64, bf.f(mask) + 1);
                assert_eq!(bf.rank(mask) as i64, bf.f(mask));
            }
        }
    }
    assert!(circuits > 20);
}

#[test]
fn m_connected_components_are_closed_and_tight() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..80 {
        let g = random_graph(&mut rng, 5, 10);
        let p = CountProfile::body_rod(rng.gen_range(2..=4)).unwrap();
        let m = CountMatroid::new(&g, &p).unwrap();
        let dec = m.m_components().unwrap();
        let mut sum = 0;
        for c in &dec.components {
            let r = m.rank(c).unwrap();
            sum += r;
            if c.len() > 1 {
                assert_eq!(r as i64, f_value(&g, c, &p).unwrap());
                // Every edge induced by V(C) is in the closure of C.
                let span = g.spanned(c);
                for e in g.edge_ids() {
                    let (u, v) = g.endpoints(e);
                    if span.contains(&u) && span.contains(&v) {
                        let mut with = c.clone();
                        if !with.contains(&e) {
                            with.push(e);
                        }
                        assert_eq!(m.rank(&with).unwrap(), r);
                    }
                }
            }
        }
        assert_eq!(sum, m.rank(&g.all_edges()).unwrap());
    }
}

#[test]
fn p_components_minimize_the_partition_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..80 {
        let g = random_graph(&mut rng, 5, 8);
        let p = CountProfile::body_rod(rng.gen_range(2..=4)).unwrap();
        let all = g.all_edges();
        let exact = fhat_bruteforce(&g, &all, &p).unwrap();
        let poly = InducedPolymatroid::new(&g, &p).unwrap();
        assert_eq!(poly.fhat(&all).unwrap(), exact);
        let dec = poly.p_components().unwrap();
        let sum: i64 = dec.components.iter().map(|c| f_value(&g, c, &p).unwrap()).sum();
        assert_eq!(sum, exact);
        // No component splits additively.
        for c in dec.nontrivial() {
            let bf = BruteForce::new(&g, c, &p).unwrap();
            let whole = bf.fhat(bf.full_mask());
            let full = bf.full_mask();
            let mut t = (full - 1) & full;
            while t > 0 {
                assert!(bf.fhat(t) + bf.fhat(full ^ t) > whole);
                t = (t - 1) & full;
            }
        }
    }
}

#[test]
fn f_is_monotone_and_submodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..30 {
        let n = rng.gen_range(2..=5);
        let kinds: Vec<VertexKind> = (0..n).map(|_| if rng.gen_bool(0.5) { Body } else { Rod }).collect();
        let edges: Vec<(usize, usize)> = (0..5)
            .map(|_| {
                let u = rng.gen_range(0..n);
                (u, (u + rng.gen_range(1..n)) % n)
            })
            .collect();
        let g = graph(&kinds, &edges);
        let all = g.all_edges();
        let bf = BruteForce::new(&g, &all, &p3()).unwrap();
        let f = |m: usize| if m == 0 { -(p3().offset()) } else { bf.f(m) };
        for x in 0..32usize {
            for y in 0..32usize {
                if x & y == x {
                    assert!(f(x) <= f(y));
                }
                assert!(f(x) + f(y) >= f(x | y) + f(x & y));
            }
        }
    }
}

#[test]
fn f_of_expansion_equals_f() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..30 {
        let g = random_graph(&mut rng, 5, 6);
        let x = crate::graph::expand_f(&g, &p3()).unwrap();
        for mask in 1..(1usize << g.edge_count()) {
            let set = subset(&g.all_edges(), mask);
            assert_eq!(
                f_value(&g, &set, &p3()).unwrap(),
                f_value(&x.graph, &x.lift(&set), &p3()).unwrap()
            );
        }
        // Copy sets partition the expanded edge set.
        let mut seen: Vec<EdgeId> = x.copies.iter().flatten().copied().collect();
        seen.sort();
        assert_eq!(seen, x.graph.all_edges());
    }
}
