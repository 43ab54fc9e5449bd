use super::*;
use crate::graph::VertexKind::{Body, Hinge, Rod};

fn graph(kinds: &[VertexKind], edges: &[(usize, usize)]) -> Multigraph {
    Multigraph::from_indices(kinds, edges).unwrap()
}

#[test]
fn two_rods_with_four_bars_are_minimally_rigid() {
    let g = graph(&[Rod, Rod], &[(0, 1); 4]);
    let r = analyze(&g, Model::RodBar, &Options::new(3)).unwrap();
    assert_eq!(r.combinatorial.rank, 4);
    assert_eq!(r.combinatorial.target, 4);
    assert_eq!(r.linear.max_rank, 4);
    assert_eq!(r.verdict, Verdict::MinimallyRigid);
    assert!(r.agreement);
    assert_eq!(r.linear.kernel_dimension, 8);
    assert_eq!(r.linear.trivial_violations, 0);
}

#[test]
fn body_bar_verdicts() {
    let six = graph(&[Body, Body], &[(0, 1); 6]);
    let r = analyze(&six, Model::BodyBar, &Options::new(3)).unwrap();
    assert_eq!(r.verdict, Verdict::MinimallyRigid);
    let seven = graph(&[Body, Body], &[(0, 1); 7]);
    let r = analyze(&seven, Model::BodyBar, &Options::new(3)).unwrap();
    assert_eq!(r.verdict, Verdict::Rigid);
    assert_eq!(r.combinatorial.rank, 6);
    let five = graph(&[Body, Body], &[(0, 1); 5]);
    let r = analyze(&five, Model::BodyBar, &Options::new(3)).unwrap();
    assert_eq!(r.verdict, Verdict::Flexible);
    assert!(r.agreement);
}

#[test]
fn direction_path_is_flexible() {
    let g = graph(&[Body, Body, Body], &[(0, 1), (1, 2)]);
    let r = analyze(&g, Model::Direction, &Options::new(2)).unwrap();
    assert_eq!(r.combinatorial.rank, 2);
    assert_eq!(r.combinatorial.target, 3);
    assert_eq!(r.verdict, Verdict::Flexible);
    assert!(r.agreement);
    let k3 = graph(&[Body, Body, Body], &[(0, 1), (1, 2), (0, 2)]);
    let r = analyze(&k3, Model::Direction, &Options::new(2)).unwrap();
    assert_eq!(r.verdict, Verdict::MinimallyRigid);
}

#[test]
fn hinge_pair_is_flexible() {
    let g = graph(&[Body, Hinge, Body], &[(0, 1), (1, 2)]);
    let r = analyze(&g, Model::BodyHinge, &Options::new(3)).unwrap();
    assert!(r.agreement);
    assert_eq!(r.verdict, Verdict::Flexible);
    assert_eq!(r.linear.hinge_violations, Some(0));
    assert_eq!(r.linear.trivial_violations, 0);
}

#[test]
fn model_errors() {
    let rods = graph(&[Rod, Rod], &[(0, 1)]);
    assert!(matches!(
        analyze(&rods, Model::BodyBar, &Options::new(3)),
        Err(Error::KindMismatch { .. })
    ));
    assert!(matches!(
        analyze(&rods, Model::RodBar, &Options::new(2)),
        Err(Error::DimensionTooSmall { .. })
    ));
    assert!(matches!(
        analyze(&rods, Model::RodBar, &Options::new(7)),
        Err(Error::Dimension(7))
    ));
    let hinges = graph(&[Hinge, Hinge], &[(0, 1)]);
    assert!(analyze(&hinges, Model::BodyHinge, &Options::new(3)).is_err());
    let mut opts = Options::new(3);
    opts.prime = 12;
    assert!(analyze(&rods, Model::RodBar, &opts).is_err());
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let g = graph(
        &[Body, Rod, Rod, Body],
        &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3), (0, 1)],
    );
    let mut opts = Options::new(3);
    opts.seed = 99;
    opts.oracle = true;
    let a = analyze(&g, Model::BodyRodBar, &opts).unwrap();
    let b = analyze(&g, Model::BodyRodBar, &opts).unwrap();
    assert_eq!(a, b);
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<Report>(&json).unwrap(), a);
    assert_eq!(a.combinatorial.oracle_rank, Some(a.combinatorial.rank));
    assert_eq!(a.linear.trial_seeds[0], derive_seed(99, 0));
}

#[test]
fn certificate_sums_to_rank() {
    let g = graph(&[Rod, Rod, Rod], &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 2)]);
    let r = analyze(&g, Model::RodBar, &Options::new(3)).unwrap();
    let d = 3;
    let prof = CountProfile::body_rod(d).unwrap();
    let cert = &r.combinatorial.certificate;
    let mut total = cert.singletons.len() as i64;
    for part in &cert.parts {
        let edges: Vec<EdgeId> = part.iter().map(|&i| EdgeId(i)).collect();
        total += crate::graph::f_value(&g, &edges, &prof).unwrap();
    }
    assert_eq!(total, r.combinatorial.rank as i64);
}

#[test]
fn derive_seed_streams_differ() {
    let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
    assert_eq!(seeds.len(), 1000);
    assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
}

#[test]
fn model_names_parse() {
    for m in Model::ALL {
        assert_eq!(m.name().parse::<Model>().unwrap(), m);
        assert_eq!(serde_json::to_string(&m).unwrap(), format!("\"{}\"", m.name()));
    }
    assert!("plate-bar".parse::<Model>().is_err());
}

#[test]
fn small_fuzz_runs_agree() {
    for (model, d) in [
        (Model::BodyBar, 3),
        (Model::RodBar, 3),
        (Model::BodyRodBar, 3),
        (Model::BodyHinge, 3),
        (Model::Direction, 2),
    ] {
        let mut cfg = FuzzConfig::new(model, d, 12, 5);
        cfg.threads = Some(2);
        let s = fuzz_equivalence(&cfg).unwrap();
        assert_eq!(s.agree, 12, "{model}: {:?}", s.counterexamples);
        assert!(s.passed(), "{model}: {:?}", s.counterexamples);
        assert!(s.polymatroid_cases > 0, "{model}");
    }
}

#[test]
fn fuzz_rejects_rods_in_the_plane() {
    let cfg = FuzzConfig::new(Model::BodyRodBar, 2, 5, 1);
    assert!(matches!(fuzz_equivalence(&cfg), Err(Error::DimensionTooSmall { .. })));
}

#[test]
fn fuzz_is_independent_of_thread_count() {
    let mut a = FuzzConfig::new(Model::BodyRodBar, 3, 10, 11);
    a.threads = Some(1);
    let mut b = a.clone();
    b.threads = Some(4);
    assert_eq!(fuzz_equivalence(&a).unwrap(), fuzz_equivalence(&b).unwrap());
}
