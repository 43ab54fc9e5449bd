//! Rank, certificates and rigidity counts from the pebble game.

use rigikit::count::{check_counts, rank_bruteforce, CountMatroid, CountModel};
use rigikit::graph::{CountProfile, Multigraph, VertexKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    use VertexKind::*;
    // Two bodies and a rod in space, joined by a triangle of parallel classes.
    let g = Multigraph::from_indices(
        &[Body, Body, Rod],
        &[
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (1, 2),
            (1, 2),
            (0, 2),
            (0, 2),
            (0, 2),
        ],
    )?;
    let prof = CountProfile::body_rod(3)?;
    let m = CountMatroid::new(&g, &prof)?;
    let all = g.all_edges();
    let cert = m.certificate(&all)?;
    println!(
        "rank {} of {} edges, target {}",
        cert.value,
        all.len(),
        prof.global_count(&g)?
    );
    println!(
        "certificate: {} singletons, parts {:?}",
        cert.singletons.len(),
        cert.parts
    );
    println!(
        "brute force agrees: {}",
        rank_bruteforce(&g, &all, &prof)?.value == cert.value
    );
    println!("basis {:?}", m.basis(&all)?);

    for (name, model) in [("body-bar", CountModel::BodyBar), ("rod-bar", CountModel::RodBar)] {
        let v = check_counts(&g, 3, model)?;
        println!(
            "{name}: rank {} / {} rigid={} minimal={}",
            v.rank, v.global_count, v.rigid, v.minimally_rigid
        );
    }
    Ok(())
}
