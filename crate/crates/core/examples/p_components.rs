//! P-components of the induced polymatroid, and their simplification.

use rigikit::analysis::{decompose, Model};
use rigikit::count::{p_components, simplify_component};
use rigikit::graph::{CountProfile, Multigraph, VertexKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    use VertexKind::*;
    // The cube graph with rods in the plane count.
    let cube = Multigraph::from_indices(
        &[Rod; 8],
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
        ],
    )?;
    let prof = CountProfile::body_rod(2)?;
    let dec = p_components(&cube, &prof)?;
    println!(
        "cube: {} P-components, {} nontrivial",
        dec.components.len(),
        dec.nontrivial().count()
    );

    let g = Multigraph::from_indices(
        &[Body, Body, Rod, Rod],
        &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 2), (2, 3), (1, 3)],
    )?;
    let prof = CountProfile::body_rod(3)?;
    for c in p_components(&g, &prof)?.components {
        let simple = simplify_component(&g, &c, &prof)?;
        println!("component {c:?} simplifies to {} edges", simple.edge_count());
    }
    let report = decompose(&g, Model::BodyRodBar, 3)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
