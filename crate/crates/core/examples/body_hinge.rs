//! Body-hinge frameworks via the rod expansion of their hinges.

use rigikit::analysis::{analyze, Model, Options};
use rigikit::graph::{Multigraph, VertexKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    use VertexKind::*;
    let cases = [
        ("two bodies on one hinge", vec![Body, Hinge, Body], vec![(0, 1), (1, 2)]),
        (
            "triangle of three bodies",
            vec![Body, Body, Body, Hinge, Hinge, Hinge],
            vec![(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)],
        ),
        (
            "three bodies on one hinge",
            vec![Body, Body, Body, Hinge],
            vec![(0, 3), (1, 3), (2, 3)],
        ),
    ];
    for (name, kinds, edges) in cases {
        let g = Multigraph::from_indices(&kinds, &edges)?;
        let r = analyze(&g, Model::BodyHinge, &Options::new(3))?;
        println!(
            "{name}: count {} / {}, linear {}, {} nontrivial motions, hinge violations {:?}, {}",
            r.combinatorial.rank,
            r.combinatorial.target,
            r.linear.max_rank,
            r.linear.kernel_dimension - r.linear.trivial_dimension,
            r.linear.hinge_violations,
            r.verdict
        );
    }
    Ok(())
}
