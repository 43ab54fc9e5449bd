//! Direction-constrained frameworks: each edge fixes the direction of the
//! segment between two points.

use rigikit::analysis::{analyze, Model, Options};
use rigikit::field::{Field, PrimeField};
use rigikit::graph::{Multigraph, VertexKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = PrimeField::default();
    let k3 = Multigraph::from_indices(&[VertexKind::Body; 3], &[(0, 1), (1, 2), (0, 2)])?;
    let mut opts = Options::new(2);
    opts.joints = Some(vec![vec![0, 0], vec![4, 0], vec![1, f.from_i64(3)]]);
    let r = analyze(&k3, Model::Direction, &opts)?;
    println!(
        "triangle in the plane: rank {} / {}, {}",
        r.linear.max_rank, r.combinatorial.target, r.verdict
    );

    let path = Multigraph::from_indices(&[VertexKind::Body; 3], &[(0, 1), (1, 2)])?;
    let r = analyze(&path, Model::Direction, &Options::new(2))?;
    println!(
        "path in the plane: rank {} / {}, {}",
        r.linear.max_rank, r.combinatorial.target, r.verdict
    );

    let k4 = Multigraph::from_indices(
        &[VertexKind::Body; 4],
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    )?;
    let r = analyze(&k4, Model::Direction, &Options::new(3))?;
    println!(
        "K4 in space: rank {} / {}, {}",
        r.linear.max_rank, r.combinatorial.target, r.verdict
    );
    Ok(())
}
