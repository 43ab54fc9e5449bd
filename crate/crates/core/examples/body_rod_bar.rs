//! A generic body-rod-bar framework: matrix rank against the count rank and
//! a basis of its motions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigikit::analysis::{analyze, Model, Options};
use rigikit::field::PrimeField;
use rigikit::graph::{CountProfile, Multigraph, VertexKind};
use rigikit::rigidity::{
    body_rod_trivial_motions, kernel_basis, matrix_body_rod_bar, sample_bar_config, sample_rod_config,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    use VertexKind::*;
    let two_rods = Multigraph::from_indices(&[Rod, Rod], &[(0, 1); 4])?;
    let field = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rods = sample_rod_config(&field, &two_rods, 3, &mut rng)?;
    let bars = sample_bar_config(&field, &two_rods, &rods, &mut rng)?;
    let m = matrix_body_rod_bar(&field, &two_rods, &rods, &bars)?;
    let basis = kernel_basis(&field, &m, &body_rod_trivial_motions(&field, &two_rods, &rods));
    println!(
        "two rods, four bars: rank {}, motions {}",
        m.rank(&field),
        basis.dimension()
    );
    for motion in &basis.motions {
        println!("  {:?}", motion.kind);
    }
    let cut = m.without_edge(m.rows()[0].edge);
    println!("after removing a bar: {} motions", cut.kernel(&field).len());

    let mixed = Multigraph::from_indices(
        &[Body, Rod, Rod, Body],
        &[
            (0, 1),
            (0, 1),
            (0, 1),
            (1, 2),
            (1, 2),
            (2, 3),
            (2, 3),
            (2, 3),
            (0, 3),
            (0, 3),
            (0, 3),
            (0, 3),
            (1, 3),
        ],
    )?;
    let prof = CountProfile::body_rod(3)?;
    println!("mixed graph target {}", prof.global_count(&mixed)?);
    let report = analyze(&mixed, Model::BodyRodBar, &Options::new(3))?;
    println!(
        "count rank {}, linear rank {}, verdict {}",
        report.combinatorial.rank, report.linear.max_rank, report.verdict
    );
    Ok(())
}
