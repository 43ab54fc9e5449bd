//! Dilworth truncation of flat families by a random hyperplane, and the
//! family of three planes through one line where a special hyperplane fails.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigikit::field::PrimeField;
use rigikit::flats::{
    dilworth_truncate, hyperplane_through, intersect_with_hyperplane, random_family, shared_line, shared_line_family,
    span_rank, truncation_rhs_bruteforce,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for n in 1..=5 {
        let fam = random_family(&field, &mut rng, n, 6, 3);
        let t = dilworth_truncate(&field, &fam, &mut rng)?;
        println!(
            "{n} flats: truncated rank {}, partition minimum {}",
            span_rank(&field, &t, &t.all()),
            truncation_rhs_bruteforce(&field, &fam)?
        );
    }

    let planes = shared_line_family(&field);
    let h = hyperplane_through(&field, 4, &shared_line(), &mut rng)?;
    let forced = intersect_with_hyperplane(&field, &planes, &h)?;
    let generic = dilworth_truncate(&field, &planes, &mut rng)?;
    println!(
        "three planes on a line, partition minimum {}",
        truncation_rhs_bruteforce(&field, &planes)?
    );
    println!(
        "  hyperplane containing the line: rank {}",
        span_rank(&field, &forced, &forced.all())
    );
    println!(
        "  random hyperplane: rank {}",
        span_rank(&field, &generic, &generic.all())
    );
    Ok(())
}
