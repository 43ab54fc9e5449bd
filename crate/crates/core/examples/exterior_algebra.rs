//! Plücker coordinates of lines in projective 3-space, the Hodge star and the
//! pairing that detects when two lines meet.

use rigikit::exterior::{hodge_star, is_decomposable, pairing, screw_wedge, wedge2, KVector};
use rigikit::field::{Field, PrimeField, Rationals};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Rationals;
    let r = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
    // Points are (x, y, z, 1) in homogeneous coordinates.
    let screw = screw_wedge(&q, &r(&[1, 0, 0, 1]), &r(&[0, 0, 0, 1]))?;
    let coords: Vec<String> = screw.coords().iter().map(|c| c.to_string()).collect();
    println!("screw coordinates of the x-axis direction: ({})", coords.join(", "));

    let f = PrimeField::default();
    let a = wedge2(&f, &[1, 0, 0, 1], &[0, 1, 0, 1])?;
    let b = wedge2(&f, &[1, 0, 0, 1], &[0, 0, 1, 1])?;
    let c = wedge2(&f, &[0, 0, 0, 1], &[1, 1, 1, 0])?;
    println!("lines sharing a point pair to {}", pairing(&f, &a, &b)?);
    println!("skew lines pair to {}", pairing(&f, &a, &c)?);

    let star = hodge_star(&f, &a);
    println!("*line is a line: {}", is_decomposable(&f, &star));
    let sum = KVector::from_coords(
        3,
        2,
        a.coords().iter().zip(c.coords()).map(|(x, y)| f.add(x, y)).collect(),
    )?;
    println!("sum of two skew lines is a line: {}", is_decomposable(&f, &sum));
    Ok(())
}
