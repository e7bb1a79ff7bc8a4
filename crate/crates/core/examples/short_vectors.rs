//! Certified short vectors: LLL plus exact enumeration on the lattice of
//! forms vanishing on a point set, checked against the Minkowski bound.

use arakelov::error::Result;
use arakelov::forms::{monomials, HomogeneousForm};
use arakelov::lattice::{arith_degree, minkowski_bound, short_vector};
use arakelov::schemes::{vanishing_lattice, SchemeSpec};

pub fn run_example() -> Result<()> {
    let x = SchemeSpec::reduced_points(2, &[vec![1, 2, 3], vec![3, -1, 4], vec![5, 9, 2], vec![6, 5, 3]])?;
    for d in 2..=4 {
        let lattice = vanishing_lattice(&x, d)?;
        let cert = short_vector(&lattice)?;
        let form = HomogeneousForm::from_z(2, d, &cert.vector)?;
        println!(
            "D = {d}: rank {}, degree {:.4}, log|v| = {:.4} <= {:.4} (exact check: {}), method {:?}",
            lattice.rank(),
            arith_degree(&lattice)?.degree,
            cert.log_length,
            minkowski_bound(&lattice)?,
            cert.holds_exactly(),
            cert.method
        );
        println!("  shortest form: {form} ({} monomials)", monomials(2, d).len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
