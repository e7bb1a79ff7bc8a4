//! Small integral forms through Y that avoid every point of X, and a chain
//! of two coprime hypersurfaces through a point set in P^2.

use arakelov::error::Result;
use arakelov::schemes::{build_chain, interpolate, SchemeSpec};

pub fn run_example() -> Result<()> {
    let y = SchemeSpec::reduced_points(2, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]])?;
    let x = SchemeSpec::reduced_points(2, &[vec![0, 0, 1], vec![1, 2, 3]])?;
    for d in 2..=4 {
        let r = interpolate(&y, &x, d)?;
        println!(
            "D = {d}: f = {}, log|f| = {:.4} <= {:.4}: {}",
            r.form,
            r.log_norm,
            r.minkowski_rhs,
            r.certificate_holds()
        );
    }

    let chain = build_chain(&y, 6)?;
    println!("chain through Y: {}", chain.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
