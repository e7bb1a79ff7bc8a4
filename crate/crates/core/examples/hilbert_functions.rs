//! Algebraic Hilbert functions of fat points and hypersurfaces, with the
//! upper bound deg X * C(D + dim X, dim X) checked at each degree.

use arakelov::error::Result;
use arakelov::forms::HomogeneousForm;
use arakelov::schemes::{check_al_hilbert, hilbert_fn, FatPoint, SchemeSpec};

pub fn run_example() -> Result<()> {
    // A double point at (1:1:0) plus a reduced point at (0:0:1) in P^2.
    let mut x = SchemeSpec::empty(2);
    x.add_point(FatPoint::new(vec![1.into(), 1.into(), 0.into()], 2)?)?;
    x.add_point(FatPoint::reduced(&[0, 0, 1])?)?;
    println!("scheme of degree {} in P^2", x.degree());
    for d in 0..=4 {
        let reports = check_al_hilbert(&x, d)?;
        let holds = reports.iter().all(|r| !r.failed());
        println!("  D = {d}: H_X(D) = {}, bounds hold: {holds}", hilbert_fn(&x, d)?);
    }

    // The conic x0 x1 - x2^2 has Hilbert function 2D + 1.
    let mut conic = SchemeSpec::empty(2);
    conic.add_hypersurface(HomogeneousForm::from_integers(2, 2, &[0, 1, 0, 0, 0, -1])?)?;
    for d in 2..=5 {
        println!("  conic: H(D = {d}) = {}", hilbert_fn(&conic, d)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
