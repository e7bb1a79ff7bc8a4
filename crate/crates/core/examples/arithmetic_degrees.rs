//! Arithmetic Hilbert functions: exact Gram determinants of the section
//! lattices of P^t and of point schemes, and the additivity
//! H^_P(D) = deg I_X(D) + H^_X(D).

use arakelov::arithhilbert::{ambient_asymptotic_ratio, arith_hilbert, arith_hilbert_ambient, arith_hilbert_on_x};
use arakelov::error::Result;
use arakelov::lattice::arith_degree;
use arakelov::schemes::{vanishing_lattice, SchemeSpec};

pub fn run_example() -> Result<()> {
    for (t, d) in [(1, 1), (2, 1), (1, 4), (2, 3)] {
        let v = arith_hilbert_ambient(t, d);
        println!("P^{t}, D = {d}: det = {}, H^ = {:.12}", v.det_gram, v.value);
    }

    let x = SchemeSpec::reduced_points(2, &[vec![1, 0, 0], vec![1, 1, 1], vec![2, -1, 3]])?;
    for d in 1..=3 {
        let quotient = arith_hilbert(&x, d)?;
        let ideal = arith_degree(&vanishing_lattice(&x, d)?)?;
        let total = arith_hilbert_ambient(2, d);
        println!(
            "points, D = {d}: H^_X = {:.6}, deg I_X = {:.6}, sum = {:.6}, H^_P = {:.6}",
            quotient.value,
            ideal.degree,
            quotient.value + ideal.degree,
            total.value
        );
        match arith_hilbert_on_x(&x, d) {
            Ok(v) => println!("  L2(X) metric: {:.6}", v.value),
            Err(e) => println!("  L2(X) metric: {e}"),
        }
    }

    for d in [48, 64, 96, 128] {
        println!("P^1 asymptotic ratio at D = {d}: {:.4}", ambient_asymptotic_ratio(1, d));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
