//! Small values of integral binary forms at a random point of the sphere in
//! C^2: for each degree D and budget H, the smallest -log|f(theta)| found
//! by lattice reduction among forms with log|f| <= H.

use arakelov::error::Result;
use arakelov::heights::{random_theta, transcendence_profile};

pub fn run_example() -> Result<()> {
    let theta = random_theta(7);
    println!("theta = ({:.6}, {:.6})", theta[0], theta[1]);
    println!("D,H,achieved,rhs_paper,ratio");
    for (d, h) in [(2, 2.0), (4, 4.0), (6, 5.0), (8, 8.0), (10, 10.0)] {
        let p = transcendence_profile(theta, d, h)?;
        println!("{}", p.csv_row().join(","));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
