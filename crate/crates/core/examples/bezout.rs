//! Arithmetic Bezout inequalities in P^2 on lines, conics and points, and
//! the sharp form on coordinate subspaces.

use arakelov::error::Result;
use arakelov::forms::HomogeneousForm;
use arakelov::heights::{bezout_check, bezout_instances, derive_seed, sharp_bezout_check};

pub fn run_example() -> Result<()> {
    let samples = 20_000;
    for (k, (x, y)) in bezout_instances(5, 6).iter().enumerate() {
        let r = bezout_check(2, x, y, samples, derive_seed(5, k as u64), 3.0)?;
        println!(
            "{:<12} h(X.Y) = {:8.4} <= {:8.4}  holds: {}",
            format!("instance {k}"),
            r.lhs,
            r.rhs,
            r.holds
        );
    }

    let f = HomogeneousForm::from_integers(2, 2, &[1, -2, 0, 3, 1, -1])?;
    for r in sharp_bezout_check(2, &[0], &f, samples, 11, 3.0)? {
        println!("{}", r.to_json_line());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
