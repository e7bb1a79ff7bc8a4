//! Heights of points and divisors: exact point heights, Monte Carlo
//! Fubini-Study log integrals, and the exact oracle for split binary forms.

use arakelov::error::Result;
use arakelov::exact::z;
use arakelov::forms::{stoll_number, HomogeneousForm};
use arakelov::heights::{divisor_height, fs_log_integral, point_height, split_divisor_height_oracle};

pub fn run_example() -> Result<()> {
    let samples = 50_000;
    for p in [vec![1, 0, 0], vec![1, 1, 1], vec![3, 4, 12]] {
        let coords: Vec<_> = p.iter().map(|&c| z(c)).collect();
        println!("h({p:?}) = {:.6}", point_height(&coords)?.value);
    }

    for t in 1..=3 {
        let est = fs_log_integral(&HomogeneousForm::variable(t, 0), samples, 1)?;
        println!(
            "int log|x0| on P^{t}: {:.4} +- {:.4} (exact -{})",
            est.value,
            est.stderr,
            stoll_number(t)? - stoll_number(t - 1).unwrap_or_default()
        );
    }

    // x0 (x0 - x1) has roots (0:1) and (1:1).
    let f = HomogeneousForm::from_integers(1, 2, &[1, -1, 0])?;
    let mc = divisor_height(&f, samples, 2)?;
    let exact = split_divisor_height_oracle(&f, &[vec![z(0), z(1)], vec![z(1), z(1)]])?;
    println!(
        "h(div x0(x0 - x1)): MC {:.4} +- {:.4}, exact {:.6}",
        mc.value, mc.stderr, exact.value
    );

    let line = divisor_height(&HomogeneousForm::variable(2, 0), samples, 3)?;
    println!(
        "h(line in P^2) = {:.4} +- {:.4} (sigma_1 = 0.5)",
        line.value, line.stderr
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
