//! The standard batch of inequality checks, summarized by name, followed by
//! the empirical constants that stand in for unquantified ones.

use std::collections::BTreeMap;

use arakelov::error::Result;
use arakelov::suite::{empirical_constants, standard_suite, SuiteConfig};

pub fn run_example() -> Result<()> {
    let reports = standard_suite(&SuiteConfig::default())?;
    let mut by_name: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &reports {
        let e = by_name.entry(r.name.as_str()).or_default();
        e.0 += 1;
        e.1 += r.failed() as usize;
    }
    for (name, (n, failed)) in &by_name {
        println!("{name:<36} {n:4} checks, {failed} failed");
    }
    let consts = empirical_constants(&reports);
    let worst = consts.iter().map(|r| r.lhs.abs()).fold(0.0, f64::max);
    println!("{} empirical constants, largest |c| = {worst:.4}", consts.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
