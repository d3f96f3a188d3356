// A cusp singularity whose resolution is a cycle of rational curves; the
// negative mu_- rules it out as a degeneration.

use p2degen::quotsing::{cycle_krel_squared, mu_minus, ResolutionCycle};

pub fn run_example() -> p2degen::Result<()> {
    let cycle = ResolutionCycle::new(vec![-2, -2, -2, -11, -2, -2, -2, -11])?;
    let k2 = cycle_krel_squared(&cycle)?;
    let mu = mu_minus(&cycle, 1)?;
    println!("cycle {:?}", cycle.self_intersections());
    println!("K^2 = {k2}, mu_- = {mu}");
    assert!(mu.is_negative());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
