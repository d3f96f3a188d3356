// Build P(1,1,5) u P(1,4,5) glued along a line and a quartic curve, and run
// the type B smoothability conditions on it and on a variant with the
// wrong Picard numbers.

use p2degen::exactmath::Rational;
use p2degen::surfcat::{
    coarse_type, glued_k_squared, t1_degree, type_b_smoothable, Component, GluedSurface, NcPoint,
};

pub fn run_example() -> p2degen::Result<()> {
    let build = |rho: u32| -> p2degen::Result<GluedSurface> {
        GluedSurface::two_glued(
            Component::wps([1, 1, 5])?.with_double_curve(Rational::integer(1)).with_picard(rho),
            Component::wps([1, 4, 5])?.with_double_curve(Rational::integer(4)).with_picard(rho),
            vec![NcPoint { r: 5, a: 1 }],
        )
    };

    let g = build(1)?;
    println!("type {}, K^2 = {}, Delta_1^2 + Delta_2^2 = {}", coarse_type(&g), glued_k_squared(&g)?, t1_degree(&g)?);
    for rho in [1, 2] {
        let report = type_b_smoothable(&build(rho)?);
        println!("rho = ({rho},{rho}): smoothable = {}", report.smoothable);
        for c in &report.conditions {
            println!("  [{}] {}: {}", if c.passed { "ok" } else { "no" }, c.name, c.details);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
