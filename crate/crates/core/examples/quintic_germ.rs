// Weighted stability of plane curve germs: the A12 singularity on a quintic
// fails with witness (2,13); simpler cusps pass.

use p2degen::curvewt::{complete_square, stable_pair_local_test, CurveGerm, NewtonPolygon};

pub fn run_example() -> p2degen::Result<()> {
    let a12: CurveGerm = "y^2 + x^13".parse()?;
    println!("{a12}: {}", stable_pair_local_test(&a12, 5)?);

    for n in 3..=11 {
        let g: CurveGerm = format!("y^2 + x^{n}").parse()?;
        println!("  y^2 + x^{n:<2} at d = 5: {}", stable_pair_local_test(&g, 5)?);
    }

    // (y - x^2)^2 + x^11 passes in these coordinates; the test only sees
    // the y^2 + x^11 singularity after completing the square.
    let g: CurveGerm = "y^2 - 2*x^2*y + x^4 + x^11".parse()?;
    let (h, sub) = complete_square(&g, 20)?;
    println!("{g} -> {h} via y -> y + ({})", sub.shift_polynomial());
    println!("  before: {}", stable_pair_local_test(&g, 5)?);
    println!("  after:  {}", stable_pair_local_test(&h, 5)?);
    println!("  Newton polygon vertices {:?}", NewtonPolygon::of(&h)?.vertices);
    assert!(stable_pair_local_test(&g, 5)?.passed() && !stable_pair_local_test(&h, 5)?.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
