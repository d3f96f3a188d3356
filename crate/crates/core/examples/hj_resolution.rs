// Hirzebruch-Jung expansions, minimal resolutions and the K^2 + rho ledger
// of cyclic quotient singularities.

use p2degen::quotsing::{is_class_T, k2rho_change, resolve, zk_squared, CyclicQuotient};
use p2degen::{hj_eval, hj_expand};

pub fn run_example() -> p2degen::Result<()> {
    let e = hj_expand(25, 4)?;
    println!("25/4 = {:?}, evaluates back to {:?}", e.coefficients(), hj_eval(e.coefficients())?);

    for (r, a) in [(4, 1), (25, 4), (7, 1), (7, 6), (18, 5)] {
        let s = CyclicQuotient::new(r, a)?;
        println!(
            "{s} chain {:?}  Z_K^2 = {}  d(K^2 + rho) = {}  class T {:?}",
            resolve(&s).self_intersections,
            zk_squared(&s),
            k2rho_change(&s),
            is_class_T(&s),
        );
    }

    // A dual pair sums to 4(1 - 1/r).
    let s = CyclicQuotient::new(7, 3)?;
    println!("{s} + {}: {}", s.dual(), k2rho_change(&s) + k2rho_change(&s.dual()));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
