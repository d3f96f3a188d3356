// Verify every surface and germ in the degree 4 and 5 catalogs.

use p2degen::surfcat::verify_catalog;

pub fn run_example() -> p2degen::Result<()> {
    for d in [4, 5] {
        let report = verify_catalog(d)?;
        print!("{}", report.to_text());
        assert!(report.all_passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
