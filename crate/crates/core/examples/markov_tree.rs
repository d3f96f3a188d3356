// Enumerate Markov triples, walk the mutation tree and look at the
// weighted projective planes P(a^2, b^2, c^2).

use p2degen::markov::{enumerate_up_to, manetti_wps};
use p2degen::quotsing::is_p2_admissible;

pub fn run_example() -> p2degen::Result<()> {
    let tree = enumerate_up_to(1000);
    println!("{} triples up to 1000, tree: {}", tree.triples.len(), tree.is_tree());

    for t in tree.triples.iter().take(6) {
        let s = manetti_wps(t)?;
        let sings: Vec<String> = s.singularities().iter().map(|q| q.to_string()).collect();
        println!("{t}  {s}  K^2 = {}  [{}]", s.k_squared(), sings.join(", "));
        assert!(s.singularities().iter().all(is_p2_admissible));
    }

    let t = &tree.triples[4];
    println!("mutations of {t}: {}, {}, {}", t.mutate(1)?, t.mutate(2)?, t.mutate(3)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
