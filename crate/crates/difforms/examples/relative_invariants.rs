//! The chi-relative invariants of the quaternion subgroup as a free module
//! over the parameter subalgebra: generation by six monomials, and the
//! failure witness produced when one of them is removed.
//!
//! ```bash
//! cargo run --example relative_invariants
//! ```

use difforms::fixtures::{self, Fixture};
use difforms::invariant::FixedSpaceTable;
use difforms::structure::{generation_check, ASpan};

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    let mut table = FixedSpaceTable::new(&fx.h, &fx.rep_h, Some(&fx.chi));
    let mut aspan = ASpan::new(&fixtures::hsop_a());

    let gens = fixtures::relative_generators();
    println!("generators:");
    for (name, e) in &gens {
        println!("  {name:10} degree {}", e.bidegree().unwrap().xdeg);
    }
    let check = generation_check(&gens, &mut aspan, &mut table, 0, 12);
    println!("generation check to degree 12: {}", check.ok);

    for drop_idx in 0..gens.len() {
        let mut pruned = gens.clone();
        let (name, _) = pruned.remove(drop_idx);
        let check = generation_check(&pruned, &mut aspan, &mut table, 0, 12);
        match check.witness {
            Some((bd, w)) => {
                println!("without {name:10} fails at degree {}: witness {w}", bd.xdeg)
            }
            None => println!("without {name:10} unexpectedly passes"),
        }
    }
}
