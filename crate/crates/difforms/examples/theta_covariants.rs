//! The covariant transfer: relative invariants of the subgroup map onto the
//! invariants of the exterior summands, degree by degree.
//!
//! ```bash
//! cargo run --example theta_covariants
//! ```

use difforms::fixtures::{self, Fixture};
use difforms::group::GroupAction;
use difforms::invariant::FixedSpaceTable;
use difforms::structure::{theta, theta_iso_check};

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    let gaction = GroupAction::new(&fx.rep_g);
    let haction = GroupAction::new(&fx.rep_h);
    let trans = fx.transversal.reps.clone();

    println!("theta images of the six relative generators:");
    for (name, f) in fixtures::relative_generators() {
        let c = theta(&f, 1, &gaction, &trans, &fx.h, &haction, &fx.chi).unwrap();
        let d = theta(&f, 2, &gaction, &trans, &fx.h, &haction, &fx.chi).unwrap();
        println!("  theta_1({name}) = {c}");
        println!("  theta_2({name}) = {d}");
    }

    let mut rel = FixedSpaceTable::new(&fx.h, &fx.rep_h, Some(&fx.chi));
    let mut g = FixedSpaceTable::new(&fx.g, &fx.rep_g, None);
    let check = theta_iso_check(
        &mut rel, &mut g, &gaction, &trans, &fx.h, &haction, &fx.chi, 12,
    );
    println!("degreewise isomorphism onto both exterior summands, to degree 12: {}", check.ok);

    // a multiset that is not a transversal is detected
    let bogus = vec![trans[0], trans[1], trans[1]];
    let broken = theta_iso_check(
        &mut rel, &mut g, &gaction, &bogus, &fx.h, &haction, &fx.chi, 3,
    );
    println!(
        "with a non-transversal (e, t, t) the check fails as expected: {}",
        !broken.ok
    );
}
