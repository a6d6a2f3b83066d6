//! Verify the identification of the dual module with the induced module
//! k(G/H) (x) W, where W is the one-dimensional character module of the
//! quaternion subgroup.
//!
//! ```bash
//! cargo run --example module_isomorphism
//! ```

use difforms::fixtures::Fixture;
use difforms::group::{dual_action_matrix, verify_module_iso, LinearCharacter};
use difforms::linalg::FpMatrix;
use difforms::Fp;

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    let dual_mats: Vec<FpMatrix> =
        (0..fx.g.order()).map(|i| dual_action_matrix(fx.rep_g.image(i))).collect();
    // phi(x_s) = t^{s-1} (x) w: the identity matrix in the chosen orderings
    let phi = FpMatrix::identity(3, 3);
    let res = verify_module_iso(&fx.g, &fx.h, &fx.transversal, &fx.chi, &dual_mats, &phi);
    println!("phi(x_s) = t^(s-1) (x) w is an isomorphism: {}", res.holds);

    // flipping the character breaks equivariance, with a named witness
    let wrong =
        LinearCharacter::from_generator_values(&fx.h, &[Fp::new(-1, 3), Fp::one(3)]).unwrap();
    let res2 = verify_module_iso(&fx.g, &fx.h, &fx.transversal, &wrong, &dual_mats, &phi);
    match res2.witness {
        Some((g, v)) => println!(
            "swapped character fails as expected at generator index {g}, basis vector {}",
            v + 1
        ),
        None => println!("swapped character unexpectedly verified: {}", res2.holds),
    }
}
