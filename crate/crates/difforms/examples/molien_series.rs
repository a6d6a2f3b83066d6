//! Molien's formula in cross characteristic: eigenvalues are lifted
//! multiplicatively into a cyclotomic integer ring, the sum runs exactly
//! over a common denominator, and the result reduces to an integer rational
//! function.
//!
//! ```bash
//! cargo run --example molien_series
//! ```

use difforms::field::{brauer_det, BrauerLift};
use difforms::fixtures::Fixture;
use difforms::group::LinearCharacter;
use difforms::series::{molien, rewrite_over_hsop, MolienConvention};

fn main() {
    let fx = Fixture::new().expect("fixture builds");

    // per-element det0(1 - t g) over the image of the subgroup
    let lift = BrauerLift::new(3, fx.hbar.exponent()).expect("lift exists");
    println!("det0(1 - t g) for the image of the quaternion subgroup:");
    for idx in 0..fx.hbar.order() {
        let det = brauer_det(fx.hbar.element(idx), &lift).expect("non-modular element");
        let coeffs: Vec<String> = det.iter().map(|c| c.to_string()).collect();
        println!("  element {idx}: coefficients [{}]", coeffs.join(", "));
    }

    let series =
        molien(&fx.hbar, &fx.chibar, MolienConvention::CharacterValue).expect("non-modular");
    println!("relative Molien series (reduced): {series}");
    let rw = rewrite_over_hsop(&series, &[2, 3, 4]).expect("free over the hsop");
    println!("numerator over denominator degrees (2,3,4): {}", rw.numerator);

    let triv = LinearCharacter::trivial(&fx.hbar);
    let plain = molien(&fx.hbar, &triv, MolienConvention::CharacterValue).expect("non-modular");
    println!("trivial-character Molien series (reduced): {plain}");
    println!("first coefficients: {:?}", plain.expand(8));

    // the full group is modular: Molien refuses, by design
    match molien(&fx.gbar, &LinearCharacter::trivial(&fx.gbar), MolienConvention::CharacterValue)
    {
        Err(e) => println!("full group: {e}"),
        Ok(_) => println!("full group unexpectedly summed"),
    }
}
