//! The invariant ring of the full group as a free module over its parameter
//! subalgebra: hsop certificate, generator discovery, and the freeness
//! triangle.
//!
//! ```bash
//! cargo run --example secondary_invariants
//! ```

use difforms::fixtures::{self, Fixture};
use difforms::invariant::FixedSpaceTable;
use difforms::structure::{find_module_generators, freeness_triangle, hsop_check, ASpan};

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    println!(
        "hsop check for a1, a2, a3 (degrees 2, 3, 4): {}",
        hsop_check(&fixtures::hsop_a()).unwrap()
    );
    println!(
        "hsop check for x1^2, x2^2, x3^2:             {}",
        hsop_check(&fixtures::hsop_squares()).unwrap()
    );
    // a dependent triple is rejected
    let bad = vec![fixtures::a1(), fixtures::a2(), fixtures::a1().mul(&fixtures::a2())];
    println!("hsop check for a1, a2, a1*a2:                {}", hsop_check(&bad).unwrap());

    let mut table = FixedSpaceTable::new(&fx.g, &fx.rep_g, None);
    let mut aspan = ASpan::new(&fixtures::hsop_a());
    let report = find_module_generators(&mut aspan, &mut table, "invariant ring", 0, 12);
    println!("module generators over A discovered in degrees {:?}:", report.degrees());
    for g in &report.generators {
        println!("  degree {:2}: {}", g.bidegree.xdeg, g.element);
    }
    println!("named secondary generator b = {}", fixtures::b());

    let gens = report.labeled();
    let tri = freeness_triangle(&gens, &mut aspan, &mut table, 0, 12);
    println!("freeness triangle to degree 12: {}", tri.ok);
    println!("  series dims: {:?}", tri.series_dims);
    println!("  span dims:   {:?}", tri.span_dims);
    println!("  fixed dims:  {:?}", tri.fixed_dims);
}
