//! Extract the product relations among the covariants by exact linear solve
//! over the free module, and confirm that the last three 2-form generators
//! are redundant.
//!
//! ```bash
//! cargo run --example relations
//! ```

use difforms::fixtures::{self, Fixture};
use difforms::invariant::FixedSpaceTable;
use difforms::structure::{algebra_span_contains, relation_extract, ASpan};

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    let mut aspan = ASpan::new(&fixtures::hsop_a());
    let cs = fixtures::c_elements();
    let ds = fixtures::d_elements();
    let a_names = ["a1", "a2", "a3"];

    for (li, ri) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let label = format!("{}*{}", cs[li].0, cs[ri].0);
        let prod = cs[li].1.mul(&cs[ri].1);
        let rec = relation_extract(&label, &prod, &ds, &mut aspan).unwrap();
        let residual = rec.rhs(&mut aspan, &ds).sub(&prod);
        println!("{label} = {}   (residual: {residual})", rec.format_rhs(&a_names));
    }
    println!("c1*c1 = {}", cs[0].1.mul(&cs[0].1));

    let mut table = FixedSpaceTable::new(&fx.g, &fx.rep_g, None);
    let named = fixtures::minimal_generator_names();
    for (name, d) in ds.iter().skip(3) {
        println!(
            "{name} decomposes over the minimal generators: {}",
            algebra_span_contains(&mut table, &named, d)
        );
    }
}
