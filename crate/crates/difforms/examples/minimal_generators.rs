//! The headline computation: the minimal generating set of the invariant
//! algebra of differential forms, counted per bidegree as the complement of
//! the span of products of lower invariants.
//!
//! ```bash
//! cargo run --example minimal_generators
//! ```

use difforms::fixtures::{self, Fixture};
use difforms::invariant::FixedSpaceTable;
use difforms::structure::{minimal_algebra_generators, named_generators_span_complements};

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    let mut table = FixedSpaceTable::new(&fx.g, &fx.rep_g, None);
    let xmax = 12u32;

    let minimal = minimal_algebra_generators(&mut table, xmax);
    println!("minimal algebra generators up to x-degree {xmax}: {}", minimal.total);
    println!("(xdeg, ydeg) -> count");
    for (&(x, y), &c) in &minimal.counts {
        println!("  ({x}, {y}) -> {c}");
    }

    let named = fixtures::minimal_generator_names();
    println!("named representatives:");
    for (name, e) in &named {
        let bd = e.bidegree().unwrap();
        println!("  {name:8} ({}, {}): {e}", bd.xdeg, bd.ydeg);
    }
    println!(
        "named elements span the complements: {}",
        named_generators_span_complements(&mut table, &minimal, &named)
    );
}
