//! Brute-force fixed-space dimensions against their rational generating
//! functions, for the invariants of the full group and the relative
//! invariants of the quaternion subgroup.
//!
//! ```bash
//! cargo run --example invariant_dimensions
//! ```

use difforms::fixtures::{self, Fixture};
use difforms::invariant::FixedSpaceTable;
use difforms::series::{IntPoly, RationalSeries};

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    let xmax = 12u32;

    let mut table_g = FixedSpaceTable::new(&fx.g, &fx.rep_g, None);
    let dims = table_g.dims_row(0, xmax);
    println!("dim of the degree-d invariants of the full group, d = 0..{xmax}:");
    println!("  nullspace: {dims:?}");
    let series = RationalSeries::over_hsop(
        IntPoly::new(vec![1, 0, 0, 0, 0, 0, 1]),
        &fixtures::hsop_a_degrees(),
    );
    println!("  series:    {:?}", series.expand(xmax as usize));

    let mut table_rel = FixedSpaceTable::new(&fx.h, &fx.rep_h, Some(&fx.chi));
    let rel_dims = table_rel.dims_row(0, xmax);
    println!("dim of the chi-relative invariants of the subgroup:");
    println!("  nullspace: {rel_dims:?}");
    let rel_series = RationalSeries::over_hsop(IntPoly::new(vec![0, 1, 1]), &[2, 2, 2]);
    println!("  series:    {:?}", rel_series.expand(xmax as usize));

    // the exterior summands, by exterior degree
    println!("full dimension table of the invariants of S (x) Lambda:");
    for y in 0..=3u32 {
        println!("  ydeg {y}: {:?}", table_g.dims_row(y, xmax));
    }
}
