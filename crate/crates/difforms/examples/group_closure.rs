//! Enumerate the fixture groups from their generators.
//!
//! ```bash
//! cargo run --example group_closure
//! ```

use difforms::fixtures::Fixture;

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    println!("|G|  = {:2}   (closure of t and i in SL_2(F_3))", fx.g.order());
    println!("|H|  = {:2}   (quaternion subgroup, closure of i and j = t^-1 i t)", fx.h.order());
    println!("|G action image| = {:2}   (G modulo its kernel)", fx.gbar.order());
    println!("|H action image| = {:2}", fx.hbar.order());
    let kernel = fx.rep_g.kernel();
    println!("kernel of the action: {} elements", kernel.len());
    for idx in kernel {
        println!("{}", fx.g.element(idx));
        println!();
    }
    print!("transversal of H in G:");
    for &r in &fx.transversal.reps {
        print!(" [{}]", fx.g.element(r).to_string().replace('\n', "; "));
    }
    println!();
    println!("exponent of the image of H: {}", fx.hbar.exponent());
}
