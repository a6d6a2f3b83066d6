//! Run the complete certification pipeline in-process and print the text
//! report. Equivalent to `difforms reproduce`.
//!
//! ```bash
//! cargo run --example certification_report
//! ```

use difforms::fixtures::Fixture;
use difforms::report::{run_reproduction, DEFAULT_MAX_DEGREE};

fn main() {
    let fx = Fixture::new().expect("fixture builds");
    let report = run_reproduction(&fx, DEFAULT_MAX_DEGREE, true);
    println!("{}", report.to_text());
    std::process::exit(if report.overall_pass { 0 } else { 1 });
}
