//! Runs the built-in worked-example catalog and prints the pass/fail table.
//!
//! ```sh
//! cargo run --release --example catalog_table [id-prefix]
//! ```

use varlp::fixtures::run_examples;
use varlp::Config;

fn main() {
    let filter = std::env::args().nth(1);
    let start = std::time::Instant::now();
    match run_examples(filter.as_deref(), &Config::default()) {
        Ok(out) => {
            print!("{}", out.render_table());
            println!("elapsed: {:.1?}", start.elapsed());
            if !out.all_pass() {
                for row in out.rows.iter().filter(|r| !r.pass) {
                    eprintln!("FAIL {}: {}", row.id, row.detail);
                }
                std::process::exit(1);
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
