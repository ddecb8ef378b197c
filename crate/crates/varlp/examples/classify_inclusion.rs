//! Classifies one inclusion between variable-exponent spaces and prints the
//! full report plus the machine-readable evidence trace.
//!
//! ```sh
//! cargo run --release --example classify_inclusion
//! ```

use varlp::criteria::classify_pair;
use varlp::report::{evidence_csv, render_text};
use varlp::specfile::parse_function_str;
use varlp::Config;

fn main() -> Result<(), varlp::Error> {
    // Exponent documents in the same TOML format the CLI reads from files.
    let p = parse_function_str(
        r#"
            name = "2/t"
            domain = [0.0, 1.0]
            [[piece]]
            on = [0.0, 1.0]
            expr = "2/t"
            monotone = "dec"
        "#,
        "p",
    )?;
    let q = parse_function_str(
        r#"
            name = "1/t"
            domain = [0.0, 1.0]
            [[piece]]
            on = [0.0, 1.0]
            expr = "1/t"
            monotone = "dec"
        "#,
        "q",
    )?;

    let rep = classify_pair(&p, &q, &Config::default())?;
    println!("{}", render_text(&rep));
    println!("--- evidence trace (CSV) ---");
    print!("{}", evidence_csv(&rep));
    Ok(())
}
