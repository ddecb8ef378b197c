//! Runs coefficient trials over the span of a witness sequence and measures
//! how far the source and target norms can drift apart: a bounded spread is
//! the numeric face of "the witness spans an isomorphic copy", which is what
//! refutes strict singularity on that band.
//!
//! ```sh
//! cargo run --release --example section_spread
//! ```

use std::collections::BTreeMap;

use varlp::expr;
use varlp::function::{Monotone, Piece, PiecewiseFunction};
use varlp::interval::IntervalDomain;
use varlp::witness::{dss_failure_witness, section_equivalence_check, SourceSpace};
use varlp::Config;

fn one_piece(src: &str, lo: f64, hi: f64, mono: Monotone) -> PiecewiseFunction {
    let tree = expr::parse(src, &BTreeMap::new()).expect("formula parses");
    let piece = Piece::new(lo, hi, tree, mono).expect("piece is valid");
    let domain = IntervalDomain::new(lo, hi).expect("domain is valid");
    PiecewiseFunction::new(src, domain, vec![piece]).expect("function is valid")
}

fn main() -> Result<(), varlp::Error> {
    let cfg = Config::default();

    // The pair p = 2/t into q = 1/t is not disjointly strictly singular:
    // normalized indicators along deep bands stay apart in both spaces.
    let p = one_piece("2/t", 0.0, 1.0, Monotone::Decreasing);
    let q = one_piece("1/t", 0.0, 1.0, Monotone::Decreasing);
    let w = dss_failure_witness(&p, &q, 4, &cfg)?;
    println!("witness of {} elements; sections of span(s_1..s_4):\n", w.len());

    let rep = section_equivalence_check(&w, SourceSpace::VarExp(&p), &q, 24, &cfg)?;
    for t in &rep.trials {
        println!(
            "{:26} source = {:.6e}  target = {:.6e}  ratio = {:.4}",
            t.label, t.source_norm, t.target_norm, t.ratio
        );
    }
    println!(
        "\nratio range [{:.4}, {:.4}], spread = {:.4}",
        rep.min_ratio,
        rep.max_ratio,
        rep.spread()
    );
    assert!(
        rep.spread() <= 1e3,
        "spread {:.3e} too large for an isomorphic-copy claim",
        rep.spread()
    );

    // CSV for downstream tooling.
    println!("\n--- CSV ---");
    print!("{}", rep.to_csv());
    Ok(())
}
