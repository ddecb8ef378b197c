//! On an infinite-measure domain an inclusion into L^1 may hold while never
//! being weakly compact in either direction: unit-measure disjoint blocks
//! with vanishing exponent gap certify it. This example classifies such an
//! inclusion, builds the blocks from the reported plan, and cross-checks the
//! associated Nakano sequence-space equivalence.
//!
//! ```sh
//! cargo run --release --example infinite_blocks
//! ```

use std::collections::BTreeMap;

use varlp::criteria::classify_right_l1;
use varlp::expr;
use varlp::fixtures::construct_witness;
use varlp::function::{Monotone, Piece, PiecewiseFunction};
use varlp::interval::IntervalDomain;
use varlp::report::render_text;
use varlp::witness::nakano_equivalent;
use varlp::Config;

fn main() -> Result<(), varlp::Error> {
    let cfg = Config::default();

    // p(t) = 1 + 1/(1+t) on (0, inf): decays to 1, stays above it, and the
    // inclusion into L^1 holds with constants independent of the tail.
    let p = PiecewiseFunction::new(
        "1 + 1/(1+t)",
        IntervalDomain::new(0.0, f64::INFINITY)?,
        vec![Piece::new(
            0.0,
            f64::INFINITY,
            expr::parse("1 + 1/(1+t)", &BTreeMap::new())?,
            Monotone::Decreasing,
        )?],
    )?;

    let rep = classify_right_l1(&p, &cfg)?;
    println!("{}", render_text(&rep));

    // The report's witness plan asks for unit-measure blocks; build them and
    // check the defining bound: the exponent gap on block n is <= 1/n.
    let n = 6;
    let seq = construct_witness(&rep, &p, None, n, &cfg)?;
    print!("{}", seq.render_text());
    for (i, e) in seq.elements.iter().enumerate() {
        let bound = 1.0 / (i + 1) as f64 + 1e-9;
        let (_, sup_p) = p.ess_bounds_on(&e.set);
        let gap = sup_p - 1.0;
        assert!(
            gap <= bound,
            "block {} has exponent gap {gap:.3e} above the bound {bound:.3e}",
            i + 1
        );
    }
    println!("all {n} unit blocks obey the vanishing-gap bound\n");

    // Restricting to disjoint unit blocks turns the function-space question
    // into a Nakano sequence-space one. Two direct sequence comparisons:
    // a gap vanishing like 1/n (spaces coincide for small alpha) and a gap
    // stuck at 1/2 on every coordinate (they cannot).
    println!("--- l^(1 + 1/n) vs l^1 ---");
    let ev = nakano_equivalent(|n| 1.0 + 1.0 / n as f64, |_| 1.0, 1_000_000)?;
    println!("{}", ev.render_text());

    println!("--- l^(3/2) vs l^1 ---");
    let ev = nakano_equivalent(|_| 1.5, |_| 1.0, 1_000_000)?;
    println!("{}", ev.render_text());
    Ok(())
}
