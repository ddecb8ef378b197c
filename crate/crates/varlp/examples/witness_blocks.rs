//! Builds the three finite-measure witness families and validates their
//! defining norm bounds: block sets from a divergent exponential integral,
//! normalized band witnesses against disjoint strict singularity, and
//! identity slices on an exponent-equality set.
//!
//! ```sh
//! cargo run --release --example witness_blocks
//! ```

use std::collections::BTreeMap;

use varlp::expr;
use varlp::function::{Monotone, Piece, PiecewiseFunction};
use varlp::interval::IntervalDomain;
use varlp::witness::{dss_failure_witness, equality_slices, lemma31_sets};
use varlp::Config;

fn one_piece(src: &str, lo: f64, hi: f64, mono: Monotone) -> PiecewiseFunction {
    let tree = expr::parse(src, &BTreeMap::new()).expect("formula parses");
    let piece = Piece::new(lo, hi, tree, mono).expect("piece is valid");
    let domain = IntervalDomain::new(lo, hi).expect("domain is valid");
    PiecewiseFunction::new(src, domain, vec![piece]).expect("function is valid")
}

fn main() -> Result<(), varlp::Error> {
    let cfg = Config::default();

    // 1. Block sets: r(t) = 1/t has a divergent integral of a^{r} for every
    //    a > 1, so disjoint sets with indicator norms >= beta = 0.98/a exist.
    let r = one_piece("1/t", 0.0, 1.0, Monotone::Decreasing);
    let a = 2.0;
    let seq = lemma31_sets(&r, a, 5, &cfg)?;
    print!("{}", seq.render_text());
    let beta = 0.98 / a;
    for e in &seq.elements {
        assert!(
            e.source_norm >= beta - 1e-6,
            "block norm {:.6} under the promised floor {beta:.6}",
            e.source_norm
        );
    }
    println!("all {} block norms >= beta = {beta:.4}\n", seq.len());

    // 2. The same construction honestly refuses when the integral is finite:
    //    a bounded exponent cannot carry norm-bounded disjoint blocks.
    let bounded = one_piece("2 + t", 0.0, 1.0, Monotone::Increasing);
    match lemma31_sets(&bounded, a, 5, &cfg) {
        Err(err) => println!("bounded exponent refused as expected: {err}\n"),
        Ok(_) => panic!("block sets must not exist for a bounded exponent"),
    }

    // 3. Normalized witness against disjoint strict singularity for the pair
    //    p = 2/t into q = 1/t: the gap (p-q)/(pq) = t/2 keeps the endpoint
    //    quantity bounded below, so normalized indicators stay apart in both
    //    spaces. Each element has source norm 1 by construction.
    let p = one_piece("2/t", 0.0, 1.0, Monotone::Decreasing);
    let q = one_piece("1/t", 0.0, 1.0, Monotone::Decreasing);
    let seq = dss_failure_witness(&p, &q, 4, &cfg)?;
    print!("{}", seq.render_text());
    for e in &seq.elements {
        assert!((e.source_norm - 1.0).abs() <= 1e-6, "normalized element should have unit norm");
    }
    println!("all {} normalized elements have unit source norm\n", seq.len());

    // 4. Equality slices: the exponents below agree on (0, 1/2), where the
    //    inclusion is the identity of an infinite-dimensional band.
    let params = BTreeMap::new();
    let p_eq = PiecewiseFunction::new(
        "p",
        IntervalDomain::new(0.0, 1.0)?,
        vec![
            Piece::new(0.0, 0.5, expr::parse("2", &params)?, Monotone::Constant)?,
            Piece::new(0.5, 1.0, expr::parse("3", &params)?, Monotone::Constant)?,
        ],
    )?;
    let q_eq = one_piece("2", 0.0, 1.0, Monotone::Constant);
    let seq = equality_slices(&p_eq, &q_eq, 4, &cfg)?;
    print!("{}", seq.render_text());
    for e in &seq.elements {
        let t = e.target_norm.expect("equality slices carry both norms");
        assert!(
            (e.source_norm - t).abs() <= 1e-9,
            "identical exponents must give identical norms"
        );
    }
    println!("all {} slices have equal source and target norms", seq.len());
    Ok(())
}
