//! Evaluates modulars, Luxemburg norms, and the Hölder product bound for a
//! handful of concrete functions against a variable exponent.
//!
//! ```sh
//! cargo run --release --example luxemburg_norms
//! ```

use std::collections::BTreeMap;

use varlp::expr;
use varlp::function::{Monotone, Piece, PiecewiseFunction};
use varlp::interval::{IntervalDomain, IntervalUnion};
use varlp::modular::{char_norm, holder_products, luxemburg_norm, modular};
use varlp::quad::IntegralOutcome;
use varlp::Config;

fn one_piece(src: &str, lo: f64, hi: f64, mono: Monotone) -> PiecewiseFunction {
    let tree = expr::parse(src, &BTreeMap::new()).expect("formula parses");
    let piece = Piece::new(lo, hi, tree, mono).expect("piece is valid");
    let domain = IntervalDomain::new(lo, hi).expect("domain is valid");
    PiecewiseFunction::new(src, domain, vec![piece]).expect("function is valid")
}

fn main() -> Result<(), varlp::Error> {
    let cfg = Config::default();

    // A variable exponent that slides from 3 down to 1.5 across (0,1).
    let p = one_piece("3 - 1.5*t", 0.0, 1.0, Monotone::Decreasing);
    let f = one_piece("t^0.25", 0.0, 1.0, Monotone::Increasing);
    let g = one_piece("1/(1+t)", 0.0, 1.0, Monotone::Decreasing);

    for (name, h) in [("t^0.25", &f), ("1/(1+t)", &g)] {
        let rho = match modular(h, &p, &cfg.quad) {
            IntegralOutcome::Finite { value, .. } => value,
            other => panic!("modular of {name} should be finite, got {other:?}"),
        };
        let norm = luxemburg_norm(h, &p, &cfg.quad)?;
        println!("f = {name:10}  modular = {rho:.8}  Luxemburg norm = {norm:.8}");
    }

    // The norm of a characteristic function, via the dedicated routine.
    let half = IntervalUnion::interval(0.0, 0.5);
    let chi = char_norm(&half, &p, &cfg.quad)?;
    println!("|| chi_(0,1/2) || = {chi:.8}");

    // Scaling law: || c f || = c || f || for c > 0.
    let norm_f = luxemburg_norm(&f, &p, &cfg.quad)?;
    let scaled = one_piece("3*t^0.25", 0.0, 1.0, Monotone::Increasing);
    let norm_3f = luxemburg_norm(&scaled, &p, &cfg.quad)?;
    println!(
        "scaling: ||3f|| = {:.8}, 3||f|| = {:.8}, diff = {:.2e}",
        norm_3f,
        3.0 * norm_f,
        (norm_3f - 3.0 * norm_f).abs()
    );

    // Hölder: the integral of |f g| is at most 4 ||f||_p ||g||_{p'}.
    let (lhs, rhs) = holder_products(&f, &g, &p, &cfg.quad)?;
    println!("Hölder: int|fg| = {lhs:.8} <= 4 ||f||_p ||g||_p' = {rhs:.8}");
    assert!(lhs <= rhs + 1e-9);
    println!("Hölder bound holds");
    Ok(())
}
