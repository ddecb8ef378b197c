//! Temporary probe (deleted before commit).

use std::collections::BTreeMap;
use std::time::Instant;

use varlp::fixtures::{catalog, classify_fixture, construct_witness};
use varlp::function::{Monotone, Piece, PiecewiseFunction};
use varlp::interval::{IntervalDomain, IntervalUnion};
use varlp::witness::{infinite_measure_witness, section_equivalence_check, SourceSpace};
use varlp::{expr, Config, ThreeValued};

fn single(src: &str, lo: f64, hi: f64, m: Monotone) -> PiecewiseFunction {
    let tree = expr::parse(src, &BTreeMap::new()).unwrap();
    PiecewiseFunction::new(
        src,
        IntervalDomain::new(lo, hi).unwrap(),
        vec![Piece::new(lo, hi, tree, m).unwrap()],
    )
    .unwrap()
}

fn main() {
    let cfg = Config::default();

    // Section 6 style (a): p = 2 + 1/(1+t), q = 2 on (0, inf).
    let pa = single("2 + 1/(1+t)", 0.0, f64::INFINITY, Monotone::Decreasing);
    let qa = PiecewiseFunction::constant("2", IntervalDomain::new(0.0, f64::INFINITY).unwrap(), 2.0);
    let t0 = Instant::now();
    match infinite_measure_witness(&pa, &qa, 4, &cfg) {
        Ok(w) => {
            println!("(a) ok in {:?}:\n{}", t0.elapsed(), w.render_text());
        }
        Err(e) => println!("(a) ERR: {e}"),
    }

    // Section 6 style (b): p = t + exp(-t), q = t on (1, inf).
    let pb = single("t + exp(-t)", 1.0, f64::INFINITY, Monotone::Increasing);
    let qb = single("t", 1.0, f64::INFINITY, Monotone::Increasing);
    let t0 = Instant::now();
    match infinite_measure_witness(&pb, &qb, 3, &cfg) {
        Ok(w) => {
            println!("(b) ok in {:?}:\n{}", t0.elapsed(), w.render_text());
            let t1 = Instant::now();
            match section_equivalence_check(&w, SourceSpace::VarExp(&pb), &qb, 100, &cfg) {
                Ok(rep) => println!(
                    "(b) section: spread {:.4} over {} trials in {:?}",
                    rep.spread(),
                    rep.trials.len(),
                    t1.elapsed()
                ),
                Err(e) => println!("(b) section ERR: {e}"),
            }
        }
        Err(e) => println!("(b) ERR: {e}"),
    }

    // Every catalog fixture with a non-DSS verdict must yield a witness.
    let one = |lo: f64, hi: f64| {
        PiecewiseFunction::constant("1", IntervalDomain::new(lo, hi).unwrap(), 1.0)
    };
    for fx in catalog() {
        let rep = match classify_fixture(&fx, &cfg) {
            Ok(r) => r,
            Err(e) => {
                println!("{:8} classify ERR: {e}", fx.id);
                continue;
            }
        };
        if rep.dss != ThreeValued::False {
            continue;
        }
        let t0 = Instant::now();
        match construct_witness(&rep, &fx.p, fx.q.as_ref(), 4, &cfg) {
            Ok(w) => {
                // Section check with the kind-appropriate spaces.
                let dom = fx.p.domain();
                let target_one = one(dom.lo(), dom.hi());
                let (source, target) = match fx.kind {
                    varlp::criteria::InclusionKind::Pair => {
                        (SourceSpace::VarExp(&fx.p), fx.q.as_ref().unwrap())
                    }
                    varlp::criteria::InclusionKind::LeftInfty => (SourceSpace::Sup, &fx.p),
                    varlp::criteria::InclusionKind::RightL1 => {
                        (SourceSpace::VarExp(&fx.p), &target_one)
                    }
                };
                match section_equivalence_check(&w, source, target, 100, &cfg) {
                    Ok(srep) => println!(
                        "{:8} witness {} elems, section spread {:9.4} ({} trials)  [{:?}]",
                        fx.id,
                        w.len(),
                        srep.spread(),
                        srep.trials.len(),
                        t0.elapsed()
                    ),
                    Err(e) => println!("{:8} witness ok but section ERR: {e}", fx.id),
                }
            }
            Err(e) => println!("{:8} witness ERR: {e}", fx.id),
        }
        let _ = IntervalUnion::interval(0.0, 1.0);
    }
}
