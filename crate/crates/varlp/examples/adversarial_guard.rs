//! Classifies the adversarial block-built exponent pairs — fixtures whose
//! deep-scale ground truth contradicts their mid-scale trend — and shows
//! that no decision route turns the misleading trend into a wrong decisive
//! verdict.
//!
//! ```sh
//! cargo run --release --example adversarial_guard
//! ```

use varlp::criteria::classify_pair;
use varlp::fixtures::adversarial_catalog;
use varlp::{Config, ThreeValued};

fn main() {
    let cfg = Config::default();
    let mut wrong = 0;
    for fx in adversarial_catalog() {
        let rep = match classify_pair(&fx.p, &fx.q, &cfg) {
            Ok(rep) => rep,
            Err(err) => {
                println!("{:55} truth dss={:5}  -> error: {err}", fx.label, fx.dss_truth);
                continue;
            }
        };
        let truth = ThreeValued::from_bool(fx.dss_truth);
        let false_decisive = rep.dss.is_decisive() && rep.dss != truth;
        if false_decisive {
            wrong += 1;
        }
        println!(
            "{:55} truth dss={:5}  classified dss={:13}  {}",
            fx.label,
            fx.dss_truth,
            rep.dss.as_str(),
            if false_decisive {
                "WRONG DECISIVE"
            } else if rep.dss.is_decisive() {
                "correct"
            } else {
                "withheld (honest)"
            }
        );
        for note in rep.notes.iter().filter(|n| n.contains("contradicts")) {
            println!("    {note}");
        }
    }
    if wrong > 0 {
        eprintln!("{wrong} false decisive verdicts");
        std::process::exit(1);
    }
    println!("no false decisive verdicts");
}
