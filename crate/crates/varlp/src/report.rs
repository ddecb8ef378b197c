//! Rendering of classification results: a structured key-value text
//! document with nested evidence traces, and CSV evidence tables whose
//! numeric columns round-trip exactly (floats are printed with the shortest
//! representation that parses back to the identical bit pattern).

use std::fmt::Write as _;

use crate::criteria::{ClassificationReport, LimitVerdict};
use crate::error::{Error, Result};
use crate::rearrange::Rearrangement;
use crate::ThreeValued;

/// Renders a limit verdict as a one-line summary.
pub fn describe_limit(v: &LimitVerdict) -> String {
    match v {
        LimitVerdict::Zero { basis } => format!("ZERO ({basis})"),
        LimitVerdict::Positive { value, basis } => {
            format!("POSITIVE ~ {value:.6e} ({basis})")
        }
        LimitVerdict::Indeterminate { reason } => format!("INDETERMINATE ({reason})"),
    }
}

fn verdict_word(v: ThreeValued) -> &'static str {
    match v {
        ThreeValued::True => "true",
        ThreeValued::False => "false",
        ThreeValued::Indeterminate => "INDETERMINATE",
    }
}

/// Structured text document for a classification report.
pub fn render_text(rep: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "inclusion: {}", rep.title);
    let _ = writeln!(out, "kind: {}", rep.kind.as_str());
    let mut inclusion_line = format!(
        "inclusion holds: {} — {}",
        verdict_word(rep.inclusion),
        rep.inclusion_note
    );
    if let Some(l) = rep.lambda {
        let _ = write!(inclusion_line, " [certified at scale lambda = {l:.3e}]");
    }
    let _ = writeln!(out, "{inclusion_line}");
    let _ = writeln!(out, "L-weakly compact: {}", verdict_word(rep.l_weak));
    let _ = writeln!(out, "M-weakly compact: {}", verdict_word(rep.m_weak));
    let _ = writeln!(out, "weakly compact: {}", verdict_word(rep.weakly_compact));
    let _ = writeln!(out, "disjointly strictly singular: {}", verdict_word(rep.dss));
    let _ = writeln!(
        out,
        "strictly singular: {} — {}",
        verdict_word(rep.ss),
        rep.ss_note
    );
    if let Some(ev) = &rep.main {
        let _ = writeln!(out, "main evidence: {}", ev.quantity);
        let _ = writeln!(out, "  limit: {}", describe_limit(&ev.verdict));
        for s in &ev.samples {
            let _ = writeln!(
                out,
                "  k = {:>2}: u = {:.6e}, tail value = {:.6e}, u^(tail) = {:.6e}",
                s.k,
                s.u,
                s.tail_value,
                s.log_ratio.exp()
            );
        }
    }
    if let Some(ev) = &rep.head_ratio {
        let _ = writeln!(out, "head-ratio evidence: integral of p* over (0,x) / (x ln(e/x))");
        let _ = writeln!(out, "  limit: {}", describe_limit(&ev.verdict));
        for s in &ev.samples {
            let _ = writeln!(
                out,
                "  k = {:>2}: x = {:.6e}, ratio = {:.6e}",
                s.k, s.x, s.ratio
            );
        }
    }
    if !rep.crosses.is_empty() {
        let _ = writeln!(out, "cross-checks:");
        for c in &rep.crosses {
            let tag = if c.applicable { "" } else { " [not applicable]" };
            let _ = writeln!(
                out,
                "  - {}: {}{} — {}",
                c.name,
                verdict_word(c.verdict),
                tag,
                c.detail
            );
        }
    }
    if !rep.notes.is_empty() {
        let _ = writeln!(out, "notes:");
        for n in &rep.notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
    let _ = writeln!(out, "witness plan: {}", rep.witness_plan.describe());
    out
}

/// One row of an evidence CSV: the `k`-th sample of a named quantity,
/// evaluated at abscissa `x` with tested value `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceRow {
    pub k: u32,
    pub x: f64,
    pub l: f64,
    pub quantity: String,
}

/// CSV evidence table of a report: every ladder sample as
/// `k,x,l,quantity`. Floats use the shortest exact representation, so the
/// table parses back bit-identically. The free-text quantity sits in the
/// last column and may itself contain commas.
pub fn evidence_csv(rep: &ClassificationReport) -> String {
    let mut out = String::from("k,x,l,quantity\n");
    if let Some(ev) = &rep.main {
        for s in &ev.samples {
            let _ = writeln!(out, "{},{},{},{}", s.k, s.u, s.log_ratio.exp(), ev.quantity);
        }
    }
    if let Some(ev) = &rep.head_ratio {
        for s in &ev.samples {
            let _ = writeln!(
                out,
                "{},{},{},head ratio of the rearranged exponent",
                s.k, s.x, s.ratio
            );
        }
    }
    out
}

/// Parses a table emitted by [`evidence_csv`].
pub fn parse_evidence_csv(src: &str) -> Result<Vec<EvidenceRow>> {
    let mut rows = Vec::new();
    for (i, line) in src.lines().enumerate() {
        if i == 0 {
            if line != "k,x,l,quantity" {
                return Err(Error::Domain(format!(
                    "unexpected evidence CSV header: {line}"
                )));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.splitn(4, ',');
        let bad = |what: &str| Error::Domain(format!("evidence CSV line {}: bad {what}", i + 1));
        let k = fields
            .next()
            .and_then(|f| f.parse::<u32>().ok())
            .ok_or_else(|| bad("k"))?;
        let x = fields
            .next()
            .and_then(|f| f.parse::<f64>().ok())
            .ok_or_else(|| bad("x"))?;
        let l = fields
            .next()
            .and_then(|f| f.parse::<f64>().ok())
            .ok_or_else(|| bad("l"))?;
        let quantity = fields.next().ok_or_else(|| bad("quantity"))?.to_string();
        rows.push(EvidenceRow { k, x, l, quantity });
    }
    Ok(rows)
}

/// CSV table of `(x, f*(x))` pairs of a rearrangement, sampled at `n`
/// interior points (uniform over the total measure; unit steps when the
/// measure is infinite).
pub fn rearrangement_csv(rr: &Rearrangement, n: usize) -> String {
    let mut out = String::from("x,fstar\n");
    let total = rr.total_measure();
    let n = n.max(1);
    for i in 1..=n {
        let x = if total.is_finite() {
            total * i as f64 / (n as f64 + 1.0)
        } else {
            i as f64
        };
        let _ = writeln!(out, "{},{}", x, rr.eval(x));
    }
    out
}

/// Parses a two-column `x,y` CSV with any single-line header.
pub fn parse_xy_csv(src: &str) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (i, line) in src.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let mut fields = line.splitn(2, ',');
        let bad = || Error::Domain(format!("xy CSV line {}: expected two numbers", i + 1));
        let x = fields
            .next()
            .and_then(|f| f.parse::<f64>().ok())
            .ok_or_else(bad)?;
        let y = fields
            .next()
            .and_then(|f| f.parse::<f64>().ok())
            .ok_or_else(bad)?;
        rows.push((x, y));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::classify_left_infty;
    use crate::expr::parse;
    use crate::function::{Monotone, Piece, PiecewiseFunction};
    use crate::interval::IntervalDomain;
    use crate::Config;
    use std::collections::BTreeMap;

    fn func(name: &str, lo: f64, hi: f64, src: &str, mono: Monotone) -> PiecewiseFunction {
        let expr = parse(src, &BTreeMap::new()).unwrap();
        PiecewiseFunction::new(
            name,
            IntervalDomain::new(lo, hi).unwrap(),
            vec![Piece::new(lo, hi, expr, mono).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn text_document_names_every_verdict() {
        let cfg = Config::default();
        let p = func("p", 0.0, 1.0, "1 + ln(1 - ln(t))", Monotone::Decreasing);
        let rep = classify_left_infty(&p, &cfg).unwrap();
        let text = render_text(&rep);
        for key in [
            "inclusion holds:",
            "L-weakly compact:",
            "M-weakly compact:",
            "weakly compact:",
            "disjointly strictly singular:",
            "strictly singular:",
            "main evidence:",
            "witness plan:",
        ] {
            assert!(text.contains(key), "missing '{key}' in:\n{text}");
        }
    }

    #[test]
    fn evidence_csv_round_trips_exactly() {
        let cfg = Config::default();
        let p = func("p", 0.0, 1.0, "1/t", Monotone::Decreasing);
        let rep = classify_left_infty(&p, &cfg).unwrap();
        let csv = evidence_csv(&rep);
        let rows = parse_evidence_csv(&csv).unwrap();
        let ev = rep.main.as_ref().unwrap();
        let main_rows: Vec<&EvidenceRow> = rows
            .iter()
            .filter(|r| r.quantity == ev.quantity)
            .collect();
        assert_eq!(main_rows.len(), ev.samples.len());
        for (row, s) in main_rows.iter().zip(&ev.samples) {
            assert_eq!(row.k, s.k);
            // Bit-identical round trip, not approximate.
            assert_eq!(row.x.to_bits(), s.u.to_bits());
            assert_eq!(row.l.to_bits(), s.log_ratio.exp().to_bits());
        }
        // A second emit from the parsed rows is byte-identical.
        let mut again = String::from("k,x,l,quantity\n");
        for r in &rows {
            again.push_str(&format!("{},{},{},{}\n", r.k, r.x, r.l, r.quantity));
        }
        assert_eq!(csv, again);
    }

    #[test]
    fn rearrangement_csv_round_trips_exactly() {
        let f = func("f", 0.0, 1.0, "1 - t", Monotone::Decreasing);
        let rr = Rearrangement::new(&f, 1000);
        let csv = rearrangement_csv(&rr, 64);
        let rows = parse_xy_csv(&csv).unwrap();
        assert_eq!(rows.len(), 64);
        for &(x, y) in &rows {
            assert_eq!(y.to_bits(), rr.eval(x).to_bits());
        }
    }
}
