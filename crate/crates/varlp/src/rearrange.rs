//! Decreasing rearrangement of a piecewise function over an interval.
//!
//! The rearrangement `f*` of `f` on a measure space of total measure `b` is
//! the nonincreasing function on `(0, b)` equimeasurable with `f`:
//! `f*(x) = inf { s : mu_f(s) <= x }`, where `mu_f(s)` is the measure of
//! `{ t : f(t) > s }`.
//!
//! Evaluation picks the sharpest available path:
//!
//! * a single decreasing piece: `f*(x) = f(lo + x)` (exact translate);
//! * a single increasing piece: `f*(x) = f(hi - x)` (exact reflect);
//! * finitely many constant pieces: sort the levels (exact step);
//! * anything else: invert the distribution function numerically, solving
//!   level crossings exactly on declared-monotone pieces; elsewhere a grid
//!   scan brackets each crossing and bisection refines it.
//!
//! Deep-tail evaluation `f*(b - u)` for tiny `u` is the precision-critical
//! operation: the sublevel measure is computed directly (never as
//! `b - mu_f(s)`, which cancels), and `tail_resolution_limit` reports how
//! deep a dyadic ladder `u = b 2^{-k}` stays trustworthy for the shape at
//! hand — reflected and step shapes stay exact far deeper than translated
//! ones, where forming `hi - u` itself rounds.

use crate::function::{Monotone, Piece, PieceEnd, PiecewiseFunction};
use crate::quad::{self, IntegralOutcome, QuadConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RearrangeMode {
    ExactTranslate,
    ExactReflect,
    ExactStep,
    Numeric,
}

impl RearrangeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RearrangeMode::ExactTranslate => "exact-translate",
            RearrangeMode::ExactReflect => "exact-reflect",
            RearrangeMode::ExactStep => "exact-step",
            RearrangeMode::Numeric => "numeric",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rearrangement {
    f: PiecewiseFunction,
    mode: RearrangeMode,
    total: f64,
    /// For the step path: `(level, length)` sorted by level, largest first.
    steps: Vec<(f64, f64)>,
    /// Cached endpoint limits of every piece (hot paths re-use them).
    ends: Vec<(f64, f64)>,
    grid: usize,
}

impl Rearrangement {
    pub fn new(f: &PiecewiseFunction, grid: usize) -> Rearrangement {
        let total = f.domain().measure();
        let pieces = f.pieces();
        let mode = if pieces.len() == 1 && pieces[0].monotone == Monotone::Decreasing {
            RearrangeMode::ExactTranslate
        } else if pieces.len() == 1 && pieces[0].monotone == Monotone::Increasing {
            RearrangeMode::ExactReflect
        } else if total.is_finite() && pieces.iter().all(|p| p.monotone == Monotone::Constant) {
            RearrangeMode::ExactStep
        } else {
            RearrangeMode::Numeric
        };
        let mut steps = Vec::new();
        if mode == RearrangeMode::ExactStep {
            for p in pieces {
                steps.push((p.eval(p.t_of_u(0.5)), p.len()));
            }
            steps.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        }
        let ends = pieces
            .iter()
            .map(|p| (p.end_value(PieceEnd::Lo), p.end_value(PieceEnd::Hi)))
            .collect();
        Rearrangement {
            f: f.clone(),
            mode,
            total,
            steps,
            ends,
            grid: grid.max(64),
        }
    }

    pub fn mode(&self) -> RearrangeMode {
        self.mode
    }

    pub fn total_measure(&self) -> f64 {
        self.total
    }

    pub fn function(&self) -> &PiecewiseFunction {
        &self.f
    }

    /// Measure of `{ t : f(t) > s }`.
    pub fn distribution(&self, s: f64) -> f64 {
        let mut total = 0.0;
        for (piece, ends) in self.f.pieces().iter().zip(&self.ends) {
            total += superlevel_measure_piece(piece, *ends, s, self.grid);
        }
        total
    }

    /// Measure of `{ t : f(t) <= s }`, computed directly per piece so that
    /// tiny sublevel masses near a piece boundary keep full precision.
    pub fn sublevel_measure(&self, s: f64) -> f64 {
        let mut total = 0.0;
        for (piece, ends) in self.f.pieces().iter().zip(&self.ends) {
            total += sublevel_measure_piece(piece, *ends, s, self.grid);
        }
        total
    }

    /// `f*(x)` for `x` in `(0, total)`.
    pub fn eval(&self, x: f64) -> f64 {
        match self.mode {
            RearrangeMode::ExactTranslate => {
                let p = &self.f.pieces()[0];
                p.eval(p.lo + x)
            }
            RearrangeMode::ExactReflect => {
                let p = &self.f.pieces()[0];
                p.eval(p.hi - x)
            }
            RearrangeMode::ExactStep => {
                let mut cum = 0.0;
                for &(level, len) in &self.steps {
                    cum += len;
                    if x <= cum {
                        return level;
                    }
                }
                self.steps.last().map(|s| s.0).unwrap_or(f64::NAN)
            }
            RearrangeMode::Numeric => self.smallest_level(|s| self.distribution(s) <= x),
        }
    }

    /// `f*(total - u)`: the value at distance `u` from the right end of the
    /// rearrangement's domain. Requires a finite total measure.
    pub fn eval_at_tail(&self, u: f64) -> f64 {
        assert!(
            self.total.is_finite(),
            "tail evaluation needs a finite total measure"
        );
        match self.mode {
            RearrangeMode::ExactTranslate => {
                let p = &self.f.pieces()[0];
                p.eval(p.hi - u)
            }
            RearrangeMode::ExactReflect => {
                let p = &self.f.pieces()[0];
                p.eval(p.lo + u)
            }
            RearrangeMode::ExactStep => {
                let mut cum = 0.0;
                for &(level, len) in self.steps.iter().rev() {
                    cum += len;
                    if u <= cum {
                        return level;
                    }
                }
                self.steps.first().map(|s| s.0).unwrap_or(f64::NAN)
            }
            RearrangeMode::Numeric => self.smallest_level(|s| self.sublevel_measure(s) >= u),
        }
    }

    /// Deepest trustworthy rung `k` of the dyadic tail ladder
    /// `u_k = total * 2^{-k}`: beyond it, evaluating `f*(total - u_k)`
    /// loses the tail to rounding for this shape.
    pub fn tail_resolution_limit(&self) -> u32 {
        match self.mode {
            RearrangeMode::ExactReflect | RearrangeMode::ExactStep => 120,
            RearrangeMode::ExactTranslate => {
                let p = &self.f.pieces()[0];
                translate_cap(self.total, p.hi)
            }
            RearrangeMode::Numeric => {
                // The tail of f* is fed by pieces whose smallest values sit
                // near the global essential infimum; the worst contributor
                // caps the ladder.
                let (inf, _) = self.f.ess_bounds();
                if !inf.is_finite() {
                    return 120;
                }
                let margin = 1e-6 * (inf.abs() + 1.0);
                let mut cap = 120u32;
                for (p, ends) in self.f.pieces().iter().zip(&self.ends) {
                    let piece_min = match p.monotone {
                        Monotone::Increasing => p.end_value(PieceEnd::Lo),
                        Monotone::Decreasing => p.end_value(PieceEnd::Hi),
                        Monotone::Constant => p.eval(p.t_of_u(0.5)),
                        Monotone::Unknown => {
                            // Sharp minima hug the rim, so the end limits
                            // matter as much as the interior sweep.
                            let mut m = f64::INFINITY;
                            for v in [ends.0, ends.1] {
                                if v.is_finite() {
                                    m = m.min(v);
                                }
                            }
                            for i in 1..=64 {
                                let v = p.eval(p.t_of_u(i as f64 / 65.0));
                                if v.is_finite() {
                                    m = m.min(v);
                                }
                            }
                            m
                        }
                    };
                    if !(piece_min <= inf + margin) {
                        continue;
                    }
                    let piece_cap = match p.monotone {
                        // Sublevel mass measured from the piece's left end:
                        // exact when that end is 0, otherwise limited by its
                        // spacing.
                        Monotone::Increasing => {
                            if p.lo == 0.0 {
                                120
                            } else {
                                translate_cap(self.total, p.lo)
                            }
                        }
                        // Measured from the piece's right end: forming
                        // hi - x rounds.
                        Monotone::Decreasing => translate_cap(self.total, p.hi),
                        Monotone::Constant => 120,
                        // Flip-cell bisection resolves sublevel mass far
                        // below the grid spacing; the float spacing near the
                        // piece's coordinates is what remains.
                        Monotone::Unknown => {
                            let anchor = p.lo.abs().max(p.hi.abs());
                            if anchor == 0.0 {
                                120
                            } else {
                                translate_cap(self.total, anchor)
                            }
                        }
                    };
                    cap = cap.min(piece_cap);
                }
                cap
            }
        }
    }

    /// Integral of `f*` over `(0, x)`.
    pub fn head_integral(&self, x: f64, qcfg: &QuadConfig) -> IntegralOutcome {
        match self.mode {
            RearrangeMode::ExactTranslate => {
                let p = self.f.pieces()[0].clone();
                quad::integrate(move |t| p.eval(t), self.f.pieces()[0].lo, self.f.pieces()[0].lo + x, qcfg)
            }
            RearrangeMode::ExactReflect => {
                let p = self.f.pieces()[0].clone();
                quad::integrate(move |t| p.eval(t), self.f.pieces()[0].hi - x, self.f.pieces()[0].hi, qcfg)
            }
            RearrangeMode::ExactStep => {
                let mut left = x;
                let mut acc = 0.0;
                for &(level, len) in &self.steps {
                    let take = left.min(len);
                    acc += level * take;
                    left -= take;
                    if left <= 0.0 {
                        break;
                    }
                }
                IntegralOutcome::Finite { value: acc, error: 0.0 }
            }
            RearrangeMode::Numeric => quad::integrate(|s| self.eval(s), 0.0, x, qcfg),
        }
    }

    /// CSV table of `(x, f*(x))` at `n` midpoint samples.
    pub fn csv_table(&self, n: usize) -> String {
        let n = n.max(1);
        let mut out = String::from("x,rearranged\n");
        for i in 0..n {
            let x = if self.total.is_finite() {
                self.total * (i as f64 + 0.5) / n as f64
            } else {
                2.0f64.powi(i as i32)
            };
            out.push_str(&format!("{:.17e},{:.17e}\n", x, self.eval(x)));
        }
        out
    }

    /// Finds the smallest level `s` satisfying a predicate that is
    /// monotone (false below, true above) in `s`.
    fn smallest_level(&self, pred: impl Fn(f64) -> bool) -> f64 {
        let (inf, sup) = self.f.ess_bounds();
        let mut lo = if inf.is_finite() {
            inf - 1e-12 * (inf.abs() + 1.0)
        } else {
            -1.0
        };
        let mut hi = if sup.is_finite() {
            sup
        } else {
            lo.abs().max(1.0)
        };
        // Expand the bracket until it actually straddles the boundary.
        let mut guard = 0;
        while !pred(hi) && guard < 1100 {
            hi = hi.abs().max(1e-300) * 2.0 + 1.0;
            guard += 1;
        }
        if !pred(hi) {
            return f64::INFINITY;
        }
        guard = 0;
        while pred(lo) && guard < 1100 {
            lo = -(lo.abs().max(1e-300) * 2.0 + 1.0);
            guard += 1;
        }
        if pred(lo) {
            return f64::NEG_INFINITY;
        }
        for _ in 0..260 {
            if (hi - lo).abs() <= 1e-15 * hi.abs().max(lo.abs()) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if pred(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

/// Ladder cap when the tail coordinate must be formed as `anchor - u`:
/// `u = total * 2^{-k}` needs to stay well above the spacing of floats
/// around `anchor`.
fn translate_cap(total: f64, anchor: f64) -> u32 {
    if anchor == 0.0 {
        return 120;
    }
    let ulp = anchor.abs() * 2.0f64.powi(-52);
    let k = (total / (ulp * 64.0)).log2();
    if !k.is_finite() || k < 8.0 {
        8
    } else {
        (k.floor() as u32).min(120)
    }
}

fn superlevel_measure_piece(piece: &Piece, (lo_v, hi_v): (f64, f64), s: f64, grid: usize) -> f64 {
    match piece.monotone {
        Monotone::Constant => {
            if piece.eval(piece.t_of_u(0.5)) > s {
                piece.len()
            } else {
                0.0
            }
        }
        Monotone::Increasing => {
            if !(hi_v > s) {
                0.0
            } else if lo_v > s {
                piece.len()
            } else {
                match piece.crossing_with_bounds(s, lo_v, hi_v) {
                    Some(x) => piece.hi - x,
                    None => 0.0,
                }
            }
        }
        Monotone::Decreasing => {
            if !(lo_v > s) {
                0.0
            } else if hi_v > s {
                piece.len()
            } else {
                match piece.crossing_with_bounds(s, lo_v, hi_v) {
                    // Measured from the piece's left end: precise where the
                    // crossing hugs it.
                    Some(x) => x - piece.lo,
                    None => piece.len(),
                }
            }
        }
        Monotone::Unknown => unknown_measure_piece(piece, (lo_v, hi_v), s, grid, true),
    }
}

/// Measure of `{ t in the piece : f(t) > s }` (or `<= s`) when no
/// monotonicity is declared. A uniform scan in the piece's unit coordinate
/// locates the cells where the predicate flips and bisection inside each
/// flip cell recovers the boundary, so masses far below the grid spacing
/// keep full precision (a dip narrower than one cell still goes unseen).
fn unknown_measure_piece(
    piece: &Piece,
    (lo_v, hi_v): (f64, f64),
    s: f64,
    grid: usize,
    above: bool,
) -> f64 {
    let n = grid.max(8);
    let keep = |v: f64| {
        if above {
            v > s
        } else {
            v <= s
        }
    };
    let at = |u: f64| -> f64 {
        if u <= 0.0 {
            lo_v
        } else if u >= 1.0 {
            hi_v
        } else {
            piece.eval(piece.t_of_u(u))
        }
    };
    let mut frac = 0.0f64;
    let mut prev_u = 0.0f64;
    let mut prev_in = keep(lo_v);
    for i in 1..=(n + 1) {
        let u = if i == n + 1 {
            1.0
        } else {
            i as f64 / (n as f64 + 1.0)
        };
        let cur_in = keep(at(u));
        if prev_in && cur_in {
            frac += u - prev_u;
        } else if prev_in != cur_in {
            let (mut a, mut b) = (prev_u, u);
            for _ in 0..90 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if keep(at(m)) == prev_in {
                    a = m;
                } else {
                    b = m;
                }
            }
            if prev_in {
                frac += a - prev_u + 0.5 * (b - a);
            } else {
                frac += u - b + 0.5 * (b - a);
            }
        }
        prev_u = u;
        prev_in = cur_in;
    }
    if !piece.is_finite() {
        if frac > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        piece.len() * frac
    }
}

fn sublevel_measure_piece(piece: &Piece, (lo_v, hi_v): (f64, f64), s: f64, grid: usize) -> f64 {
    match piece.monotone {
        Monotone::Constant => {
            if piece.eval(piece.t_of_u(0.5)) <= s {
                piece.len()
            } else {
                0.0
            }
        }
        Monotone::Increasing => {
            if lo_v > s {
                0.0
            } else if hi_v <= s {
                piece.len()
            } else {
                match piece.crossing_with_bounds(s, lo_v, hi_v) {
                    // Mass sits against the piece's left end.
                    Some(x) => x - piece.lo,
                    None => 0.0,
                }
            }
        }
        Monotone::Decreasing => {
            if hi_v > s {
                0.0
            } else if lo_v <= s {
                piece.len()
            } else {
                match piece.crossing_with_bounds(s, lo_v, hi_v) {
                    Some(x) => piece.hi - x,
                    None => 0.0,
                }
            }
        }
        Monotone::Unknown => unknown_measure_piece(piece, (lo_v, hi_v), s, grid, false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::interval::IntervalDomain;
    use std::collections::BTreeMap;

    fn func(domain: (f64, f64), specs: &[(f64, f64, &str, Monotone)]) -> PiecewiseFunction {
        let dom = IntervalDomain::new(domain.0, domain.1).unwrap();
        let pieces = specs
            .iter()
            .map(|(lo, hi, src, m)| {
                Piece::new(*lo, *hi, parse(src, &BTreeMap::new()).unwrap(), *m).unwrap()
            })
            .collect();
        PiecewiseFunction::new("f", dom, pieces).unwrap()
    }

    #[test]
    fn translate_path_is_exact() {
        let f = func((0.0, 1.0), &[(0.0, 1.0, "ln(1/t)", Monotone::Decreasing)]);
        let r = Rearrangement::new(&f, 1000);
        assert_eq!(r.mode(), RearrangeMode::ExactTranslate);
        // A decreasing function is its own rearrangement.
        let x = 0.3;
        assert!((r.eval(x) - (1.0f64 / x).ln()).abs() < 1e-15);
        // Distribution of ln(1/t) at level 2 is e^{-2}.
        let d = r.distribution(2.0);
        assert!((d - (-2.0f64).exp()).abs() < 1e-12, "d = {d}");
    }

    #[test]
    fn reflect_path_is_exact() {
        let f = func((0.0, 1.0), &[(0.0, 1.0, "t^2", Monotone::Increasing)]);
        let r = Rearrangement::new(&f, 1000);
        assert_eq!(r.mode(), RearrangeMode::ExactReflect);
        let x = 0.25;
        assert!((r.eval(x) - (1.0 - x) * (1.0 - x)).abs() < 1e-15);
        // Tail at distance u: f*(1 - u) = u^2, exact to subnormal depths.
        let u = 2.0f64.powi(-100);
        assert_eq!(r.eval_at_tail(u), u * u);
        assert_eq!(r.tail_resolution_limit(), 120);
    }

    #[test]
    fn step_path_sorts_levels() {
        let f = func(
            (0.0, 1.0),
            &[
                (0.0, 0.25, "3", Monotone::Constant),
                (0.25, 0.5, "1", Monotone::Constant),
                (0.5, 1.0, "2", Monotone::Constant),
            ],
        );
        let r = Rearrangement::new(&f, 1000);
        assert_eq!(r.mode(), RearrangeMode::ExactStep);
        assert_eq!(r.eval(0.1), 3.0);
        assert_eq!(r.eval(0.5), 2.0);
        assert_eq!(r.eval(0.9), 1.0);
        // {f > 1.5} has measure 1/4 + 1/2.
        assert!((r.distribution(1.5) - 0.75).abs() < 1e-15);
        // Values at tail distances come from the smallest level.
        assert_eq!(r.eval_at_tail(0.1), 1.0);
        assert_eq!(r.eval_at_tail(0.3), 2.0);
        // Head integral is an exact partial sum: 3*(1/4) + 2*(1/4) at x=1/2.
        match r.head_integral(0.5, &QuadConfig::default()) {
            IntegralOutcome::Finite { value, .. } => assert!((value - 1.25).abs() < 1e-15),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn numeric_path_inverts_a_tent() {
        // Tent: t on (0, 1/2) rising, 1-t on (1/2, 1) falling.
        // Distribution: mu(s) = 1 - 2s, so f*(x) = (1 - x)/2.
        let f = func(
            (0.0, 1.0),
            &[
                (0.0, 0.5, "t", Monotone::Increasing),
                (0.5, 1.0, "1 - t", Monotone::Decreasing),
            ],
        );
        let r = Rearrangement::new(&f, 1000);
        assert_eq!(r.mode(), RearrangeMode::Numeric);
        for &x in &[0.1, 0.4, 0.7, 0.95] {
            let expect = (1.0 - x) / 2.0;
            let got = r.eval(x);
            assert!((got - expect).abs() < 1e-9, "x = {x}: got {got}, expect {expect}");
        }
    }

    #[test]
    fn numeric_tail_keeps_relative_precision() {
        // Same tent: f*(1 - u) = u/2; the tiny sublevel mass sits against
        // the left piece's start at 0 and the right piece's end at 1.
        let f = func(
            (0.0, 1.0),
            &[
                (0.0, 0.5, "t", Monotone::Increasing),
                (0.5, 1.0, "1 - t", Monotone::Decreasing),
            ],
        );
        let r = Rearrangement::new(&f, 1000);
        let u = 2.0f64.powi(-40);
        let got = r.eval_at_tail(u);
        let expect = u / 2.0;
        assert!(
            (got / expect - 1.0).abs() < 1e-3,
            "got {got:e}, expect {expect:e}"
        );
    }

    #[test]
    fn equimeasurability_on_a_numeric_shape() {
        // Layer-cake check at a handful of levels: the rearrangement has
        // the same distribution as the function.
        let f = func(
            (0.0, 2.0),
            &[
                (0.0, 1.0, "exp(t)", Monotone::Increasing),
                (1.0, 2.0, "3 - t", Monotone::Decreasing),
            ],
        );
        let r = Rearrangement::new(&f, 2000);
        for &s in &[1.1, 1.5, 2.0, 2.5] {
            let mu = r.distribution(s);
            // Find x where f* crosses s by scanning.
            let n = 2000;
            let mut measure_above = 0.0;
            for i in 0..n {
                let x = 2.0 * (i as f64 + 0.5) / n as f64;
                if r.eval(x) > s {
                    measure_above += 2.0 / n as f64;
                }
            }
            assert!(
                (mu - measure_above).abs() < 5e-3,
                "level {s}: mu = {mu}, from f* = {measure_above}"
            );
        }
    }

    #[test]
    fn translate_tail_cap_is_limited_and_reflect_is_not() {
        let dec = func((0.0, 1.0), &[(0.0, 1.0, "ln(1/t)", Monotone::Decreasing)]);
        let cap = Rearrangement::new(&dec, 1000).tail_resolution_limit();
        assert!(cap >= 40 && cap <= 60, "translate cap = {cap}");
        let inc = func((0.0, 1.0), &[(0.0, 1.0, "t", Monotone::Increasing)]);
        assert_eq!(Rearrangement::new(&inc, 1000).tail_resolution_limit(), 120);
    }

    #[test]
    fn infinite_measure_distribution_works() {
        let f = func((0.0, f64::INFINITY), &[(0.0, f64::INFINITY, "exp(-t)", Monotone::Decreasing)]);
        let r = Rearrangement::new(&f, 1000);
        // {e^{-t} > s} = (0, ln(1/s)).
        let d = r.distribution(0.1);
        assert!((d - (1.0f64 / 0.1).ln()).abs() < 1e-9, "d = {d}");
        // f* of a decreasing function is itself.
        assert!((r.eval(2.0) - (-2.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn csv_has_requested_rows() {
        let f = func((0.0, 1.0), &[(0.0, 1.0, "ln(1/t)", Monotone::Decreasing)]);
        let r = Rearrangement::new(&f, 100);
        let table = r.csv_table(8);
        assert_eq!(table.lines().count(), 9);
        assert!(table.starts_with("x,rearranged"));
    }
}
